#ifndef SU11_VERSION_HPP
#define SU11_VERSION_HPP

#define SU11_VERSION_STRING "1.0.0"

namespace su11 {
inline const char* version() { return SU11_VERSION_STRING; }
}

#endif
