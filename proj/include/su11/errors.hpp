#ifndef SU11_ERRORS_HPP
#define SU11_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace su11 {

// Validation failures: bad arguments, out-of-range parameters, malformed input.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested inside the pole-guard radius of a lattice point.
struct pole_error : std::domain_error {
    explicit pole_error(double x)
        : std::domain_error("argument " + std::to_string(x) +
                            " is inside the pole-guard radius of a lattice point"),
          x(x) {}
    double x;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct quadrature_error : std::runtime_error {
    quadrature_error(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error " + std::to_string(achieved) + ")"),
          achieved_error(achieved) {}
    double achieved_error;
};

// A finite chain has a mode with E(2*pi*l/N) == lambda, so the ground state is degenerate.
struct degenerate_ground_state : std::runtime_error {
    explicit degenerate_ground_state(int mode)
        : std::runtime_error("degenerate ground state: mode l=" + std::to_string(mode) +
                             " sits on the Fermi level"),
          mode(mode) {}
    int mode;
};

// Dispersion failed the E' > 0 grid validation on (0, pi).
struct nonmonotone_dispersion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No endpoint derivative up to order 4 exceeded the detection threshold.
struct expansion_order_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sign-change counting for dn_f/dT did not stabilize under grid refinement.
struct classification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct eigensolver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact-diagonalization oracle exceeds the dense size cap.
struct size_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace su11

#endif
