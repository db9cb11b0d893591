#ifndef SU11_SU11_HPP
#define SU11_SU11_HPP

#include "su11/density.hpp"
#include "su11/ed_oracle.hpp"
#include "su11/entanglement.hpp"
#include "su11/errors.hpp"
#include "su11/model.hpp"
#include "su11/parallel.hpp"
#include "su11/quadrature.hpp"
#include "su11/special_functions.hpp"
#include "su11/sweep_io.hpp"
#include "su11/thermo.hpp"
#include "su11/version.hpp"

#endif
