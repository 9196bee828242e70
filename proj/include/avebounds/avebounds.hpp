#ifndef AVEBOUNDS_AVEBOUNDS_HPP
#define AVEBOUNDS_AVEBOUNDS_HPP

#include "avebounds/errors.hpp"
#include "avebounds/numerics.hpp"
#include "avebounds/matrix_market.hpp"
#include "avebounds/kernels.hpp"
#include "avebounds/ave.hpp"
#include "avebounds/solver.hpp"
#include "avebounds/error_bounds.hpp"
#include "avebounds/perturbation.hpp"
#include "avebounds/complementarity.hpp"
#include "avebounds/harness.hpp"

#endif // AVEBOUNDS_AVEBOUNDS_HPP
