#pragma once

// Engine-side special functions (kept apart from the test oracles).

#include "jspec/types.hpp"

namespace jspec::detail {

// Hurwitz zeta sum_{k>=0} (a+k)^{-s} for integer s >= 2 and Re a > 0.
cplx hurwitz_zeta(int s, cplx a);

// sum_{m > order} s^m / m!  for s >= 0, without cancellation.
double exp_remainder(double s, int order);

}  // namespace jspec::detail
