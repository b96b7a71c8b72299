#pragma once

// Special functions used to check the engine.  None of them touches the
// F recurrence, so a match against them is a genuine two-sided check.

#include "jspec/types.hpp"

namespace jspec::oracle {

// J_nu(x) by its power series; |x| <= 50.
cplx bessel_j(cplx nu, cplx x, double tol = 1e-17);

// (a; q)_inf, |q| < 1.
cplx qpochhammer(cplx a, cplx q, double tol = 1e-17);

// 0phi1(-; b; q, x) = sum_k q^{k(k-1)} x^k / ((q; q)_k (b; q)_k), |q| < 1.
cplx qphi01(cplx b, cplx q, cplx x, double tol = 1e-17);

// A branch of log Gamma(z) with exp(log_gamma(z)) = Gamma(z).
cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx digamma(cplx z);

}  // namespace jspec::oracle
