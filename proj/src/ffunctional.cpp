#include "jspec/ffunctional.hpp"

#include <cmath>

namespace jspec {

namespace {

// Sum over index sets {k_1 < ... < k_m} with gaps >= 2 of (-1)^m prod x_k x_{k+1},
// enumerated depth-first from position `start`.
cplx enumerate(const FiniteSeq<cplx>& xs, std::size_t start) {
  cplx total = 0.0;
  for (std::size_t k = start; k + 1 < xs.size(); ++k) {
    const cplx pair = -xs[k] * xs[k + 1];
    total += pair * (1.0 + enumerate(xs, k + 2));
  }
  return total;
}

}  // namespace

cplx f_eval_bruteforce(const FiniteSeq<cplx>& xs) {
  if (xs.size() > 32) raise(ErrorKind::TooLong, "brute-force evaluation limited to 32 entries");
  return 1.0 + enumerate(xs, 0);
}

double tail_bound(double s_total, double s_tail) {
  if (!(s_total >= 0.0) || !(s_tail >= 0.0))
    raise(ErrorKind::NegativeInput, "tail sums must be non-negative");
  return std::exp(s_total) * std::expm1(s_tail);
}

FiniteSeq<Jet> jet_lift(cplx z0, int order, long n1, long n2,
                        const std::function<cplx(long)>& gamma_sq,
                        const std::function<cplx(long)>& lambda) {
  FiniteSeq<Jet> out;
  if (n2 < n1) return out;
  out.reserve(static_cast<std::size_t>(n2 - n1 + 1));
  for (long k = n1; k <= n2; ++k) {
    const cplx d = z0 - lambda(k);
    if (d == cplx(0.0)) raise(ErrorKind::PoleAtBase, "entry has a pole at the base point");
    // g/(z - l) = (g/d) * sum_j (-(z - z0)/d)^j
    Jet j(z0, order);
    cplx c = gamma_sq(k) / d;
    for (int i = 0; i <= order; ++i) {
      j[i] = c;
      c *= -1.0 / d;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace jspec
