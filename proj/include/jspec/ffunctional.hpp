#pragma once

#include <functional>
#include <type_traits>
#include <vector>

#include "jspec/jet.hpp"

namespace jspec {

template <class S>
using FiniteSeq = std::vector<S>;

// Backward sweep: F_n = F_{n+1} - x_n x_{n+1} F_{n+2}, with F = 1 past the end
// and F = 0 one step further.
template <class S>
S f_eval(const FiniteSeq<S>& xs) {
  if (xs.size() < 2) {
    if (xs.empty()) {
      if constexpr (std::is_same_v<S, cplx>) return 1.0;
      else return S::constant(1.0, cplx{}, 0);
    }
    return lift<S>(1.0, xs.front());
  }
  const std::size_t n = xs.size();
  S next2 = lift<S>(1.0, xs.back());  // F over empty tail
  S next1 = next2;                    // F over the last single entry
  for (std::size_t i = n - 1; i-- > 0;) {
    S cur = next1 - xs[i] * xs[i + 1] * next2;
    next2 = next1;
    next1 = cur;
  }
  return next1;
}

// Literal nested-sum evaluation over non-adjacent index sets (length <= 32).
cplx f_eval_bruteforce(const FiniteSeq<cplx>& xs);

// exp(S_total) * (exp(S_tail) - 1).
double tail_bound(double s_total, double s_tail);

// Expands x_k(z) = gamma_sq(k) / (z - lambda(k)) at z0 for k in [n1, n2].
FiniteSeq<Jet> jet_lift(cplx z0, int order, long n1, long n2,
                        const std::function<cplx(long)>& gamma_sq,
                        const std::function<cplx(long)>& lambda);

}  // namespace jspec
