#include "special.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace jspec::detail {

namespace {

// B_2, B_4, ..., B_24
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,           1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,       7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,     854513.0 / 138.0, -236364091.0 / 2730.0};

cplx inv_pow(cplx b, int s) {
  cplx r = 1.0;
  const cplx ib = 1.0 / b;
  cplx x = ib;
  while (s > 0) {
    if (s & 1) r *= x;
    s >>= 1;
    if (s) x *= x;
  }
  return r;
}

}  // namespace

cplx hurwitz_zeta(int s, cplx a) {
  if (s < 2) raise(ErrorKind::NonConvergent, "hurwitz zeta needs s >= 2");
  if (!(a.real() > 0.0)) raise(ErrorKind::PoleArgument, "hurwitz zeta needs Re a > 0");
  const double need = std::max(20.0, 2.0 * s);
  const long shift = a.real() >= need ? 0 : static_cast<long>(std::ceil(need - a.real()));
  cplx head = 0.0;
  for (long k = 0; k < shift; ++k) head += inv_pow(a + static_cast<double>(k), s);
  const cplx b = a + static_cast<double>(shift);
  const cplx ib = 1.0 / b;
  const cplx bs = inv_pow(b, s);
  cplx tail = b * bs / static_cast<double>(s - 1) + 0.5 * bs;
  // Euler-Maclaurin corrections: B_{2i}/(2i)! * s(s+1)...(s+2i-2) * b^{-s-2i+1}
  cplx term_pow = bs * ib;  // b^{-s-1}
  double rising = s;        // s (s+1) ... (s+2i-2)
  double fact = 2.0;        // (2i)!
  for (std::size_t i = 0; i < kBernoulli.size(); ++i) {
    const cplx t = kBernoulli[i] / fact * rising * term_pow;
    tail += t;
    if (std::abs(t) < 1e-18 * std::abs(tail)) break;
    const double m = 2.0 * static_cast<double>(i + 1);
    rising *= (s + m - 1.0) * (s + m);
    fact *= (m + 1.0) * (m + 2.0);
    term_pow *= ib * ib;
  }
  return head + tail;
}

double exp_remainder(double s, int order) {
  if (s > 0.5) {
    double partial = 1.0, term = 1.0;
    for (int m = 1; m <= order; ++m) {
      term *= s / m;
      partial += term;
    }
    return std::max(0.0, std::exp(s) - partial);
  }
  double term = 1.0;
  for (int m = 1; m <= order + 1; ++m) term *= s / m;
  double sum = 0.0;
  for (int m = order + 1; m < order + 40; ++m) {
    sum += term;
    term *= s / (m + 1);
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace jspec::detail
