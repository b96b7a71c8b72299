#include "jspec/oracles.hpp"

#include <cmath>
#include <numbers>

namespace jspec::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2 .. B_18
constexpr double kBernoulli[] = {1.0 / 6,         -1.0 / 30,   1.0 / 42,
                                 -1.0 / 30,       5.0 / 66,    -691.0 / 2730,
                                 7.0 / 6,         -3617.0 / 510, 43867.0 / 798};

bool nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

long shift_for(cplx z) { return z.real() >= 10.0 ? 0 : static_cast<long>(std::ceil(10.0 - z.real())); }

}  // namespace

cplx log_gamma(cplx z) {
  if (nonpositive_integer(z)) raise(ErrorKind::PoleArgument, "Gamma has a pole here");
  if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  const long n = shift_for(z);
  cplx shift = 0.0;
  for (long k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
  const cplx w = z + static_cast<double>(n);
  cplx s = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi);
  const cplx w2 = 1.0 / (w * w);
  cplx pw = 1.0 / w;
  for (int k = 1; k <= 9; ++k) {
    s += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= w2;
  }
  return s - shift;
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx digamma(cplx z) {
  if (nonpositive_integer(z)) raise(ErrorKind::PoleArgument, "digamma has a pole here");
  if (z.real() < 0.0) return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  const long n = shift_for(z);
  cplx shift = 0.0;
  for (long k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
  const cplx w = z + static_cast<double>(n);
  cplx s = std::log(w) - 0.5 / w;
  const cplx w2 = 1.0 / (w * w);
  cplx pw = w2;
  for (int k = 1; k <= 9; ++k) {
    s -= kBernoulli[k - 1] / (2.0 * k) * pw;
    pw *= w2;
  }
  return s - shift;
}

cplx bessel_j(cplx nu, cplx x, double tol) {
  if (std::abs(x) > 50.0) raise(ErrorKind::NonConvergent, "series budget covers |x| <= 50 only");
  if (nonpositive_integer(nu) && nu != cplx(0.0)) {
    const long n = std::lround(-nu.real());
    return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(-nu, x, tol);
  }
  if (x == cplx(0.0)) {
    if (nu == cplx(0.0)) return 1.0;
    if (nu.real() > 0.0) return 0.0;
    raise(ErrorKind::PoleArgument, "J_nu(0) is singular for Re nu <= 0");
  }
  const cplx h = 0.5 * x;
  const cplx mh2 = -h * h;
  cplx term = std::exp(nu * std::log(h) - log_gamma(nu + 1.0));
  cplx sum = term;
  const double half = std::abs(h);
  for (int k = 0; k < 2000; ++k) {
    term *= mh2 / ((k + 1.0) * (nu + (k + 1.0)));
    sum += term;
    if (k + 1 > half && std::abs(term) <= tol * std::abs(sum)) return sum;
    if (term == cplx(0.0)) return sum;
  }
  raise(ErrorKind::NonConvergent, "Bessel series did not settle");
}

cplx qpochhammer(cplx a, cplx q, double tol) {
  const double aq = std::abs(q);
  if (!(aq < 1.0)) raise(ErrorKind::QOutOfRange, "|q| must be below 1");
  cplx prod = 1.0, qk = 1.0;
  const double aa = std::abs(a);
  for (long k = 0; k < 100000; ++k) {
    prod *= 1.0 - a * qk;
    qk *= q;
    if (aa * std::abs(qk) / (1.0 - aq) < tol) return prod;
  }
  raise(ErrorKind::NonConvergent, "q-product did not settle");
}

cplx qphi01(cplx b, cplx q, cplx x, double tol) {
  if (!(std::abs(q) < 1.0)) raise(ErrorKind::QOutOfRange, "|q| must be below 1");
  cplx term = 1.0, sum = 1.0, qk = 1.0;  // qk = q^k
  for (long k = 0; k < 100000; ++k) {
    const cplx den = (1.0 - qk * q) * (1.0 - b * qk);
    if (den == cplx(0.0)) raise(ErrorKind::PoleArgument, "0phi1 denominator parameter hits q^-k");
    term *= qk * qk * x / den;
    sum += term;
    qk *= q;
    if (std::abs(term) <= tol * std::abs(sum) && std::abs(qk) < 0.5) return sum;
    if (term == cplx(0.0)) return sum;
  }
  raise(ErrorKind::NonConvergent, "0phi1 series did not settle");
}

}  // namespace jspec::oracle
