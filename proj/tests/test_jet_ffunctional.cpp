#include <cmath>
#include <random>

#include "doctest.h"
#include "jspec/ffunctional.hpp"
#include "jspec/jet.hpp"

using namespace jspec;

namespace {

std::vector<cplx> random_seq(std::mt19937_64& rng, std::size_t n, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<cplx> xs(n);
  for (auto& x : xs) x = {u(rng), u(rng)};
  return xs;
}

}  // namespace

TEST_CASE("jet arithmetic matches closed-form derivatives") {
  const cplx z0(0.4, -0.3);
  const Jet z = Jet::variable(z0, 6);
  const Jet p = z * z * z - 2.0 * z + 1.0;
  CHECK(std::abs(p.derivative(0) - (z0 * z0 * z0 - 2.0 * z0 + 1.0)) < 1e-15);
  CHECK(std::abs(p.derivative(1) - (3.0 * z0 * z0 - 2.0)) < 1e-15);
  CHECK(std::abs(p.derivative(2) - 6.0 * z0) < 1e-15);
  CHECK(std::abs(p.derivative(3) - 6.0) < 1e-15);
  CHECK(std::abs(p.derivative(4)) == 0.0);

  const Jet e = exp(z);
  for (int k = 0; k <= 6; ++k) CHECK(std::abs(e.derivative(k) - std::exp(z0)) < 1e-14);

  const Jet r = 1.0 / (1.0 - z);
  for (int k = 0; k <= 6; ++k) {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    CHECK(std::abs(r.derivative(k) - fact / std::pow(1.0 - z0, k + 1)) < 1e-12 * fact);
  }
}

TEST_CASE("jet exp and log are inverse") {
  const Jet z = Jet::variable({1.2, 0.7}, 8);
  const Jet g = z * z + 0.5 * z;
  const Jet back = exp(log(g));
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(back[k] - g[k]) < 1e-13);
  const Jet q = g / z;
  const Jet again = q * z;
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(again[k] - g[k]) < 1e-13);
}

TEST_CASE("jet errors") {
  CHECK_THROWS_AS(Jet(cplx{}, kMaxJetOrder + 1), Error);
  const Jet z = Jet::variable(0.0, 3);
  try {
    (void)(1.0 / z);
    FAIL("expected JetDivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::JetDivisionByZero);
  }
}

TEST_CASE("F of short sequences") {
  const cplx a(0.3, 0.1), b(-0.7, 0.2), c(0.5, -0.4), d(1.1, 0.0);
  CHECK(f_eval<cplx>({}) == cplx(1.0));
  CHECK(f_eval<cplx>({a}) == cplx(1.0));
  CHECK(std::abs(f_eval<cplx>({a, b}) - (1.0 - a * b)) < 1e-15);
  CHECK(std::abs(f_eval<cplx>({a, b, c}) - (1.0 - a * b - b * c)) < 1e-15);
  CHECK(std::abs(f_eval<cplx>({a, b, c, d}) - (1.0 - a * b - b * c - c * d + a * b * c * d)) < 1e-15);
}

TEST_CASE("F recurrence agrees with the nested-sum definition") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto xs = random_seq(rng, n, 1.5);
    const cplx fast = f_eval<cplx>(xs);
    const cplx brute = f_eval_bruteforce(xs);
    CHECK(std::abs(fast - brute) <= 1e-12 * std::max(1.0, std::abs(brute)));
  }
  CHECK_THROWS_AS(f_eval_bruteforce(std::vector<cplx>(33, 0.1)), Error);
}

TEST_CASE("F is invariant under reversal and pair-preserving rescaling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto xs = random_seq(rng, 3 + static_cast<std::size_t>(trial), 1.0);
    const cplx f = f_eval<cplx>(xs);
    auto rev = xs;
    std::reverse(rev.begin(), rev.end());
    CHECK(std::abs(f_eval<cplx>(rev) - f) < 1e-13 * std::max(1.0, std::abs(f)));
    const cplx t(1.7, -0.4);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = (i % 2 == 0) ? xs[i] * t : xs[i] / t;
    CHECK(std::abs(f_eval<cplx>(xs) - f) < 1e-13 * std::max(1.0, std::abs(f)));
  }
}

TEST_CASE("F splits across a cut") {
  // F(x_1..x_n) = F(x_1..x_k) F(x_{k+1}..x_n) - x_k x_{k+1} F(x_1..x_{k-1}) F(x_{k+2}..x_n)
  std::mt19937_64 rng(13);
  const auto xs = random_seq(rng, 12, 1.2);
  auto sub = [&](std::size_t lo, std::size_t hi) {
    return f_eval<cplx>(std::vector<cplx>(xs.begin() + static_cast<long>(lo), xs.begin() + static_cast<long>(hi)));
  };
  const cplx f = f_eval<cplx>(xs);
  for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
    const cplx split = sub(0, k + 1) * sub(k + 1, xs.size()) - xs[k] * xs[k + 1] * sub(0, k) * sub(k + 2, xs.size());
    CHECK(std::abs(split - f) < 1e-12 * std::max(1.0, std::abs(f)));
  }
}

TEST_CASE("F on jets differentiates the scalar evaluation") {
  auto gsq = [](long k) { return cplx(0.3 / (1.0 + k * k)); };
  auto lam = [](long k) { return cplx(static_cast<double>(k)); };
  const cplx z0(0.37, 0.21);
  const auto jets = jet_lift(z0, 2, -6, 6, gsq, lam);
  const Jet fj = f_eval<Jet>(jets);
  auto scalar = [&](cplx z) {
    std::vector<cplx> xs;
    for (long k = -6; k <= 6; ++k) xs.push_back(gsq(k) / (z - lam(k)));
    return f_eval<cplx>(xs);
  };
  const double h = 1e-4;
  const cplx d1 = (scalar(z0 + h) - scalar(z0 - h)) / (2 * h);
  const cplx d2 = (scalar(z0 + h) - 2.0 * scalar(z0) + scalar(z0 - h)) / (h * h);
  CHECK(std::abs(fj.value() - scalar(z0)) < 1e-14);
  CHECK(std::abs(fj.derivative(1) - d1) < 1e-6);
  CHECK(std::abs(fj.derivative(2) - d2) < 1e-4);
  CHECK_THROWS_AS(jet_lift(1.0, 2, -2, 2, gsq, lam), Error);
}

TEST_CASE("tail bound") {
  CHECK(tail_bound(0.0, 0.0) == 0.0);
  CHECK(std::abs(tail_bound(0.5, 0.1) - std::exp(0.5) * std::expm1(0.1)) < 1e-15);
  // monotone in both arguments
  CHECK(tail_bound(0.6, 0.1) > tail_bound(0.5, 0.1));
  CHECK(tail_bound(0.5, 0.2) > tail_bound(0.5, 0.1));
  try {
    (void)tail_bound(-1.0, 0.1);
    FAIL("expected NegativeInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeInput);
  }
}
