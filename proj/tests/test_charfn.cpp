#include <cmath>

#include "doctest.h"
#include "jspec/charfn.hpp"
#include "jspec/oracles.hpp"
#include "jspec/regularization.hpp"
#include "jspec/spectra.hpp"

using namespace jspec;

namespace {

const double kPi = std::acos(-1.0);

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;
}

// max_n |u_n - c v_n| / max |u| for the best c fixed at the largest entry of v
double projective_gap(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  const cplx c = u[k] / v[k];
  double gap = 0.0, mag = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    gap = std::max(gap, std::abs(u[i] - c * v[i]));
    mag = std::max(mag, std::abs(u[i]));
  }
  return gap / mag;
}

// Decaying solution of the q-geometric recurrence, summed as a power series in q^n.
cplx q_right_solution(cplx q, cplx beta, cplx z, long n) {
  cplx s = 1.0;
  if (n > 0)
    for (long k = 0; k < n; ++k) s *= beta * std::pow(q, 0.5 * static_cast<double>(k));
  else
    for (long k = n; k < 0; ++k) s /= beta * std::pow(q, 0.5 * static_cast<double>(k));
  const cplx x = std::pow(q, static_cast<double>(n));
  cplx c = 1.0, sum = 1.0, xk = 1.0;
  for (int k = 1; k < 200; ++k) {
    const cplx qk = std::pow(q, static_cast<double>(k));
    c *= -qk * (1.0 + beta * beta * qk / q / z) / (z * (1.0 - qk));
    xk *= x;
    sum += c * xk;
    if (std::abs(c * xk) < 1e-18 * std::abs(sum)) break;
  }
  return s * std::pow(z, -static_cast<double>(n)) * sum;
}

}  // namespace

TEST_CASE("regularized free operator is the sine") {
  const auto lf = make_spec(LinearFree{1.0});
  for (const cplx z : {cplx(0.3, 0.4), cplx(-2.2, 0.7), cplx(3.5, -1.0)}) {
    const auto v = charfn_reg(lf, z, 1e-12);
    const cplx ex = std::sin(kPi * z) / kPi;
    CHECK(std::abs(v.value - ex) <= 1e-10 * std::abs(ex));
    CHECK(v.tail_err <= 1e-12 * std::max(1.0, v.scale));
  }
}

TEST_CASE("Bessel generic function is identically one") {
  const auto bs = make_spec(BesselCompact{0.3, 0.7});
  for (const cplx z : {cplx(0.5, 0.5), cplx(-1.2, 0.3), cplx(2.0, -0.9)})
    CHECK(std::abs(charfn(bs, z, 1e-12).value - 1.0) < 1e-10);
}

TEST_CASE("tightening the tolerance stays within the reported error") {
  const auto bs = make_spec(BesselCompact{0.3, 0.7});
  const cplx z(0.8, 0.4);
  const auto loose = charfn_reg(bs, z, 1e-6);
  const auto tight = charfn_reg(bs, z, 1e-13);
  CHECK(loose.window <= tight.window);
  CHECK(std::abs(loose.value - tight.value) <= loose.tail_err + tight.tail_err + 1e-13 * tight.scale);
  CHECK(loose.tail_err <= 1e-6 * std::max(1.0, loose.scale));
}

TEST_CASE("derivative jets agree with finite differences") {
  const auto qg = make_spec(QGeometric{0.5, 0.8});
  const cplx z(1.3, 0.6);
  EvalOptions o;
  o.tol = 1e-13;
  const auto jet = charfn_jet(qg, z, 2, o, Mode::Regularized);
  const double h = 1e-4;
  auto f = [&](cplx s) { return charfn_reg(qg, s, 1e-14).value; };
  CHECK(std::abs(jet.value.derivative(0) - f(z)) < 1e-12 * jet.scale);
  CHECK(std::abs(jet.value.derivative(1) - (f(z + h) - f(z - h)) / (2 * h)) < 1e-6 * jet.scale);
  CHECK(std::abs(jet.value.derivative(2) - (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h)) < 1e-3 * jet.scale);
}

TEST_CASE("Bessel solutions are Bessel functions") {
  const double a = 0.3, b = 0.7;
  const auto bs = make_spec(BesselCompact{a, b});
  const cplx z(0.6, 0.35);
  const auto f = solution_f_reg(bs, z, -6, 6, 1e-12);
  const auto g = solution_g_reg(bs, z, -6, 6, 1e-12);
  std::vector<cplx> of, og;
  for (long n = -6; n <= 6; ++n) {
    const cplx r = std::sqrt(cplx(n + a));
    of.push_back(r * oracle::bessel_j(static_cast<double>(n) + a - 1.0 / z, 2.0 * b / z));
    og.push_back((n % 2 == 0 ? 1.0 : -1.0) * r * oracle::bessel_j(-static_cast<double>(n) - a + 1.0 / z, 2.0 * b / z));
  }
  CHECK(projective_gap(f.values, of) < 1e-9);
  CHECK(projective_gap(g.values, og) < 1e-9);
}

TEST_CASE("q-geometric right solution matches its series") {
  const cplx q = 0.5, beta = 0.8, z(0.9, 0.3);
  const auto qg = make_spec(QGeometric{q, beta});
  const auto f = solution_f_reg(qg, z, -5, 6, 1e-12);
  std::vector<cplx> o;
  for (long n = -5; n <= 6; ++n) o.push_back(q_right_solution(q, beta, z, n));
  CHECK(projective_gap(f.values, o) < 1e-9);
}

TEST_CASE("solutions satisfy the eigen-recurrence") {
  const auto bs = make_spec(BesselCompact{0.3, 0.7});
  const cplx z(-0.9, 0.5);
  for (const auto& s : {solution_f(bs, z, -8, 8), solution_g(bs, z, -8, 8)}) {
    double worst = 0.0, mag = 0.0;
    for (long n = -7; n <= 7; ++n) {
      const cplx r = bs.w(n - 1) * s.at(n - 1) + (bs.lambda(n) - z) * s.at(n) + bs.w(n) * s.at(n + 1);
      worst = std::max(worst, std::abs(r));
      mag = std::max(mag, std::abs(s.at(n)));
    }
    CHECK(worst < 1e-12 * mag);
  }
}

TEST_CASE("Wronskian is independent of the index") {
  const auto qg = make_spec(QGeometric{0.5, 0.8});
  const cplx z(0.7, 0.45);
  const cplx w0 = wronskian(qg, z, 0, 1e-12, Mode::Regularized);
  for (long n = -4; n <= 4; ++n)
    CHECK(std::abs(wronskian(qg, z, n, 1e-12, Mode::Regularized) - w0) < 1e-10 * std::abs(w0));
}

TEST_CASE("eigenvectors at eigenvalues") {
  const auto lf = make_spec(LinearFree{1.0});
  const auto ev = eigenvector(lf, 2.0, -10, 12, 1e-12, Mode::Regularized);
  CHECK(residual_norm(lf, 2.0, ev) < 1e-10);
  // free eigenvectors are J_{2-n}(2)
  std::vector<cplx> o;
  for (long n = -10; n <= 12; ++n) o.push_back(oracle::bessel_j(static_cast<double>(2 - n), 2.0));
  CHECK(projective_gap(ev.values, o) < 1e-10);
}

TEST_CASE("Green function inverts J - z") {
  const auto bs = make_spec(BesselCompact{0.3, 0.7});
  const cplx z(0.5, 0.5);
  const long j = 1;
  const auto col = green_column(bs, z, j, -8, 8, 1e-12);
  auto G = [&](long i) { return col[static_cast<std::size_t>(i + 8)]; };
  for (long i = -7; i <= 7; ++i) {
    const cplx r = bs.w(i - 1) * G(i - 1) + (bs.lambda(i) - z) * G(i) + bs.w(i) * G(i + 1);
    CHECK(std::abs(r - (i == j ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("sum identity holds at an eigenvalue") {
  const auto bs = make_spec(BesselCompact{0.3, 0.7});
  const auto s = eigvec_sum_identity(bs, 1.0 / 1.3, 1e-12, Mode::Regularized);
  CHECK(s.residual < 1e-10);
  CHECK(!s.possible_degenerate);
}

TEST_CASE("evaluation errors") {
  const auto lf = make_spec(LinearFree{1.0});
  const auto bs = make_spec(BesselCompact{0.3, 0.7});
  CHECK(kind_of([&] { charfn(lf, 3.0); }) == ErrorKind::PoleHit);
  CHECK(kind_of([&] { charfn_reg(bs, 0.0); }) == ErrorKind::ZeroArgument);
  CHECK(kind_of([&] { green(lf, 1.0, 0, 0); }) == ErrorKind::PoleHit);
  CHECK(kind_of([&] { green(make_spec(QGeometric{0.5, 0.8}), -0.64, 0, 0); }) == ErrorKind::NearSpectrum);

  CustomFamily c;
  c.lambda = [](long n) { return cplx(static_cast<double>(n)); };
  c.w = [](long) { return cplx(1.0); };
  const auto bare = make_spec(c);
  CHECK(kind_of([&] { charfn(bare, cplx(0.5, 0.5)); }) == ErrorKind::NoTailBound);
  CHECK(kind_of([&] { charfn_reg(bare, cplx(0.5, 0.5)); }) == ErrorKind::WrongClass);

  EvalOptions plain;
  plain.tails = false;
  CHECK(kind_of([&] { charfn(lf, cplx(0.5, 0.5), plain, Mode::Generic); }) == ErrorKind::NoTailBound);
  plain.fixed_window = 40;
  CHECK(std::isfinite(std::abs(charfn(lf, cplx(0.5, 0.5), plain, Mode::Generic).value)));
}
