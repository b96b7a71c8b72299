#include <cmath>

#include "doctest.h"
#include "jspec/spectra.hpp"

using namespace jspec;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;
}

// Polynomial with the given roots, as an analytic sample with exact jets.
AnalyticFn poly(std::vector<cplx> roots) {
  return [roots](cplx z, int order, double) {
    Jet p = Jet::constant(1.0, z, order);
    const Jet x = Jet::variable(z, order);
    for (const cplx r : roots) p = p * (x - r);
    return AnalyticSample{p, 1.0};
  };
}

}  // namespace

TEST_CASE("winding numbers of polynomials") {
  const auto f = poly({0.1, {0.0, 0.2}, {0.0, 0.2}, {3.0, 0.0}});
  CHECK(winding_count(f, Box{-1, 1, -1, 1}) == 3);
  CHECK(winding_count(f, Box{-1, 4, -1, 1}) == 4);
  CHECK(winding_count(f, Box{1, 2, -1, 1}) == 0);
  CHECK(winding_count(f, Circle{{0.0, 0.2}, 0.05}) == 2);
  CHECK(winding_count(f, Circle{0.1, 1e-6}) == 1);
  CHECK(kind_of([&] { winding_count(f, Box{0.1, 1, -1, 1}); }) == ErrorKind::OnContourZero);
}

TEST_CASE("windings are additive over a subdivision") {
  const auto f = poly({{0.3, 0.1}, {-0.4, 0.35}, {0.2, -0.6}, {-0.7, -0.2}, {0.55, 0.55}});
  const Box whole{-1, 1, -1, 1};
  const double sx = 0.013, sy = -0.021;
  const Box q[4] = {{-1, sx, -1, sy}, {sx, 1, -1, sy}, {-1, sx, sy, 1}, {sx, 1, sy, 1}};
  int sum = 0;
  for (const auto& b : q) sum += winding_count(f, b);
  CHECK(sum == winding_count(f, whole));
  CHECK(sum == 5);
}

TEST_CASE("zero location with multiplicities") {
  const auto f = poly({{0.3, 0.1}, {-0.4, 0.35}, {-0.4, 0.35}, {0.9, -0.2}});
  LocateOptions o;
  o.tol = 1e-11;
  LocateDiagnostics d;
  const auto pts = locate_zeros(f, Box{-1, 1, -1, 1}, o, &d);
  REQUIRE(pts.size() == 3);
  // sorted by real part
  CHECK(std::abs(pts[0].z - cplx(-0.4, 0.35)) < 1e-9);
  CHECK(pts[0].multiplicity == 2);
  CHECK(std::abs(pts[1].z - cplx(0.3, 0.1)) < 1e-10);
  CHECK(pts[1].multiplicity == 1);
  CHECK(pts[1].method == PointMethod::WindingNewton);
  CHECK(std::abs(pts[2].z - cplx(0.9, -0.2)) < 1e-10);
  CHECK(d.boxes > 0);
  CHECK(d.additivity_checks > 0);
}

TEST_CASE("excluded zones are skipped") {
  const auto f = poly({0.0, 0.5});
  LocateOptions o;
  o.excluded.push_back({0.0, 0.05, "origin"});
  const auto pts = locate_zeros(f, Box{-1, 1, -1, 1}, o);
  REQUIRE(pts.size() == 1);
  CHECK(std::abs(pts[0].z - 0.5) < 1e-9);
}

TEST_CASE("free spectrum in a box") {
  const auto rep = spectrum(make_spec(LinearFree{1.0}), Box{-2.5, 2.5, -0.5, 0.5});
  REQUIRE(rep.eigenpoints.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(rep.eigenpoints[k].z - static_cast<double>(k - 2)) < 1e-8);
    CHECK(rep.eigenpoints[k].multiplicity == 1);
  }
  CHECK(rep.excluded_zones.empty());
  CHECK(kind_of([] { spectrum(make_spec(LinearFree{1.0}), Box{1, 1, -1, 1}); }) == ErrorKind::ConfigError);
}

TEST_CASE("regularized spectra report the accumulation point") {
  SpectrumOptions o;
  o.origin_radius = 0.05;
  const auto rep = spectrum(make_spec(QGeometric{0.5, 0.8}), Box{-0.7, 1.1, -0.2, 0.2}, o);
  REQUIRE(!rep.excluded_zones.empty());
  CHECK(std::abs(rep.excluded_zones.front().center) == 0.0);
  CHECK(!rep.unknown_points.empty());
  for (const auto& p : rep.eigenpoints) CHECK(std::abs(p.z) > 0.05);
  // q^k for k = 0..4 and -beta^2 q^k for k = 0..3
  CHECK(rep.eigenpoints.size() == 9);
}

TEST_CASE("generic mode fences the diagonal") {
  SpectrumOptions o;
  o.force_generic = true;
  const auto rep = spectrum(make_spec(QGeometric{0.5, 0.8}), Box{-0.7, -0.1, -0.2, 0.2}, o);
  CHECK(rep.mode == Mode::Generic);
  REQUIRE(rep.eigenpoints.size() == 3);
  CHECK(std::abs(rep.eigenpoints[0].z + 0.64) < 1e-8);
  CHECK(std::abs(rep.eigenpoints[1].z + 0.32) < 1e-8);
  CHECK(std::abs(rep.eigenpoints[2].z + 0.16) < 1e-8);
}

TEST_CASE("colliding eigenvalues are double with a Jordan chain") {
  const cplx q = 0.5, beta(0.0, std::sqrt(0.5));
  const auto sp = make_spec(QGeometric{q, beta});
  SpectrumOptions o;
  o.origin_radius = 0.1;
  const auto rep = spectrum(sp, Box{0.2, 1.1, -0.1, 0.1}, o);
  // 0.25 and 0.5 are hit by both zero sequences, 1 only by one
  REQUIRE(rep.eigenpoints.size() == 3);
  CHECK(std::abs(rep.eigenpoints[0].z - 0.25) < 1e-6);
  CHECK(rep.eigenpoints[0].multiplicity == 2);
  CHECK(std::abs(rep.eigenpoints[1].z - 0.5) < 1e-6);
  CHECK(rep.eigenpoints[1].multiplicity == 2);
  CHECK(std::abs(rep.eigenpoints[2].z - 1.0) < 1e-8);
  CHECK(rep.eigenpoints[2].multiplicity == 1);

  const auto m = multiplicity(sp, 0.5);
  CHECK(m.nu_a == 2);
  const auto chain = generalized_eigvecs(sp, 0.5, 2, -6, 12);
  REQUIRE(chain.chain.size() == 2);
  for (double r : chain.residuals) CHECK(r < 1e-10);
  CHECK(multiplicity(make_spec(LinearFree{1.0}), 1.0).nu_a == 1);
  CHECK(kind_of([&] { generalized_eigvecs(sp, 0.5, 2, 0, 3); }) == ErrorKind::WindowTooSmall);
}

TEST_CASE("finite sections approach the spectrum") {
  const double a = 0.3;
  const auto bs = make_spec(BesselCompact{a, 0.7});
  const cplx target = 1.0 / (1.0 + a);
  double prev = 1.0;
  for (long N : {8L, 12L, 16L}) {
    const auto sec = finite_section_zeros(bs, N, Box{0.6, 0.95, -0.1, 0.1});
    REQUIRE(!sec.zeros.empty());
    double best = 1.0;
    for (const auto& s : sec.zeros) best = std::min(best, std::abs(s.point.z - target));
    CHECK(best <= prev);
    prev = best;
  }
  CHECK(std::string(SectionReport::label) == "DIAGNOSTIC");
  CHECK(kind_of([&] { finite_section_zeros(bs, 0, Box{0.6, 0.95, -0.1, 0.1}); }) == ErrorKind::WindowTooSmall);
}

TEST_CASE("residual norm") {
  const auto lf = make_spec(LinearFree{1.0});
  const auto ev = eigenvector(lf, 1.0, -8, 8, 1e-12, Mode::Regularized);
  CHECK(residual_norm(lf, 1.0, ev) < 1e-10);
  CHECK(residual_norm(lf, 1.5, ev) > 1e-2);

  SolutionSlice tiny;
  tiny.first = 0;
  tiny.last = 3;
  tiny.values = {1.0, 1.0, 1.0, 1.0};
  CHECK(kind_of([&] { residual_norm(lf, 1.0, tiny); }) == ErrorKind::WindowTooSmall);
  SolutionSlice zero;
  zero.first = 0;
  zero.last = 5;
  zero.values.assign(6, 0.0);
  CHECK(kind_of([&] { residual_norm(lf, 1.0, zero); }) == ErrorKind::ZeroVector);
}
