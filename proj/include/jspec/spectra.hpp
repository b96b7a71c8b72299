#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "jspec/charfn.hpp"

namespace jspec {

// A sample of an analytic function: Taylor jet at z plus a magnitude scale
// used for the "is this node effectively zero" floor.
struct AnalyticSample {
  Jet value;
  double scale = 1.0;
};

// fn(z, order, tol): jet of the requested order, value accurate to tol * scale.
using AnalyticFn = std::function<AnalyticSample(cplx z, int order, double tol)>;

struct Box {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;

  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  double diameter() const { return std::hypot(re_max - re_min, im_max - im_min); }
  bool contains(cplx z, double slack = 0.0) const {
    return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
           z.imag() <= im_max + slack;
  }
};

struct Circle {
  cplx center;
  double radius = 0;
};

using Contour = std::variant<Box, Circle>;

struct WindingOptions {
  double floor = 1e-13;       // |fn| < floor * scale on a node is a contour hit
  double eval_tol = 1e-8;
  int max_bisections = 22;
};

struct WindingStats {
  long evaluations = 0;
};

int winding_count(const AnalyticFn& fn, const Contour& contour, const WindingOptions& opts = {},
                  WindingStats* stats = nullptr);

enum class PointMethod { WindingNewton, WindingOnly };
std::string_view to_string(PointMethod m);

struct Eigenpoint {
  cplx z;
  int multiplicity = 1;
  double newton_residual = 0.0;  // |fn(z)| / scale
  PointMethod method = PointMethod::WindingNewton;
  bool merged = false;
  double certify_radius = 0.0;
};

struct ExcludedZone {
  cplx center;
  double radius = 0;
  std::string reason;
};

struct LocateOptions {
  double tol = 1e-10;
  int max_depth = 48;
  double cluster_tol = 0.0;  // 0: 10 * tol
  std::vector<ExcludedZone> excluded;
  WindingOptions winding;
  long max_boxes = 20000;
};

struct LocateDiagnostics {
  int max_depth_reached = 0;
  long boxes = 0;
  long evaluations = 0;
  long dropped_boxes = 0;  // boxes discarded next to excluded zones
  int jitters = 0;
  long additivity_checks = 0;
};

std::vector<Eigenpoint> locate_zeros(const AnalyticFn& fn, const Box& box, const LocateOptions& opts,
                                     LocateDiagnostics* diag = nullptr);

struct UnknownPoint {
  cplx z;
  std::string note;
};

struct SpectrumOptions {
  double tol = 1e-10;
  int max_depth = 48;
  double origin_radius = 0.0;     // 0: 10 * tol
  double exclusion_radius = 1e-4; // generic mode margin around diagonal entries
  bool force_generic = false;
};

struct SpectrumReport {
  Box region;
  std::vector<Eigenpoint> eigenpoints;
  std::vector<ExcludedZone> excluded_zones;
  std::vector<UnknownPoint> unknown_points;
  Mode mode = Mode::Regularized;
  LocateDiagnostics locate;
  long max_window = 0;
};

// The function whose zeros are the eigenvalues: F~ for classed specs, F otherwise.
AnalyticFn spectral_function(const OperatorSpec& spec, Mode mode, long* max_window = nullptr);

SpectrumReport spectrum(const OperatorSpec& spec, const Box& region, const SpectrumOptions& opts = {});

struct MultiplicityReport {
  int nu_a = 0;
  std::vector<double> derivative_profile;  // |F~^(k)(z0)|, k = 0..nu_a+1
  double radius = 0.0;
};

MultiplicityReport multiplicity(const OperatorSpec& spec, cplx z0, double tol = 1e-10);

struct ChainReport {
  std::vector<SolutionSlice> chain;  // d^j f / dz^j, j = 0..nu-1
  std::vector<double> residuals;     // relative residual of (J - z0) f^(j) = j f^(j-1)
};

ChainReport generalized_eigvecs(const OperatorSpec& spec, cplx z0, int nu, long a, long b,
                                double tol = 1e-10);

// Relative residual of (J - z0) u^(j) - j u^(j-1) over the interior indices.
double chain_residual(const OperatorSpec& spec, cplx z0, const SolutionSlice& u,
                      const SolutionSlice* prev, int j);

struct SectionPoint {
  Eigenpoint point;
  double drift = 0.0;  // distance to the nearest zero of the N-1 section
};

struct SectionReport {
  long N = 0;
  std::vector<SectionPoint> zeros;
  static constexpr const char* label = "DIAGNOSTIC";
};

// Zeros of det(J_[-N,N] - z) in box.
SectionReport finite_section_zeros(const OperatorSpec& spec, long N, const Box& box,
                                   double tol = 1e-10);

double residual_norm(const OperatorSpec& spec, cplx z, const SolutionSlice& slice);

}  // namespace jspec
