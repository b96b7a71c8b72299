#pragma once

#include <vector>

#include "jspec/jet.hpp"
#include "jspec/sequence.hpp"

namespace jspec {

// Generic: plain F_J, f, g.  Regularized: the Hadamard-regularized F~, f~, g~
// of the operator's regularization class.
enum class Mode { Generic, Regularized };

struct EvalOptions {
  // Accepted when tail_err <= tol * max(1, scale).
  double tol = 1e-10;
  // > 0 pins the window [-K, K]; tail_err is then reported, not enforced.
  long fixed_window = 0;
  // false: plain truncation (no analytic tails), only with fixed_window.
  bool tails = true;
  long max_window = 1L << 20;
};

struct CharValue {
  cplx value;
  long window = 0;         // K of the window [-K, K]
  double tail_err = 0.0;   // certified bound on |value - exact|
  double condition_sum = 0.0;
  double scale = 1.0;      // majorant of |value|
};

struct JetCharValue {
  Jet value;
  long window = 0;
  double tail_err = 0.0;
  double condition_sum = 0.0;
  double scale = 1.0;
};

enum class SolutionKind { F, G };

struct SolutionSlice {
  long first = 0;
  long last = -1;
  std::vector<cplx> values;
  SolutionKind kind = SolutionKind::F;
  cplx z;
  bool regularized = false;
  long window = 0;
  double tail_err = 0.0;

  cplx at(long n) const { return values.at(static_cast<std::size_t>(n - first)); }
  std::size_t size() const { return values.size(); }
};

CharValue charfn(const OperatorSpec& spec, cplx z, double tol = 1e-10);
CharValue charfn(const OperatorSpec& spec, cplx z, const EvalOptions& opts, Mode mode);
JetCharValue charfn_jet(const OperatorSpec& spec, cplx z, int order, const EvalOptions& opts,
                        Mode mode);

SolutionSlice solution_f(const OperatorSpec& spec, cplx z, long a, long b, double tol = 1e-10);
SolutionSlice solution_g(const OperatorSpec& spec, cplx z, long a, long b, double tol = 1e-10);
SolutionSlice solution_f(const OperatorSpec& spec, cplx z, long a, long b, const EvalOptions& opts,
                         Mode mode);
SolutionSlice solution_g(const OperatorSpec& spec, cplx z, long a, long b, const EvalOptions& opts,
                         Mode mode);

// Slices of d^j f / dz^j at z for j = 0..order.
std::vector<SolutionSlice> solution_f_derivatives(const OperatorSpec& spec, cplx z, int order,
                                                  long a, long b, const EvalOptions& opts,
                                                  Mode mode);

cplx wronskian(const OperatorSpec& spec, cplx z, long n, double tol = 1e-10,
               Mode mode = Mode::Generic);

// A(z) with f = A g at an eigenvalue.
cplx a_ratio(const OperatorSpec& spec, cplx z, double tol = 1e-10, Mode mode = Mode::Generic);

// Eigenvector at an eigenvalue z: f for n >= split, A g below, so neither
// solution is iterated in its unstable direction.
SolutionSlice eigenvector(const OperatorSpec& spec, cplx z, long a, long b, double tol = 1e-10,
                          Mode mode = Mode::Generic);

struct SumIdentity {
  cplx lhs;
  cplx rhs;
  double residual = 0.0;
  bool possible_degenerate = false;
  long window = 0;
  long terms = 0;
};

SumIdentity eigvec_sum_identity(const OperatorSpec& spec, cplx z, double tol = 1e-10,
                                Mode mode = Mode::Generic);

cplx green(const OperatorSpec& spec, cplx z, long i, long j, double tol = 1e-10,
           Mode mode = Mode::Generic);

// G_{i,j} for i in [lo, hi].
std::vector<cplx> green_column(const OperatorSpec& spec, cplx z, long j, long lo, long hi,
                               double tol = 1e-10, Mode mode = Mode::Generic);

}  // namespace jspec
