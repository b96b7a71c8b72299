#include "jspec/charfn.hpp"

#include <algorithm>
#include <cmath>

#include "kernel.hpp"
#include "solver.hpp"

namespace jspec {

using detail::kInf;

CharValue charfn(const OperatorSpec& spec, cplx z, double tol) {
  EvalOptions o;
  o.tol = tol;
  return charfn(spec, z, o, Mode::Generic);
}

CharValue charfn(const OperatorSpec& spec, cplx z, const EvalOptions& opts, Mode mode) {
  detail::check_point(spec, z, mode);
  return detail::with_model(spec, [&](const auto& m) {
    const auto ev = detail::eval_char<cplx>(m, spec, mode, z, opts, 0);
    return CharValue{ev.joined.value, ev.K, ev.joined.err, ev.cond, ev.joined.scale};
  });
}

JetCharValue charfn_jet(const OperatorSpec& spec, cplx z, int order, const EvalOptions& opts,
                        Mode mode) {
  detail::check_point(spec, z, mode);
  return detail::with_model(spec, [&](const auto& m) {
    const auto ev = detail::eval_char<Jet>(m, spec, mode, Jet::variable(z, order), opts, 0);
    return JetCharValue{ev.joined.value, ev.K, ev.joined.err, ev.cond, ev.joined.scale};
  });
}

namespace {

SolutionSlice make_slice(SolutionKind kind, cplx z, long a, long b, Mode mode, long K) {
  SolutionSlice s;
  s.kind = kind;
  s.z = z;
  s.first = a;
  s.last = b;
  s.regularized = mode == Mode::Regularized;
  s.window = K;
  s.values.reserve(static_cast<std::size_t>(std::max(0L, b - a + 1)));
  return s;
}

}  // namespace

SolutionSlice solution_f(const OperatorSpec& spec, cplx z, long a, long b, double tol) {
  EvalOptions o;
  o.tol = tol;
  return solution_f(spec, z, a, b, o, Mode::Generic);
}

SolutionSlice solution_g(const OperatorSpec& spec, cplx z, long a, long b, double tol) {
  EvalOptions o;
  o.tol = tol;
  return solution_g(spec, z, a, b, o, Mode::Generic);
}

SolutionSlice solution_f(const OperatorSpec& spec, cplx z, long a, long b, const EvalOptions& opts,
                         Mode mode) {
  detail::check_point(spec, z, mode);
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<cplx>(m, spec, mode, z, opts, a, b);
    SolutionSlice s = make_slice(SolutionKind::F, z, a, b, mode, sol.K);
    for (long n = a; n <= b; ++n) {
      s.values.push_back(sol.f(n));
      s.tail_err = std::max(s.tail_err, sol.f_err(n));
    }
    return s;
  });
}

SolutionSlice solution_g(const OperatorSpec& spec, cplx z, long a, long b, const EvalOptions& opts,
                         Mode mode) {
  detail::check_point(spec, z, mode);
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<cplx>(m, spec, mode, z, opts, a, b);
    SolutionSlice s = make_slice(SolutionKind::G, z, a, b, mode, sol.K);
    for (long n = a; n <= b; ++n) {
      s.values.push_back(sol.g(n));
      s.tail_err = std::max(s.tail_err, sol.g_err(n));
    }
    return s;
  });
}

std::vector<SolutionSlice> solution_f_derivatives(const OperatorSpec& spec, cplx z, int order,
                                                  long a, long b, const EvalOptions& opts,
                                                  Mode mode) {
  detail::check_point(spec, z, mode);
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<Jet>(m, spec, mode, Jet::variable(z, order), opts, a, b);
    std::vector<SolutionSlice> out;
    for (int j = 0; j <= order; ++j) {
      SolutionSlice s = make_slice(SolutionKind::F, z, a, b, mode, sol.K);
      for (long n = a; n <= b; ++n) s.values.push_back(sol.f(n).derivative(j));
      if (j == 0)
        for (long n = a; n <= b; ++n) s.tail_err = std::max(s.tail_err, sol.f_err(n));
      else
        s.tail_err = std::numeric_limits<double>::quiet_NaN();
      out.push_back(std::move(s));
    }
    return out;
  });
}

cplx wronskian(const OperatorSpec& spec, cplx z, long n, double tol, Mode mode) {
  detail::check_point(spec, z, mode);
  EvalOptions o;
  o.tol = tol;
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<cplx>(m, spec, mode, z, o, n, n + 1);
    return m.w(n) * (sol.f(n) * sol.g(n + 1) - sol.f(n + 1) * sol.g(n));
  });
}

namespace {

template <class Sol>
long pick_split(const Sol& sol) {
  // first n (scanning outward from 0) whose left functional is not small
  static constexpr long order[] = {0, 1, -1, 2, -2, 3, -3};
  double best = 0.0;
  for (long n : order) best = std::max(best, std::abs(sol.left_functional(n)));
  if (!(best > 0.0) || !std::isfinite(best))
    raise(ErrorKind::DegenerateDenominator, "left functional vanishes on every probed index");
  for (long n : order)
    if (std::abs(sol.left_functional(n)) > 0.1 * best) return n;
  return 0;
}

}  // namespace

cplx a_ratio(const OperatorSpec& spec, cplx z, double tol, Mode mode) {
  detail::check_point(spec, z, mode);
  EvalOptions o;
  o.tol = tol;
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<cplx>(m, spec, mode, z, o, -4, 4);
    const long n = pick_split(sol);
    const cplx g = sol.g(n);
    if (g == cplx(0.0)) raise(ErrorKind::DegenerateDenominator, "g vanishes at the split index");
    return sol.f(n) / g;
  });
}

SolutionSlice eigenvector(const OperatorSpec& spec, cplx z, long a, long b, double tol, Mode mode) {
  detail::check_point(spec, z, mode);
  EvalOptions o;
  o.tol = tol;
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<cplx>(m, spec, mode, z, o, std::min(a, -4L), std::max(b, 4L));
    const long split = pick_split(sol);
    const cplx A = sol.f(split) / sol.g(split);
    SolutionSlice s = make_slice(SolutionKind::F, z, a, b, mode, sol.K);
    for (long n = a; n <= b; ++n) {
      if (n >= split) {
        s.values.push_back(sol.f(n));
        s.tail_err = std::max(s.tail_err, sol.f_err(n));
      } else {
        s.values.push_back(A * sol.g(n));
        s.tail_err = std::max(s.tail_err, std::abs(A) * sol.g_err(n));
      }
    }
    return s;
  });
}

SumIdentity eigvec_sum_identity(const OperatorSpec& spec, cplx z, double tol, Mode mode) {
  detail::check_point(spec, z, mode);
  EvalOptions o;
  o.tol = tol;
  SumIdentity out;
  detail::with_model(spec, [&](const auto& m) {
    // first pass fixes the window; the second stores the whole of it
    const auto probe = detail::solve<cplx>(m, spec, mode, z, o, -4, 4);
    const long K = probe.K;
    EvalOptions fixed = o;
    fixed.fixed_window = K;
    const auto sol = detail::solve<cplx>(m, spec, mode, z, fixed, -K, K);
    const long split = pick_split(sol);
    const cplx A = sol.f(split) / sol.g(split);
    cplx right = 0.0, left = 0.0;
    double norm2 = 0.0;
    long terms = 0;
    for (long n = split; n <= K; ++n) {
      const cplx f = sol.f(n);
      right += f * f;
      norm2 += std::norm(f);
      ++terms;
      if (n > split + 8 && std::norm(f) < 1e-40 * norm2) break;
    }
    for (long n = split - 1; n >= -K; --n) {
      const cplx g = sol.g(n);
      left += g * g;
      norm2 += std::norm(A * g);
      ++terms;
      if (n < split - 8 && std::norm(A * g) < 1e-40 * norm2) break;
    }
    out.lhs = right + A * A * left;
    const JetCharValue d = charfn_jet(spec, z, 1, o, mode);
    out.rhs = A * d.value.derivative(1);
    out.residual = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.rhs));
    out.possible_degenerate = std::abs(out.lhs) <= std::max(tol, 1e-12) * norm2;
    out.window = K;
    out.terms = terms;
    return 0;
  });
  return out;
}

cplx green(const OperatorSpec& spec, cplx z, long i, long j, double tol, Mode mode) {
  const long lo = std::min(i, j), hi = std::max(i, j);
  const auto col = green_column(spec, z, lo, hi, hi, tol, mode);
  return col.back();
}

std::vector<cplx> green_column(const OperatorSpec& spec, cplx z, long j, long lo, long hi,
                               double tol, Mode mode) {
  detail::check_point(spec, z, mode);
  EvalOptions o;
  o.tol = tol;
  return detail::with_model(spec, [&](const auto& m) {
    const auto sol = detail::solve<cplx>(m, spec, mode, z, o, std::min(lo, j), std::max(hi, j));
    const double threshold =
        1e-8 * (mode == Mode::Generic ? std::exp(std::min(sol.cond, 700.0)) : sol.F.scale);
    if (std::abs(sol.F.value) < threshold)
      raise(ErrorKind::NearSpectrum, "characteristic function below the near-spectrum threshold");
    std::vector<cplx> out;
    for (long i = lo; i <= hi; ++i) {
      const long a = std::max(i, j), b = std::min(i, j);
      out.push_back(-sol.f(a) * sol.g(b) / sol.F.value);
    }
    return out;
  });
}

}  // namespace jspec
