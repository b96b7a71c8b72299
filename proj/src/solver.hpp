#pragma once

// Window selection and solution assembly on top of the sweep kernel.

#include <algorithm>
#include <cmath>
#include <string>

#include "kernel.hpp"

namespace jspec::detail {

inline void check_point(const OperatorSpec& spec, cplx z, Mode mode) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    raise(ErrorKind::ZeroArgument, "non-finite evaluation point");
  if (mode == Mode::Regularized) {
    const auto kind = spec.reg_class().kind;
    if (kind == RegKind::None) raise(ErrorKind::WrongClass, "operator has no regularization class");
    if ((kind == RegKind::Compact || kind == RegKind::Combined) && z == cplx(0.0))
      raise(ErrorKind::ZeroArgument, "regularized function is undefined at the origin");
    return;
  }
  for (const cplx d : spec.der_points())
    if (d == z) raise(ErrorKind::PoleHit, "z is an accumulation point of the diagonal");
  if (spec.is_builtin()) {
    const auto book = pole_book(spec, z, -1, 1);
    if (!book.indices.empty())
      raise(ErrorKind::PoleHit, "z equals lambda_" + std::to_string(book.indices.front()));
  }
}

template <class S>
struct CharEval {
  Joined<S> joined;
  long K = 0;
  double cond = 0.0;
};

template <class M>
long initial_window(const M& m, cplx z0, const EvalOptions& o, long need) {
  long K = std::max({m.min_window(z0), need, 16L});
  for (int it = 0; it < 80 && K < o.max_window; ++it) {
    const double e = m.base.template eps_tail<cplx>(Side::Right, K, z0).error() +
                     m.base.template eps_tail<cplx>(Side::Left, K, z0).error();
    if (e <= 0.25 * o.tol) break;
    K = std::min(o.max_window, static_cast<long>(std::ceil(K * 1.5)));
  }
  return K;
}

template <class S, class M>
double condition_of(const Kernel<S, M>& k, Mode mode, double scale) {
  if (mode == Mode::Regularized) return std::log(std::max(scale, 1e-300));
  const cplx z0 = k.z0;
  return k.cond + k.m.base.template eps_tail<cplx>(Side::Right, k.K, z0).s +
         k.m.base.template eps_tail<cplx>(Side::Left, k.K, z0).s;
}

inline void require_certifiable(const OperatorSpec& spec, Mode mode, const EvalOptions& o) {
  if (o.fixed_window > 0) return;
  if (!o.tails) raise(ErrorKind::NoTailBound, "plain truncation needs a fixed window");
  if (!spec.has_tail_metadata())
    raise(ErrorKind::NoTailBound, "custom family declares no tail bound");
  if (mode == Mode::Regularized && !spec.is_builtin()) {
    const auto& c = std::get<CustomFamily>(spec.family());
    if (!c.tails || !c.tails->hadamard_tail)
      raise(ErrorKind::NoTailBound, "custom family declares no Hadamard tail bound");
  }
}

inline long next_window(long K, double err, double target, long cap) {
  double factor = 2.0;
  if (std::isfinite(err) && target > 0.0) factor = std::clamp(std::cbrt(err / target) * 1.3, 1.5, 64.0);
  return std::min(cap, static_cast<long>(std::ceil(static_cast<double>(K) * factor)));
}

template <class S, class M>
CharEval<S> eval_char(const M& m, const OperatorSpec& spec, Mode mode, const S& z,
                      const EvalOptions& o, long need) {
  require_certifiable(spec, mode, o);
  const cplx z0 = value_of(z);
  const bool fixed = o.fixed_window > 0;
  long K = fixed ? o.fixed_window : initial_window(m, z0, o, need);
  for (;;) {
    Kernel<S, M> k(m, mode, spec.reg_class(), z, K, o.tails);
    const auto R = k.right(1, 2);
    const auto L = k.left(-1, 0);
    CharEval<S> ev;
    ev.joined = join(k, L, R, 0);
    ev.K = K;
    ev.cond = condition_of(k, mode, ev.joined.scale);
    const double target = o.tol * std::max(1.0, ev.joined.scale);
    if (fixed || ev.joined.err <= target) return ev;
    if (K >= o.max_window)
      raise(ErrorKind::Budget, "window cap reached before the tail bound met the tolerance");
    K = next_window(K, ev.joined.err, target, o.max_window);
  }
}

template <class S>
struct Solved {
  long K = 0;
  Sweep<S> R, L;
  std::vector<S> P;
  std::vector<cplx> w;
  long plo = 0;
  Joined<S> F;
  double cond = 0.0;

  const S& p(long n) const { return P[static_cast<std::size_t>(n - plo)]; }
  cplx wv(long n) const { return w[static_cast<std::size_t>(n - plo)]; }
  S f(long n) const { return p(n) * R.at(n + 1); }
  double f_err(long n) const { return abs_value(p(n)) * R.err_at(n + 1); }
  S g(long n) const { return L.at(n - 1) / (wv(n - 1) * p(n - 1)); }
  double g_err(long n) const { return L.err_at(n - 1) / std::abs(wv(n - 1) * value_of(p(n - 1))); }
  cplx left_functional(long n) const { return value_of(L.at(n - 1)); }
};

// f and g on [lo, hi] plus F joined at 0, on one window.
template <class S, class M>
Solved<S> solve(const M& m, const OperatorSpec& spec, Mode mode, const S& z, const EvalOptions& o,
                long lo, long hi) {
  const long need = std::max(std::abs(lo), std::abs(hi)) + 3;
  const auto ev = eval_char<S>(m, spec, mode, z, o, need);
  long K = std::max(ev.K, o.fixed_window > 0 ? 0L : need);
  for (;;) {
    Kernel<S, M> k(m, mode, spec.reg_class(), z, K, o.tails);
    Solved<S> s;
    s.K = K;
    s.R = k.right(std::min(lo + 1, 1L), std::max(hi + 1, 2L));
    s.L = k.left(std::min(lo - 1, -1L), std::max(hi - 1, 0L));
    s.F = join(k, s.L, s.R, 0);
    // the two sweeps overlap on [lo, hi], so k.cond double counts there
    s.cond = mode == Mode::Generic ? ev.cond : condition_of(k, mode, s.F.scale);
    s.plo = lo - 1;
    s.P = p_tilde(k, lo - 1, std::max(hi, 0L));
    s.w.reserve(s.P.size());
    for (long n = lo - 1; n <= std::max(hi, 0L); ++n) s.w.push_back(m.w(n));
    if (o.fixed_window > 0) return s;
    double worst = 0.0;
    for (long n = lo + 1; n <= hi + 1; ++n)
      worst = std::max(worst, s.R.err_at(n) / std::max(s.R.maj_at(n), 1e-300));
    for (long n = lo - 1; n <= hi - 1; ++n)
      worst = std::max(worst, s.L.err_at(n) / std::max(s.L.maj_at(n), 1e-300));
    if (worst <= o.tol) return s;
    if (K >= o.max_window)
      raise(ErrorKind::Budget, "window cap reached before solution tails met the tolerance");
    K = next_window(K, worst, o.tol, o.max_window);
  }
}

}  // namespace jspec::detail
