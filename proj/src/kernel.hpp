#pragma once

// Three-term sweeps for the tail functionals of the (regularized) F.
//
// Each index k carries rho_k = (z - lambda_k) c_k: rho = 1, c = 1/(z - lambda)
// in generic mode; in regularized mode rho is the Hadamard factor of index k
// and c = rho / (z - lambda), which stays finite at z = lambda_k.  With
// a_k = w_k^2 c_k c_{k+1}:
//   R_n = rho_n R_{n+1} - a_n R_{n+2}      (R_n = prod_{k>=n} rho_k * F_n^inf)
//   L_n = rho_n L_{n-1} - a_{n-1} L_{n-2}  (L_n = prod_{k<=n} rho_k * F_-inf^n)
// Every sweep carries an absolute-value majorant and an error majorant
// seeded by the analytic tail bounds.

#include <algorithm>
#include <cmath>
#include <vector>

#include "family_model.hpp"
#include "jspec/charfn.hpp"

namespace jspec::detail {

enum class Factor { Plain, Phi, Psi };

inline Factor factor_at(Mode mode, const RegClass& rc, long k) {
  if (mode == Mode::Generic) return Factor::Plain;
  switch (rc.kind) {
    case RegKind::Compact: return Factor::Phi;
    case RegKind::CompactResolvent: return Factor::Psi;
    case RegKind::Combined: return k >= 1 ? Factor::Phi : Factor::Psi;
    case RegKind::None: break;
  }
  raise(ErrorKind::WrongClass, "operator has no regularization class");
}

template <class S>
S convergence_exp(const S& u, int p) {
  if (p <= 1) return lift<S>(1.0, u);
  S sum = u;
  S pw = u;
  for (int j = 2; j < p; ++j) {
    pw = pw * u;
    sum = sum + pw / static_cast<double>(j);
  }
  return exp(sum);
}

template <class S>
struct RhoC {
  S rho;
  S c;
};

template <class S>
RhoC<S> rho_c(Factor f, int p, cplx lam, const S& z) {
  switch (f) {
    case Factor::Plain: {
      if (value_of(z) == lam) raise(ErrorKind::PoleHit, "z coincides with a diagonal entry");
      return {lift<S>(1.0, z), 1.0 / (z - lam)};
    }
    case Factor::Phi: {
      const S u = lam / z;
      const S e = convergence_exp(u, p);
      return {(1.0 - u) * e, e / z};
    }
    case Factor::Psi: {
      if (lam == cplx(0.0)) return {z, lift<S>(1.0, z)};
      const S u = z / lam;
      const S e = convergence_exp(u, p);
      return {(1.0 - u) * e, e / (-lam)};
    }
  }
  return {z, z};
}

template <class S>
struct Sweep {
  long first = 0;
  std::vector<S> v;
  std::vector<double> maj;
  std::vector<double> err;

  bool has(long n) const { return n >= first && n < first + static_cast<long>(v.size()); }
  const S& at(long n) const { return v[static_cast<std::size_t>(n - first)]; }
  double maj_at(long n) const { return maj[static_cast<std::size_t>(n - first)]; }
  double err_at(long n) const { return err[static_cast<std::size_t>(n - first)]; }
};

template <class S>
struct LogTail {
  S value;
  double err = 0.0;
};

template <class S, class M>
struct Kernel {
  const M& m;
  Mode mode;
  RegClass rc;
  S z;
  cplx z0;
  long K;
  bool tails = true;
  double cond = 0.0;  // generic mode: sum |eps| over swept pairs

  Kernel(const M& model, Mode md, RegClass cls, const S& zz, long window, bool use_tails)
      : m(model), mode(md), rc(cls), z(zz), z0(value_of(zz)), K(window), tails(use_tails) {}

  RhoC<S> at(long k) const { return rho_c(factor_at(mode, rc, k), rc.p, m.lambda(k), z); }
  S a_at(long k, const S& ck, const S& ck1) const { return m.w2(k) * ck * ck1; }

  // Sum over the tail beyond the window of log rho_k.
  LogTail<S> log_tail(Side side, long KK) const {
    LogTail<S> out{0.0 * z, 0.0};
    if (mode == Mode::Generic) return out;
    const long k_edge = side == Side::Right ? KK + 1 : -KK - 1;
    const Factor f = factor_at(mode, rc, k_edge);
    if constexpr (requires { m.base.hadamard_bound(side, KK, z0); }) {
      out.err = m.base.hadamard_bound(side, KK, z0);
      return out;
    }
    const bool recip = f == Factor::Psi;
    const S u0 = recip ? z : 1.0 / z;
    const double au = std::abs(value_of(u0));
    const double radius = m.base.tail_radius(side, KK, recip);
    if (!(au * radius <= 0.5)) {
      out.err = kInf;
      return out;
    }
    S upow = ipow(u0, rc.p);
    double bound_next = kInf;
    for (int j = rc.p; j < 400; ++j) {
      const cplx pj = m.base.power_sum(side, KK, j, recip);
      out.value = out.value - upow * pj / static_cast<double>(j);
      bound_next = std::pow(au, j + 1) * m.base.abs_power_sum(side, KK, j + 1, recip) / (j + 1);
      if (2.0 * bound_next < 1e-18 * (1.0 + abs_value(out.value))) break;
      upow = upow * u0;
    }
    out.err = 2.0 * bound_next;
    return out;
  }

  struct Start {
    S near, far;
    double maj_near, maj_far, err_near, err_far;
  };

  // Values at K+1, K+2 (right) or -K-1, -K-2 (left).
  Start start(Side side) const {
    Start s;
    if (!tails) {
      s.near = lift<S>(1.0, z);
      s.far = 0.0 * z;
      s.maj_near = 1.0;
      s.maj_far = 0.0;
      s.err_near = s.err_far = kInf;
      return s;
    }
    auto one = [&](long KK, S& v, double& maj, double& err) {
      const auto t = m.base.template eps_tail<S>(side, KK, z);
      const S tv = t.value();
      const double dt = t.error();
      const double at = abs_value(tv);
      if (mode == Mode::Generic) {
        v = tv;
        maj = at + dt;
        err = dt;
        return;
      }
      const auto h = log_tail(side, KK);
      const S pi = exp(h.value);
      const double ap = abs_value(pi);
      const double dp = std::isfinite(h.err) ? ap * std::expm1(h.err) : kInf;
      v = pi * tv;
      maj = (ap + dp) * (at + dt);
      err = ap * dt + dp * (at + dt);
    };
    one(K, s.near, s.maj_near, s.err_near);
    one(K + 1, s.far, s.maj_far, s.err_far);
    return s;
  }

  // R_n for n in [lo, min(store_hi, K+2)].
  Sweep<S> right(long lo, long store_hi) {
    Sweep<S> out;
    const long hi = std::min(store_hi, K + 2);
    out.first = lo;
    const std::size_t len = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    out.v.assign(len, 0.0 * z);
    out.maj.assign(len, 0.0);
    out.err.assign(len, 0.0);
    auto put = [&](long n, const S& v, double mj, double e) {
      if (n < lo || n > hi) return;
      const auto i = static_cast<std::size_t>(n - lo);
      out.v[i] = v;
      out.maj[i] = mj;
      out.err[i] = e;
    };
    const Start s = start(Side::Right);
    S r2 = s.far, r1 = s.near;
    double m2 = s.maj_far, m1 = s.maj_near, e2 = s.err_far, e1 = s.err_near;
    put(K + 2, r2, m2, e2);
    put(K + 1, r1, m1, e1);
    S c_next = at(K + 1).c;
    for (long n = K; n >= lo; --n) {
      const RhoC<S> rcn = at(n);
      const S a = a_at(n, rcn.c, c_next);
      const double ar = abs_value(rcn.rho), aa = abs_value(a);
      const S r = rcn.rho * r1 - a * r2;
      const double mm = ar * m1 + aa * m2;
      const double ee = ar * e1 + aa * e2;
      if (mode == Mode::Generic) cond += aa;
      r2 = r1;
      r1 = r;
      m2 = m1;
      m1 = mm;
      e2 = e1;
      e1 = ee;
      c_next = rcn.c;
      put(n, r, mm, ee);
    }
    return out;
  }

  // L_n for n in [max(store_lo, -K-2), hi].
  Sweep<S> left(long store_lo, long hi) {
    Sweep<S> out;
    const long lo = std::max(store_lo, -K - 2);
    out.first = lo;
    const std::size_t len = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    out.v.assign(len, 0.0 * z);
    out.maj.assign(len, 0.0);
    out.err.assign(len, 0.0);
    auto put = [&](long n, const S& v, double mj, double e) {
      if (n < lo || n > hi) return;
      const auto i = static_cast<std::size_t>(n - lo);
      out.v[i] = v;
      out.maj[i] = mj;
      out.err[i] = e;
    };
    const Start s = start(Side::Left);
    S l2 = s.far, l1 = s.near;
    double m2 = s.maj_far, m1 = s.maj_near, e2 = s.err_far, e1 = s.err_near;
    put(-K - 2, l2, m2, e2);
    put(-K - 1, l1, m1, e1);
    S c_prev = at(-K - 1).c;
    for (long n = -K; n <= hi; ++n) {
      const RhoC<S> rcn = at(n);
      const S a = a_at(n - 1, c_prev, rcn.c);
      const double ar = abs_value(rcn.rho), aa = abs_value(a);
      const S l = rcn.rho * l1 - a * l2;
      const double mm = ar * m1 + aa * m2;
      const double ee = ar * e1 + aa * e2;
      if (mode == Mode::Generic) cond += aa;
      l2 = l1;
      l1 = l;
      m2 = m1;
      m1 = mm;
      e2 = e1;
      e1 = ee;
      c_prev = rcn.c;
      put(n, l, mm, ee);
    }
    return out;
  }
};

template <class S>
struct Joined {
  S value;
  double err = 0.0;
  double scale = 0.0;
};

// F = L_j R_{j+1} - a_j L_{j-1} R_{j+2}.
template <class S, class M>
Joined<S> join(Kernel<S, M>& k, const Sweep<S>& L, const Sweep<S>& R, long j) {
  const S cj = k.at(j).c;
  const S cj1 = k.at(j + 1).c;
  const S a = k.a_at(j, cj, cj1);
  const double aa = abs_value(a);
  Joined<S> out;
  out.value = L.at(j) * R.at(j + 1) - a * L.at(j - 1) * R.at(j + 2);
  out.scale = L.maj_at(j) * R.maj_at(j + 1) + aa * L.maj_at(j - 1) * R.maj_at(j + 2);
  out.err = L.err_at(j) * R.maj_at(j + 1) + L.maj_at(j) * R.err_at(j + 1) +
            aa * (L.err_at(j - 1) * R.maj_at(j + 2) + L.maj_at(j - 1) * R.err_at(j + 2));
  return out;
}

// Normalizing products: Pt_n = prod_{k=1}^n w_{k-1} c_k (n >= 0) and
// prod_{k=n+1}^0 1/(c_k w_{k-1}) (n < 0), over [lo, hi].
template <class S, class M>
std::vector<S> p_tilde(Kernel<S, M>& k, long lo, long hi) {
  std::vector<S> out(static_cast<std::size_t>(hi - lo + 1), 0.0 * k.z);
  auto put = [&](long n, const S& v) {
    if (n >= lo && n <= hi) out[static_cast<std::size_t>(n - lo)] = v;
  };
  S p = lift<S>(1.0, k.z);
  put(0, p);
  for (long n = 1; n <= hi; ++n) {
    p = p * (k.m.w(n - 1) * k.at(n).c);
    put(n, p);
  }
  p = lift<S>(1.0, k.z);
  for (long n = -1; n >= lo; --n) {
    p = p / (k.at(n + 1).c * k.m.w(n));
    put(n, p);
  }
  return out;
}

}  // namespace jspec::detail
