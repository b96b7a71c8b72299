#pragma once

// Per-family evaluation models: entries, analytic tail sums, power sums.
// Tail conventions for a window [-K, K]:
//   eps tails cover pairs k >= K+1 (right) and k <= -K-2 (left);
//   power sums cover indices k >= K+1 (right) and k <= -K-1 (left).

#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <vector>

#include "jspec/jet.hpp"
#include "jspec/sequence.hpp"
#include "special.hpp"

namespace jspec::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

template <class S>
struct EpsTail {
  S sigma1;
  S sigma2;
  bool expanded = false;  // sigma terms carry the first two orders
  double s = 0.0;         // bound on the sum of |eps| over the tail

  S value() const { return expanded ? 1.0 - sigma1 + sigma2 : 1.0 + 0.0 * sigma1; }
  double error() const {
    if (!std::isfinite(s)) return kInf;
    return exp_remainder(s, expanded ? 2 : 0);
  }
};

struct OverrideTable {
  long lo = 1;
  long hi = 0;
  std::vector<std::optional<cplx>> lam;
  std::vector<std::optional<cplx>> w;

  bool has_lambda(long n, cplx& out) const {
    if (n < lo || n > hi) return false;
    const auto& v = lam[static_cast<std::size_t>(n - lo)];
    if (!v) return false;
    out = *v;
    return true;
  }
  bool has_w(long n, cplx& out) const {
    if (n < lo || n > hi) return false;
    const auto& v = w[static_cast<std::size_t>(n - lo)];
    if (!v) return false;
    out = *v;
    return true;
  }
  long radius() const { return hi < lo ? -1 : std::max(std::abs(lo), std::abs(hi)); }
};

struct LinearFreeModel {
  cplx wv;
  const OverrideTable* ov;

  cplx base_lambda(long n) const { return static_cast<double>(n); }
  cplx base_w(long) const { return wv; }

  long min_window(cplx z) const {
    const double need = std::max(std::abs(z.real()) + 2.0, 2.0 * std::abs(z) + 2.0);
    return static_cast<long>(std::ceil(need));
  }

  template <class S>
  EpsTail<S> eps_tail(Side side, long K, const S& z) const {
    const cplx w2 = wv * wv;
    // eps = w^2/((m+a)(m+1+a)) summed over m >= K+1, a = -z (right) or +z (left)
    const S a = side == Side::Right ? -1.0 * z : z;
    const S u = a + static_cast<double>(K + 1);
    EpsTail<S> t;
    t.sigma1 = w2 / u;
    t.sigma2 = (w2 * w2 * 0.5) / (u * (u + 1.0));
    t.expanded = true;
    const double ra = value_of(a).real();
    const double d = static_cast<double>(K + 1) + ra;
    t.s = d > 0.0 ? std::norm(wv) / d : kInf;
    return t;
  }

  bool has_power_sums() const { return true; }
  // Psi side only: sums of lambda_k^{-j}.
  cplx power_sum(Side side, long K, int j, bool recip) const {
    if (!recip) return std::numeric_limits<double>::quiet_NaN();
    const cplx z = hurwitz_zeta(j, static_cast<double>(K + 1));
    return side == Side::Right || j % 2 == 0 ? z : -z;
  }
  double abs_power_sum(Side, long K, int j, bool recip) const {
    if (!recip) return kInf;
    return hurwitz_zeta(j, static_cast<double>(K + 1)).real();
  }
  double tail_radius(Side, long K, bool recip) const {
    return recip ? 1.0 / static_cast<double>(K + 1) : kInf;
  }
};

struct BesselModel {
  cplx alpha;
  cplx beta;
  const OverrideTable* ov;

  cplx base_lambda(long n) const { return 1.0 / (static_cast<double>(n) + alpha); }
  cplx base_w(long n) const {
    const double x = static_cast<double>(n);
    return beta / (std::sqrt(x + alpha) * std::sqrt(x + 1.0 + alpha));
  }

  long min_window(cplx z) const {
    const double ra = std::abs((alpha - 1.0 / z).real());
    const double need = std::max(ra + 2.0, 2.0 / std::abs(z) + std::abs(alpha.real()) + 2.0);
    return static_cast<long>(std::ceil(need));
  }

  template <class S>
  EpsTail<S> eps_tail(Side side, long K, const S& z) const {
    const S c = (beta * beta) / (z * z);
    const S a0 = alpha - 1.0 / z;
    const S a = side == Side::Right ? a0 : -1.0 * a0;
    const S u = a + static_cast<double>(K + 1);
    EpsTail<S> t;
    t.sigma1 = c / u;
    t.sigma2 = (c * c * 0.5) / (u * (u + 1.0));
    t.expanded = true;
    const double d = static_cast<double>(K + 1) + value_of(a).real();
    t.s = d > 0.0 ? std::abs(value_of(c)) / d : kInf;
    return t;
  }

  bool has_power_sums() const { return true; }
  // Phi side only: sums of lambda_k^j = (k+alpha)^{-j}.
  cplx power_sum(Side side, long K, int j, bool recip) const {
    if (recip) return std::numeric_limits<double>::quiet_NaN();
    if (side == Side::Right) return hurwitz_zeta(j, static_cast<double>(K + 1) + alpha);
    const cplx z = hurwitz_zeta(j, static_cast<double>(K + 1) - alpha);
    return j % 2 == 0 ? z : -z;
  }
  double abs_power_sum(Side side, long K, int j, bool recip) const {
    if (recip) return kInf;
    const double a = side == Side::Right ? alpha.real() : -alpha.real();
    return hurwitz_zeta(j, static_cast<double>(K + 1) + a).real();
  }
  double tail_radius(Side, long K, bool recip) const {
    if (recip) return kInf;
    return 1.0 / (static_cast<double>(K + 1) - std::abs(alpha.real()));
  }
};

struct QGeometricModel {
  cplx q;
  cplx beta;
  const OverrideTable* ov;

  cplx base_lambda(long n) const { return int_pow(q, n); }
  cplx base_w(long n) const {
    // beta (sqrt q)^n
    return beta * int_pow(std::sqrt(q), n);
  }

  long min_window(cplx z) const {
    const double aq = std::abs(q);
    const double az = std::abs(z);
    // |q|^{K+1} <= min(|z|, 1/|z|) / 2
    const double target = 0.5 * std::min(az, 1.0 / az);
    const double k = std::log(target) / std::log(aq);
    return static_cast<long>(std::ceil(std::max(k, 0.0))) + 2;
  }

  template <class S>
  EpsTail<S> eps_tail(Side side, long K, const S& z) const {
    EpsTail<S> t;
    t.sigma1 = 0.0 * z;
    t.sigma2 = t.sigma1;
    t.expanded = false;
    const double aq = std::abs(q);
    const double qk = std::pow(aq, static_cast<double>(K + 1));
    const double az = std::abs(value_of(z));
    const double b2 = std::norm(beta);
    if (side == Side::Right) {
      t.s = qk <= 0.5 * az ? 4.0 * b2 * qk / (az * az * (1.0 - aq)) : kInf;
    } else {
      t.s = qk * 2.0 * az <= 1.0 ? 4.0 * b2 * qk / (1.0 - aq) : kInf;
    }
    return t;
  }

  bool has_power_sums() const { return true; }
  // Right tail is of Phi type (lambda^j), left tail of Psi type (lambda^{-j});
  // both reduce to sum_{m >= K+1} q^{mj}.
  cplx power_sum(Side, long K, int j, bool) const {
    const cplx qj = int_pow(q, j);
    return int_pow(qj, K + 1) / (1.0 - qj);
  }
  double abs_power_sum(Side, long K, int j, bool) const {
    const double qj = std::pow(std::abs(q), j);
    return std::pow(qj, static_cast<double>(K + 1)) / (1.0 - qj);
  }
  double tail_radius(Side, long K, bool) const {
    return std::pow(std::abs(q), static_cast<double>(K + 1));
  }
};

struct CustomModel {
  const CustomFamily* fam;
  const OverrideTable* ov;

  cplx base_lambda(long n) const { return fam->lambda(n); }
  cplx base_w(long n) const { return fam->w(n); }
  long min_window(cplx) const { return 4; }

  template <class S>
  EpsTail<S> eps_tail(Side side, long K, const S& z) const {
    EpsTail<S> t;
    t.sigma1 = 0.0 * z;
    t.sigma2 = t.sigma1;
    t.expanded = false;
    t.s = fam->tails && fam->tails->eps_tail ? fam->tails->eps_tail(side, K, value_of(z)) : kInf;
    return t;
  }
  double hadamard_bound(Side side, long K, cplx z) const {
    if (!fam->tails || !fam->tails->hadamard_tail) return kInf;
    return fam->tails->hadamard_tail(side, K, z);
  }

  bool has_power_sums() const { return false; }
  cplx power_sum(Side, long, int, bool) const { return 0.0; }
  double abs_power_sum(Side, long, int, bool) const { return kInf; }
  double tail_radius(Side, long, bool) const { return kInf; }
};

// Family model plus overrides; this is what kernels consume.
template <class M>
struct Model {
  M base;
  long pert_radius = -1;

  cplx lambda(long n) const {
    cplx v;
    if (base.ov->has_lambda(n, v)) return v;
    return base.base_lambda(n);
  }
  cplx w(long n) const {
    cplx v;
    if (base.ov->has_w(n, v)) return v;
    return base.base_w(n);
  }
  cplx w2(long n) const {
    const cplx x = w(n);
    return x * x;
  }
  long min_window(cplx z) const { return std::max(base.min_window(z), pert_radius + 3); }
};

}  // namespace jspec::detail

namespace jspec {

struct OperatorSpec::Impl {
  Family family;
  std::vector<Override> overrides;
  detail::OverrideTable table;
  RegClass reg;

  mutable std::mutex gamma_mu;
  mutable std::vector<cplx> gamma_pos{cplx(1.0)};  // gamma_n^2, n >= 0
  mutable std::vector<cplx> gamma_neg{cplx(1.0)};  // gamma_{-m}^2, m >= 0
};

namespace detail {

template <class F>
decltype(auto) with_model(const OperatorSpec& spec, F&& f) {
  const auto& impl = spec.impl();
  const long pr = impl.table.radius();
  return std::visit(
      [&](const auto& fam) -> decltype(auto) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, LinearFree>) {
          return f(Model<LinearFreeModel>{{fam.w, &impl.table}, pr});
        } else if constexpr (std::is_same_v<T, BesselCompact>) {
          return f(Model<BesselModel>{{fam.alpha, fam.beta, &impl.table}, pr});
        } else if constexpr (std::is_same_v<T, QGeometric>) {
          return f(Model<QGeometricModel>{{fam.q, fam.beta, &impl.table}, pr});
        } else {
          return f(Model<CustomModel>{{&fam, &impl.table}, pr});
        }
      },
      impl.family);
}

}  // namespace detail
}  // namespace jspec
