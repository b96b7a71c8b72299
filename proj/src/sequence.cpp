#include "jspec/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "family_model.hpp"

namespace jspec {

namespace {

constexpr double kExactTol = 8.0 * std::numeric_limits<double>::epsilon();

bool is_integer(cplx a) {
  return a.imag() == 0.0 && std::isfinite(a.real()) && a.real() == std::round(a.real());
}

bool same_point(cplx a, cplx b) {
  return std::abs(a - b) <= kExactTol * std::max(1.0, std::abs(b));
}

std::vector<long> builtin_family_poles(const Family& fam, cplx z) {
  std::vector<long> out;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFree>) {
          const double m = std::round(z.real());
          if (std::abs(m) < 9e15 && same_point(cplx(m), z)) out.push_back(static_cast<long>(m));
        } else if constexpr (std::is_same_v<T, BesselCompact>) {
          if (z == cplx(0.0)) return;
          const cplx n = 1.0 / z - f.alpha;
          const double m = std::round(n.real());
          if (std::abs(m) > 9e15) return;
          const cplx lam = 1.0 / (m + f.alpha);
          if (same_point(lam, z)) out.push_back(static_cast<long>(m));
        } else if constexpr (std::is_same_v<T, QGeometric>) {
          if (z == cplx(0.0)) return;
          const double m = std::round(std::log(std::abs(z)) / std::log(std::abs(f.q)));
          if (std::abs(m) > 4000) return;
          if (same_point(int_pow(f.q, static_cast<long>(m)), z)) out.push_back(static_cast<long>(m));
        }
      },
      fam);
  return out;
}

}  // namespace

std::string_view to_string(RegKind kind) {
  switch (kind) {
    case RegKind::None: return "None";
    case RegKind::Compact: return "Compact";
    case RegKind::CompactResolvent: return "CompactResolvent";
    case RegKind::Combined: return "Combined";
  }
  return "None";
}

cplx int_pow(cplx base, long n) {
  if (n < 0) {
    base = 1.0 / base;
    n = -n;
  }
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

OperatorSpec make_spec(Family family, std::vector<Override> perturbation) {
  auto impl = std::make_shared<OperatorSpec::Impl>();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFree>) {
          if (f.w == cplx(0.0)) raise(ErrorKind::InvalidFamilyParams, "LinearFree requires w != 0");
          impl->reg = {RegKind::CompactResolvent, 2};
        } else if constexpr (std::is_same_v<T, BesselCompact>) {
          if (is_integer(f.alpha)) raise(ErrorKind::InvalidFamilyParams, "BesselCompact requires alpha not an integer");
          if (f.beta == cplx(0.0)) raise(ErrorKind::InvalidFamilyParams, "BesselCompact requires beta != 0");
          impl->reg = {RegKind::Compact, 2};
        } else if constexpr (std::is_same_v<T, QGeometric>) {
          const double aq = std::abs(f.q);
          if (!(aq > 0.0 && aq < 1.0)) raise(ErrorKind::InvalidFamilyParams, "QGeometric requires 0 < |q| < 1");
          if (f.beta == cplx(0.0)) raise(ErrorKind::InvalidFamilyParams, "QGeometric requires beta != 0");
          impl->reg = {RegKind::Combined, 1};
        } else {
          if (!f.lambda || !f.w) raise(ErrorKind::InvalidFamilyParams, "Custom family needs lambda and w callbacks");
          if (f.reg.p < 1) raise(ErrorKind::InvalidFamilyParams, "regularization order must be >= 1");
          if (!(f.match_tol > 0.0)) raise(ErrorKind::InvalidFamilyParams, "match_tol must be positive");
          impl->reg = f.reg;
        }
      },
      family);
  impl->family = std::move(family);

  if (!perturbation.empty()) {
    long lo = perturbation.front().n, hi = lo;
    for (const auto& o : perturbation) {
      lo = std::min(lo, o.n);
      hi = std::max(hi, o.n);
      if (o.w && *o.w == cplx(0.0))
        raise(ErrorKind::InvalidFamilyParams, "override sets w_" + std::to_string(o.n) + " = 0");
    }
    auto& t = impl->table;
    t.lo = lo;
    t.hi = hi;
    t.lam.assign(static_cast<std::size_t>(hi - lo + 1), std::nullopt);
    t.w.assign(static_cast<std::size_t>(hi - lo + 1), std::nullopt);
    for (const auto& o : perturbation) {
      const auto i = static_cast<std::size_t>(o.n - lo);
      if (o.lambda) t.lam[i] = o.lambda;
      if (o.w) t.w[i] = o.w;
    }
  }
  impl->overrides = std::move(perturbation);
  return OperatorSpec(std::move(impl));
}

cplx OperatorSpec::lambda(long n) const {
  return detail::with_model(*this, [n](const auto& m) { return m.lambda(n); });
}

cplx OperatorSpec::w(long n) const {
  const cplx v = detail::with_model(*this, [n](const auto& m) { return m.w(n); });
  if (v == cplx(0.0)) raise(ErrorKind::InvalidFamilyParams, "w_" + std::to_string(n) + " = 0");
  return v;
}

const RegClass& OperatorSpec::reg_class() const { return impl_->reg; }
const Family& OperatorSpec::family() const { return impl_->family; }
const std::vector<Override>& OperatorSpec::perturbation() const { return impl_->overrides; }
long OperatorSpec::perturbation_radius() const { return impl_->table.radius(); }

bool OperatorSpec::is_builtin() const {
  return !std::holds_alternative<CustomFamily>(impl_->family);
}

bool OperatorSpec::has_tail_metadata() const {
  if (is_builtin()) return true;
  const auto& c = std::get<CustomFamily>(impl_->family);
  return c.tails.has_value() && static_cast<bool>(c.tails->eps_tail);
}

std::vector<cplx> OperatorSpec::der_points() const {
  return std::visit(
      [](const auto& f) -> std::vector<cplx> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFree>) return {};
        else if constexpr (std::is_same_v<T, CustomFamily>) return f.der_points;
        else return {cplx(0.0)};
      },
      impl_->family);
}

std::string OperatorSpec::family_name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFree>) return "linear_free";
        else if constexpr (std::is_same_v<T, BesselCompact>) return "bessel_compact";
        else if constexpr (std::is_same_v<T, QGeometric>) return "q_geometric";
        else return f.name;
      },
      impl_->family);
}

cplx OperatorSpec::gamma_sq(long n) const {
  auto& im = *impl_;
  std::lock_guard<std::mutex> lock(im.gamma_mu);
  if (n >= 0) {
    auto& g = im.gamma_pos;
    while (static_cast<long>(g.size()) <= n) {
      const long k = static_cast<long>(g.size()) - 1;  // gamma_{k+1}^2 = w_k^2 / gamma_k^2
      const cplx wk = w(k);
      g.push_back(wk * wk / g.back());
    }
    return g[static_cast<std::size_t>(n)];
  }
  auto& g = im.gamma_neg;
  const long m = -n;
  while (static_cast<long>(g.size()) <= m) {
    const long k = -static_cast<long>(g.size());  // gamma_k^2 = w_k^2 / gamma_{k+1}^2
    const cplx wk = w(k);
    g.push_back(wk * wk / g.back());
  }
  return g[static_cast<std::size_t>(m)];
}

cplx gamma_sq(const OperatorSpec& spec, long n) { return spec.gamma_sq(n); }

cplx p_factor(const OperatorSpec& spec, long n, cplx z, bool skip_poles) {
  cplx p = 1.0;
  if (n >= 0) {
    for (long k = 1; k <= n; ++k) {
      const cplx d = z - spec.lambda(k);
      if (d == cplx(0.0)) {
        if (!skip_poles) raise(ErrorKind::PoleHit, "z equals lambda_" + std::to_string(k));
        p *= spec.w(k - 1);
        continue;
      }
      p *= spec.w(k - 1) / d;
    }
  } else {
    for (long k = n + 1; k <= 0; ++k) {
      const cplx d = z - spec.lambda(k);
      if (d == cplx(0.0)) {
        if (!skip_poles) raise(ErrorKind::PoleHit, "z equals lambda_" + std::to_string(k));
        p /= spec.w(k - 1);
        continue;
      }
      p *= d / spec.w(k - 1);
    }
  }
  return p;
}

PoleBook pole_book(const OperatorSpec& spec, cplx z, long lo, long hi) {
  PoleBook book;
  std::set<long> idx;
  const auto& impl = spec.impl();
  if (spec.is_builtin()) {
    for (long n : builtin_family_poles(impl.family, z)) {
      cplx v;
      if (!impl.table.has_lambda(n, v)) idx.insert(n);
    }
    for (const auto& o : impl.overrides)
      if (o.lambda && same_point(*o.lambda, z)) idx.insert(o.n);
  } else {
    const auto& c = std::get<CustomFamily>(impl.family);
    if (c.pole_inversion) {
      for (long n : c.pole_inversion(z, lo, hi)) idx.insert(n);
      for (const auto& o : impl.overrides) {
        if (o.n < lo || o.n > hi) continue;
        if (o.lambda) {
          if (same_point(*o.lambda, z)) idx.insert(o.n);
          else idx.erase(o.n);
        }
      }
    } else {
      const double tol = c.match_tol * std::max(1.0, std::abs(z));
      std::vector<std::pair<long, cplx>> hits;
      for (long n = lo; n <= hi; ++n) {
        const cplx l = spec.lambda(n);
        if (std::abs(l - z) < tol) hits.emplace_back(n, l);
      }
      for (std::size_t i = 1; i < hits.size(); ++i)
        if (hits[i].second != hits[0].second)
          raise(ErrorKind::AmbiguousMatch, "indices " + std::to_string(hits[0].first) + " and " +
                                               std::to_string(hits[i].first) +
                                               " both match z within match_tol");
      for (const auto& h : hits) idx.insert(h.first);
    }
  }
  book.indices.assign(idx.begin(), idx.end());
  for (long n : book.indices) (n > 0 ? book.r_plus : book.r_minus)++;
  book.r = book.r_plus + book.r_minus;
  return book;
}

ConditionReport summability_report(const OperatorSpec& spec, cplx z0,
                                   const std::vector<long>& window_schedule) {
  ConditionReport rep;
  if (!pole_book(spec, z0, -4, 4).indices.empty() && spec.is_builtin())
    raise(ErrorKind::PoleHit, "z0 lies on the diagonal range");
  return detail::with_model(spec, [&](const auto& m) {
    long done = 0;
    double sum = 0.0;
    auto eps_abs = [&](long k) {
      return std::abs(m.w2(k) / ((z0 - m.lambda(k)) * (z0 - m.lambda(k + 1))));
    };
    std::vector<long> sched = window_schedule;
    std::sort(sched.begin(), sched.end());
    for (long N : sched) {
      if (N <= 0) continue;
      // pairs k in [-N, N-1]
      for (long k = done; k <= N - 1; ++k) sum += eps_abs(k);
      for (long k = -done - 1; k >= -N; --k) sum += eps_abs(k);
      done = N;
      rep.partial_sums.emplace_back(N, sum);
    }
    const long K = std::max(done - 1, m.min_window(z0));
    const auto r = m.base.template eps_tail<cplx>(Side::Right, K, z0);
    const auto l = m.base.template eps_tail<cplx>(Side::Left, K, z0);
    rep.tail_estimate = r.s + l.s;
    // pairs between the scheduled window and the certified tail start
    double gap = 0.0;
    for (long k = done; k <= K; ++k) gap += eps_abs(k);
    for (long k = -done - 1; k >= -K - 1; --k) gap += eps_abs(k);
    rep.total_bound = sum + gap + rep.tail_estimate;
    rep.verdict = std::isfinite(rep.tail_estimate) ? Verdict::Convergent : Verdict::Inconclusive;
    if (rep.verdict == Verdict::Inconclusive) rep.tail_estimate = detail::kInf;
    return rep;
  });
}

TailMetadata geometric_tail(double c_lambda, double c_w, double r, long n0, int p) {
  TailMetadata t;
  t.eps_tail = [=](Side side, long K, cplx z) {
    if (K + 1 < n0) return detail::kInf;
    const double az = std::abs(z);
    const double lam = c_lambda * std::pow(r, static_cast<double>(K + 1));
    if (lam >= 0.5 * az) return detail::kInf;
    const long first = side == Side::Right ? K + 1 : K + 2;
    const double num = c_w * c_w * std::pow(r, 2.0 * static_cast<double>(first));
    return num / ((1.0 - r * r) * (az - lam) * (az - lam));
  };
  t.hadamard_tail = [=](Side, long K, cplx z) {
    if (K + 1 < n0) return detail::kInf;
    const double u = c_lambda * std::pow(r, static_cast<double>(K + 1)) / std::abs(z);
    if (u > 0.5) return detail::kInf;
    // |log(1-u) + sum_{j<p} u^j/j| <= 2|u|^p/p for |u| <= 1/2
    return 2.0 * std::pow(u, p) / (p * (1.0 - std::pow(r, p)));
  };
  return t;
}

CustomFamily table_family(long first, std::vector<cplx> lambda, std::vector<cplx> w, double r,
                          int p, std::string name) {
  if (lambda.empty() || lambda.size() != w.size())
    raise(ErrorKind::InvalidFamilyParams, "table needs equally long, nonempty lambda and w");
  if (!(r > 0.0 && r < 1.0)) raise(ErrorKind::InvalidFamilyParams, "tail ratio must lie in (0, 1)");
  const long last = first + static_cast<long>(lambda.size()) - 1;
  auto ext = [first, last, r](const std::vector<cplx>& v) {
    return [v, first, last, r](long n) -> cplx {
      if (n < first) return v.front() * std::pow(r, static_cast<double>(first - n));
      if (n > last) return v.back() * std::pow(r, static_cast<double>(n - last));
      return v[static_cast<std::size_t>(n - first)];
    };
  };
  // |x_n| <= c r^|n| outside the table
  auto bound = [&](const std::vector<cplx>& v) {
    return std::max(std::abs(v.front()) * std::pow(r, -std::abs(static_cast<double>(first))),
                    std::abs(v.back()) * std::pow(r, -std::abs(static_cast<double>(last))));
  };
  CustomFamily c;
  c.lambda = ext(lambda);
  c.w = ext(w);
  c.reg = {RegKind::Compact, p};
  c.tails = geometric_tail(bound(lambda), bound(w), r, std::max(std::abs(first), std::abs(last)) + 1, p);
  c.der_points = {cplx(0.0)};
  c.name = std::move(name);
  return c;
}

}  // namespace jspec
