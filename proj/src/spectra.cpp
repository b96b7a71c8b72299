#include "jspec/spectra.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <optional>

namespace jspec {

std::string_view to_string(PointMethod m) {
  return m == PointMethod::WindingNewton ? "WINDING+NEWTON" : "WINDING_ONLY";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// z(t), z'(t) on t in [0, 1]
struct Piece {
  bool arc = false;
  cplx a, b;        // segment ends
  cplx c;           // arc center
  double r = 0.0;   // arc radius
  int initial = 8;

  cplx point(double t) const {
    if (!arc) return a + t * (b - a);
    return c + r * std::polar(1.0, kTwoPi * t);
  }
  cplx tangent(double t) const {
    if (!arc) return b - a;
    return cplx(0.0, kTwoPi) * r * std::polar(1.0, kTwoPi * t);
  }
};

std::vector<Piece> pieces_of(const Contour& c) {
  if (const auto* b = std::get_if<Box>(&c)) {
    const cplx p0(b->re_min, b->im_min), p1(b->re_max, b->im_min), p2(b->re_max, b->im_max),
        p3(b->re_min, b->im_max);
    return {{false, p0, p1, 0.0, 0.0, 8},
            {false, p1, p2, 0.0, 0.0, 8},
            {false, p2, p3, 0.0, 0.0, 8},
            {false, p3, p0, 0.0, 0.0, 8}};
  }
  const auto& ci = std::get<Circle>(c);
  return {{true, 0.0, 0.0, ci.center, ci.radius, 32}};
}

struct Node {
  double t;
  cplx f;
  cplx r;  // f'/f * dz/dt
};

class Winder {
 public:
  Winder(const AnalyticFn& fn, const WindingOptions& o, WindingStats* st)
      : fn_(fn), o_(o), st_(st) {}

  Node eval(const Piece& p, double t) const {
    const cplx z = p.point(t);
    AnalyticSample s;
    try {
      s = fn_(z, 1, o_.eval_tol);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleHit || e.kind() == ErrorKind::NearSpectrum ||
          e.kind() == ErrorKind::ZeroArgument)
        raise(ErrorKind::OnContourZero, std::string("contour node unusable: ") + e.what());
      throw;
    }
    if (st_) ++st_->evaluations;
    const cplx f = s.value[0];
    if (!std::isfinite(std::abs(f)) || std::abs(f) < o_.floor * s.scale)
      raise(ErrorKind::OnContourZero, "function below the node floor on the contour");
    return {t, f, s.value[1] / f * p.tangent(t)};
  }

  // Phase change across [a, b], bisected until the phase step and the
  // trapezoid of f'/f agree.
  double segment(const Piece& p, const Node& a, const Node& b, int depth) const {
    const double dphi = std::arg(b.f / a.f);
    const cplx trap = 0.5 * (b.t - a.t) * (a.r + b.r);
    const double dlog = std::log(std::abs(b.f) / std::abs(a.f));
    if (std::abs(dphi) <= 0.6 && std::abs(trap.imag() - dphi) <= 0.05 &&
        std::abs(trap.real() - dlog) <= 0.1)
      return dphi;
    if (depth >= o_.max_bisections)
      raise(ErrorKind::NonConvergent, "winding quadrature did not settle");
    const Node m = eval(p, 0.5 * (a.t + b.t));
    return segment(p, a, m, depth + 1) + segment(p, m, b, depth + 1);
  }

  int run(const Contour& c) const {
    double total = 0.0;
    for (const Piece& p : pieces_of(c)) {
      Node prev = eval(p, 0.0);
      for (int k = 1; k <= p.initial; ++k) {
        const Node cur = eval(p, static_cast<double>(k) / p.initial);
        total += segment(p, prev, cur, 0);
        prev = cur;
      }
    }
    const double w = total / kTwoPi;
    const double n = std::round(w);
    if (std::abs(w - n) > 0.05) raise(ErrorKind::NonConvergent, "winding is not near an integer");
    return static_cast<int>(n);
  }

 private:
  const AnalyticFn& fn_;
  WindingOptions o_;
  WindingStats* st_;
};

bool contour_trouble(const Error& e) {
  return e.kind() == ErrorKind::OnContourZero || e.kind() == ErrorKind::NonConvergent;
}

double box_distance(const Box& b, cplx z) {
  const double dx = std::max({b.re_min - z.real(), 0.0, z.real() - b.re_max});
  const double dy = std::max({b.im_min - z.imag(), 0.0, z.imag() - b.im_max});
  return std::hypot(dx, dy);
}

bool inside_disk(const Box& b, const ExcludedZone& z) {
  for (cplx c : {cplx(b.re_min, b.im_min), cplx(b.re_max, b.im_min), cplx(b.re_min, b.im_max),
                 cplx(b.re_max, b.im_max)})
    if (std::abs(c - z.center) > z.radius) return false;
  return true;
}

std::array<Box, 4> quarter(const Box& b, cplx s) {
  return {Box{b.re_min, s.real(), b.im_min, s.imag()}, Box{s.real(), b.re_max, b.im_min, s.imag()},
          Box{b.re_min, s.real(), s.imag(), b.im_max}, Box{s.real(), b.re_max, s.imag(), b.im_max}};
}

// deterministic jitter offsets in (-1, 1)
cplx jitter_dir(int k) {
  static constexpr double xs[] = {0.37, -0.61, 0.83, -0.29, 0.71, -0.53};
  static constexpr double ys[] = {-0.59, 0.43, 0.27, -0.79, -0.33, 0.67};
  return {xs[k % 6], ys[k % 6]};
}

class Locator {
 public:
  Locator(const AnalyticFn& fn, const LocateOptions& o, LocateDiagnostics& d)
      : fn_(fn), o_(o), d_(d) {
    wopt_ = o.winding;
    cluster_ = o.cluster_tol > 0.0 ? o.cluster_tol : 10.0 * o.tol;
  }

  std::vector<Eigenpoint> run(const Box& root) {
    struct Task {
      Box b;
      int depth;
      std::optional<int> wind;
    };
    std::vector<Task> stack;
    Box start = root;
    std::optional<int> w0;
    if (!touches_excluded(root)) {
      for (int k = 0;; ++k) {
        try {
          w0 = wind(start);
          break;
        } catch (const Error& e) {
          if (!contour_trouble(e)) throw;
          if (k >= 5) raise(ErrorKind::ContourDeadlock, "region contour keeps hitting zeros");
          ++d_.jitters;
          const double h = 1e-3 * root.diameter() * (k + 1);
          const cplx j = jitter_dir(k);
          start = Box{root.re_min - h * std::abs(j.real()), root.re_max + h * std::abs(j.imag()),
                      root.im_min - h * std::abs(j.imag()), root.im_max + h * std::abs(j.real())};
        }
      }
    }
    stack.push_back({start, 0, w0});
    std::vector<Eigenpoint> found;
    while (!stack.empty()) {
      Task t = stack.back();
      stack.pop_back();
      if (++d_.boxes > o_.max_boxes) raise(ErrorKind::Budget, "box budget exhausted");
      d_.max_depth_reached = std::max(d_.max_depth_reached, t.depth);
      const ExcludedZone* hit = touching(t.b);
      if (hit) {
        if (inside_disk(t.b, *hit) || t.b.diameter() < 0.25 * hit->radius) {
          ++d_.dropped_boxes;
          continue;
        }
      } else if (!t.wind) {
        t.wind = wind(t.b);  // children are wound by the parent, so only fallbacks land here
      }
      if (!hit && *t.wind == 0) continue;
      if (!hit) {
        if (*t.wind < 0) raise(ErrorKind::Inconsistent, "negative winding: function has poles in the box");
        if (auto p = newton(t.b, *t.wind)) {
          found.push_back(*p);
          continue;
        }
        if (t.b.diameter() < 64.0 * o_.tol) {
          Eigenpoint p;
          p.z = t.b.center();
          p.multiplicity = *t.wind;
          p.method = PointMethod::WindingOnly;
          p.merged = *t.wind > 1;
          p.newton_residual = residual(p.z);
          found.push_back(p);
          continue;
        }
      }
      if (t.depth >= o_.max_depth) raise(ErrorKind::DepthExceeded, "subdivision depth exceeded");
      auto kids = split(t.b, hit ? std::nullopt : t.wind);
      for (auto& k : kids) stack.push_back({k.first, t.depth + 1, k.second});
    }
    return merge(std::move(found), root);
  }

 private:
  int wind(const Box& b) {
    WindingStats st;
    const int w = winding_count(fn_, b, wopt_, &st);
    d_.evaluations += st.evaluations;
    return w;
  }

  const ExcludedZone* touching(const Box& b) const {
    for (const auto& z : o_.excluded)
      if (box_distance(b, z.center) <= z.radius) return &z;
    return nullptr;
  }
  bool touches_excluded(const Box& b) const { return touching(b) != nullptr; }

  std::vector<std::pair<Box, std::optional<int>>> split(const Box& b, std::optional<int> parent) {
    for (int k = 0;; ++k) {
      // slightly off-center so symmetric regions do not put a split line on the real axis
      cplx s = b.center() + cplx(0.0127 * (b.re_max - b.re_min), 0.0211 * (b.im_max - b.im_min));
      if (k > 0) {
        const cplx j = jitter_dir(k - 1);
        s += 1e-3 * k * cplx(j.real() * (b.re_max - b.re_min), j.imag() * (b.im_max - b.im_min));
      }
      std::vector<std::pair<Box, std::optional<int>>> out;
      bool all_known = true;
      int sum = 0;
      try {
        for (const Box& q : quarter(b, s)) {
          std::optional<int> w;
          if (!touches_excluded(q)) {
            w = wind(q);
            sum += *w;
          } else {
            all_known = false;
          }
          out.emplace_back(q, w);
        }
        if (parent && all_known) {
          ++d_.additivity_checks;
          if (sum != *parent) raise(ErrorKind::NonConvergent, "child windings do not add up");
        }
        return out;
      } catch (const Error& e) {
        if (!contour_trouble(e)) throw;
        if (k >= 5) raise(ErrorKind::ContourDeadlock, "subdivision keeps hitting zeros on contours");
        ++d_.jitters;
      }
    }
  }

  double residual(cplx z) const {
    const auto s = fn_(z, 0, o_.tol);
    return std::abs(s.value[0]) / s.scale;
  }

  std::optional<Eigenpoint> newton(const Box& b, int m) {
    if (m > kMaxJetOrder - 1) return std::nullopt;
    cplx z = b.center();
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      AnalyticSample s;
      try {
        s = fn_(z, m, o_.tol);
      } catch (const Error&) {
        return std::nullopt;
      }
      ++d_.evaluations;
      const cplx g = s.value.derivative(m - 1);
      const cplx gp = s.value.derivative(m);
      if (gp == cplx(0.0) || !std::isfinite(std::abs(g / gp))) return std::nullopt;
      const cplx dz = g / gp;
      z -= dz;
      if (!b.contains(z, b.diameter())) return std::nullopt;
      if (std::abs(dz) <= std::max(o_.tol, 1e-14 * (1.0 + std::abs(z)))) {
        converged = true;
        break;
      }
    }
    if (!converged || !b.contains(z, 1e-9 * b.diameter())) return std::nullopt;
    Eigenpoint p;
    p.z = z;
    p.multiplicity = m;
    try {
      p.newton_residual = residual(z);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (p.newton_residual > 1e-8) return std::nullopt;
    // certifying circle: smallest radius whose contour clears the roundoff floor
    WindingOptions w = wopt_;
    w.eval_tol = o_.tol;
    for (double r = 8.0 * o_.tol; r <= std::max(0.5 * b.diameter(), 8.0 * o_.tol); r *= 10.0) {
      try {
        WindingStats st;
        const int c = winding_count(fn_, Circle{z, r}, w, &st);
        d_.evaluations += st.evaluations;
        if (c != m) return std::nullopt;
        p.certify_radius = r;
        return p;
      } catch (const Error& e) {
        if (!contour_trouble(e)) throw;
      }
    }
    return std::nullopt;
  }

  std::vector<Eigenpoint> merge(std::vector<Eigenpoint> pts, const Box& root) const {
    std::vector<Eigenpoint> out;
    for (const auto& p : pts) {
      if (!root.contains(p.z)) continue;
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const Eigenpoint& q) { return std::abs(q.z - p.z) <= cluster_; });
      if (it == out.end()) {
        out.push_back(p);
      } else {
        it->multiplicity += p.multiplicity;
        it->merged = true;
      }
    }
    std::sort(out.begin(), out.end(), [](const Eigenpoint& a, const Eigenpoint& b) {
      return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
    });
    return out;
  }

  const AnalyticFn& fn_;
  const LocateOptions& o_;
  LocateDiagnostics& d_;
  WindingOptions wopt_;
  double cluster_ = 0.0;
};

Mode mode_for(const OperatorSpec& spec) {
  return spec.reg_class().kind == RegKind::None ? Mode::Generic : Mode::Regularized;
}

double l2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx x : v) s += std::norm(x);
  return std::sqrt(s);
}

// (J - z) u - j * prev over the interior of the slice
std::vector<cplx> apply_shifted(const OperatorSpec& spec, cplx z, const SolutionSlice& u,
                                const SolutionSlice* prev, int j) {
  std::vector<cplx> r;
  for (long n = u.first + 1; n < u.last; ++n) {
    cplx v = spec.w(n - 1) * u.at(n - 1) + (spec.lambda(n) - z) * u.at(n) + spec.w(n) * u.at(n + 1);
    if (prev && j > 0) v -= static_cast<double>(j) * prev->at(n);
    r.push_back(v);
  }
  return r;
}

std::vector<cplx> interior(const SolutionSlice& u) {
  if (u.size() < 3) return {};
  return {u.values.begin() + 1, u.values.end() - 1};
}

}  // namespace

int winding_count(const AnalyticFn& fn, const Contour& contour, const WindingOptions& opts,
                  WindingStats* stats) {
  return Winder(fn, opts, stats).run(contour);
}

std::vector<Eigenpoint> locate_zeros(const AnalyticFn& fn, const Box& box, const LocateOptions& opts,
                                     LocateDiagnostics* diag) {
  LocateDiagnostics local;
  LocateDiagnostics& d = diag ? *diag : local;
  return Locator(fn, opts, d).run(box);
}

AnalyticFn spectral_function(const OperatorSpec& spec, Mode mode, long* max_window) {
  return [spec, mode, max_window](cplx z, int order, double tol) {
    EvalOptions o;
    o.tol = tol;
    const JetCharValue v = charfn_jet(spec, z, order, o, mode);
    if (max_window) *max_window = std::max(*max_window, v.window);
    const double scale =
        mode == Mode::Generic ? std::exp(std::min(v.condition_sum, 700.0)) : std::max(v.scale, 1e-300);
    return AnalyticSample{v.value, scale};
  };
}

SpectrumReport spectrum(const OperatorSpec& spec, const Box& region, const SpectrumOptions& opts) {
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max))
    raise(ErrorKind::ConfigError, "region must have positive width and height");
  SpectrumReport rep;
  rep.region = region;
  rep.mode = opts.force_generic ? Mode::Generic : mode_for(spec);
  const auto kind = spec.reg_class().kind;
  if (rep.mode == Mode::Regularized && (kind == RegKind::Compact || kind == RegKind::Combined)) {
    const double r0 = opts.origin_radius > 0.0 ? opts.origin_radius : 10.0 * opts.tol;
    rep.excluded_zones.push_back({0.0, r0, "origin: essential singularity of the regularized function"});
    rep.unknown_points.push_back(
        {0.0, kind == RegKind::Compact ? "0 is in spec(J) because J is compact; eigenvalue status UNKNOWN"
                                       : "origin: spectral status UNKNOWN"});
  }
  for (const cplx d : spec.der_points()) {
    if (kind == RegKind::Compact && d == cplx(0.0) && rep.mode == Mode::Regularized) continue;
    rep.excluded_zones.push_back({d, opts.exclusion_radius, "accumulation point of the diagonal"});
    if (region.contains(d)) rep.unknown_points.push_back({d, "der(lambda) point: spectral status UNKNOWN"});
  }
  if (rep.mode == Mode::Generic) {
    const double m = opts.exclusion_radius;
    for (long n = -(1L << 16); n <= (1L << 16); ++n) {
      const cplx l = spec.lambda(n);
      if (region.contains(l, m)) rep.excluded_zones.push_back({l, m, "Ran(lambda) margin"});
    }
  }
  LocateOptions lo;
  lo.tol = opts.tol;
  lo.max_depth = opts.max_depth;
  lo.excluded = rep.excluded_zones;
  lo.winding.eval_tol = std::max(opts.tol, 1e-8);
  const auto fn = spectral_function(spec, rep.mode, &rep.max_window);
  auto pts = locate_zeros(fn, region, lo, &rep.locate);
  for (const auto& p : pts) {
    const bool clear = std::none_of(rep.excluded_zones.begin(), rep.excluded_zones.end(),
                                    [&](const ExcludedZone& z) { return std::abs(p.z - z.center) <= z.radius; });
    if (clear) rep.eigenpoints.push_back(p);
  }
  return rep;
}

MultiplicityReport multiplicity(const OperatorSpec& spec, cplx z0, double tol) {
  const Mode mode = mode_for(spec);
  const auto fn = spectral_function(spec, mode);
  MultiplicityReport rep;
  WindingOptions wo;
  wo.eval_tol = tol;
  bool done = false;
  for (double r = std::max(1e-6, 100.0 * tol); r <= 1e-2; r *= 10.0) {
    try {
      rep.nu_a = winding_count(fn, Circle{z0, r}, wo);
      rep.radius = r;
      done = true;
      break;
    } catch (const Error& e) {
      if (!contour_trouble(e)) throw;
    }
  }
  if (!done) raise(ErrorKind::ContourDeadlock, "no certifying circle around the point");
  const int order = std::min(rep.nu_a + 1, kMaxJetOrder);
  const auto s = fn(z0, order, tol);
  double fact = 1.0, rk = 1.0, dominant = 0.0, lower = 0.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      fact *= k;
      rk *= rep.radius;
    }
    const double d = std::abs(s.value.derivative(k));
    rep.derivative_profile.push_back(d);
    const double c = d / fact * rk;  // Taylor term size on the circle
    if (k < rep.nu_a) lower = std::max(lower, c);
    if (k == rep.nu_a) dominant = c;
  }
  if (rep.nu_a > 0 && !(dominant >= lower))
    raise(ErrorKind::Inconsistent, "derivative profile disagrees with the winding number");
  return rep;
}

double chain_residual(const OperatorSpec& spec, cplx z0, const SolutionSlice& u,
                      const SolutionSlice* prev, int j) {
  const auto r = apply_shifted(spec, z0, u, prev, j);
  double denom = l2(interior(u));
  if (prev && j > 0) denom += j * l2(interior(*prev));
  if (!(denom > 0.0)) raise(ErrorKind::ZeroVector, "chain vectors vanish on the window");
  return l2(r) / denom;
}

ChainReport generalized_eigvecs(const OperatorSpec& spec, cplx z0, int nu, long a, long b,
                                double tol) {
  if (nu < 1) raise(ErrorKind::Inconsistent, "multiplicity must be at least 1");
  if (b - a < 4) raise(ErrorKind::WindowTooSmall, "chain window needs at least five indices");
  EvalOptions o;
  o.tol = tol;
  ChainReport rep;
  rep.chain = solution_f_derivatives(spec, z0, nu - 1, a, b, o, mode_for(spec));
  for (int j = 0; j < nu; ++j)
    rep.residuals.push_back(
        chain_residual(spec, z0, rep.chain[j], j > 0 ? &rep.chain[j - 1] : nullptr, j));
  return rep;
}

double residual_norm(const OperatorSpec& spec, cplx z, const SolutionSlice& slice) {
  if (slice.size() < 5) raise(ErrorKind::WindowTooSmall, "residual needs at least five indices");
  const double un = l2(interior(slice));
  if (!(un > 0.0)) raise(ErrorKind::ZeroVector, "vector vanishes on the window interior");
  return l2(apply_shifted(spec, z, slice, nullptr, 0)) / un;
}

namespace {

AnalyticFn section_det(const OperatorSpec& spec, long N) {
  std::vector<cplx> lam, w2;
  for (long n = -N; n <= N; ++n) {
    lam.push_back(spec.lambda(n));
    w2.push_back(spec.w(n) * spec.w(n));
  }
  return [lam, w2](cplx z, int order, double) {
    const Jet zj = Jet::variable(z, order);
    Jet d_prev = Jet::constant(1.0, z, order);
    Jet d_cur = lam[0] - zj;
    double m_prev = 1.0, m_cur = std::abs(lam[0]) + std::abs(z);
    for (std::size_t k = 1; k < lam.size(); ++k) {
      const Jet next = (lam[k] - zj) * d_cur - w2[k - 1] * d_prev;
      const double mn = (std::abs(lam[k]) + std::abs(z)) * m_cur + std::abs(w2[k - 1]) * m_prev;
      d_prev = d_cur;
      d_cur = next;
      m_prev = m_cur;
      m_cur = mn;
    }
    return AnalyticSample{d_cur, std::max(m_cur, 1e-300)};
  };
}

}  // namespace

SectionReport finite_section_zeros(const OperatorSpec& spec, long N, const Box& box, double tol) {
  if (N < 1) raise(ErrorKind::WindowTooSmall, "finite section needs N >= 1");
  LocateOptions lo;
  lo.tol = tol;
  lo.winding.eval_tol = tol;
  const auto cur = locate_zeros(section_det(spec, N), box, lo);
  const auto prev = locate_zeros(section_det(spec, N - 1), box, lo);
  SectionReport rep;
  rep.N = N;
  for (const auto& p : cur) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : prev) d = std::min(d, std::abs(p.z - q.z));
    rep.zeros.push_back({p, d});
  }
  return rep;
}

}  // namespace jspec
