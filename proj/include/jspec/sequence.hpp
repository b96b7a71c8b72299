#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jspec/types.hpp"

namespace jspec {

enum class RegKind { None, Compact, CompactResolvent, Combined };

struct RegClass {
  RegKind kind = RegKind::None;
  int p = 1;
};

std::string_view to_string(RegKind kind);

struct BesselCompact {
  cplx alpha;
  cplx beta;
};

struct LinearFree {
  cplx w;
};

struct QGeometric {
  cplx q;
  cplx beta;
};

// Tail bounds a Custom family must declare before windows can be certified.
// eps_tail(side, K, z) bounds sum |eps_k| over the pairs outside [-K, K]
// on that side (right: k >= K+1, left: k <= -K-2), where
// eps_k = w_k^2 / ((z - lambda_k)(z - lambda_{k+1})).
// hadamard_tail(side, K, z) bounds |sum log rho_k| over |k| > K on that side
// for the declared regularization class.
struct TailMetadata {
  std::function<double(Side, long, cplx)> eps_tail;
  std::function<double(Side, long, cplx)> hadamard_tail;
};

struct CustomFamily {
  std::function<cplx(long)> lambda;
  std::function<cplx(long)> w;
  RegClass reg{};
  std::optional<TailMetadata> tails;
  // Returns every index n in [lo, hi] with lambda_n == z.
  std::function<std::vector<long>(cplx, long, long)> pole_inversion;
  std::vector<cplx> der_points;
  double match_tol = 1e-12;
  std::string name = "custom";
};

// Tail metadata for sequences with |lambda_n| <= c_lambda r^|n| and
// |w_n| <= c_w r^|n| for |n| >= n0, regularized as Compact{p}.
TailMetadata geometric_tail(double c_lambda, double c_w, double r, long n0, int p);

// Finite table on [first, first + size) continued geometrically with ratio r
// in |n| on both sides, classed Compact{p}, with matching tail metadata.
CustomFamily table_family(long first, std::vector<cplx> lambda, std::vector<cplx> w, double r,
                          int p = 1, std::string name = "table");

using Family = std::variant<BesselCompact, LinearFree, QGeometric, CustomFamily>;

struct Override {
  long n = 0;
  std::optional<cplx> lambda;
  std::optional<cplx> w;
};

class OperatorSpec {
 public:
  struct Impl;

  cplx lambda(long n) const;
  cplx w(long n) const;
  const RegClass& reg_class() const;
  const Family& family() const;
  const std::vector<Override>& perturbation() const;
  // Largest |n| touched by an override, or -1.
  long perturbation_radius() const;
  bool is_builtin() const;
  bool has_tail_metadata() const;
  std::vector<cplx> der_points() const;
  std::string family_name() const;
  cplx gamma_sq(long n) const;

  const Impl& impl() const { return *impl_; }

 private:
  friend OperatorSpec make_spec(Family family, std::vector<Override> perturbation);
  explicit OperatorSpec(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

OperatorSpec make_spec(Family family, std::vector<Override> perturbation = {});

cplx gamma_sq(const OperatorSpec& spec, long n);

// P_0 = 1, P_{n+1} = w_n / (z - lambda_{n+1}) P_n.
cplx p_factor(const OperatorSpec& spec, long n, cplx z, bool skip_poles);

struct PoleBook {
  std::vector<long> indices;
  int r_plus = 0;
  int r_minus = 0;
  int r = 0;
};

// Built-ins invert lambda in closed form and ignore the window.
PoleBook pole_book(const OperatorSpec& spec, cplx z, long lo, long hi);

enum class Verdict { Convergent, Inconclusive };

struct ConditionReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::pair<long, double>> partial_sums;
  double tail_estimate = 0.0;
  double total_bound = 0.0;
};

ConditionReport summability_report(const OperatorSpec& spec, cplx z0,
                                   const std::vector<long>& window_schedule);

// Integer power with exact results for dyadic bases.
cplx int_pow(cplx base, long n);

}  // namespace jspec
