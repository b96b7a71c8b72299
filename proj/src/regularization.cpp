#include "jspec/regularization.hpp"

#include <cmath>
#include <vector>

#include "jspec/ffunctional.hpp"
#include "solver.hpp"

namespace jspec {

namespace {

cplx hadamard_side(const OperatorSpec& spec, Sign sign, RegClass rc, cplx z, double tol) {
  return detail::with_model(spec, [&](const auto& m) {
    const Side side = sign == Sign::Plus ? Side::Right : Side::Left;
    long K = std::max(m.min_window(z), 8L);
    for (;;) {
      detail::Kernel<cplx, std::decay_t<decltype(m)>> k(m, Mode::Regularized, rc, z, K, true);
      const auto tail = k.log_tail(side, K);
      if (std::isfinite(tail.err) && tail.err <= tol) {
        cplx prod = 1.0;
        if (sign == Sign::Plus)
          for (long n = 1; n <= K; ++n) prod *= k.at(n).rho;
        else
          for (long n = -K; n <= 0; ++n) prod *= k.at(n).rho;
        return prod * std::exp(tail.value);
      }
      if (K >= (1L << 22)) raise(ErrorKind::Budget, "Hadamard tail did not converge");
      K *= 2;
    }
  });
}

void require_p(const OperatorSpec& spec, int p) {
  if (p < spec.reg_class().p)
    raise(ErrorKind::WrongClass, "p below the summability order of the class");
}

}  // namespace

cplx hadamard_phi(const OperatorSpec& spec, Sign sign, int p, cplx z, double tol) {
  const auto kind = spec.reg_class().kind;
  const bool ok = kind == RegKind::Compact || (kind == RegKind::Combined && sign == Sign::Plus);
  if (!ok) raise(ErrorKind::WrongClass, "Phi factors need a compact-type diagonal on this side");
  require_p(spec, p);
  if (z == cplx(0.0)) raise(ErrorKind::ZeroArgument, "Phi is undefined at the origin");
  return hadamard_side(spec, sign, {RegKind::Compact, p}, z, tol);
}

cplx hadamard_psi(const OperatorSpec& spec, Sign sign, int p, cplx z, double tol) {
  const auto kind = spec.reg_class().kind;
  const bool ok =
      kind == RegKind::CompactResolvent || (kind == RegKind::Combined && sign == Sign::Minus);
  if (!ok) raise(ErrorKind::WrongClass, "Psi factors need a compact-resolvent diagonal on this side");
  require_p(spec, p);
  return hadamard_side(spec, sign, {RegKind::CompactResolvent, p}, z, tol);
}

CharValue charfn_reg(const OperatorSpec& spec, cplx z, double tol) {
  EvalOptions o;
  o.tol = tol;
  return charfn(spec, z, o, Mode::Regularized);
}

JetCharValue charfn_reg_jet(const OperatorSpec& spec, cplx z, int order, double tol) {
  EvalOptions o;
  o.tol = tol;
  return charfn_jet(spec, z, order, o, Mode::Regularized);
}

SolutionSlice solution_f_reg(const OperatorSpec& spec, cplx z, long a, long b, double tol) {
  EvalOptions o;
  o.tol = tol;
  return solution_f(spec, z, a, b, o, Mode::Regularized);
}

SolutionSlice solution_g_reg(const OperatorSpec& spec, cplx z, long a, long b, double tol) {
  EvalOptions o;
  o.tol = tol;
  return solution_g(spec, z, a, b, o, Mode::Regularized);
}

namespace {

using Dense = std::vector<std::vector<cplx>>;

Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<cplx>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

cplx trace(const Dense& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

// sum_{j=1}^{p-1} u^j / j
cplx conv_sum(cplx u, int p) {
  cplx s = 0.0, pw = 1.0;
  for (int j = 1; j < p; ++j) {
    pw *= u;
    s += pw / static_cast<double>(j);
  }
  return s;
}

}  // namespace

DetpResult detp_finite(const OperatorSpec& spec, int p, cplx z, long N, DetForm form) {
  if (p < 1) raise(ErrorKind::WrongClass, "p must be >= 1");
  if (N < 0) raise(ErrorKind::WindowTooSmall, "N must be >= 0");
  const bool compact = form == DetForm::Compact;
  const std::size_t dim = static_cast<std::size_t>(2 * N + 1);
  std::vector<cplx> lam(dim), w(dim), gsq(dim);
  for (long n = -N; n <= N; ++n) {
    const auto i = static_cast<std::size_t>(n + N);
    lam[i] = spec.lambda(n);
    w[i] = spec.w(n);
    gsq[i] = spec.gamma_sq(n);
    if (!compact && lam[i] == cplx(0.0))
      raise(ErrorKind::PoleHit, "resolvent form needs nonzero diagonal entries");
  }
  // X = diag d + off-diagonal o: the operator whose det_p is sought is 1 + X.
  std::vector<cplx> dg(dim), o2(dim > 0 ? dim - 1 : 0);
  for (std::size_t i = 0; i < dim; ++i) dg[i] = compact ? -z * lam[i] : -z / lam[i];
  for (std::size_t i = 0; i + 1 < dim; ++i)
    o2[i] = compact ? z * z * w[i] * w[i] : w[i] * w[i] / (lam[i] * lam[i + 1]);

  cplx diag_exp = 0.0;  // sum_n sum_{j<p} u_n^j / j,  u_n = -dg_n
  for (std::size_t i = 0; i < dim; ++i) diag_exp += conv_sum(-dg[i], p);

  DetpResult r;
  // (a) product of regularizing factors times the finite F
  bool pole = false;
  cplx prod = 1.0;
  std::vector<cplx> xs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const cplx one_plus = 1.0 + dg[i];
    prod *= one_plus * std::exp(conv_sum(-dg[i], p));
    if (one_plus == cplx(0.0)) pole = true;
    xs[i] = compact ? z * gsq[i] / one_plus : gsq[i] / (lam[i] - z);
  }
  r.product_form = pole ? cplx(std::nan(""), std::nan("")) : prod * f_eval(xs);

  // (b) D_k = (1 + d_k) D_{k-1} - o_{k-1}^2 D_{k-2}
  cplx d_prev = 1.0, d_cur = 1.0 + dg[0];
  for (std::size_t k = 1; k < dim; ++k) {
    const cplx next = (1.0 + dg[k]) * d_cur - o2[k - 1] * d_prev;
    d_prev = d_cur;
    d_cur = next;
  }
  const cplx det = d_cur;
  r.recurrence_form = det * std::exp(diag_exp);
  const double mag = std::max(std::abs(r.product_form), std::abs(r.recurrence_form));
  r.identity_residual = mag > 0.0 ? std::abs(r.product_form - r.recurrence_form) / mag : 0.0;

  // textbook det_p with full traces of X^j
  Dense X(dim, std::vector<cplx>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) X[i][i] = dg[i];
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    const cplx o = std::sqrt(o2[i]);
    X[i][i + 1] = o;
    X[i + 1][i] = o;
  }
  cplx tr_exp = 0.0;
  Dense pw = X;
  for (int j = 1; j < p; ++j) {
    if (j > 1) pw = matmul(pw, X);
    const double sgn = j % 2 == 0 ? 1.0 : -1.0;
    tr_exp += sgn * trace(pw) / static_cast<double>(j);
  }
  r.trace_form = det * std::exp(tr_exp);
  return r;
}

}  // namespace jspec
