#pragma once

#include "jspec/charfn.hpp"

namespace jspec {

enum class Sign { Plus, Minus };

// Phi_p^+ = prod_{n>=1} (1 - lambda_n/z) exp(sum_{j<p} (lambda_n/z)^j / j);
// Phi_p^- is the same over n <= 0.
cplx hadamard_phi(const OperatorSpec& spec, Sign sign, int p, cplx z, double tol = 1e-12);
// Psi_p^+ / Psi_p^- with z/lambda_n in place of lambda_n/z; a zero diagonal
// entry contributes the bare factor z.
cplx hadamard_psi(const OperatorSpec& spec, Sign sign, int p, cplx z, double tol = 1e-12);

CharValue charfn_reg(const OperatorSpec& spec, cplx z, double tol = 1e-10);
JetCharValue charfn_reg_jet(const OperatorSpec& spec, cplx z, int order, double tol = 1e-10);
SolutionSlice solution_f_reg(const OperatorSpec& spec, cplx z, long a, long b, double tol = 1e-10);
SolutionSlice solution_g_reg(const OperatorSpec& spec, cplx z, long a, long b, double tol = 1e-10);

enum class DetForm { Compact, Resolvent };

struct DetpResult {
  cplx product_form;     // product of regularizing factors times the finite F
  cplx recurrence_form;  // tridiagonal determinant times the diagonal trace exponential
  double identity_residual = 0.0;
  cplx trace_form;       // det(1+X) exp(sum_j (-1)^j Tr X^j / j), the textbook det_p
};

// Compact: det_p(1 - z P_N J P_N).  Resolvent: det_p(1 + P_N A(z) P_N),
// A(z) = Lambda^{-1/2}(J - z)Lambda^{-1/2} - 1.
DetpResult detp_finite(const OperatorSpec& spec, int p, cplx z, long N,
                       DetForm form = DetForm::Compact);

}  // namespace jspec
