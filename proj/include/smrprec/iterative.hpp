#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smrprec/matrix.hpp"

namespace smrprec {

/// Per-iteration residuals ||I - A X_t||_F^2, t = 0 .. iterations.
struct IterationTrace {
    std::vector<double> residuals;
    int iterations = 0;
    bool converged = false;
    double tolerance = 0.0;
};

enum class PreconditionerKind { none, jacobi, gauss_seidel, ssor };

struct Preconditioner {
    PreconditionerKind kind = PreconditionerKind::none;
    ComplexMatrix matrix;
};

PreconditionerKind preconditioner_kind_from_string(const std::string& name);

/// omega = 1 / max_n sum_i |a_n^H a_i| over columns of A.
double gershgorin_omega(const ComplexMatrix& a);

/// omega* = 2 / (lambda_0^2 + lambda_{N-1}^2).
double optimal_omega(const Spectrum& spec);

/// Hotelling-Bodewig iteration X_t = X_{t-1}(2I - A X_{t-1}), X_0 = omega A^H.
/// Throws on three consecutive residual increases.
std::pair<ComplexMatrix, IterationTrace> hb_invert(const ComplexMatrix& a, double omega,
                                                   int max_iter, double tol);

Preconditioner build_preconditioner(const ComplexMatrix& a, PreconditionerKind kind);

/// Runs HB on PA and returns X_t P as the estimate of A^{-1}; the trace is
/// measured on ||I - (PA) X_t||_F^2.
std::pair<ComplexMatrix, IterationTrace> preconditioned_invert(const ComplexMatrix& a,
                                                               const Preconditioner& p,
                                                               int max_iter, double tol);

}  // namespace smrprec
