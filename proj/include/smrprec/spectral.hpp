#pragma once

#include <array>
#include <utility>

#include "smrprec/matrix.hpp"

namespace smrprec {

/// Trailing K x K block of U^H (A - b c^H) U when b sums the K smallest
/// eigenvectors and c = xi * b. Only K = 2 is supported.
struct PsiMatrix {
    int dim = 2;
    std::pair<double, double> lambdas;  // (lambda_{N-2}, lambda_{N-1})
    double xi = 0.0;
    std::array<double, 4> entries{};  // row-major 2x2

    double operator()(int i, int j) const { return entries[i * 2 + j]; }
};

/// lambda_0 / lambda_{N-1}; requires a strictly positive smallest value.
double condition_number(const Spectrum& spec);

PsiMatrix build_psi(std::pair<double, double> lambdas, double xi);

double psi_det(const PsiMatrix& psi);
double psi_frobenius_sq(const PsiMatrix& psi);

/// Closed-form singular values (sigma0 >= sigma1) of the Psi block.
std::pair<double, double> psi_singular_values(std::pair<double, double> lambdas, double xi);

/// Smallest xi values guaranteeing sigma0 > lambda_{N-2} (first) and
/// sigma1 > lambda_{N-1} (second); the first dominates.
std::pair<double, double> xi_thresholds(std::pair<double, double> lambdas);

/// Dominant-term approximation 2 ((k^2-1)/(k^2+1))^(2^t) of the HB residual.
double residual_model(double kappa, int t);

}  // namespace smrprec
