#include "smrprec/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smrprec {

double condition_number(const Spectrum& spec) {
    if (spec.values.empty()) throw std::invalid_argument("condition_number: empty spectrum");
    const double smallest = spec.values.back();
    if (smallest <= 0.0) {
        std::ostringstream msg;
        msg << "condition_number: rank-deficient spectrum, smallest value " << smallest;
        throw std::runtime_error(msg.str());
    }
    return spec.values.front() / smallest;
}

PsiMatrix build_psi(std::pair<double, double> lambdas, double xi) {
    const auto [la, lb] = lambdas;
    if (!(la >= lb) || lb <= 0.0)
        throw std::invalid_argument("build_psi: need lambda_{N-2} >= lambda_{N-1} > 0");
    if (xi < 0.0) throw std::invalid_argument("build_psi: xi must be non-negative");
    PsiMatrix psi;
    psi.lambdas = lambdas;
    psi.xi = xi;
    psi.entries = {la - xi, -xi, -xi, lb - xi};
    return psi;
}

double psi_det(const PsiMatrix& psi) {
    return psi(0, 0) * psi(1, 1) - psi(0, 1) * psi(1, 0);
}

double psi_frobenius_sq(const PsiMatrix& psi) {
    double s = 0.0;
    for (double v : psi.entries) s += v * v;
    return s;
}

std::pair<double, double> psi_singular_values(std::pair<double, double> lambdas, double xi) {
    const PsiMatrix psi = build_psi(lambdas, xi);
    const double l1 = psi_frobenius_sq(psi);
    const double det = psi_det(psi);
    const double l2 = det * det;
    double disc = l1 * l1 - 4.0 * l2;
    if (disc < -1e-12)
        throw std::runtime_error("psi_singular_values: negative discriminant, internal error");
    if (disc < 0.0) disc = 0.0;
    const double root = std::sqrt(disc);
    const double s0 = std::sqrt(0.5 * (l1 + root));
    const double s1 = std::sqrt(std::max(0.5 * (l1 - root), 0.0));
    return {s0, s1};
}

std::pair<double, double> xi_thresholds(std::pair<double, double> lambdas) {
    const auto [la, lb] = lambdas;
    if (lb <= 0.0) throw std::invalid_argument("xi_thresholds: eigenvalues must be positive");
    if (la <= lb)
        throw std::invalid_argument(
            "xi_thresholds: degenerate spectrum, need lambda_{N-2} > lambda_{N-1}");
    const double t1 = 2.0 * la * (la + lb) / (3.0 * la + lb);
    const double t2 = 2.0 * (la + lb) * lb / (la + 3.0 * lb);
    return {t1, t2};
}

double residual_model(double kappa, int t) {
    if (kappa < 1.0) throw std::invalid_argument("residual_model: kappa must be >= 1");
    if (t < 0) throw std::invalid_argument("residual_model: t must be >= 0");
    const double k2 = kappa * kappa;
    const double ratio = (k2 - 1.0) / (k2 + 1.0);
    return 2.0 * std::pow(ratio, std::ldexp(1.0, t));
}

}  // namespace smrprec
