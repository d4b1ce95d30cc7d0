#include "smrprec/iterative.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smrprec {

namespace {

double identity_residual_sq(const ComplexMatrix& a, const ComplexMatrix& x) {
    ComplexMatrix r = matmul(a, x);
    for (std::size_t i = 0; i < r.rows(); ++i) r(i, i) -= 1.0;
    return frobenius_norm_sq(r);
}

/// Inverse of a lower-triangular matrix by forward substitution.
ComplexMatrix lower_triangular_inverse(const ComplexMatrix& t) {
    const std::size_t n = t.rows();
    ComplexMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        inv(j, j) = 1.0 / t(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            cx s{};
            for (std::size_t k = j; k < i; ++k) s += t(i, k) * inv(k, j);
            inv(i, j) = -s / t(i, i);
        }
    }
    return inv;
}

}  // namespace

PreconditionerKind preconditioner_kind_from_string(const std::string& name) {
    if (name == "none") return PreconditionerKind::none;
    if (name == "jacobi") return PreconditionerKind::jacobi;
    if (name == "gs" || name == "gauss-seidel") return PreconditionerKind::gauss_seidel;
    if (name == "ssor") return PreconditionerKind::ssor;
    throw std::invalid_argument("unknown preconditioner kind: " + name);
}

double gershgorin_omega(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("gershgorin_omega: matrix not square");
    if (frobenius_norm_sq(a) == 0.0)
        throw std::invalid_argument("gershgorin_omega: all-zero matrix");
    const ComplexMatrix gram = matmul(adjoint(a), a);
    double worst = 0.0;
    for (std::size_t n = 0; n < gram.rows(); ++n) {
        double row = 0.0;
        for (std::size_t i = 0; i < gram.cols(); ++i) row += std::abs(gram(n, i));
        worst = std::max(worst, row);
    }
    return 1.0 / worst;
}

double optimal_omega(const Spectrum& spec) {
    if (spec.values.empty()) throw std::invalid_argument("optimal_omega: empty spectrum");
    const double l0 = spec.values.front();
    const double ln = spec.values.back();
    return 2.0 / (l0 * l0 + ln * ln);
}

std::pair<ComplexMatrix, IterationTrace> hb_invert(const ComplexMatrix& a, double omega,
                                                   int max_iter, double tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hb_invert: matrix not square");
    const std::size_t n = a.rows();

    ComplexMatrix x = adjoint(a);
    x *= omega;

    IterationTrace trace;
    trace.tolerance = tol;
    trace.residuals.push_back(identity_residual_sq(a, x));
    trace.converged = trace.residuals.back() <= tol;

    // Below this the residual is round-off; increases there are not divergence.
    const double noise_floor = std::pow(1.6e-15 * static_cast<double>(n), 2);

    int rising = 0;
    for (int t = 1; t <= max_iter && !trace.converged; ++t) {
        ComplexMatrix ax = matmul(a, x);
        ComplexMatrix step(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) step(i, j) = (i == j ? 2.0 : 0.0) - ax(i, j);
        x = matmul(x, step);

        const double r = identity_residual_sq(a, x);
        rising = (r > trace.residuals.back() && r > noise_floor) ? rising + 1 : 0;
        trace.residuals.push_back(r);
        trace.iterations = t;
        if (rising >= 3) {
            const auto& rs = trace.residuals;
            std::ostringstream msg;
            msg << "hb_invert: diverging with omega=" << omega << ", last residuals "
                << rs[rs.size() - 4] << " " << rs[rs.size() - 3] << " " << rs[rs.size() - 2]
                << " " << rs[rs.size() - 1];
            throw std::runtime_error(msg.str());
        }
        trace.converged = r <= tol;
    }
    return {std::move(x), std::move(trace)};
}

Preconditioner build_preconditioner(const ComplexMatrix& a, PreconditionerKind kind) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("build_preconditioner: matrix not square");
    const std::size_t n = a.rows();

    Preconditioner p;
    p.kind = kind;
    if (kind == PreconditionerKind::none) {
        p.matrix = ComplexMatrix::identity(n);
        return p;
    }

    const double floor = 1e-14 * std::max(frobenius_norm(a), 1e-300);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a(i, i)) < floor) {
            std::ostringstream msg;
            msg << "build_preconditioner: zero diagonal entry at index " << i;
            throw std::invalid_argument(msg.str());
        }
    }

    if (kind == PreconditionerKind::jacobi) {
        p.matrix = ComplexMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i) p.matrix(i, i) = 1.0 / a(i, i);
        return p;
    }

    // D + L: diagonal plus strict lower part of A.
    ComplexMatrix dl(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) dl(i, j) = a(i, j);
    const ComplexMatrix dl_inv = lower_triangular_inverse(dl);

    if (kind == PreconditionerKind::gauss_seidel) {
        p.matrix = dl_inv;
        return p;
    }

    // SSOR: (L^H + D)^{-1} D^{-1} (L + D)^{-1} = (D+L)^{-H} D^{-1} (D+L)^{-1}.
    ComplexMatrix dinv(n, n);
    for (std::size_t i = 0; i < n; ++i) dinv(i, i) = 1.0 / a(i, i);
    p.matrix = matmul(adjoint(dl_inv), matmul(dinv, dl_inv));
    return p;
}

std::pair<ComplexMatrix, IterationTrace> preconditioned_invert(const ComplexMatrix& a,
                                                               const Preconditioner& p,
                                                               int max_iter, double tol) {
    const ComplexMatrix pa = matmul(p.matrix, a);
    const double omega = gershgorin_omega(pa);
    auto [x, trace] = hb_invert(pa, omega, max_iter, tol);
    return {matmul(x, p.matrix), std::move(trace)};
}

}  // namespace smrprec
