#include "smrprec/regularize.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "smrprec/spectral.hpp"

namespace smrprec {

ComplexMatrix apply_update(const ComplexMatrix& a, const RankOneUpdate& upd) {
    if (a.rows() != a.cols()) throw std::invalid_argument("apply_update: matrix not square");
    if (upd.b.rows() != a.rows() || upd.c.rows() != a.rows())
        throw std::invalid_argument("apply_update: vector length mismatch");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) -= upd.b(i, 0) * std::conj(upd.c(j, 0));
    return out;
}

RankOneUpdate theorem1_update(const Spectrum& spec, double xi) {
    RankOneUpdate upd;
    upd.mode = UpdateMode::theorem1;
    upd.xi = xi;
    upd.b = column(spec.basis, 0);
    upd.c = upd.b;
    upd.c *= xi;
    return upd;
}

double default_xi_theorem1(const Spectrum& spec) {
    const std::size_t n = spec.values.size();
    if (n < 2) throw std::invalid_argument("default_xi_theorem1: need at least two values");
    return spec.values[0] - 0.5 * (spec.values[1] + spec.values[n - 1]);
}

RankOneUpdate theorem2_update(const Spectrum& spec, double xi) {
    const std::size_t n = spec.values.size();
    if (n < 3) throw std::invalid_argument("theorem2_update: need at least three values");
    const double la = spec.values[n - 2];
    const double lb = spec.values[n - 1];
    if (lb <= 0.0) throw std::invalid_argument("theorem2_update: trailing value not positive");
    if (la <= lb)
        throw std::invalid_argument("theorem2_update: degenerate trailing pair");
    RankOneUpdate upd;
    upd.mode = UpdateMode::theorem2;
    upd.xi = xi;
    upd.b = column(spec.basis, n - 2) + column(spec.basis, n - 1);
    upd.c = upd.b;
    upd.c *= xi;
    return upd;
}

double default_xi_theorem2(const Spectrum& spec) {
    const std::size_t n = spec.values.size();
    if (n < 3) throw std::invalid_argument("default_xi_theorem2: need at least three values");
    const auto [t1, t2] = xi_thresholds({spec.values[n - 2], spec.values[n - 1]});
    (void)t2;
    const double cap = 0.4999 * spec.values[0];
    return std::min(1.5 * t1, cap);
}

RankOneUpdate lowcomplexity_update(const ComplexMatrix& a, double alpha, std::size_t column) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("lowcomplexity_update: matrix not square");
    const std::size_t n = a.rows();
    if (column >= n) throw std::invalid_argument("lowcomplexity_update: column out of range");

    ComplexMatrix delta = a;
    for (std::size_t i = 0; i < n; ++i) delta(i, i) -= alpha;

    ComplexMatrix b(n, 1);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        b(i, 0) = delta(i, column);
        norm_sq += std::norm(b(i, 0));
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-12 * std::max(frobenius_norm(a), 1.0)) {
        std::ostringstream msg;
        msg << "lowcomplexity_update: column " << column
            << " of A - alpha I is numerically zero; pick another column or alpha";
        throw std::runtime_error(msg.str());
    }
    b *= cx{1.0 / norm, 0.0};

    RankOneUpdate upd;
    upd.mode = UpdateMode::lowcomplexity;
    upd.alpha = alpha;
    upd.source_column = column;
    upd.b = b;
    upd.c = matmul(delta, b);
    upd.xi = 0.0;  // implicit in c
    return upd;
}

ChannelScenario scenario_from_string(const std::string& name) {
    if (name == "los-dominated") return ChannelScenario::los_dominated;
    if (name == "symmetric-rayleigh") return ChannelScenario::symmetric_rayleigh;
    throw std::invalid_argument("unknown scenario: " + name);
}

double select_alpha(const ComplexMatrix& a, ChannelScenario scenario) {
    (void)a;
    switch (scenario) {
        case ChannelScenario::los_dominated:
            return 0.1;
        case ChannelScenario::symmetric_rayleigh:
            return 1.0;
    }
    throw std::invalid_argument("select_alpha: unknown scenario");
}

ComplexMatrix sm_recover(const ComplexMatrix& xreg, const RankOneUpdate& upd) {
    const std::size_t n = xreg.rows();
    if (xreg.cols() != n) throw std::invalid_argument("sm_recover: matrix not square");
    if (upd.b.rows() != n || upd.c.rows() != n)
        throw std::invalid_argument("sm_recover: vector length mismatch");

    const ComplexMatrix xb = matmul(xreg, upd.b);   // X b
    const ComplexMatrix xhc = matmul(adjoint(xreg), upd.c);  // (c^H X)^H
    cx chxb{};
    for (std::size_t i = 0; i < n; ++i) chxb += std::conj(upd.c(i, 0)) * xb(i, 0);
    const cx denom = 1.0 + chxb;
    if (std::abs(denom) < 1e-12)
        throw std::runtime_error("sm_recover: 1 + c^H X b is numerically zero");

    ComplexMatrix out = xreg;
    for (std::size_t i = 0; i < n; ++i) {
        const cx ui = xb(i, 0) / denom;
        for (std::size_t j = 0; j < n; ++j) out(i, j) -= ui * std::conj(xhc(j, 0));
    }
    return out;
}

ListResult list_regularize(const ComplexMatrix& a, double alpha, int iter_budget, double tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("list_regularize: matrix not square");
    const std::size_t n = a.rows();

    struct Candidate {
        bool ok = false;
        RankOneUpdate upd;
        ComplexMatrix x;
        IterationTrace trace;
        std::string error;
    };
    std::vector<Candidate> cands(n);

#pragma omp parallel for schedule(dynamic)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        Candidate& cand = cands[static_cast<std::size_t>(ii)];
        try {
            cand.upd = lowcomplexity_update(a, alpha, static_cast<std::size_t>(ii));
            const ComplexMatrix reg = apply_update(a, cand.upd);
            const double omega = gershgorin_omega(reg);
            auto [x, trace] = hb_invert(reg, omega, iter_budget, tol);
            cand.x = std::move(x);
            cand.trace = std::move(trace);
            cand.ok = true;
        } catch (const std::exception& e) {
            cand.error = e.what();
        }
    }

    // Candidates that hit tol stop at different iterations, so residuals are
    // compared at the earliest stopping iteration (the full budget when no
    // candidate converges). Comparing final residuals instead would reward
    // late stoppers for their convergence overshoot.
    std::size_t shared = static_cast<std::size_t>(iter_budget);
    for (const Candidate& cand : cands)
        if (cand.ok) shared = std::min(shared, static_cast<std::size_t>(cand.trace.iterations));
    std::size_t best = n;
    double best_res = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!cands[i].ok) continue;
        const auto& res = cands[i].trace.residuals;
        const double r = res[std::min(shared, res.size() - 1)];
        if (r < best_res) {  // lowest index wins ties
            best_res = r;
            best = i;
        }
    }
    if (best == n) {
        std::ostringstream msg;
        msg << "list_regularize: all " << n << " candidates failed; first error: ";
        for (const auto& cand : cands) {
            if (!cand.error.empty()) {
                msg << cand.error;
                break;
            }
        }
        throw std::runtime_error(msg.str());
    }

    ListResult result;
    result.best = cands[best].upd;
    result.best_column = best;
    result.inverse = sm_recover(cands[best].x, cands[best].upd);
    result.traces.reserve(n);
    for (auto& cand : cands) result.traces.push_back(std::move(cand.trace));
    return result;
}

}  // namespace smrprec
