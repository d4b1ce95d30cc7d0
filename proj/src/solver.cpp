#include "smrprec/solver.hpp"

#include <stdexcept>

namespace smrprec {

InverseMethod inverse_method_from_string(const std::string& name) {
    if (name == "exact") return InverseMethod::exact;
    if (name == "hb") return InverseMethod::hb;
    if (name == "jacobi") return InverseMethod::jacobi;
    if (name == "gs") return InverseMethod::gs;
    if (name == "ssor") return InverseMethod::ssor;
    if (name == "smr") return InverseMethod::smr;
    if (name == "smr-list") return InverseMethod::smr_list;
    if (name == "smr-t1") return InverseMethod::smr_t1;
    if (name == "smr-t2") return InverseMethod::smr_t2;
    throw std::invalid_argument("unknown inversion method: " + name);
}

std::string to_string(InverseMethod method) {
    switch (method) {
        case InverseMethod::exact:
            return "exact";
        case InverseMethod::hb:
            return "hb";
        case InverseMethod::jacobi:
            return "jacobi";
        case InverseMethod::gs:
            return "gs";
        case InverseMethod::ssor:
            return "ssor";
        case InverseMethod::smr:
            return "smr";
        case InverseMethod::smr_list:
            return "smr-list";
        case InverseMethod::smr_t1:
            return "smr-t1";
        case InverseMethod::smr_t2:
            return "smr-t2";
    }
    return "unknown";
}

double resolve_alpha(const ComplexMatrix& a, const InvertOptions& opts) {
    if (!std::isnan(opts.alpha)) return opts.alpha;
    return select_alpha(a, opts.scenario);
}

InvertResult invert_wishart(const ComplexMatrix& a, const InvertOptions& opts) {
    InvertResult result;
    switch (opts.method) {
        case InverseMethod::exact: {
            result.inverse = direct_inverse(a);
            result.trace.converged = true;
            result.trace.tolerance = opts.tol;
            return result;
        }
        case InverseMethod::hb: {
            const double omega = gershgorin_omega(a);
            auto [x, trace] = hb_invert(a, omega, opts.max_iter, opts.tol);
            result.inverse = std::move(x);
            result.trace = std::move(trace);
            return result;
        }
        case InverseMethod::jacobi:
        case InverseMethod::gs:
        case InverseMethod::ssor: {
            const PreconditionerKind kind = opts.method == InverseMethod::jacobi
                                                ? PreconditionerKind::jacobi
                                                : (opts.method == InverseMethod::gs
                                                       ? PreconditionerKind::gauss_seidel
                                                       : PreconditionerKind::ssor);
            const Preconditioner p = build_preconditioner(a, kind);
            auto [ainv, trace] = preconditioned_invert(a, p, opts.max_iter, opts.tol);
            result.inverse = std::move(ainv);
            result.trace = std::move(trace);
            return result;
        }
        case InverseMethod::smr: {
            const double alpha = resolve_alpha(a, opts);
            const RankOneUpdate upd = lowcomplexity_update(a, alpha, opts.source_column);
            const ComplexMatrix reg = apply_update(a, upd);
            const double omega = gershgorin_omega(reg);
            auto [x, trace] = hb_invert(reg, omega, opts.max_iter, opts.tol);
            result.inverse = sm_recover(x, upd);
            result.trace = std::move(trace);
            return result;
        }
        case InverseMethod::smr_list: {
            const double alpha = resolve_alpha(a, opts);
            ListResult list = list_regularize(a, alpha, opts.max_iter, opts.tol);
            result.inverse = std::move(list.inverse);
            result.trace = std::move(list.traces[list.best_column]);
            return result;
        }
        case InverseMethod::smr_t1:
        case InverseMethod::smr_t2: {
            // Exact (spectrum-based) modes; analysis and testing only.
            const Spectrum spec = hermitian_eig(a);
            RankOneUpdate upd;
            if (opts.method == InverseMethod::smr_t1) {
                const double xi = std::isnan(opts.xi) ? default_xi_theorem1(spec) : opts.xi;
                upd = theorem1_update(spec, xi);
            } else {
                const double xi = std::isnan(opts.xi) ? default_xi_theorem2(spec) : opts.xi;
                upd = theorem2_update(spec, xi);
            }
            const ComplexMatrix reg = apply_update(a, upd);
            const double omega = gershgorin_omega(reg);
            auto [x, trace] = hb_invert(reg, omega, opts.max_iter, opts.tol);
            result.inverse = sm_recover(x, upd);
            result.trace = std::move(trace);
            return result;
        }
    }
    throw std::invalid_argument("invert_wishart: unknown method");
}

}  // namespace smrprec
