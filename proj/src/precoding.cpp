#include "smrprec/precoding.hpp"

#include <stdexcept>

namespace smrprec {

PrecoderKind precoder_from_string(const std::string& name) {
    if (name == "zf") return PrecoderKind::zf;
    if (name == "lmmse") return PrecoderKind::lmmse;
    throw std::invalid_argument("unknown precoder: " + name);
}

std::string to_string(PrecoderKind kind) {
    return kind == PrecoderKind::zf ? "zf" : "lmmse";
}

PrecodeResult zf_precoder(const ComplexMatrix& h, const ComplexMatrix& ainv) {
    if (ainv.rows() != h.rows() || ainv.cols() != h.rows())
        throw std::invalid_argument("zf_precoder: Ainv shape does not match H");
    PrecodeResult result;
    result.method = PrecoderKind::zf;
    result.w = matmul(adjoint(h), ainv);
    result.w *= cx{1.0 / frobenius_norm(result.w), 0.0};
    return result;
}

PrecodeResult lmmse_precoder(const ComplexMatrix& h, double n0_over_pt,
                             const InvertOptions& opts) {
    if (n0_over_pt < 0.0) throw std::invalid_argument("lmmse_precoder: N0/Pt must be >= 0");
    ComplexMatrix a = matmul(h, adjoint(h));
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += n0_over_pt;
    InvertResult inv = invert_wishart(a, opts);

    PrecodeResult result;
    result.method = PrecoderKind::lmmse;
    result.inverse_source = opts.method;
    result.iterations_used = inv.trace.iterations;
    result.w = matmul(adjoint(h), inv.inverse);
    result.w *= cx{1.0 / frobenius_norm(result.w), 0.0};
    return result;
}

}  // namespace smrprec
