#pragma once

#include <string>

#include "smrprec/matrix.hpp"
#include "smrprec/solver.hpp"

namespace smrprec {

enum class PrecoderKind { zf, lmmse };

PrecoderKind precoder_from_string(const std::string& name);
std::string to_string(PrecoderKind kind);

struct PrecodeResult {
    ComplexMatrix w;  // M x N, Frobenius-normalized to 1
    PrecoderKind method = PrecoderKind::zf;
    InverseMethod inverse_source = InverseMethod::exact;
    int iterations_used = 0;
};

/// W = H^H Ainv, Frobenius-normalized. Ainv is any estimate of (H H^H)^{-1}.
PrecodeResult zf_precoder(const ComplexMatrix& h, const ComplexMatrix& ainv);

/// W = H^H (H H^H + (N0/Pt) I)^{-1}, the inner inverse produced per opts.
PrecodeResult lmmse_precoder(const ComplexMatrix& h, double n0_over_pt,
                             const InvertOptions& opts);

}  // namespace smrprec
