#pragma once

#include <cmath>
#include <string>

#include "smrprec/matrix.hpp"
#include "smrprec/regularize.hpp"

namespace smrprec {

enum class InverseMethod { exact, hb, jacobi, gs, ssor, smr, smr_list, smr_t1, smr_t2 };

InverseMethod inverse_method_from_string(const std::string& name);
std::string to_string(InverseMethod method);

struct InvertOptions {
    InverseMethod method = InverseMethod::exact;
    double tol = 1e-10;
    int max_iter = 200;
    double alpha = std::nan("");  // NaN selects by scenario
    double xi = std::nan("");     // NaN selects module defaults (exact modes)
    ChannelScenario scenario = ChannelScenario::symmetric_rayleigh;
    std::size_t source_column = 0;  // non-list low-complexity column
};

struct InvertResult {
    ComplexMatrix inverse;
    IterationTrace trace;  // empty residuals for method = exact
};

double resolve_alpha(const ComplexMatrix& a, const InvertOptions& opts);

/// Single entry point for every inversion route in the library.
InvertResult invert_wishart(const ComplexMatrix& a, const InvertOptions& opts);

}  // namespace smrprec
