#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smrprec/iterative.hpp"
#include "smrprec/matrix.hpp"

namespace smrprec {

enum class UpdateMode { theorem1, theorem2, lowcomplexity };

enum class ChannelScenario { los_dominated, symmetric_rayleigh };

/// Rank-one regularizer b c^H subtracted from the Wishart matrix.
struct RankOneUpdate {
    ComplexMatrix b;  // N x 1
    ComplexMatrix c;  // N x 1
    UpdateMode mode = UpdateMode::lowcomplexity;
    double alpha = 0.0;
    double xi = 0.0;
    std::optional<std::size_t> source_column;
};

/// A - b c^H, assembled entrywise in O(N^2).
ComplexMatrix apply_update(const ComplexMatrix& a, const RankOneUpdate& upd);

/// b = u_0, c = xi u_0. Cancels the largest eigenvalue down to |lambda_0 - xi|.
RankOneUpdate theorem1_update(const Spectrum& spec, double xi);

/// Midpoint of the sufficient interval (lambda_0-lambda_1, lambda_0-lambda_{N-1}).
double default_xi_theorem1(const Spectrum& spec);

/// b = u_{N-2} + u_{N-1}, c = xi b. Raises the trailing eigenvalue pair.
RankOneUpdate theorem2_update(const Spectrum& spec, double xi);

/// 1.5 * xi_T1, capped so 2 xi < lambda_0.
double default_xi_theorem2(const Spectrum& spec);

/// Delta = A - alpha I, b = delta_n / |delta_n|, c = Delta b. No spectral
/// knowledge needed; O(N^2).
RankOneUpdate lowcomplexity_update(const ComplexMatrix& a, double alpha, std::size_t column);

ChannelScenario scenario_from_string(const std::string& name);

double select_alpha(const ComplexMatrix& a, ChannelScenario scenario);

/// Sherman-Morrison recovery A^{-1} = X - X b c^H X / (1 + c^H X b), using
/// only vector-matrix products.
ComplexMatrix sm_recover(const ComplexMatrix& xreg, const RankOneUpdate& upd);

struct ListResult {
    RankOneUpdate best;
    ComplexMatrix inverse;
    std::vector<IterationTrace> traces;  // one per candidate column
    std::size_t best_column = 0;
};

/// Runs the low-complexity update for every column, inverts each regularized
/// matrix with HB in parallel, and keeps the candidate with the smallest
/// residual at the earliest stopping iteration (the full budget when no
/// candidate reaches tol).
ListResult list_regularize(const ComplexMatrix& a, double alpha, int iter_budget, double tol);

}  // namespace smrprec
