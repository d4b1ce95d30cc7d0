#pragma once

#include <string>
#include <vector>

#include "smrprec/config.hpp"

namespace smrprec {

struct SerPoint {
    double pt_db = 0.0;
    double ser = 0.0;
    double mean_iterations = 0.0;
    std::size_t trials = 0;
};

struct SerCurve {
    std::vector<SerPoint> points;
    std::string method;
    std::string config_hash;
};

/// Monte-Carlo SER sweep over the config's power grid for one inversion
/// method. Trials extend in fixed batches until min_errors symbol errors are
/// collected or the trial cap is hit.
SerCurve simulate_ser(const SimulationConfig& config, InverseMethod method);

void write_ser_csv(const std::string& path, const SerCurve& curve);

/// SER curves plus one representative iteration trace per method, and a JSON
/// run summary. sweep_alphas, when non-empty, replaces the method sweep by an
/// alpha sweep of the smr method.
void run_experiment(const SimulationConfig& config, const std::string& outdir,
                    const std::vector<double>& sweep_alphas = {});

struct CompareReport {
    std::vector<int> reference_iterations;
    std::vector<int> candidate_iterations;
    std::size_t excluded = 0;  // diverged or hit the iteration cap
    double mean_reduction_pct = 0.0;
    double ci_low_pct = 0.0;
    double ci_high_pct = 0.0;
};

/// Paired iterations-to-tolerance comparison over config.trials realizations,
/// with a 95% bootstrap interval on the mean reduction.
CompareReport compare_iterations(const SimulationConfig& config, InverseMethod reference,
                                 InverseMethod candidate);

}  // namespace smrprec
