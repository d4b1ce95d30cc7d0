#include "smrprec/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "smrprec/qam.hpp"

namespace smrprec {

namespace {

constexpr std::size_t kTrialBatch = 32;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

struct TrialOutcome {
    std::size_t errors = 0;
    std::size_t symbols = 0;
    int iterations = 0;
};

/// One channel realization: precode, transmit vectors_per_trial symbol
/// vectors through AWGN, hard-detect per stream.
TrialOutcome run_trial(const SimulationConfig& cfg, InverseMethod method, std::size_t point_idx,
                       double pt_db, std::uint64_t trial) {
    const std::uint64_t seed = cfg.base_seed + trial;
    const ChannelRealization chan = make_channel(cfg, seed);
    const double pt_lin = std::pow(10.0, pt_db / 10.0);
    const double amplitude = std::sqrt(pt_lin);
    const double n0 = 1.0;

    const InvertOptions opts = invert_options_for(cfg, method);
    PrecodeResult pre;
    if (cfg.precoder == PrecoderKind::lmmse) {
        const double n0_over_pt = pt_lin > 0.0 ? n0 / pt_lin : 1e12;
        pre = lmmse_precoder(chan.h, n0_over_pt, opts);
    } else {
        const ComplexMatrix a = matmul(chan.h, adjoint(chan.h));
        const InvertResult inv = invert_wishart(a, opts);
        pre = zf_precoder(chan.h, inv.inverse);
        pre.inverse_source = method;
        pre.iterations_used = inv.trace.iterations;
    }

    // Effective per-stream channel after precoding.
    ComplexMatrix g = matmul(chan.h, pre.w);
    g *= cx{amplitude, 0.0};

    const std::size_t n = cfg.n;
    std::mt19937_64 rng(mix_seed(cfg.base_seed, trial, point_idx + 0x5150ULL));
    std::uniform_int_distribution<int> symbol_dist(0, 63);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double noise_scale = std::sqrt(0.5 * n0);

    TrialOutcome out;
    out.iterations = pre.iterations_used;
    std::vector<int> sent(n);
    std::vector<cx> s(n), y(n);
    for (std::size_t v = 0; v < cfg.vectors_per_trial; ++v) {
        for (std::size_t k = 0; k < n; ++k) {
            sent[k] = symbol_dist(rng);
            s[k] = qam64_map(sent[k]).point;
        }
        for (std::size_t i = 0; i < n; ++i) {
            cx acc{};
            for (std::size_t j = 0; j < n; ++j) acc += g(i, j) * s[j];
            y[i] = acc + cx{gauss(rng), gauss(rng)} * noise_scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            cx gain = g(i, i);
            if (std::abs(gain) < 1e-300) gain = 1.0;
            const int detected = qam64_demap(y[i] / gain);
            out.symbols += 1;
            if (detected != sent[i]) out.errors += 1;
        }
    }
    return out;
}

}  // namespace

SerCurve simulate_ser(const SimulationConfig& cfg, InverseMethod method) {
    SerCurve curve;
    curve.method = to_string(method);
    curve.config_hash = config_hash(cfg);

    for (std::size_t p = 0; p < cfg.power_grid_db.size(); ++p) {
        const double pt_db = cfg.power_grid_db[p];
        std::size_t errors = 0, symbols = 0, trials_done = 0;
        long long iter_sum = 0;

        while (trials_done < cfg.trials && errors < cfg.min_errors) {
            const std::size_t batch = std::min(kTrialBatch, cfg.trials - trials_done);
            std::vector<TrialOutcome> outcomes(batch);
#pragma omp parallel for schedule(dynamic)
            for (long long b = 0; b < static_cast<long long>(batch); ++b)
                outcomes[static_cast<std::size_t>(b)] = run_trial(
                    cfg, method, p, pt_db, trials_done + static_cast<std::uint64_t>(b));
            for (const TrialOutcome& o : outcomes) {
                errors += o.errors;
                symbols += o.symbols;
                iter_sum += o.iterations;
            }
            trials_done += batch;
        }

        SerPoint point;
        point.pt_db = pt_db;
        point.ser = symbols ? static_cast<double>(errors) / static_cast<double>(symbols) : 0.0;
        point.mean_iterations = trials_done ? static_cast<double>(iter_sum) / trials_done : 0.0;
        point.trials = trials_done;
        curve.points.push_back(point);
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const SerPoint& a, const SerPoint& b) { return a.pt_db < b.pt_db; });
    return curve;
}

void write_ser_csv(const std::string& path, const SerCurve& curve) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os.precision(12);
    os << "# method=" << curve.method << " config_hash=" << curve.config_hash << "\n";
    os << "pt_db,ser,mean_iterations,trials\n";
    for (const SerPoint& p : curve.points)
        os << p.pt_db << "," << p.ser << "," << p.mean_iterations << "," << p.trials << "\n";
}

namespace {

void write_trace_csv(const std::string& path, const IterationTrace& trace,
                     const std::string& hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os.precision(12);
    os << "# config_hash=" << hash << "\n";
    os << "t,residual\n";
    for (std::size_t t = 0; t < trace.residuals.size(); ++t)
        os << t << "," << trace.residuals[t] << "\n";
}

IterationTrace representative_trace(const SimulationConfig& cfg, InverseMethod method) {
    const ChannelRealization chan = make_channel(cfg, cfg.base_seed);
    const ComplexMatrix a = matmul(chan.h, adjoint(chan.h));
    return invert_wishart(a, invert_options_for(cfg, method)).trace;
}

}  // namespace

void run_experiment(const SimulationConfig& cfg, const std::string& outdir,
                    const std::vector<double>& sweep_alphas) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    const std::string hash = config_hash(cfg);

    nlohmann::json summary;
    summary["config_hash"] = hash;
    summary["base_seed"] = cfg.base_seed;
    summary["config"] = serialize_config(cfg);
    summary["outputs"] = nlohmann::json::array();

    if (!sweep_alphas.empty()) {
        for (double alpha : sweep_alphas) {
            SimulationConfig swept = cfg;
            swept.alpha = alpha;
            const SerCurve curve = simulate_ser(swept, InverseMethod::smr);
            std::ostringstream name;
            name << "ser_smr_alpha" << alpha << ".csv";
            const std::string path = (fs::path(outdir) / name.str()).string();
            write_ser_csv(path, curve);
            summary["outputs"].push_back(name.str());
        }
    } else {
        for (InverseMethod method : cfg.methods) {
            const SerCurve curve = simulate_ser(cfg, method);
            const std::string ser_name = "ser_" + to_string(method) + ".csv";
            write_ser_csv((fs::path(outdir) / ser_name).string(), curve);
            summary["outputs"].push_back(ser_name);

            if (method != InverseMethod::exact) {
                const std::string trace_name = "trace_" + to_string(method) + ".csv";
                write_trace_csv((fs::path(outdir) / trace_name).string(),
                                representative_trace(cfg, method), hash);
                summary["outputs"].push_back(trace_name);
            }
        }
    }

    std::ofstream os((fs::path(outdir) / "summary.json").string());
    if (!os) throw std::runtime_error("cannot write summary.json in " + outdir);
    os << summary.dump(2) << "\n";
}

CompareReport compare_iterations(const SimulationConfig& cfg, InverseMethod reference,
                                 InverseMethod candidate) {
    CompareReport report;
    const std::size_t realizations = cfg.trials;
    std::vector<int> ref_its(realizations, -1), cand_its(realizations, -1);

#pragma omp parallel for schedule(dynamic)
    for (long long r = 0; r < static_cast<long long>(realizations); ++r) {
        const ChannelRealization chan =
            make_channel(cfg, cfg.base_seed + static_cast<std::uint64_t>(r));
        const ComplexMatrix a = matmul(chan.h, adjoint(chan.h));
        for (const auto& [method, slot] :
             {std::pair{reference, &ref_its}, std::pair{candidate, &cand_its}}) {
            try {
                const InvertResult inv = invert_wishart(a, invert_options_for(cfg, method));
                if (inv.trace.converged) (*slot)[static_cast<std::size_t>(r)] = inv.trace.iterations;
            } catch (const std::exception&) {
                // diverged realization stays flagged as -1
            }
        }
    }

    std::vector<double> reductions;
    for (std::size_t r = 0; r < realizations; ++r) {
        if (ref_its[r] < 0 || cand_its[r] < 0 || ref_its[r] == 0) {
            ++report.excluded;
            continue;
        }
        report.reference_iterations.push_back(ref_its[r]);
        report.candidate_iterations.push_back(cand_its[r]);
        reductions.push_back(100.0 * (ref_its[r] - cand_its[r]) / static_cast<double>(ref_its[r]));
    }
    if (reductions.empty())
        throw std::runtime_error("compare_iterations: no realization converged for both methods");

    double sum = 0.0;
    for (double v : reductions) sum += v;
    report.mean_reduction_pct = sum / static_cast<double>(reductions.size());

    // Percentile bootstrap, fixed seed.
    std::mt19937_64 rng(0xb00757a9ULL);
    std::uniform_int_distribution<std::size_t> pick(0, reductions.size() - 1);
    const int resamples = 1000;
    std::vector<double> means(resamples);
    for (int b = 0; b < resamples; ++b) {
        double acc = 0.0;
        for (std::size_t k = 0; k < reductions.size(); ++k) acc += reductions[pick(rng)];
        means[b] = acc / static_cast<double>(reductions.size());
    }
    std::sort(means.begin(), means.end());
    report.ci_low_pct = means[static_cast<std::size_t>(0.025 * resamples)];
    report.ci_high_pct = means[static_cast<std::size_t>(0.975 * resamples) - 1];
    return report;
}

}  // namespace smrprec
