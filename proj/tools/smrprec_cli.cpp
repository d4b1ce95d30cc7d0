#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "smrprec/config.hpp"
#include "smrprec/simulate.hpp"
#include "smrprec/spectral.hpp"

namespace {

using namespace smrprec;

void apply_worker_count(int workers) {
    if (workers <= 0) {
        if (const char* env = std::getenv("SMRPREC_WORKERS")) workers = std::atoi(env);
    }
    if (workers > 0) omp_set_num_threads(workers);
}

int cmd_invert(const std::string& input, const std::string& method_name, double alpha, double xi,
               double tol, int max_iter, const std::string& omega_mode,
               const std::string& scenario_name, const std::string& trace_path,
               const std::string& output_path) {
    const ComplexMatrix a = read_matrix_file(input);
    InvertOptions opts;
    opts.method = inverse_method_from_string(method_name);
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.alpha = alpha;
    opts.xi = xi;
    opts.scenario = scenario_from_string(scenario_name);

    InvertResult result;
    if (opts.method == InverseMethod::hb && omega_mode == "optimal") {
        const double omega = optimal_omega(hermitian_eig(a));
        auto [x, trace] = hb_invert(a, omega, max_iter, tol);
        result.inverse = std::move(x);
        result.trace = std::move(trace);
    } else {
        result = invert_wishart(a, opts);
    }

    if (!output_path.empty()) write_matrix_file(output_path, result.inverse);
    std::ofstream trace_os;
    std::ostream* os = &std::cout;
    if (!trace_path.empty()) {
        trace_os.open(trace_path);
        if (!trace_os) throw std::runtime_error("cannot open trace file: " + trace_path);
        os = &trace_os;
    }
    os->precision(12);
    *os << "t,residual\n";
    for (std::size_t t = 0; t < result.trace.residuals.size(); ++t)
        *os << t << "," << result.trace.residuals[t] << "\n";
    std::cerr << "method=" << method_name << " iterations=" << result.trace.iterations
              << " converged=" << (result.trace.converged ? "yes" : "no") << "\n";
    return 0;
}

int cmd_analyze(const std::string& input) {
    const ComplexMatrix a = read_matrix_file(input);
    const Spectrum spec = hermitian_eig(a);
    std::cout.precision(10);
    std::cout << "spectrum:";
    for (double v : spec.values) std::cout << " " << v;
    std::cout << "\n";
    const double kappa = condition_number(spec);
    std::cout << "condition_number: " << kappa << "\n";
    const std::size_t n = spec.values.size();
    if (n >= 2 && spec.values[n - 2] > spec.values[n - 1] && spec.values[n - 1] > 0.0) {
        const auto [t1, t2] = xi_thresholds({spec.values[n - 2], spec.values[n - 1]});
        std::cout << "xi_T1: " << t1 << "\nxi_T2: " << t2 << "\n";
    } else {
        std::cout << "xi_T1: n/a (degenerate trailing pair)\nxi_T2: n/a\n";
    }
    std::cout << "residual_model (t, value):\n";
    for (int t = 0; t <= 10; ++t)
        std::cout << "  " << t << " " << residual_model(kappa, t) << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& outdir,
                 const std::string& sweep_alpha, const std::string& dump_channel) {
    const SimulationConfig cfg = parse_config_file(config_path);
    if (!dump_channel.empty()) {
        const ChannelRealization chan = make_channel(cfg, cfg.base_seed);
        write_matrix_file(dump_channel, chan.h);
    }
    std::vector<double> alphas;
    if (!sweep_alpha.empty()) {
        std::stringstream ss(sweep_alpha);
        std::string item;
        while (std::getline(ss, item, ',')) alphas.push_back(std::stod(item));
    }
    run_experiment(cfg, outdir, alphas);
    std::cout << "wrote results to " << outdir << " (config_hash=" << config_hash(cfg) << ")\n";
    return 0;
}

int cmd_compare(const std::string& config_path, const std::string& reference,
                const std::string& candidate) {
    const SimulationConfig cfg = parse_config_file(config_path);
    const CompareReport report = compare_iterations(cfg, inverse_method_from_string(reference),
                                                    inverse_method_from_string(candidate));
    std::cout.precision(6);
    std::cout << "realizations: " << report.reference_iterations.size()
              << " (excluded: " << report.excluded << ")\n";
    std::cout << "mean iteration reduction: " << report.mean_reduction_pct << "% (95% CI ["
              << report.ci_low_pct << ", " << report.ci_high_pct << "])\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-one regularized iterative matrix inversion for MIMO linear precoding"};
    app.require_subcommand(1);
    int workers = 0;
    app.add_option("--workers", workers, "worker thread count (default: machine parallelism)");

    auto* invert = app.add_subcommand("invert", "invert a matrix file, write the residual trace");
    std::string in_path, method = "hb", omega_mode = "gershgorin", scenario = "symmetric-rayleigh";
    std::string trace_path, output_path;
    double alpha = std::nan(""), xi = std::nan(""), tol = 1e-10;
    int max_iter = 200;
    invert->add_option("--input", in_path, "matrix file (text format)")->required();
    invert->add_option("--method", method, "hb, jacobi, gs, ssor, smr, smr-list, smr-t1, smr-t2, exact");
    invert->add_option("--alpha", alpha, "low-complexity shift (default: scenario)");
    invert->add_option("--xi", xi, "exact-mode scale (default: auto)");
    invert->add_option("--tol", tol, "residual tolerance");
    invert->add_option("--max-iter", max_iter, "iteration cap");
    invert->add_option("--omega", omega_mode, "gershgorin or optimal (hb only)");
    invert->add_option("--scenario", scenario, "los-dominated or symmetric-rayleigh");
    invert->add_option("--trace", trace_path, "trace CSV path (default: stdout)");
    invert->add_option("--output", output_path, "write the inverse to this matrix file");

    auto* analyze = app.add_subcommand("analyze", "spectrum, condition number, xi thresholds");
    std::string analyze_path;
    analyze->add_option("--input", analyze_path, "matrix file")->required();

    auto* simulate = app.add_subcommand("simulate", "run a configured SER experiment");
    std::string config_path, outdir = "results", sweep_alpha, dump_channel;
    simulate->add_option("--config", config_path, "config file")->required();
    simulate->add_option("--outdir", outdir, "output directory");
    simulate->add_option("--sweep-alpha", sweep_alpha, "comma list of alpha values (smr)");
    simulate->add_option("--dump-channel", dump_channel, "write the seed-0 channel matrix here");

    auto* compare = app.add_subcommand("compare", "paired iterations-to-tolerance comparison");
    std::string cmp_config, reference = "hb", candidate = "smr";
    compare->add_option("--config", cmp_config, "config file")->required();
    compare->add_option("--reference", reference, "reference method");
    compare->add_option("--candidate", candidate, "candidate method");

    CLI11_PARSE(app, argc, argv);
    apply_worker_count(workers);

    try {
        if (invert->parsed())
            return cmd_invert(in_path, method, alpha, xi, tol, max_iter, omega_mode, scenario,
                              trace_path, output_path);
        if (analyze->parsed()) return cmd_analyze(analyze_path);
        if (simulate->parsed()) return cmd_simulate(config_path, outdir, sweep_alpha, dump_channel);
        if (compare->parsed()) return cmd_compare(cmp_config, reference, candidate);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
