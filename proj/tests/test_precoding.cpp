#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "smrprec/precoding.hpp"
#include "smrprec/qam.hpp"
#include "smrprec/simulate.hpp"
#include "smrprec/spectral.hpp"
#include "test_helpers.hpp"

using namespace smrprec;
using namespace smrprec::testing;

namespace {

SimulationConfig small_rayleigh_config() {
    SimulationConfig cfg;
    cfg.channel = ChannelModel::rayleigh;
    cfg.n = 4;
    cfg.m = 16;
    cfg.users = 1;
    cfg.antennas_per_user = 4;
    cfg.trials = 8;
    cfg.min_errors = 100;
    cfg.vectors_per_trial = 10;
    cfg.base_seed = 77;
    return cfg;
}

}  // namespace

TEST_CASE("qam64 round trip and range checks") {
    for (int idx = 0; idx < 64; ++idx) CHECK(qam64_demap(qam64_map(idx).point) == idx);
    CHECK_THROWS_AS(qam64_map(-1), std::invalid_argument);
    CHECK_THROWS_AS(qam64_map(64), std::invalid_argument);

    const std::vector<int> sent = {0, 17, 42, 63};
    const auto symbols = qam64_map(sent);
    std::vector<cx> points;
    for (const auto& s : symbols) points.push_back(s.point);
    CHECK(qam64_demap(points) == sent);
}

TEST_CASE("qam64 constellation has unit average energy") {
    double energy = 0.0;
    for (int idx = 0; idx < 64; ++idx) energy += std::norm(qam64_map(idx).point);
    CHECK(energy / 64.0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qam64 corner magnitude is sqrt(98/42)") {
    double corner = 0.0;
    for (int idx = 0; idx < 64; ++idx) corner = std::max(corner, std::abs(qam64_map(idx).point));
    CHECK(corner == doctest::Approx(std::sqrt(98.0 / 42.0)).epsilon(1e-12));
}

TEST_CASE("qam64 demap ties break to the lowest index") {
    // Indices 0 and 8 differ only in the real axis (-7 vs -5 pre-scale).
    const cx a = qam64_map(0).point;
    const cx b = qam64_map(8).point;
    CHECK(a.imag() == doctest::Approx(b.imag()));
    CHECK(qam64_demap(0.5 * (a + b)) == 0);
}

TEST_CASE("precoder names round trip") {
    CHECK(precoder_from_string("zf") == PrecoderKind::zf);
    CHECK(precoder_from_string("lmmse") == PrecoderKind::lmmse);
    CHECK(to_string(PrecoderKind::lmmse) == "lmmse");
    CHECK_THROWS_AS(precoder_from_string("mrt"), std::invalid_argument);
}

TEST_CASE("zf_precoder with identity channel is a scaled identity") {
    const ComplexMatrix h = ComplexMatrix::identity(4);
    const PrecodeResult res = zf_precoder(h, direct_inverse(matmul(h, adjoint(h))));
    CHECK(frobenius_norm(res.w) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) CHECK(std::abs(res.w(i, j)) == doctest::Approx(0.5).epsilon(1e-12));
            else CHECK(std::abs(res.w(i, j)) < 1e-12);
        }
}

TEST_CASE("zf_precoder with the exact inverse removes interference") {
    std::mt19937_64 rng(71);
    const ComplexMatrix h = random_matrix(4, 8, rng);
    const ComplexMatrix a = matmul(h, adjoint(h));
    const PrecodeResult res = zf_precoder(h, direct_inverse(a));
    CHECK(frobenius_norm(res.w) == doctest::Approx(1.0).epsilon(1e-12));

    const ComplexMatrix g = matmul(h, res.w);
    cx c{};
    for (std::size_t i = 0; i < 4; ++i) c += g(i, i);
    c /= 4.0;
    ComplexMatrix ci(4, 4);
    for (std::size_t i = 0; i < 4; ++i) ci(i, i) = c;
    CHECK(frobenius_norm(g - ci) < 1e-8);

    // Equal post-equalization gain for every stream.
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(g(i, i) - c) < 1e-10);
}

TEST_CASE("zf_precoder rejects a mismatched inverse") {
    std::mt19937_64 rng(72);
    const ComplexMatrix h = random_matrix(4, 8, rng);
    CHECK_THROWS_AS(zf_precoder(h, ComplexMatrix::identity(8)), std::invalid_argument);
}

TEST_CASE("truncated HB leaves residual interference on an ill-conditioned channel") {
    std::mt19937_64 rng(73);
    // Rows drawn nearly parallel: Wishart matrix is badly conditioned.
    const ComplexMatrix base = random_matrix(1, 16, rng);
    ComplexMatrix h(6, 16);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 16; ++j)
            h(i, j) = base(0, j) + 0.05 * random_matrix(1, 1, rng)(0, 0);
    const ComplexMatrix a = matmul(h, adjoint(h));

    const auto interference = [&](const ComplexMatrix& ainv) {
        const ComplexMatrix g = matmul(h, zf_precoder(h, ainv).w);
        cx c{};
        for (std::size_t i = 0; i < 6; ++i) c += g(i, i);
        c /= 6.0;
        ComplexMatrix ci(6, 6);
        for (std::size_t i = 0; i < 6; ++i) ci(i, i) = c;
        return frobenius_norm(g - ci) / std::abs(c);
    };

    CHECK(interference(direct_inverse(a)) < 1e-8);
    InvertOptions opts;
    opts.method = InverseMethod::hb;
    opts.max_iter = 10;
    opts.tol = 1e-300;
    CHECK(interference(invert_wishart(a, opts).inverse) > 1e-3);
}

TEST_CASE("lmmse_precoder reduces to zf at zero noise") {
    std::mt19937_64 rng(74);
    const ComplexMatrix h = random_matrix(4, 8, rng);
    InvertOptions opts;
    opts.method = InverseMethod::exact;
    const PrecodeResult lm = lmmse_precoder(h, 0.0, opts);
    const PrecodeResult zf = zf_precoder(h, direct_inverse(matmul(h, adjoint(h))));
    CHECK(max_abs_diff(lm.w, zf.w) < 1e-10);
    CHECK_THROWS_AS(lmmse_precoder(h, -1.0, opts), std::invalid_argument);
}

TEST_CASE("lmmse_precoder tends to the matched filter at heavy noise") {
    std::mt19937_64 rng(75);
    const ComplexMatrix h = random_matrix(4, 8, rng);
    InvertOptions opts;
    opts.method = InverseMethod::exact;
    const PrecodeResult lm = lmmse_precoder(h, 1e12, opts);
    ComplexMatrix mf = adjoint(h);
    mf *= cx{1.0 / frobenius_norm(mf), 0.0};
    CHECK(max_abs_diff(lm.w, mf) < 1e-9);
}

TEST_CASE("the lmmse diagonal loading strictly improves conditioning") {
    std::mt19937_64 rng(76);
    const ComplexMatrix h = random_matrix(6, 6, rng);
    ComplexMatrix a = matmul(h, adjoint(h));
    const double kappa = condition_number(hermitian_eig(a));
    for (std::size_t i = 0; i < 6; ++i) a(i, i) += 0.1;
    CHECK(condition_number(hermitian_eig(a)) < kappa);
}

TEST_CASE("lmmse_precoder reports the iterations spent by an iterative inverse") {
    std::mt19937_64 rng(77);
    const ComplexMatrix h = random_matrix(4, 8, rng);
    InvertOptions opts;
    opts.method = InverseMethod::hb;
    opts.tol = 1e-12;
    const PrecodeResult lm = lmmse_precoder(h, 0.01, opts);
    CHECK(lm.inverse_source == InverseMethod::hb);
    CHECK(lm.iterations_used > 0);
}

TEST_CASE("simulate_ser: exact inversion is error-free when noise is negligible") {
    SimulationConfig cfg = small_rayleigh_config();
    cfg.power_grid_db = {200.0};
    cfg.trials = 4;
    const SerCurve curve = simulate_ser(cfg, InverseMethod::exact);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].ser == 0.0);
    CHECK(curve.points[0].mean_iterations == 0.0);
    CHECK(curve.points[0].trials == 4);
}

TEST_CASE("simulate_ser: zero transmit power approaches SER = 63/64") {
    SimulationConfig cfg = small_rayleigh_config();
    cfg.power_grid_db = {-300.0};
    cfg.trials = 64;
    const SerCurve curve = simulate_ser(cfg, InverseMethod::exact);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].ser == doctest::Approx(63.0 / 64.0).epsilon(0.02));
}

TEST_CASE("simulate_ser is deterministic and sorted by power") {
    SimulationConfig cfg = small_rayleigh_config();
    cfg.power_grid_db = {20.0, 10.0, 15.0};
    const SerCurve a = simulate_ser(cfg, InverseMethod::exact);
    const SerCurve b = simulate_ser(cfg, InverseMethod::exact);
    REQUIRE(a.points.size() == 3);
    CHECK(a.points[0].pt_db == 10.0);
    CHECK(a.points[2].pt_db == 20.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.points[i].ser == b.points[i].ser);
        CHECK(a.points[i].trials == b.points[i].trials);
    }
    CHECK(a.config_hash == b.config_hash);
}

TEST_CASE("simulate_ser: SER decreases with transmit power for the exact precoder") {
    SimulationConfig cfg = small_rayleigh_config();
    cfg.trials = 64;
    cfg.power_grid_db = {0.0, 10.0, 20.0, 30.0};
    const SerCurve curve = simulate_ser(cfg, InverseMethod::exact);
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        CHECK(curve.points[i].ser <= curve.points[i - 1].ser + 0.02);
    CHECK(curve.points.front().ser > curve.points.back().ser);
}

TEST_CASE("lmmse never does worse than zf on a square channel (statistical)") {
    SimulationConfig cfg = small_rayleigh_config();
    cfg.n = 8;
    cfg.m = 8;
    cfg.trials = 64;
    cfg.power_grid_db = {15.0, 25.0};
    cfg.precoder = PrecoderKind::zf;
    const SerCurve zf = simulate_ser(cfg, InverseMethod::exact);
    cfg.precoder = PrecoderKind::lmmse;
    const SerCurve lm = simulate_ser(cfg, InverseMethod::exact);
    for (std::size_t i = 0; i < zf.points.size(); ++i)
        CHECK(lm.points[i].ser <= zf.points[i].ser + 0.01);
}

TEST_CASE("hb iteration count in simulate_ser follows the squaring-law model") {
    SimulationConfig cfg = small_rayleigh_config();
    cfg.trials = 1;
    cfg.power_grid_db = {30.0};
    cfg.tol = 1e-12;
    const SerCurve curve = simulate_ser(cfg, InverseMethod::hb);
    const int measured = static_cast<int>(curve.points[0].mean_iterations);

    // Effective contraction of the very channel the single trial used.
    const ChannelRealization chan = make_channel(cfg, cfg.base_seed);
    const ComplexMatrix a = matmul(chan.h, adjoint(chan.h));
    const double omega = gershgorin_omega(a);
    double rho = 0.0;
    for (double v : hermitian_eig(a).values) rho = std::max(rho, std::abs(1.0 - omega * v * v));
    const double kappa_eff = std::sqrt((1.0 + rho) / (1.0 - rho));
    int predicted = 0;
    while (residual_model(kappa_eff, predicted) > cfg.tol && predicted < 100) ++predicted;
    CHECK(std::abs(measured - predicted) <= 1);
}
