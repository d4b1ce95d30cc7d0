#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "smrprec/iterative.hpp"
#include "smrprec/spectral.hpp"
#include "test_helpers.hpp"

using namespace smrprec;
using namespace smrprec::testing;

TEST_CASE("gershgorin_omega hand evaluations") {
    CHECK(gershgorin_omega(ComplexMatrix::identity(2)) == doctest::Approx(1.0));
    CHECK(gershgorin_omega(ComplexMatrix::diag({2.0, 1.0})) == doctest::Approx(0.25));

    ComplexMatrix ones(2, 2);
    for (auto& v : ones.entries()) v = 1.0;
    CHECK(gershgorin_omega(ones) == doctest::Approx(0.25));

    ComplexMatrix zero(2, 2);
    CHECK_THROWS_AS(gershgorin_omega(zero), std::invalid_argument);
}

TEST_CASE("gershgorin omega keeps the HB iteration contractive") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const ComplexMatrix a = random_hpd(6, rng, 0.01);
        const double omega = gershgorin_omega(a);
        const Spectrum spec = hermitian_eig(a);
        for (double v : spec.values) CHECK(std::abs(1.0 - omega * v * v) < 1.0);
    }
}

TEST_CASE("optimal_omega") {
    Spectrum s;
    s.values = {1.0, 1.0};
    CHECK(optimal_omega(s) == doctest::Approx(1.0));
    s.values = {4.0, 1.0};
    CHECK(optimal_omega(s) == doctest::Approx(2.0 / 17.0));

    // The two extreme residual terms coincide at omega*.
    s.values = {7.0, 3.0, 0.4};
    const double w = optimal_omega(s);
    CHECK(std::abs(1.0 - w * 49.0) == doctest::Approx(std::abs(1.0 - w * 0.16)).epsilon(1e-14));
}

TEST_CASE("hb_invert on the identity halves then squares the residual") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    auto [x, trace] = hb_invert(i2, 0.5, 4, 1e-30);
    CHECK(x(0, 0).real() == doctest::Approx(1.0 - std::pow(0.5, 32)));
    for (std::size_t t = 0; t < trace.residuals.size(); ++t) {
        const double expected = std::sqrt(2.0) * std::pow(0.5, std::ldexp(1.0, t));
        CHECK(rel_err(std::sqrt(trace.residuals[t]), expected) < 1e-9);
    }
}

TEST_CASE("hb_invert diagonal closed form with optimal omega") {
    const ComplexMatrix a = ComplexMatrix::diag({4.0, 1.0});
    const double omega = 2.0 / 17.0;
    auto [x, trace] = hb_invert(a, omega, 5, 1e-30);
    (void)x;
    for (std::size_t t = 0; t < trace.residuals.size(); ++t) {
        const double expected = std::sqrt(2.0) * std::pow(15.0 / 17.0, std::ldexp(1.0, t));
        CHECK(rel_err(std::sqrt(trace.residuals[t]), expected) < 1e-8);
    }
}

TEST_CASE("hb_invert converges to the direct inverse") {
    std::mt19937_64 rng(32);
    const ComplexMatrix a = random_hpd(8, rng);
    const double omega = gershgorin_omega(a);
    auto [x, trace] = hb_invert(a, omega, 200, 1e-14);
    CHECK(trace.converged);
    CHECK(frobenius_norm(x - direct_inverse(a)) < 1e-6);
}

TEST_CASE("hb_invert throws on a diverging step size") {
    const ComplexMatrix a = ComplexMatrix::diag({4.0, 1.0});
    CHECK_THROWS_AS(hb_invert(a, 1.0, 50, 1e-12), std::runtime_error);
}

TEST_CASE("squaring law per-mode form") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = random_hpd(8, rng, 1.0);
        const Spectrum spec = hermitian_eig(a);
        const double omega = optimal_omega(spec);
        auto [x, trace] = hb_invert(a, omega, 5, 1e-30);
        (void)x;
        for (std::size_t t = 0; t < trace.residuals.size() && t <= 5; ++t) {
            double predicted = 0.0;
            for (double v : spec.values)
                predicted += std::pow(1.0 - omega * v * v, std::ldexp(1.0, t + 1));
            CHECK(rel_err(trace.residuals[t], predicted) < 1e-8);
        }
    }
}

TEST_CASE("residuals strictly decrease under contraction") {
    std::mt19937_64 rng(34);
    const ComplexMatrix a = random_hpd(7, rng, 0.05);
    auto [x, trace] = hb_invert(a, gershgorin_omega(a), 30, 1e-24);
    (void)x;
    CHECK(trace.converged);
    for (std::size_t t = 1; t < trace.residuals.size(); ++t)
        CHECK(trace.residuals[t] < trace.residuals[t - 1]);
}

TEST_CASE("hb iterates stay Hermitian for Hermitian input") {
    std::mt19937_64 rng(35);
    const ComplexMatrix a = random_hpd(6, rng);
    auto [x, trace] = hb_invert(a, gershgorin_omega(a), 40, 1e-13);
    (void)trace;
    CHECK(frobenius_norm(x - adjoint(x)) < 1e-10);
}

TEST_CASE("build_preconditioner jacobi and gauss-seidel") {
    const Preconditioner pj =
        build_preconditioner(ComplexMatrix::diag({2.0, 4.0}), PreconditionerKind::jacobi);
    CHECK(pj.matrix(0, 0).real() == doctest::Approx(0.5));
    CHECK(pj.matrix(1, 1).real() == doctest::Approx(0.25));

    ComplexMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(1, 0) = 1.0;
    a(1, 1) = 2.0;
    a(0, 1) = 0.0;
    const Preconditioner pg = build_preconditioner(a, PreconditionerKind::gauss_seidel);
    CHECK(pg.matrix(0, 0).real() == doctest::Approx(0.5));
    CHECK(pg.matrix(1, 0).real() == doctest::Approx(-0.25));
    CHECK(pg.matrix(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(pg.matrix(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("ssor preconditioner satisfies its defining identity") {
    std::mt19937_64 rng(36);
    const ComplexMatrix a = random_hpd(6, rng);
    const Preconditioner p = build_preconditioner(a, PreconditionerKind::ssor);

    const std::size_t n = 6;
    ComplexMatrix dl(n, n), d(n, n), dlh(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = a(i, i);
        for (std::size_t j = 0; j <= i; ++j) dl(i, j) = a(i, j);
        for (std::size_t j = i; j < n; ++j) dlh(i, j) = a(i, j);
    }
    const ComplexMatrix check = matmul(p.matrix, matmul(dl, matmul(d, dlh)));
    CHECK(frobenius_norm(check - ComplexMatrix::identity(n)) < 1e-10);
}

TEST_CASE("build_preconditioner rejects zero diagonals") {
    ComplexMatrix a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    CHECK_THROWS_AS(build_preconditioner(a, PreconditionerKind::jacobi), std::invalid_argument);
}

TEST_CASE("preconditioned_invert with identity equals plain HB") {
    std::mt19937_64 rng(37);
    const ComplexMatrix a = random_hpd(5, rng);
    const Preconditioner none = build_preconditioner(a, PreconditionerKind::none);
    auto [x_pre, t_pre] = preconditioned_invert(a, none, 60, 1e-12);
    auto [x_hb, t_hb] = hb_invert(a, gershgorin_omega(a), 60, 1e-12);
    CHECK(max_abs_diff(x_pre, x_hb) < 1e-12);
    CHECK(t_pre.iterations == t_hb.iterations);
}

TEST_CASE("jacobi preconditioner inverts a diagonal matrix immediately") {
    const ComplexMatrix a = ComplexMatrix::diag({2.0, 5.0, 0.5});
    const Preconditioner p = build_preconditioner(a, PreconditionerKind::jacobi);
    auto [x, trace] = preconditioned_invert(a, p, 10, 1e-10);
    CHECK(trace.converged);
    CHECK(trace.iterations <= 1);
    CHECK(identity_residual(a, x) < 1e-8);
}

TEST_CASE("preconditioning helps on diagonally dominant matrices") {
    std::mt19937_64 rng(38);
    const std::array<PreconditionerKind, 3> kinds = {
        PreconditionerKind::jacobi, PreconditionerKind::gauss_seidel, PreconditionerKind::ssor};
    std::array<double, 3> mean_gap = {0.0, 0.0, 0.0};
    const int reps = 50;
    for (int rep = 0; rep < reps; ++rep) {
        const ComplexMatrix a = diag_dominant(8, rng, 0.995, 1.0, 2.0);
        auto [x_hb, t_hb] = hb_invert(a, gershgorin_omega(a), 500, 1e-12);
        (void)x_hb;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const Preconditioner p = build_preconditioner(a, kinds[k]);
            auto [x, t] = preconditioned_invert(a, p, 500, 1e-12);
            CHECK(t.converged);
            mean_gap[k] += static_cast<double>(t_hb.iterations - t.iterations) / reps;
            CHECK(identity_residual(a, x) < 1e-4);
        }
    }
    // The win is statistical: each kind saves iterations on average.
    for (double g : mean_gap) CHECK(g > 0.0);
}

TEST_CASE("all preconditioner kinds agree with the direct inverse at tight tolerance") {
    std::mt19937_64 rng(39);
    ComplexMatrix a = random_hpd(6, rng);
    for (std::size_t i = 0; i < 6; ++i) a(i, i) += 4.0;
    const ComplexMatrix exact = direct_inverse(a);
    // tol is on the squared residual, so 1e-24 means ||I - PAX||_F <= 1e-12.
    for (auto kind : {PreconditionerKind::none, PreconditionerKind::jacobi,
                      PreconditionerKind::gauss_seidel, PreconditionerKind::ssor}) {
        const Preconditioner p = build_preconditioner(a, kind);
        auto [x, trace] = preconditioned_invert(a, p, 300, 1e-24);
        CHECK(trace.converged);
        CHECK(frobenius_norm(x - exact) < 1e-8);
    }
}
