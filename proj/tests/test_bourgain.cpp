#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ckdv/bourgain.hpp"

#include <cmath>

using namespace ckdv;

TEST_CASE("taper bump is a smooth window") {
    CHECK(taper_bump(0.0) == 0.0);
    CHECK(taper_bump(1.0) == 0.0);
    CHECK(taper_bump(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(taper_bump(0.3) > 0.0);
    CHECK(taper_bump(0.3) < 1.0);
    CHECK(taper_bump(0.3) == taper_bump(0.7));
}

TEST_CASE("block construction and uniformity checks") {
    auto g = make_grid(64, 20.0);
    auto b = sample_block(g, 0.0, 0.1, 8,
                          [](double x, double t) { return std::cos(x) * (1.0 + t); });
    CHECK(b.times.size() == 8);
    CHECK(b.dt() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(b.span() == doctest::Approx(0.8).epsilon(1e-14));
    b.check_uniform();
    b.times[3] += 0.05;
    CHECK_THROWS_AS(b.check_uniform(), std::invalid_argument);
}

TEST_CASE("bourgain norm requires a taper and reduces to L2 at s=b=0") {
    auto g = make_grid(64, 20.0);
    auto b = sample_block(g, 0.0, 0.05, 32, [](double x, double t) {
        return std::exp(-x * x) * std::cos(0.7 * t);
    });
    CHECK_THROWS_AS((void)bourgain_norm(b, 0.0, 0.0), std::invalid_argument);
    apply_taper(b);
    CHECK(b.taper == TaperKind::Bump);
    // Parseval in both directions: zero weights give the space-time L2
    CHECK(bourgain_norm(b, 0.0, 0.0) == doctest::Approx(block_l2(b)).epsilon(1e-12));
}

TEST_CASE("weights are monotone in s and b") {
    auto g = make_grid(64, 20.0);
    auto b = sample_block(g, 0.0, 0.05, 32, [](double x, double t) {
        return std::cos(2.0 * M_PI / 20.0 * 3.0 * x) * std::exp(-t);
    });
    apply_taper(b);
    const double n_low = bourgain_norm(b, -0.5, 0.1);
    const double n_mid = bourgain_norm(b, 0.0, 0.1);
    const double n_high = bourgain_norm(b, 0.5, 0.1);
    CHECK(n_low < n_mid);
    CHECK(n_mid < n_high);
    CHECK(bourgain_norm(b, 0.0, 0.4) > bourgain_norm(b, 0.0, 0.1));
}

TEST_CASE("a free wave concentrates near the dispersion surface") {
    auto g = make_grid(64, 20.0);
    const double xi0 = 2.0 * M_PI / 20.0 * 4.0;
    // free wave cos(xi0 x + xi0^3 t) lives on tau = xi^3
    auto onsurf = sample_block(g, 0.0, 0.02, 64, [&](double x, double t) {
        return std::cos(xi0 * x + xi0 * xi0 * xi0 * t);
    });
    // detuned wave of the same amplitude
    auto offsurf = sample_block(g, 0.0, 0.02, 64, [&](double x, double t) {
        return std::cos(xi0 * x + (xi0 * xi0 * xi0 + 40.0) * t);
    });
    apply_taper(onsurf);
    apply_taper(offsurf);
    const double r_on = bourgain_norm(onsurf, 0.0, 0.5) / bourgain_norm(onsurf, 0.0, 0.0);
    const double r_off = bourgain_norm(offsurf, 0.0, 0.5) / bourgain_norm(offsurf, 0.0, 0.0);
    CHECK(r_off > 2.0 * r_on);
}

TEST_CASE("bilinear probe validates its hypotheses") {
    auto g = make_grid(64, 50.0);
    BilinearProbeConfig cfg;
    cfg.trials = 2;
    cfg.s = -0.8; // below the -3/4 threshold
    CHECK_THROWS_AS((void)bilinear_probe(g, cfg), std::invalid_argument);
    cfg.s = -0.5;
    cfg.b = 0.6; // violates b < b' < 7/12
    CHECK_THROWS_AS((void)bilinear_probe(g, cfg), std::invalid_argument);
}

TEST_CASE("bilinear probe is deterministic and produces finite ratios") {
    auto g = make_grid(64, 50.0);
    BilinearProbeConfig cfg;
    cfg.trials = 10;
    cfg.nt = 32;
    cfg.seed = 11;
    const auto s1 = bilinear_probe(g, cfg);
    const auto s2 = bilinear_probe(g, cfg);
    REQUIRE(!s1.ratios.empty());
    CHECK(s1.ratios == s2.ratios);
    CHECK(std::isfinite(s1.max_ratio));
    CHECK(s1.max_ratio > 0.0);
    CHECK(s1.median_ratio <= s1.max_ratio);

    cfg.seed = 12;
    const auto s3 = bilinear_probe(g, cfg);
    CHECK(s1.ratios != s3.ratios);
}

TEST_CASE("probe statistics are grid-size stable for a fixed seed") {
    BilinearProbeConfig cfg;
    cfg.trials = 10;
    cfg.nt = 32;
    cfg.seed = 5;
    const auto a = bilinear_probe(make_grid(64, 50.0), cfg);
    const auto b = bilinear_probe(make_grid(128, 50.0), cfg);
    REQUIRE(!a.ratios.empty());
    REQUIRE(!b.ratios.empty());
    CHECK(a.max_ratio < 2.0 * b.max_ratio);
    CHECK(b.max_ratio < 2.0 * a.max_ratio);
}
