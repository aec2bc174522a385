#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ckdv/coefficients.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

using namespace ckdv;

namespace {

OriginalCoefficients random_valid(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.2, 3.0);
    std::uniform_real_distribution<double> any(-1.5, 1.5);
    for (;;) {
        OriginalCoefficients oc;
        oc.a1 = any(rng);
        oc.a2 = any(rng);
        oc.a3 = any(rng);
        oc.b1 = pos(rng);
        oc.b2 = pos(rng);
        if (std::abs(oc.a3 * oc.a3 * oc.b2 - 1.0) > 1e-3) return oc;
    }
}

} // namespace

TEST_CASE("validate flags each standing assumption") {
    OriginalCoefficients ok{0.1, 0.2, 0.5, 1.0, 1.0};
    CHECK(validate(ok).empty());
    CHECK(is_valid(ok));

    OriginalCoefficients bad_b1 = ok;
    bad_b1.b1 = 0.0;
    auto v = validate(bad_b1);
    CHECK(std::find(v.begin(), v.end(), "b1>0") != v.end());

    OriginalCoefficients bad_b2 = ok;
    bad_b2.b2 = -1.0;
    v = validate(bad_b2);
    CHECK(std::find(v.begin(), v.end(), "b2>0") != v.end());

    OriginalCoefficients degenerate = ok;
    degenerate.a3 = 1.0;
    degenerate.b2 = 1.0;
    v = validate(degenerate);
    CHECK(std::find(v.begin(), v.end(), "a3^2*b2 != 1") != v.end());

    OriginalCoefficients near = ok;
    near.a3 = 1.0;
    near.b2 = 1.0 + 1e-12;
    v = validate(near);
    CHECK(std::find(v.begin(), v.end(), "ill-conditioned reduction") != v.end());
}

TEST_CASE("dispersion matrix layout") {
    OriginalCoefficients oc{0.0, 0.0, 0.5, 2.0, 3.0};
    const Mat2 a = dispersion_matrix(oc);
    CHECK(a(0, 0) == 1.0);
    CHECK(a(0, 1) == 0.5);
    CHECK(a(1, 0) == doctest::Approx(0.5 * 3.0 / 2.0).epsilon(1e-15));
    CHECK(a(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("eigenvalues match a dense eigensolver on 1000 random draws") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto oc = random_valid(rng);
        const auto [ap, am] = eigenvalues(oc);
        Eigen::Matrix2d a;
        const Mat2 m = dispersion_matrix(oc);
        a << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
        Eigen::EigenSolver<Eigen::Matrix2d> solver(a);
        double e0 = solver.eigenvalues()(0).real();
        double e1 = solver.eigenvalues()(1).real();
        CHECK(std::abs(solver.eigenvalues()(0).imag()) < 1e-12);
        if (e0 < e1) std::swap(e0, e1);
        const double scale = std::max({std::abs(e0), std::abs(e1), 1e-30});
        CHECK(std::abs(ap - e0) / scale < 1e-10);
        CHECK(std::abs(am - e1) / scale < 1e-10);
    }
}

TEST_CASE("a3 = 0 short-circuits to the identity reduction") {
    OriginalCoefficients oc{0.4, 0.25, 0.0, 1.0, 0.7};
    const auto [rc, diag] = reduce(oc);
    CHECK(diag.identity);
    CHECK(diag.alpha_plus == 1.0);
    CHECK(diag.alpha_minus == doctest::Approx(1.0).epsilon(1e-15));
    // reduced system coincides with the original, b1 = 1
    CHECK(rc.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rc.b == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(rc.c == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(rc.a_tilde == doctest::Approx(0.7 * 0.25).epsilon(1e-14));
    CHECK(rc.b_tilde == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rc.c_tilde == doctest::Approx(0.7 * 0.4).epsilon(1e-14));
}

TEST_CASE("a3 = 0 with b1 != 1 still rescales the second dispersion to one") {
    OriginalCoefficients oc{0.0, 0.0, 0.0, 2.0, 1.0};
    const auto [rc, diag] = reduce(oc);
    CHECK(diag.identity);
    CHECK(diag.alpha_minus == doctest::Approx(0.5).epsilon(1e-15));
    // v-equation: (1/b1) v v_x after division, then the cbrt(alpha_minus) scale
    CHECK(rc.b_tilde == doctest::Approx(0.5 / std::cbrt(0.5)).epsilon(1e-14));
    CHECK(rc.a == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("structural instance: frozen reduced coefficients") {
    // b1 = b2 = 1, a3 = 0.5, a1 = a2 = 0 (dispersive coupling only)
    OriginalCoefficients oc{0.0, 0.0, 0.5, 1.0, 1.0};
    const auto [rc, diag] = reduce(oc);
    CHECK(diag.alpha_plus == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(diag.alpha_minus == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rc.a == doctest::Approx(0.6177146705271325).epsilon(1e-13));
    CHECK(rc.b == doctest::Approx(0.6177146705271325).epsilon(1e-13));
    CHECK(std::abs(rc.c) < 1e-14);
    CHECK(std::abs(rc.a_tilde) < 1e-14);
    CHECK(std::abs(rc.b_tilde) < 1e-14);
    CHECK(rc.c_tilde == doctest::Approx(0.8908987181403392).epsilon(1e-13));
}

TEST_CASE("basis matrix diagonalizes A") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto oc = random_valid(rng);
        if (oc.a3 == 0.0) continue;
        const auto [rc, diag] = reduce(oc);
        const Mat2 a = dispersion_matrix(oc);
        const Mat2 d = diag.basis_inverse.mul(a).mul(diag.basis_matrix);
        CHECK(d(0, 0) == doctest::Approx(diag.alpha_plus).epsilon(1e-10));
        CHECK(d(1, 1) == doctest::Approx(diag.alpha_minus).epsilon(1e-10));
        CHECK(std::abs(d(0, 1)) < 1e-10);
        CHECK(std::abs(d(1, 0)) < 1e-10);
        // unit columns with positive first components
        CHECK(std::hypot(d(0, 0), 0.0) > 0.0);
        const Mat2& m = diag.basis_matrix;
        CHECK(std::hypot(m(0, 0), m(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::hypot(m(0, 1), m(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m(0, 0) >= 0.0);
        CHECK(m(0, 1) >= 0.0);
    }
}

TEST_CASE("invalid coefficients throw from reduce and eigenvalues") {
    OriginalCoefficients bad{0.0, 0.0, 1.0, 1.0, 1.0}; // a3^2 b2 = 1
    CHECK_THROWS_AS((void)reduce(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)eigenvalues(bad), std::invalid_argument);
}
