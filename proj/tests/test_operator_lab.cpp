#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ckdv/initial_data.hpp"
#include "ckdv/operator_lab.hpp"

#include <cmath>

using namespace ckdv;

namespace {

SpaceTimeBlock analytic_block(const GridPtr& g, double t0 = 0.05, double dt = 0.01,
                              std::size_t nt = 33) {
    return sample_block(g, t0, dt, nt, [](double x, double t) {
        return std::exp(-x * x) * std::exp(-t * t) * (1.0 + 0.3 * std::sin(x));
    });
}

} // namespace

TEST_CASE("P on a time-independent profile is x d_x") {
    auto g = make_grid(256, 40.0);
    auto b = sample_block(g, 0.1, 0.01, 17,
                          [](double x, double) { return x * std::exp(-x * x); });
    const auto pb = apply_P(b);
    CHECK(pb.times.size() == 9);
    const auto& center = pb.slices[pb.center_index()];
    const auto p = center.physical_real();
    for (std::size_t j = 0; j < g->size(); ++j) {
        const double x = g->x()[j];
        // x d_x (x e^{-x^2}) = x (1 - 2 x^2) e^{-x^2}
        const double expected = x * (1.0 - 2.0 * x * x) * std::exp(-x * x);
        CHECK(std::abs(p[j] - expected) < 1e-8);
    }
}

TEST_CASE("P on t times a profile includes the 3t dt part") {
    auto g = make_grid(256, 40.0);
    auto b = sample_block(g, 0.1, 0.01, 17,
                          [](double x, double t) { return t * std::exp(-x * x); });
    const auto pb = apply_P(b);
    for (std::size_t i = 0; i < pb.times.size(); ++i) {
        const double t = pb.times[i];
        const auto p = pb.slices[i].physical_real();
        for (std::size_t j = 0; j < g->size(); j += 7) {
            const double x = g->x()[j];
            // P(t g) = 3 t g + t x g' = t e^{-x^2} (3 - 2 x^2)
            const double expected = t * std::exp(-x * x) * (3.0 - 2.0 * x * x);
            CHECK(std::abs(p[j] - expected) < 1e-8);
        }
    }
}

TEST_CASE("L annihilates the free wave and differentiates t") {
    auto g = make_grid(256, 40.0);
    // band-limited data: the time stencil must resolve e^{i xi^3 t}, so keep
    // the spectrum concentrated where dt * xi^3 << 1
    std::vector<double> smooth(g->size());
    for (std::size_t j = 0; j < g->size(); ++j)
        smooth[j] = std::exp(-g->x()[j] * g->x()[j] / 4.0);
    const Field u0 = Field::from_physical(g, smooth);
    auto free_block = sample_block(g, 0.0, 0.005, 17, [](double, double) { return 0.0; });
    for (std::size_t i = 0; i < free_block.times.size(); ++i)
        free_block.slices[i] = u0.airy_propagate(free_block.times[i]);
    const auto lb = apply_L(free_block);
    for (const auto& f : lb.slices) CHECK(f.l2_norm() < 1e-7);

    auto tb = sample_block(g, 0.1, 0.01, 17, [](double, double t) { return t; });
    const auto lt = apply_L(tb);
    for (const auto& f : lt.slices) {
        const auto p = f.physical_real();
        for (std::size_t j = 0; j < p.size(); j += 17)
            CHECK(p[j] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("J of a time slice matches x f - 3 t f_xx") {
    auto g = make_grid(256, 40.0);
    auto b = sample_block(g, 0.2, 0.01, 5,
                          [](double x, double) { return std::exp(-x * x); });
    const auto jb = apply_J(b);
    REQUIRE(jb.times.size() == 5);
    for (std::size_t i = 0; i < jb.times.size(); ++i) {
        const double t = jb.times[i];
        const auto p = jb.slices[i].physical_real();
        for (std::size_t j = 0; j < g->size(); j += 11) {
            const double x = g->x()[j];
            const double e = std::exp(-x * x);
            const double expected = x * e - 3.0 * t * (4.0 * x * x - 2.0) * e;
            CHECK(std::abs(p[j] - expected) < 1e-8);
        }
    }
}

TEST_CASE("seam-touching support is rejected") {
    auto g = make_grid(256, 40.0);
    auto bad = sample_block(g, 0.1, 0.01, 17,
                            [](double x, double) { return std::cos(2.0 * M_PI * x / 40.0); });
    CHECK_THROWS_AS((void)apply_P(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)apply_J(bad), std::invalid_argument);
}

TEST_CASE("commutator residuals are small on the analytic block") {
    auto g = make_grid(256, 40.0);
    const auto b = analytic_block(g);
    CHECK(commutator_residual(CommutatorKind::LP, b) < 1e-6);
    CHECK(commutator_residual(CommutatorKind::LJ, b) < 1e-6);
    CHECK(commutator_residual(CommutatorKind::P3dx3, b) < 1e-6);

    auto zero = sample_block(g, 0.1, 0.01, 17, [](double, double) { return 0.0; });
    CHECK(commutator_residual(CommutatorKind::LJ, zero) == 0.0);
}

TEST_CASE("commutator residual converges at high order in dt") {
    auto g = make_grid(256, 40.0);
    const auto coarse = analytic_block(g, 0.05, 0.08, 33);
    const auto fine = analytic_block(g, 0.05, 0.04, 33);
    const double rc_ = commutator_residual(CommutatorKind::LP, coarse);
    const double rf = commutator_residual(CommutatorKind::LP, fine);
    REQUIRE(rf > 0.0);
    const double order = std::log2(rc_ / rf);
    CHECK(order >= 6.0);
}

TEST_CASE("multinomial weights are exact") {
    CHECK(multinomial_weight(0, 0, 0, 0) == 1);
    CHECK(multinomial_weight(1, 1, 0, 0) == 2);
    CHECK(multinomial_weight(1, 0, 1, 0) == 1);
    CHECK(multinomial_weight(2, 1, 1, 0) == 4);  // 2!/(1!1!0!) * 2^1
    CHECK(multinomial_weight(3, 1, 1, 1) == 12); // 3! * 2
    CHECK_THROWS_AS((void)multinomial_weight(2, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)multinomial_weight(21, 21, 0, 0), std::overflow_error);
    for (unsigned k = 0; k <= 10; ++k)
        CHECK(multinomial_weight_sum(k) == (1ull << (2 * k)));
}

TEST_CASE("bk_expansion k=0 is the bare quadratic term") {
    auto g = make_grid(128, 40.0);
    ReducedCoefficients rc;
    rc.a = 2.0;
    rc.b = 1.0;
    rc.c = 0.5;
    std::vector<double> vu(g->size()), vv(g->size());
    for (std::size_t j = 0; j < g->size(); ++j) {
        vu[j] = std::exp(-g->x()[j] * g->x()[j]);
        vv[j] = g->x()[j] * vu[j];
    }
    const Field u = Field::from_physical(g, vu);
    const Field v = Field::from_physical(g, vv);
    const auto t = bk_expansion({u}, {v}, rc, 0);
    CHECK((t.b1 - (-1.0) * product(u, u).derivative(1)).l2_norm() < 1e-14);
    CHECK((t.b2 - (-0.5) * product(v, v).derivative(1)).l2_norm() < 1e-14);
    CHECK((t.b3 - (-0.5) * product(u, v).derivative(1)).l2_norm() < 1e-14);

    // tilde variant picks the other coefficient row
    ReducedCoefficients rct;
    rct.a_tilde = 4.0;
    const auto tt = bk_expansion({u}, {v}, rct, 0, true);
    CHECK((tt.b1 - (-2.0) * product(u, u).derivative(1)).l2_norm() < 1e-14);

    CHECK_THROWS_AS((void)bk_expansion({u}, {v}, rc, 1), std::invalid_argument);
}

TEST_CASE("leibniz_direct matches bk_expansion on a separable block") {
    auto g = make_grid(256, 40.0);
    ReducedCoefficients rc;
    rc.a = 2.0;
    auto ublock = sample_block(g, 0.05, 0.01, 33, [](double x, double t) {
        return std::exp(-x * x) * (1.0 + t);
    });
    for (unsigned k = 0; k <= 2; ++k) {
        std::vector<Field> pu;
        SpaceTimeBlock cur = ublock;
        pu.push_back(cur.slices[cur.center_index()]);
        for (unsigned j = 1; j <= k; ++j) {
            cur = apply_P(cur);
            pu.push_back(cur.slices[cur.center_index()]);
        }
        const std::vector<Field> pv(pu.size(), Field{g});
        const auto triple = bk_expansion(pu, pv, rc, k);
        const Field direct = leibniz_direct(ublock, rc, k);
        CHECK((triple.b1 - direct).l2_norm() / direct.l2_norm() < 1e-6);
    }
    auto narrow = sample_block(g, 0.05, 0.01, 9,
                               [](double x, double) { return std::exp(-x * x); });
    CHECK_THROWS_AS((void)leibniz_direct(narrow, rc, 2), std::invalid_argument);
}

TEST_CASE("dilation residual equals |t| times the pde residual") {
    auto g = make_grid(512, 60.0);
    ReducedCoefficients rc;
    rc.a = 6.0;
    const Field u0 = soliton(g, 1.0, -5.0, rc.a);
    auto run = integrate(State{u0, Field{g}, 0.1}, 8e-3, 1e-3, rc);
    REQUIRE(!run.fault);
    // shift start time so t != 0 throughout
    auto traj = run.trajectory;
    const auto pres = pde_residual(traj, rc);
    const auto dres = dilation_residual(traj, rc, 0);
    REQUIRE(pres.times == dres.times);
    for (std::size_t i = 0; i < pres.times.size(); ++i) {
        const double t = pres.times[i];
        CHECK(std::abs(dres.channel("dil_u")[i] -
                       std::abs(t) * pres.channel("residual_u")[i]) < 1e-10);
        CHECK(std::abs(dres.channel("dil_v")[i] -
                       std::abs(t) * pres.channel("residual_v")[i]) < 1e-10);
    }
    CHECK_THROWS_AS((void)dilation_residual(traj, rc, 1), std::invalid_argument);
}
