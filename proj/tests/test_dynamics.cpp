#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ckdv/dynamics.hpp"
#include "ckdv/initial_data.hpp"

#include <cmath>

using namespace ckdv;

namespace {

Field gaussian(const GridPtr& g, double width, double amp) {
    std::vector<double> v(g->size());
    for (std::size_t j = 0; j < g->size(); ++j)
        v[j] = amp * std::exp(-g->x()[j] * g->x()[j] / (width * width));
    return Field::from_physical(g, v);
}

} // namespace

TEST_CASE("rhs_nonlinear reproduces -a u u_x on a single mode") {
    auto g = make_grid(128, 16.0);
    ReducedCoefficients rc;
    rc.a = 2.0;
    const double w = 2.0 * M_PI / 16.0;
    std::vector<double> v(g->size());
    for (std::size_t j = 0; j < g->size(); ++j) v[j] = std::cos(w * g->x()[j]);
    const Field u = Field::from_physical(g, v);
    const auto [nu, nv] = rhs_nonlinear(u, Field{g}, rc);
    // -2 u u_x = 2 w cos sin = w sin(2wx)
    for (std::size_t j = 0; j < g->size(); ++j) {
        const double expected = w * std::sin(2.0 * w * g->x()[j]);
        CHECK(std::abs(nu.physical_real()[j] - expected) < 1e-12);
    }
    CHECK(nv.l2_norm() == 0.0);
}

TEST_CASE("tilde coefficients drive the second equation") {
    auto g = make_grid(64, 16.0);
    ReducedCoefficients rc;
    rc.a_tilde = 1.0;
    const Field u = gaussian(g, 2.0, 1.0);
    const auto [nu, nv] = rhs_nonlinear(u, Field{g}, rc);
    CHECK(nu.l2_norm() == 0.0);
    CHECK(nv.l2_norm() > 0.0);
    const Field direct = (-0.5) * product(u, u).derivative(1);
    CHECK((nv - direct).l2_norm() < 1e-14);
}

TEST_CASE("linear limit: a step equals airy propagation") {
    auto g = make_grid(256, 50.0);
    const ReducedCoefficients rc; // all zero
    const Field u0 = gaussian(g, 1.5, 1.0);
    const Field v0 = gaussian(g, 2.5, 0.7);
    const double dt = 1e-2;
    const State s1 = step_etdrk4(State{u0, v0, 0.0}, dt, rc);
    CHECK((s1.u - u0.airy_propagate(dt)).l2_norm() < 1e-12);
    CHECK((s1.v - v0.airy_propagate(dt)).l2_norm() < 1e-12);
    CHECK(s1.t == dt);
}

TEST_CASE("soliton advances with small shape error") {
    auto g = make_grid(1024, 100.0);
    ReducedCoefficients rc;
    rc.a = 6.0;
    const double kappa = 1.0, x0 = -20.0, T = 0.2, dt = 1e-3;
    const Field u0 = soliton(g, kappa, x0, rc.a);
    auto result = integrate(State{u0, Field{g}, 0.0}, T, dt, rc, {}, 1000);
    REQUIRE(!result.fault);
    const Field expected = soliton(g, kappa, x0 + 4.0 * kappa * kappa * T, rc.a);
    const Field diff = result.trajectory.states.back().u - expected;
    CHECK(diff.linf_norm() < 1e-8);
}

TEST_CASE("fourth-order convergence in dt") {
    auto g = make_grid(256, 50.0);
    ReducedCoefficients rc;
    rc.a = 6.0;
    rc.b_tilde = 4.0;
    const Field u0 = gaussian(g, 2.0, 0.8);
    const Field v0 = gaussian(g, 3.0, 0.5);
    const double T = 0.1;
    auto run = [&](double dt) {
        auto r = integrate(State{u0, v0, 0.0}, T, dt, rc, {}, 1u << 20);
        REQUIRE(!r.fault);
        return r.trajectory.states.back();
    };
    const State ref = run(1.25e-4);
    const State c1 = run(1e-3);
    const State c2 = run(5e-4);
    const double e1 = (c1.u - ref.u).l2_norm() + (c1.v - ref.v).l2_norm();
    const double e2 = (c2.u - ref.u).l2_norm() + (c2.v - ref.v).l2_norm();
    const double order_ratio = e1 / e2;
    CHECK(order_ratio > 16.0 * 0.8);
    CHECK(order_ratio < 16.0 * 1.25);
}

TEST_CASE("integrate preconditions and trivial runs") {
    auto g = make_grid(64, 20.0);
    const ReducedCoefficients rc;
    const State zero{Field{g}, Field{g}, 0.0};
    CHECK_THROWS_AS((void)integrate(zero, -1.0, 1e-3, rc), std::invalid_argument);
    CHECK_THROWS_AS((void)integrate(zero, 0.5, 1.0, rc), std::invalid_argument);

    // T = dt: single step
    auto single = integrate(zero, 1e-3, 1e-3, rc);
    CHECK(single.trajectory.states.size() == 2);
    CHECK(single.trajectory.states.back().t == doctest::Approx(1e-3).epsilon(1e-12));

    // zero data stays zero
    ReducedCoefficients full;
    full.a = full.b = full.c = full.a_tilde = full.b_tilde = full.c_tilde = 1.0;
    auto r = integrate(zero, 0.05, 1e-3, full);
    CHECK(!r.fault);
    CHECK(r.trajectory.states.back().u.l2_norm() == 0.0);
    CHECK(r.trajectory.states.back().v.l2_norm() == 0.0);
}

TEST_CASE("linear flow composition and reversibility") {
    auto g = make_grid(128, 30.0);
    const ReducedCoefficients rc;
    const Field u0 = gaussian(g, 1.0, 1.0);
    auto fwd = integrate(State{u0, Field{g}, 0.0}, 1.0, 1e-3, rc, {}, 1u << 20);
    REQUIRE(!fwd.fault);
    // exact propagator composition over 1000 steps
    CHECK((fwd.trajectory.states.back().u - u0.airy_propagate(1.0)).l2_norm() < 1e-11);
    // backward: conjugate spectra propagate the reflected field
    const Field back0 = fwd.trajectory.states.back().u.airy_propagate(-1.0);
    CHECK((back0 - u0).l2_norm() < 1e-11);
}

TEST_CASE("observers fire at configured strides") {
    auto g = make_grid(64, 20.0);
    const ReducedCoefficients rc;
    const Field u0 = gaussian(g, 1.0, 0.1);
    std::size_t calls = 0;
    Observer obs;
    obs.stride = 5;
    obs.callback = [&](const State&) { ++calls; };
    auto r = integrate(State{u0, Field{g}, 0.0}, 0.02, 1e-3, rc, {obs});
    CHECK(!r.fault);
    // initial call + steps 5, 10, 15, 20
    CHECK(calls == 5);
}

TEST_CASE("blow-up is detected and reported with partial trajectory") {
    auto g = make_grid(64, 20.0);
    State s{Field{g}, Field{g}, 0.5};
    CHECK(!check_blowup(s));
    s.u.coeffs()[3] = cplx{2e12, 0.0};
    auto fault = check_blowup(s);
    REQUIRE(fault.has_value());
    CHECK(fault->t == 0.5);
    s.u.coeffs()[3] = cplx{std::nan(""), 0.0};
    CHECK(check_blowup(s).has_value());

    // a genuinely diverging run: huge data, large coefficient
    ReducedCoefficients rc;
    rc.a = 1e8;
    const Field big = gaussian(g, 1.0, 1e3);
    auto r = integrate(State{big, Field{g}, 0.0}, 1.0, 1e-2, rc);
    CHECK(r.fault.has_value());
    CHECK(r.trajectory.states.size() >= 1);
}

TEST_CASE("pde_residual vanishes on zero and is small on computed runs") {
    auto g = make_grid(256, 50.0);
    ReducedCoefficients rc;
    rc.a = 6.0;
    const State zero{Field{g}, Field{g}, 0.0};
    auto rz = integrate(zero, 5e-3, 1e-3, rc);
    auto sz = pde_residual(rz.trajectory, rc);
    for (double v : sz.channel("residual_u")) CHECK(v == 0.0);

    const Field u0 = gaussian(g, 2.0, 0.5);
    auto r = integrate(State{u0, Field{g}, 0.0}, 10e-3, 1e-3, rc);
    REQUIRE(!r.fault);
    auto s = pde_residual(r.trajectory, rc);
    for (double v : s.channel("residual_u")) CHECK(v < 1e-5);

    // too few snapshots
    CHECK_THROWS_AS((void)pde_residual(rz.trajectory.states.size() >= 5
                                           ? Trajectory{{rz.trajectory.states[0]}, 1e-3, true, rc}
                                           : rz.trajectory,
                                       rc),
                    std::invalid_argument);
}

TEST_CASE("pde_residual on an analytically sampled soliton trajectory") {
    auto g = make_grid(1024, 100.0);
    ReducedCoefficients rc;
    rc.a = 6.0;
    const double kappa = 1.0, c = 4.0;
    Trajectory traj;
    traj.step_size = 1e-3;
    traj.rc = rc;
    for (int i = 0; i < 9; ++i) {
        const double t = 1e-3 * i;
        traj.states.push_back(State{soliton(g, kappa, -10.0 + c * t, rc.a), Field{g}, t});
    }
    auto s = pde_residual(traj, rc);
    for (double v : s.channel("residual_u")) CHECK(v < 1e-6);
}
