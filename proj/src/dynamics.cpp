#include "ckdv/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace ckdv {
namespace {

constexpr double kBlowupThreshold = 1e12;

// Spectral pair for the two coupled fields.
struct Pair {
    std::vector<cplx> u, v;
};

} // namespace

std::pair<Field, Field> rhs_nonlinear(const Field& u, const Field& v,
                                      const ReducedCoefficients& rc) {
    // u u_x = (1/2) d_x(u^2), v v_x likewise; all products dealiased. Products
    // whose coefficients all vanish are skipped (their transforms dominate the
    // per-step cost on large grids).
    Field nu(u.grid()), nv(u.grid());
    auto accumulate = [&](const Field& d, double cu, double cv) {
        for (std::size_t k = 0; k < nu.size(); ++k) {
            nu.coeffs()[k] += cu * d.coeffs()[k];
            nv.coeffs()[k] += cv * d.coeffs()[k];
        }
    };
    if (rc.a != 0.0 || rc.a_tilde != 0.0)
        accumulate(product(u, u).derivative(1), -0.5 * rc.a, -0.5 * rc.a_tilde);
    if (rc.b != 0.0 || rc.b_tilde != 0.0)
        accumulate(product(v, v).derivative(1), -0.5 * rc.b, -0.5 * rc.b_tilde);
    if (rc.c != 0.0 || rc.c_tilde != 0.0)
        accumulate(product(u, v).derivative(1), -rc.c, -rc.c_tilde);
    return {std::move(nu), std::move(nv)};
}

std::pair<Field, Field> rhs_nonlinear(const State& state, const ReducedCoefficients& rc) {
    return rhs_nonlinear(state.u, state.v, rc);
}

Etdrk4::Etdrk4(GridPtr grid, ReducedCoefficients rc, double dt)
    : grid_(std::move(grid)), rc_(std::move(rc)), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("Etdrk4: dt must be positive");
    const auto& xi = grid_->xi();
    const std::size_t n = grid_->size();
    e_.resize(n);
    e2_.resize(n);
    q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    constexpr int kContourPoints = 32;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx lam{0.0, xi[k] * xi[k] * xi[k]}; // u_t = i xi^3 u for the linear part
        const cplx z0 = dt_ * lam;
        e_[k] = std::exp(z0);
        e2_[k] = std::exp(0.5 * z0);
        cplx q{}, f1{}, f2{}, f3{};
        for (int j = 0; j < kContourPoints; ++j) {
            const double th = 2.0 * M_PI * (j + 0.5) / kContourPoints;
            const cplx z = z0 + std::polar(1.0, th);
            const cplx ez = std::exp(z);
            const cplx z3 = z * z * z;
            q += (std::exp(0.5 * z) - 1.0) / z;
            f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            f2 += (2.0 + z + ez * (-2.0 + z)) / z3;
            f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
        }
        const double w = dt_ / kContourPoints;
        q_[k] = w * q;
        f1_[k] = w * f1;
        f2_[k] = w * f2;
        f3_[k] = w * f3;
    }
}

State Etdrk4::step(const State& state) const {
    const std::size_t n = grid_->size();
    auto nl = [&](const std::vector<cplx>& cu, const std::vector<cplx>& cv) {
        auto [nu, nv] = rhs_nonlinear(Field(grid_, cu), Field(grid_, cv), rc_);
        return Pair{std::move(nu.coeffs()), std::move(nv.coeffs())};
    };
    auto lincomb = [&](const std::vector<cplx>& mul_state, const Pair& s,
                       const std::vector<cplx>& mul_n, const Pair& nlv) {
        Pair r{std::vector<cplx>(n), std::vector<cplx>(n)};
        for (std::size_t k = 0; k < n; ++k) {
            r.u[k] = mul_state[k] * s.u[k] + mul_n[k] * nlv.u[k];
            r.v[k] = mul_state[k] * s.v[k] + mul_n[k] * nlv.v[k];
        }
        return r;
    };

    const Pair w{state.u.coeffs(), state.v.coeffs()};
    const Pair n1 = nl(w.u, w.v);
    const Pair sa = lincomb(e2_, w, q_, n1);
    const Pair n2 = nl(sa.u, sa.v);
    const Pair sb = lincomb(e2_, w, q_, n2);
    const Pair n3 = nl(sb.u, sb.v);
    Pair n3x{std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        n3x.u[k] = 2.0 * n3.u[k] - n1.u[k];
        n3x.v[k] = 2.0 * n3.v[k] - n1.v[k];
    }
    const Pair sc = lincomb(e2_, sa, q_, n3x);
    const Pair n4 = nl(sc.u, sc.v);

    Pair out{std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.u[k] = e_[k] * w.u[k] + f1_[k] * n1.u[k] + 2.0 * f2_[k] * (n2.u[k] + n3.u[k]) +
                   f3_[k] * n4.u[k];
        out.v[k] = e_[k] * w.v[k] + f1_[k] * n1.v[k] + 2.0 * f2_[k] * (n2.v[k] + n3.v[k]) +
                   f3_[k] * n4.v[k];
    }
    return State{Field(grid_, std::move(out.u)), Field(grid_, std::move(out.v)),
                 state.t + dt_};
}

State step_etdrk4(const State& state, double dt, const ReducedCoefficients& rc) {
    return Etdrk4(state.u.grid(), rc, dt).step(state);
}

std::optional<IntegrationFault> check_blowup(const State& state) {
    // Checked on spectral coefficients; they diverge together with the field.
    for (const Field* f : {&state.u, &state.v})
        for (const auto& c : f->coeffs())
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) ||
                std::abs(c) > kBlowupThreshold)
                return IntegrationFault{state.t, "nonfinite or blown-up field at t=" +
                                                     std::to_string(state.t)};
    return std::nullopt;
}

IntegrateResult integrate(const State& initial, double T, double dt,
                          const ReducedCoefficients& rc,
                          const std::vector<Observer>& observers, std::size_t store_stride) {
    if (!(T > 0.0) || !(dt > 0.0) || dt > T * (1.0 + 1e-12))
        throw std::invalid_argument("integrate: need 0 < dt <= T");
    if (store_stride == 0) store_stride = 1;

    IntegrateResult result;
    Trajectory& traj = result.trajectory;
    traj.rc = rc;
    traj.step_size = dt * static_cast<double>(store_stride);
    traj.states.push_back(initial);

    const auto n_full = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
    const double remainder = T - static_cast<double>(n_full) * dt;
    const Etdrk4 stepper(initial.u.grid(), rc, dt);

    for (const auto& obs : observers)
        if (obs.callback) obs.callback(initial);

    State current = initial;
    for (std::size_t i = 1; i <= n_full; ++i) {
        current = stepper.step(current);
        if (auto fault = check_blowup(current)) {
            result.fault = fault;
            return result;
        }
        for (const auto& obs : observers)
            if (obs.callback && i % std::max<std::size_t>(1, obs.stride) == 0)
                obs.callback(current);
        if (i % store_stride == 0) traj.states.push_back(current);
    }
    if (remainder > 1e-12 * T) {
        current = Etdrk4(initial.u.grid(), rc, remainder).step(current);
        if (auto fault = check_blowup(current)) {
            result.fault = fault;
            return result;
        }
        for (const auto& obs : observers)
            if (obs.callback) obs.callback(current);
        traj.states.push_back(current);
        traj.uniform = false;
    } else if (n_full % store_stride != 0) {
        traj.states.push_back(current);
        traj.uniform = false;
    }
    return result;
}

DiagnosticsSeries pde_residual(const Trajectory& traj, const ReducedCoefficients& rc) {
    const auto& s = traj.states;
    const std::size_t n_uniform = traj.uniform ? s.size() : s.size() - 1;
    if (n_uniform < 5)
        throw std::invalid_argument("pde_residual: need >= 5 uniformly spaced snapshots");
    const double h = traj.step_size;

    DiagnosticsSeries out;
    auto& ru = out.channel("residual_u");
    auto& rv = out.channel("residual_v");
    for (std::size_t i = 2; i + 2 < n_uniform; ++i) {
        // fourth-order central difference in time
        auto ddt = [&](auto pick) {
            Field d = (-1.0) * pick(i + 2) + 8.0 * pick(i + 1) - 8.0 * pick(i - 1) +
                      1.0 * pick(i - 2);
            d *= 1.0 / (12.0 * h);
            return d;
        };
        const Field ut = ddt([&](std::size_t j) -> const Field& { return s[j].u; });
        const Field vt = ddt([&](std::size_t j) -> const Field& { return s[j].v; });
        auto [nu, nv] = rhs_nonlinear(s[i], rc);
        const Field res_u = ut + s[i].u.derivative(3) - nu;
        const Field res_v = vt + s[i].v.derivative(3) - nv;
        out.append(s[i].t);
        ru.push_back(res_u.l2_norm());
        rv.push_back(res_v.l2_norm());
    }
    out.validate();
    return out;
}

} // namespace ckdv
