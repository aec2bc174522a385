#include "ckdv/diagnostics.hpp"

#include "ckdv/initial_data.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ckdv {

std::string DiagnosticsSeries::to_csv() const {
    validate();
    std::ostringstream out;
    out.precision(17);
    out << "t";
    for (const auto& [name, vals] : channels) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << times[i];
        for (const auto& [name, vals] : channels) out << "," << vals[i];
        out << "\n";
    }
    return out.str();
}

namespace {

double quad_physical(const std::vector<double>& vals, double dx) {
    return dx * std::accumulate(vals.begin(), vals.end(), 0.0);
}

} // namespace

ConservedValues conserved(const State& state, const OriginalCoefficients& oc) {
    const auto& grid = *state.u.grid();
    const double length = grid.length();
    const double dx = grid.dx();

    ConservedValues out;
    out.e1u = length * state.u.coeffs()[0].real();
    out.e1v = length * state.v.coeffs()[0].real();

    // quadratic terms spectrally (Parseval), cubic terms by physical quadrature
    double uu = 0.0, vv = 0.0, uxux = 0.0, vxvx = 0.0, uxvx = 0.0;
    const auto& xi = grid.xi();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx cu = state.u.coeffs()[k];
        const cplx cv = state.v.coeffs()[k];
        uu += std::norm(cu);
        vv += std::norm(cv);
        const double x2 = xi[k] * xi[k];
        uxux += x2 * std::norm(cu);
        vxvx += x2 * std::norm(cv);
        uxvx += x2 * (cu * std::conj(cv)).real();
    }
    out.e3 = length * (oc.b2 * uu + oc.b1 * vv);

    const auto pu = state.u.physical_real();
    const auto pv = state.v.physical_real();
    std::vector<double> cubic(pu.size());
    for (std::size_t j = 0; j < pu.size(); ++j) {
        const double u = pu[j], v = pv[j];
        cubic[j] = -oc.b2 * u * u * u / 3.0 - oc.b2 * oc.a2 * u * u * v -
                   oc.b2 * oc.a1 * u * v * v - v * v * v / 3.0;
    }
    out.e4 = length * (oc.b2 * uxux + vxvx + 2.0 * oc.b2 * oc.a3 * uxvx) +
             quad_physical(cubic, dx);
    return out;
}

DiagnosticsSeries conservation_drift(const Trajectory& traj, const OriginalCoefficients& oc) {
    if (traj.states.size() < 2)
        throw std::invalid_argument("conservation_drift: need >= 2 states");
    constexpr double kFloor = 1e-14;
    const ConservedValues ref = conserved(traj.states.front(), oc);
    const std::array<double, 4> ref_vals{ref.e1u, ref.e1v, ref.e3, ref.e4};
    const std::array<const char*, 4> names{"E1u", "E1v", "E3", "E4"};

    DiagnosticsSeries out;
    for (const auto& s : traj.states) {
        const ConservedValues q = conserved(s, oc);
        const std::array<double, 4> vals{q.e1u, q.e1v, q.e3, q.e4};
        out.append(s.t);
        for (std::size_t c = 0; c < 4; ++c)
            out.channel(names[c]).push_back(std::abs(vals[c] - ref_vals[c]) /
                                            std::max(std::abs(ref_vals[c]), kFloor));
    }
    out.validate();
    return out;
}

double windowed_sobolev(const Field& f, double center, double half_width, unsigned k) {
    if (k > 4) throw std::invalid_argument("windowed_sobolev: k <= 4");
    const auto& grid = *f.grid();
    const double half_l = 0.5 * grid.length();
    if (!(half_width > 0.0) || center - half_width < -half_l || center + half_width > half_l)
        throw std::invalid_argument("windowed_sobolev: window out of range");

    const auto& x = grid.x();
    std::vector<double> mask2(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double r = (x[j] - center) / half_width;
        if (std::abs(r) < 1.0) {
            const double m = std::exp(1.0 - 1.0 / (1.0 - r * r));
            mask2[j] = m * m;
        }
    }

    double acc = 0.0;
    double binom = 1.0;
    for (unsigned j = 0; j <= k; ++j) {
        const auto dj = f.derivative(j).physical_real();
        double term = 0.0;
        for (std::size_t idx = 0; idx < dj.size(); ++idx)
            term += mask2[idx] * dj[idx] * dj[idx];
        acc += binom * term * grid.dx();
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    return std::sqrt(acc);
}

GevreyFit analyticity_fit(const Field& f, double xi_lo, double xi_hi) {
    if (!(xi_lo < xi_hi)) throw std::invalid_argument("analyticity_fit: need xi_lo < xi_hi");
    const auto& xi = f.grid()->xi();
    constexpr double kFloor = 1e-14;

    std::vector<double> xs, ys;
    for (std::size_t k = 1; k < f.size() / 2; ++k) {
        const double a = std::abs(xi[k]);
        if (a < xi_lo || a > xi_hi) continue;
        const double amp =
            0.5 * (std::abs(f.coeffs()[k]) + std::abs(f.coeffs()[f.size() - k]));
        if (amp <= kFloor) continue;
        xs.push_back(a);
        ys.push_back(std::log(amp));
    }
    if (xs.size() < 16)
        throw std::invalid_argument("analyticity_fit: fewer than 16 usable modes in band");

    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;

    GevreyFit fit;
    fit.sigma = -slope;
    fit.intercept = my - slope * mx;
    fit.xi_lo = xi_lo;
    fit.xi_hi = xi_hi;
    fit.modes = xs.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + slope * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

std::vector<RefinementRow> refinement_study(const std::vector<double>& eps_list,
                                            double t_probe, const RefinementConfig& cfg) {
    if (!(t_probe > 0.0)) throw std::invalid_argument("refinement_study: t_probe > 0");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("refinement_study: eps_list must decrease");

    auto grid = make_grid(cfg.n, cfg.length);
    std::vector<RefinementRow> rows;
    for (const double eps : eps_list) {
        RefinementRow row;
        row.eps = eps;
        const Field u0 = cfg.amplitude * dirac_approx(grid, eps, cfg.kind);
        const Field v0{grid};
        row.h2_initial = windowed_sobolev(u0, cfg.window_center, cfg.window_half_width, 2);

        auto result = integrate(State{u0, v0, 0.0}, t_probe, cfg.dt, cfg.rc, {},
                                std::max<std::size_t>(1, static_cast<std::size_t>(
                                                            t_probe / cfg.dt)));
        if (result.fault) {
            row.fault = true;
            rows.push_back(row);
            continue;
        }
        const State& fin = result.trajectory.states.back();
        row.h2_probe = windowed_sobolev(fin.u, cfg.window_center, cfg.window_half_width, 2);

        // wraparound sentinel: |u| mass in the outer 10% of the domain
        const auto pu = fin.u.physical_real();
        const auto& x = grid->x();
        double edge = 0.0, total = 0.0;
        for (std::size_t j = 0; j < pu.size(); ++j) {
            const double a = std::abs(pu[j]);
            total += a;
            if (std::abs(x[j]) > 0.4 * cfg.length) edge += a;
        }
        row.boundary_mass = (total > 0.0) ? edge / total : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace ckdv
