#include "ckdv/picard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ckdv {
namespace {

constexpr double kGlNode[2] = {0.3399810435848563, 0.8611363115940526};
constexpr double kGlWeight[2] = {0.6521451548625461, 0.3478548451374538};

// Interaction-picture spectra, one vector<cplx> per mesh time.
using SpectrumMesh = std::vector<std::vector<cplx>>;

SpectrumMesh interaction_nonlinearity(const std::vector<Field>& u,
                                      const std::vector<Field>& v,
                                      const std::vector<double>& times,
                                      const ReducedCoefficients& rc) {
    SpectrumMesh g(2 * times.size());
    for (std::size_t j = 0; j < times.size(); ++j) {
        auto [nu, nv] = rhs_nonlinear(u[j], v[j], rc);
        g[2 * j] = nu.airy_propagate(-times[j]).coeffs();
        g[2 * j + 1] = nv.airy_propagate(-times[j]).coeffs();
    }
    return g;
}

std::array<double, 4> lagrange_weights(double t, const double* ts) {
    std::array<double, 4> w{};
    for (int i = 0; i < 4; ++i) {
        double num = 1.0, den = 1.0;
        for (int m = 0; m < 4; ++m) {
            if (m == i) continue;
            num *= t - ts[m];
            den *= ts[i] - ts[m];
        }
        w[i] = num / den;
    }
    return w;
}

} // namespace

PicardResult picard_iterate(const Field& u0, const Field& v0, double T,
                            std::size_t iterations, const ReducedCoefficients& rc,
                            const PicardOptions& opts) {
    if (!(T > 0.0)) throw std::invalid_argument("picard_iterate: T > 0");
    if (iterations < 1) throw std::invalid_argument("picard_iterate: iterations >= 1");
    if (u0.grid() != v0.grid()) throw std::invalid_argument("picard_iterate: grid mismatch");

    const GridPtr grid = u0.grid();
    const std::size_t n = grid->size();
    const std::size_t nsub = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::ceil(T * static_cast<double>(
                                                      opts.subintervals_per_unit))));
    const double h = T / static_cast<double>(nsub);
    std::vector<double> times(nsub + 1);
    for (std::size_t j = 0; j <= nsub; ++j) times[j] = h * static_cast<double>(j);

    // iterate 0: the free evolution
    std::vector<Field> cu, cv;
    cu.reserve(nsub + 1);
    cv.reserve(nsub + 1);
    for (double t : times) {
        cu.push_back(u0.airy_propagate(t));
        cv.push_back(v0.airy_propagate(t));
    }

    PicardReport report;
    int increasing = 0;
    for (std::size_t iter = 0; iter < iterations; ++iter) {
        const SpectrumMesh g = interaction_nonlinearity(cu, cv, times, rc);

        std::vector<Field> nu_mesh, nv_mesh;
        nu_mesh.reserve(nsub + 1);
        nv_mesh.reserve(nsub + 1);
        nu_mesh.push_back(u0);
        nv_mesh.push_back(v0);
        std::vector<cplx> iu(n, 0.0), iv(n, 0.0);
        for (std::size_t j = 1; j <= nsub; ++j) {
            const std::size_t base = std::min(nsub - 3, j >= 2 ? j - 2 : 0);
            const double* ts = &times[base];
            const double mid = 0.5 * (times[j - 1] + times[j]);
            for (int node = 0; node < 4; ++node) {
                const double sgn = (node % 2 == 0) ? -1.0 : 1.0;
                const double tp = mid + sgn * 0.5 * h * kGlNode[node / 2];
                const double w = 0.5 * h * kGlWeight[node / 2];
                const auto lw = lagrange_weights(tp, ts);
                for (std::size_t k = 0; k < n; ++k) {
                    cplx su = 0.0, sv = 0.0;
                    for (int i = 0; i < 4; ++i) {
                        su += lw[i] * g[2 * (base + i)][k];
                        sv += lw[i] * g[2 * (base + i) + 1][k];
                    }
                    iu[k] += w * su;
                    iv[k] += w * sv;
                }
            }
            std::vector<cplx> au(n), av(n);
            for (std::size_t k = 0; k < n; ++k) {
                au[k] = u0.coeffs()[k] + iu[k];
                av[k] = v0.coeffs()[k] + iv[k];
            }
            nu_mesh.push_back(Field(grid, std::move(au)).airy_propagate(times[j]));
            nv_mesh.push_back(Field(grid, std::move(av)).airy_propagate(times[j]));
        }

        double d = 0.0;
        for (std::size_t j = 0; j <= nsub; ++j)
            d = std::max(d, (nu_mesh[j] - cu[j]).sobolev_norm(opts.s) +
                                (nv_mesh[j] - cv[j]).sobolev_norm(opts.s));
        if (!report.d.empty()) {
            if (report.d.back() > 1e-13) report.ratios.push_back(d / report.d.back());
            increasing = (d > report.d.back()) ? increasing + 1 : 0;
        }
        report.d.push_back(d);
        cu = std::move(nu_mesh);
        cv = std::move(nv_mesh);
        if (increasing >= 3) {
            report.diverged = true;
            break;
        }
    }

    PicardResult result;
    result.report = std::move(report);
    result.trajectory.step_size = h;
    result.trajectory.rc = rc;
    for (std::size_t j = 0; j <= nsub; ++j)
        result.trajectory.states.push_back(State{cu[j], cv[j], times[j]});
    return result;
}

std::vector<ContractionRow> contraction_vs_T(const Field& u0, const Field& v0,
                                             const ReducedCoefficients& rc,
                                             const std::vector<double>& t_list,
                                             std::size_t iterations,
                                             const PicardOptions& opts) {
    for (std::size_t i = 0; i < t_list.size(); ++i)
        if (!(t_list[i] > 0.0) || (i > 0 && !(t_list[i] > t_list[i - 1])))
            throw std::invalid_argument("contraction_vs_T: T-list must be positive ascending");

    std::vector<ContractionRow> rows;
    for (double T : t_list) {
        const auto res = picard_iterate(u0, v0, T, iterations, rc, opts);
        ContractionRow row;
        row.T = T;
        row.diverged = res.report.diverged;
        if (!res.report.ratios.empty()) row.ratio = res.report.ratios.back();
        rows.push_back(row);
    }
    return rows;
}

} // namespace ckdv
