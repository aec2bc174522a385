#include "ckdv/bourgain.hpp"

#include "ckdv/fft.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ckdv {

void SpaceTimeBlock::check_uniform() const {
    if (times.size() < 2 || slices.size() != times.size())
        throw std::invalid_argument("SpaceTimeBlock: need matching times/slices, >= 2");
    const double h = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs((times[i] - times[i - 1]) - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("SpaceTimeBlock: nonuniform time spacing");
}

double taper_bump(double s) {
    const double r = 2.0 * s - 1.0;
    if (std::abs(r) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

void apply_taper(SpaceTimeBlock& block) {
    const auto nt = block.slices.size();
    for (std::size_t i = 0; i < nt; ++i)
        block.slices[i] *= taper_bump((static_cast<double>(i) + 0.5) / static_cast<double>(nt));
    block.taper = TaperKind::Bump;
}

double block_l2(const SpaceTimeBlock& block) {
    block.check_uniform();
    double acc = 0.0;
    for (const auto& f : block.slices) {
        const double n = f.l2_norm();
        acc += n * n;
    }
    return std::sqrt(block.dt() * acc);
}

double bourgain_norm(const SpaceTimeBlock& block, double s, double b) {
    block.check_uniform();
    if (block.taper == TaperKind::None)
        throw std::invalid_argument("bourgain_norm: block must be tapered");

    const std::size_t nt = block.times.size();
    const std::size_t nx = block.grid->size();
    const auto& xi = block.grid->xi();
    const double span = block.span();
    const double dtau = 2.0 * M_PI / span;

    double acc = 0.0;
    std::vector<cplx> line(nt);
    for (std::size_t k = 0; k < nx; ++k) {
        for (std::size_t i = 0; i < nt; ++i) line[i] = block.slices[i].coeffs()[k];
        fft::forward(line);
        const double xik = xi[k];
        const double xw = std::pow(1.0 + std::abs(xik), 2.0 * s);
        for (std::size_t m = 0; m < nt; ++m) {
            const auto mm = (m < nt / 2) ? static_cast<long>(m)
                                         : static_cast<long>(m) - static_cast<long>(nt);
            const double tau = dtau * static_cast<double>(mm);
            const double tw = std::pow(1.0 + std::abs(tau - xik * xik * xik), 2.0 * b);
            acc += xw * tw * std::norm(line[m] / static_cast<double>(nt));
        }
    }
    return std::sqrt(block.grid->length() * span * acc);
}

namespace {

struct RandomMode {
    double xi = 0.0;
    double tau = 0.0;
    double amp = 0.0;
    double phase = 0.0;
};

// Modes are drawn on the xi lattice 2*pi/L (N-independent for fixed L) with
// continuous tau, so the same seed produces the same block on every grid size.
std::vector<RandomMode> draw_modes(std::mt19937_64& rng, double length, double xi_band,
                                   double tau_band, std::size_t count) {
    const double dxi = 2.0 * M_PI / length;
    const auto max_idx = static_cast<long>(std::floor(xi_band / dxi));
    std::uniform_int_distribution<long> idx(-max_idx, max_idx);
    std::uniform_real_distribution<double> tau(-tau_band, tau_band);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::normal_distribution<double> amp(0.0, 1.0);
    std::vector<RandomMode> modes(count);
    for (auto& m : modes) {
        m.xi = dxi * static_cast<double>(idx(rng));
        m.tau = tau(rng);
        m.amp = amp(rng);
        m.phase = phase(rng);
    }
    return modes;
}

SpaceTimeBlock block_from_modes(GridPtr grid, const std::vector<RandomMode>& modes,
                                double t_span, std::size_t nt) {
    const double dt = t_span / static_cast<double>(nt);
    auto b = sample_block(std::move(grid), 0.0, dt, nt, [&](double x, double t) {
        double v = 0.0;
        for (const auto& m : modes) v += m.amp * std::cos(m.xi * x + m.tau * t + m.phase);
        return v;
    });
    apply_taper(b);
    return b;
}

} // namespace

BilinearProbeStats bilinear_probe(GridPtr grid, const BilinearProbeConfig& cfg) {
    if (!(cfg.s > -0.75))
        throw std::invalid_argument("bilinear_probe: need s > -3/4");
    if (!(0.5 < cfg.b && cfg.b < cfg.b_prime && cfg.b_prime < 7.0 / 12.0))
        throw std::invalid_argument("bilinear_probe: need 1/2 < b < b' < 7/12");

    std::mt19937_64 rng(cfg.seed);
    constexpr std::size_t kModesPerBlock = 12;
    BilinearProbeStats stats;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const auto mu = draw_modes(rng, grid->length(), cfg.xi_band, cfg.tau_band,
                                   kModesPerBlock);
        const auto mv = draw_modes(rng, grid->length(), cfg.xi_band, cfg.tau_band,
                                   kModesPerBlock);
        const auto bu = block_from_modes(grid, mu, cfg.t_span, cfg.nt);
        const auto bv = block_from_modes(grid, mv, cfg.t_span, cfg.nt);

        const double nu = bourgain_norm(bu, cfg.s, cfg.b);
        const double nv = bourgain_norm(bv, cfg.s, cfg.b);
        if (nu < 1e-13 || nv < 1e-13) {
            ++stats.skipped;
            continue;
        }

        SpaceTimeBlock prod;
        prod.grid = grid;
        prod.times = bu.times;
        prod.taper = TaperKind::Bump; // carried by the factors
        for (std::size_t i = 0; i < bu.slices.size(); ++i)
            prod.slices.push_back(product(bu.slices[i], bv.slices[i]).derivative(1));

        stats.ratios.push_back(bourgain_norm(prod, cfg.s, cfg.b_prime - 1.0) / (nu * nv));
    }
    if (!stats.ratios.empty()) {
        stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
        std::vector<double> sorted = stats.ratios;
        std::sort(sorted.begin(), sorted.end());
        stats.median_ratio = sorted[sorted.size() / 2];
    }
    return stats;
}

} // namespace ckdv
