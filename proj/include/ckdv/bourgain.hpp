#pragma once

#include "ckdv/field.hpp"

#include <cstdint>
#include <vector>

namespace ckdv {

enum class TaperKind { None, Bump };

// A uniformly sampled (x,t) window of a single field. The temporal taper is
// applied at construction time and declared in the metadata; norms in the
// tau domain require it (spectral leakage would corrupt the weights).
struct SpaceTimeBlock {
    GridPtr grid;
    std::vector<double> times;   // uniform spacing
    std::vector<Field> slices;   // one field per time
    TaperKind taper = TaperKind::None;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    double span() const { return dt() * static_cast<double>(times.size()); }
    std::size_t center_index() const { return times.size() / 2; }
    void check_uniform() const;
};

// Smooth compactly supported bump on (0,1), 1 at the midpoint.
double taper_bump(double s);

// Applies the bump taper across the time axis and marks the block tapered.
void apply_taper(SpaceTimeBlock& block);

// Samples a scalar function f(x,t) onto a block.
template <typename F>
SpaceTimeBlock sample_block(GridPtr grid, double t0, double dt_, std::size_t nt, F&& f) {
    SpaceTimeBlock b;
    b.grid = grid;
    const auto& x = grid->x();
    std::vector<double> vals(grid->size());
    for (std::size_t i = 0; i < nt; ++i) {
        const double t = t0 + dt_ * static_cast<double>(i);
        b.times.push_back(t);
        for (std::size_t j = 0; j < grid->size(); ++j) vals[j] = f(x[j], t);
        b.slices.push_back(Field::from_physical(grid, vals));
    }
    return b;
}

// Discrete X^s_b norm: 2-D transform, weight (1+|tau-xi^3|)^{2b} (1+|xi|)^{2s},
// quadrature consistent with the space-time L2 norm at s = b = 0.
double bourgain_norm(const SpaceTimeBlock& block, double s, double b);

// Space-time L2 of the block (no taper requirement).
double block_l2(const SpaceTimeBlock& block);

struct BilinearProbeStats {
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    std::vector<double> ratios;
    std::size_t skipped = 0; // zero-norm draws excluded from the statistics
};

struct BilinearProbeConfig {
    double s = -0.5;
    double b = 0.52;
    double b_prime = 0.56;
    std::size_t trials = 100;
    std::size_t nt = 64;
    double t_span = 10.0;
    double xi_band = 2.0;
    double tau_band = 8.0;
    std::uint64_t seed = 0;
};

// Empirical check of the bilinear estimate:
// ratio ||d_x(uv)||_{X^s_{b'-1}} / (||u||_{X^s_b} ||v||_{X^s_b}) over random
// band-limited space-time blocks.
BilinearProbeStats bilinear_probe(GridPtr grid, const BilinearProbeConfig& cfg);

} // namespace ckdv
