#pragma once

#include "ckdv/dynamics.hpp"

namespace ckdv {

// Picard iteration on the Duhamel form of the reduced system,
//   u(t) = V(t) u0 + int_0^t V(t-t') Nu(t') dt',
// with V the Airy semigroup. The integral is evaluated in the interaction
// picture by composite 4-point Gauss-Legendre quadrature on a uniform mesh;
// the nonlinearity at quadrature nodes is cubic-interpolated from mesh values
// after removing the e^{i xi^3 t} oscillation exactly.
struct PicardOptions {
    std::size_t subintervals_per_unit = 64; // time mesh density (min 4 total)
    double s = 0.0;                         // H^s used for the contraction report
};

struct PicardReport {
    std::vector<double> d;      // d_n = sup_t H^s distance of successive iterates
    std::vector<double> ratios; // d_{n+1}/d_n where d_n is resolvable
    bool diverged = false;      // d_n increased on 3 consecutive iterations
};

struct PicardResult {
    Trajectory trajectory; // final iterate on the quadrature mesh
    PicardReport report;
};

PicardResult picard_iterate(const Field& u0, const Field& v0, double T,
                            std::size_t iterations, const ReducedCoefficients& rc,
                            const PicardOptions& opts = {});

struct ContractionRow {
    double T = 0.0;
    double ratio = 0.0; // last resolvable successive-difference ratio; 0 if none
    bool diverged = false;
};

// Tabulates the empirical contraction ratio per window length; t_list must be
// positive ascending. Divergent cells are marked rather than thrown.
std::vector<ContractionRow> contraction_vs_T(const Field& u0, const Field& v0,
                                             const ReducedCoefficients& rc,
                                             const std::vector<double>& t_list,
                                             std::size_t iterations = 6,
                                             const PicardOptions& opts = {});

} // namespace ckdv
