#pragma once

#include "ckdv/coefficients.hpp"
#include "ckdv/dynamics.hpp"
#include "ckdv/initial_data.hpp"
#include "ckdv/series.hpp"

#include <array>

namespace ckdv {

// Conserved functionals of the original system, evaluated on a state in
// original variables:
//   E1u = int u dx, E1v = int v dx, E3 = int (b2 u^2 + b1 v^2) dx,
//   E4  = int (b2 u_x^2 + v_x^2 + 2 b2 a3 u_x v_x
//              - b2 u^3/3 - b2 a2 u^2 v - b2 a1 u v^2 - v^3/3) dx.
struct ConservedValues {
    double e1u = 0.0;
    double e1v = 0.0;
    double e3 = 0.0;
    double e4 = 0.0;
};

ConservedValues conserved(const State& state, const OriginalCoefficients& oc);

// Relative drift |Q(t)-Q(0)| / max(|Q(0)|, 1e-14) per channel.
DiagnosticsSeries conservation_drift(const Trajectory& traj, const OriginalCoefficients& oc);

// H^k norm restricted to (center-half_width, center+half_width) through a
// smooth bump mask; derivatives spectral, binomial weights so that a mask of 1
// reproduces the global integer-order Sobolev norm.
double windowed_sobolev(const Field& f, double center, double half_width, unsigned k);

struct GevreyFit {
    double sigma = 0.0;     // minus the fitted slope of log|u_hat| vs |xi|
    double intercept = 0.0;
    double xi_lo = 0.0;
    double xi_hi = 0.0;
    double residual = 0.0;  // fit RMS
    std::size_t modes = 0;
};

// Least-squares fit of log|u_hat(xi)| against |xi| over the band, averaging
// both signs of xi; modes below the 1e-14 floor are excluded.
GevreyFit analyticity_fit(const Field& f, double xi_lo, double xi_hi);

struct RefinementConfig {
    std::size_t n = 1 << 15;
    double length = 1500.0;
    double dt = 1e-3;
    // Band-limited mollifier by default: its sharp frequency cutoff bounds the
    // fastest group velocity at 3/eps^2, so dispersive radiation cannot wrap
    // around the torus and contaminate the probe window within t_probe.
    DiracKind kind = DiracKind::BandLimited;
    double window_center = 2.0;
    double window_half_width = 6.0;
    double amplitude = 1.0;
    ReducedCoefficients rc;
};

struct RefinementRow {
    double eps = 0.0;
    double h2_initial = 0.0;     // windowed H^2 at t = 0
    double h2_probe = 0.0;       // windowed H^2 at t = t_probe
    double boundary_mass = 0.0;  // |u| mass fraction within 10% of the boundary
    bool fault = false;
};

// Evolves dirac_approx(eps) to t_probe per eps and tabulates the windowed H^2
// at the initial and probe times. Successive-eps ratios of the t=0 column
// diverge while the probe column stabilizes for smoothing-consistent runs.
std::vector<RefinementRow> refinement_study(const std::vector<double>& eps_list,
                                            double t_probe, const RefinementConfig& cfg);

} // namespace ckdv
