#pragma once

#include "ckdv/field.hpp"
#include "ckdv/field_io.hpp"

#include <filesystem>

namespace ckdv {

enum class DiracKind { Gaussian, BandLimited };

// Regularized Dirac delta with unit mass. Gaussian kind has spectrum
// e^{-eps^2 xi^2 / 2}; band-limited kind a flat spectrum up to |xi| = 1/eps.
Field dirac_approx(GridPtr grid, double eps, DiracKind kind);

// Regularized principal value of 1/x: u_hat(xi) = -i pi sgn(xi) e^{-eps|xi|} / L.
Field pv_reciprocal(GridPtr grid, double eps);

// Exact travelling wave of u_t + u_xxx + a u u_x = 0:
//   u(x) = (12 kappa^2 / a) sech^2(kappa (x - x0)),  speed 4 kappa^2.
Field soliton(GridPtr grid, double kappa, double x0, double a);

// Reads a state pair from the binary field-dump format.
StateDump from_file(const std::filesystem::path& path);

} // namespace ckdv
