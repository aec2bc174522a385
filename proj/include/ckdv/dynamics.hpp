#pragma once

#include "ckdv/coefficients.hpp"
#include "ckdv/field.hpp"
#include "ckdv/series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ckdv {

struct State {
    Field u;
    Field v;
    double t = 0.0;
};

struct Trajectory {
    std::vector<State> states;
    double step_size = 0.0;     // snapshot spacing
    bool uniform = true;        // false if a trailing partial step was stored
    ReducedCoefficients rc;
};

struct IntegrationFault {
    double t = 0.0;
    std::string message;
};

struct IntegrateResult {
    Trajectory trajectory;
    std::optional<IntegrationFault> fault;
};

// Nonlinear right-hand sides of the reduced system,
//   Nu = -a u u_x - b v v_x - c (uv)_x,  Nv with the tilde coefficients.
// Quadratic products are formed in physical space and dealiased.
std::pair<Field, Field> rhs_nonlinear(const Field& u, const Field& v,
                                      const ReducedCoefficients& rc);
std::pair<Field, Field> rhs_nonlinear(const State& state, const ReducedCoefficients& rc);

// Fourth-order exponential time differencing (Cox-Matthews ETDRK4) with the
// Airy multiplier treated exactly. Phi-function weights are evaluated by
// contour averaging, which is stable for modes with xi^3 dt near zero.
class Etdrk4 {
  public:
    Etdrk4(GridPtr grid, ReducedCoefficients rc, double dt);
    double dt() const { return dt_; }
    // One step; throws no exception on blow-up, reports via fault().
    State step(const State& state) const;

  private:
    GridPtr grid_;
    ReducedCoefficients rc_;
    double dt_;
    std::vector<cplx> e_, e2_, q_, f1_, f2_, f3_;
};

State step_etdrk4(const State& state, double dt, const ReducedCoefficients& rc);

struct Observer {
    std::size_t stride = 1;
    std::function<void(const State&)> callback;
};

// Repeated ETDRK4 stepping to time T; snapshots retained every
// `store_stride` steps (always including the initial and final states).
// A last partial step is taken when T is not a multiple of dt.
IntegrateResult integrate(const State& initial, double T, double dt,
                          const ReducedCoefficients& rc,
                          const std::vector<Observer>& observers = {},
                          std::size_t store_stride = 1);

// Detects nonfinite or blown-up coefficients; threshold 1e12.
std::optional<IntegrationFault> check_blowup(const State& state);

// Discrete L2 residual of the reduced system per interior snapshot; u_t by
// fourth-order central differences over snapshots, space terms spectral.
// Channels: residual_u, residual_v.
DiagnosticsSeries pde_residual(const Trajectory& traj, const ReducedCoefficients& rc);

} // namespace ckdv
