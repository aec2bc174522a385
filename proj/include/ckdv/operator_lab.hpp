#pragma once

#include "ckdv/bourgain.hpp"
#include "ckdv/coefficients.hpp"
#include "ckdv/dynamics.hpp"

#include <cstdint>

namespace ckdv {

// Space-time operator algebra on sampled blocks. Time derivatives use
// 8th-order central stencils, so every application drops 4 samples per side.
// Operators that multiply by x require block support inside the central half
// of the domain (x-multiplication is seam-discontinuous on a torus).

// P = 3 t d_t + x d_x (generator of dilation)
SpaceTimeBlock apply_P(const SpaceTimeBlock& block);
// L = d_t + d_x^3
SpaceTimeBlock apply_L(const SpaceTimeBlock& block);
// J = x - 3 t d_x^2
SpaceTimeBlock apply_J(const SpaceTimeBlock& block);

// Space-time L2 over whatever interior the block retains.
enum class CommutatorKind { LP, LJ, P3dx3 };

// LP:     ||L(Pf) - P(Lf) - 3 Lf|| / ||f||
// LJ:     ||L(Jf) - J(Lf)||
// P3dx3:  ||(P+3)(d_x^3 f) - d_x^3(Pf)||   (k = 1)
double commutator_residual(CommutatorKind kind, const SpaceTimeBlock& block);

// Exact multinomial coefficient k!/(k1! k2! k3!) * 2^k1; overflow-checked,
// valid for k <= 20.
std::uint64_t multinomial_weight(unsigned k, unsigned k1, unsigned k2, unsigned k3);
// Sum of multinomial_weight over k1+k2+k3=k; equals 4^k.
std::uint64_t multinomial_weight_sum(unsigned k);

struct BkTriple {
    Field b1; // quadratic in u
    Field b2; // quadratic in v
    Field b3; // mixed
};

// B_k (or, with use_tilde, C_k) built from the lists pu[j] = P^j u,
// pv[j] = P^j v at a common time:
//   B_k^1 = -(a/2) sum_{k1+k2+k3=k} w d_x(u_{k2} u_{k3}),  etc.
BkTriple bk_expansion(const std::vector<Field>& pu, const std::vector<Field>& pv,
                      const ReducedCoefficients& rc, unsigned k, bool use_tilde = false);

// -(a/2) d_x (P+2)^k (u^2) by literal repeated application of (P+2) on the
// squared block, evaluated at the block's center time. Needs 8k+1 samples.
Field leibniz_direct(const SpaceTimeBlock& block_u, const ReducedCoefficients& rc,
                     unsigned k);

// Residual of  t d_x^3 u = -(1/3) P u + (1/3) x d_x u + t (B_0^1+B_0^2+B_0^3)
// (and the v counterpart with C_0) on a computed trajectory; P u built from
// the same fourth-order time stencil as pde_residual. Channels: dil_u, dil_v.
DiagnosticsSeries dilation_residual(const Trajectory& traj, const ReducedCoefficients& rc,
                                    unsigned k = 0);

} // namespace ckdv
