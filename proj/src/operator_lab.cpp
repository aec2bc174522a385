#include "ckdv/operator_lab.hpp"

#include <cmath>
#include <stdexcept>

namespace ckdv {
namespace {

// 8th-order central first-derivative weights, offsets 1..4.
constexpr double kD1[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
constexpr std::size_t kStencil = 4;

void check_block(const SpaceTimeBlock& block, std::size_t min_times) {
    block.check_uniform();
    if (block.times.size() < min_times || block.times.size() % 2 == 0)
        throw std::invalid_argument("block needs an odd sample count >= " +
                                    std::to_string(min_times));
}

void check_central_support(const SpaceTimeBlock& block) {
    const double quarter = 0.25 * block.grid->length();
    const auto& x = block.grid->x();
    double peak = 0.0;
    for (const auto& f : block.slices) peak = std::max(peak, f.linf_norm());
    // loose enough to tolerate dealiasing/stencil noise chains, tight enough
    // to catch data genuinely living at the seam
    const double tol = 1e-6 * std::max(peak, 1e-300);
    for (const auto& f : block.slices) {
        const auto p = f.physical_real();
        for (std::size_t j = 0; j < p.size(); ++j)
            if (std::abs(x[j]) > quarter && std::abs(p[j]) > tol)
                throw std::invalid_argument(
                    "block support touches the x-boundary seam (must stay in the central half)");
    }
}

Field time_derivative(const SpaceTimeBlock& block, std::size_t i) {
    const double h = block.dt();
    Field d(block.grid);
    for (std::size_t o = 1; o <= kStencil; ++o) {
        Field diff = block.slices[i + o] - block.slices[i - o];
        diff *= kD1[o - 1] / h;
        d += diff;
    }
    return d;
}

Field x_multiply(const Field& f) {
    const auto& x = f.grid()->x();
    auto p = f.physical();
    for (std::size_t j = 0; j < p.size(); ++j) p[j] *= x[j];
    return Field::from_physical_complex(f.grid(), p);
}

SpaceTimeBlock shrink_map(const SpaceTimeBlock& block,
                          const std::function<Field(std::size_t)>& op) {
    SpaceTimeBlock out;
    out.grid = block.grid;
    out.taper = block.taper;
    for (std::size_t i = kStencil; i + kStencil < block.times.size(); ++i) {
        out.times.push_back(block.times[i]);
        out.slices.push_back(op(i));
    }
    return out;
}

SpaceTimeBlock apply_P_plus(const SpaceTimeBlock& block, double shift) {
    check_block(block, 2 * kStencil + 1);
    check_central_support(block);
    return shrink_map(block, [&](std::size_t i) {
        Field r = time_derivative(block, i);
        r *= 3.0 * block.times[i];
        r += x_multiply(block.slices[i].derivative(1));
        if (shift != 0.0) r += shift * block.slices[i];
        return r;
    });
}

double block_interior_l2(const SpaceTimeBlock& block) {
    double acc = 0.0;
    for (const auto& f : block.slices) {
        const double n = f.l2_norm();
        acc += n * n;
    }
    return std::sqrt(block.dt() * acc);
}

SpaceTimeBlock crop(const SpaceTimeBlock& block, std::size_t per_side) {
    SpaceTimeBlock out;
    out.grid = block.grid;
    out.taper = block.taper;
    for (std::size_t i = per_side; i + per_side < block.times.size(); ++i) {
        out.times.push_back(block.times[i]);
        out.slices.push_back(block.slices[i]);
    }
    return out;
}

SpaceTimeBlock block_difference(const SpaceTimeBlock& a, const SpaceTimeBlock& b) {
    if (a.times.size() != b.times.size())
        throw std::logic_error("block_difference: size mismatch");
    SpaceTimeBlock out;
    out.grid = a.grid;
    out.taper = a.taper;
    out.times = a.times;
    for (std::size_t i = 0; i < a.slices.size(); ++i)
        out.slices.push_back(a.slices[i] - b.slices[i]);
    return out;
}

SpaceTimeBlock derivative_block(const SpaceTimeBlock& block, unsigned order) {
    SpaceTimeBlock out;
    out.grid = block.grid;
    out.taper = block.taper;
    out.times = block.times;
    for (const auto& f : block.slices) out.slices.push_back(f.derivative(order));
    return out;
}

} // namespace

SpaceTimeBlock apply_P(const SpaceTimeBlock& block) { return apply_P_plus(block, 0.0); }

SpaceTimeBlock apply_L(const SpaceTimeBlock& block) {
    check_block(block, 2 * kStencil + 1);
    return shrink_map(block, [&](std::size_t i) {
        return time_derivative(block, i) + block.slices[i].derivative(3);
    });
}

SpaceTimeBlock apply_J(const SpaceTimeBlock& block) {
    check_block(block, 1);
    check_central_support(block);
    SpaceTimeBlock out;
    out.grid = block.grid;
    out.taper = block.taper;
    out.times = block.times;
    for (std::size_t i = 0; i < block.slices.size(); ++i) {
        Field r = block.slices[i].derivative(2);
        r *= -3.0 * block.times[i];
        r += x_multiply(block.slices[i]);
        out.slices.push_back(r);
    }
    return out;
}

double commutator_residual(CommutatorKind kind, const SpaceTimeBlock& block) {
    switch (kind) {
        case CommutatorKind::LP: {
            const auto lpf = apply_L(apply_P(block));
            const auto lf = apply_L(block);
            const auto plf = apply_P(lf);
            // L P f - P L f - 3 L f on the doubly-shrunken interior
            auto res = block_difference(lpf, plf);
            const auto lf_crop = crop(lf, kStencil);
            for (std::size_t i = 0; i < res.slices.size(); ++i)
                res.slices[i] -= 3.0 * lf_crop.slices[i];
            const double fnorm = block_interior_l2(crop(block, 2 * kStencil));
            return block_interior_l2(res) / std::max(fnorm, 1e-300);
        }
        case CommutatorKind::LJ: {
            const auto ljf = apply_L(apply_J(block));
            const auto jlf = apply_J(apply_L(block));
            return block_interior_l2(block_difference(ljf, jlf));
        }
        case CommutatorKind::P3dx3: {
            const auto lhs = apply_P_plus(derivative_block(block, 3), 3.0);
            const auto rhs = derivative_block(apply_P(block), 3);
            return block_interior_l2(block_difference(lhs, rhs));
        }
    }
    throw std::logic_error("unreachable");
}

std::uint64_t multinomial_weight(unsigned k, unsigned k1, unsigned k2, unsigned k3) {
    if (k1 + k2 + k3 != k) throw std::invalid_argument("multinomial_weight: parts must sum to k");
    if (k > 20) throw std::overflow_error("multinomial_weight: k > 20 would overflow");
    // k!/(k1! k2! k3!) built as products of binomials to stay integral
    auto binom = [](unsigned n, unsigned r) {
        unsigned __int128 acc = 1;
        for (unsigned i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
        return acc;
    };
    unsigned __int128 w = binom(k, k1) * binom(k - k1, k2);
    for (unsigned i = 0; i < k1; ++i) w *= 2;
    if (w > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("multinomial_weight overflow");
    return static_cast<std::uint64_t>(w);
}

std::uint64_t multinomial_weight_sum(unsigned k) {
    std::uint64_t acc = 0;
    for (unsigned k1 = 0; k1 <= k; ++k1)
        for (unsigned k2 = 0; k2 + k1 <= k; ++k2)
            acc += multinomial_weight(k, k1, k2, k - k1 - k2);
    return acc;
}

BkTriple bk_expansion(const std::vector<Field>& pu, const std::vector<Field>& pv,
                      const ReducedCoefficients& rc, unsigned k, bool use_tilde) {
    if (pu.size() < k + 1 || pv.size() < k + 1)
        throw std::invalid_argument("bk_expansion: need P^j fields for j = 0..k");
    const GridPtr grid = pu[0].grid();
    Field s1(grid), s2(grid), s3(grid);
    for (unsigned k1 = 0; k1 <= k; ++k1) {
        for (unsigned k2 = 0; k2 + k1 <= k; ++k2) {
            const unsigned k3 = k - k1 - k2;
            const auto w = static_cast<double>(multinomial_weight(k, k1, k2, k3));
            s1 += w * product(pu[k2], pu[k3]).derivative(1);
            s2 += w * product(pv[k2], pv[k3]).derivative(1);
            s3 += w * product(pu[k2], pv[k3]).derivative(1);
        }
    }
    const double ca = use_tilde ? rc.a_tilde : rc.a;
    const double cb = use_tilde ? rc.b_tilde : rc.b;
    const double cc = use_tilde ? rc.c_tilde : rc.c;
    return BkTriple{(-0.5 * ca) * s1, (-0.5 * cb) * s2, (-1.0 * cc) * s3};
}

Field leibniz_direct(const SpaceTimeBlock& block_u, const ReducedCoefficients& rc,
                     unsigned k) {
    if (k > 3) throw std::invalid_argument("leibniz_direct: k <= 3");
    if (block_u.times.size() < 8 * static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("leibniz_direct: insufficient stencil width");
    SpaceTimeBlock sq;
    sq.grid = block_u.grid;
    sq.times = block_u.times;
    sq.taper = block_u.taper;
    for (const auto& f : block_u.slices) sq.slices.push_back(product(f, f));
    for (unsigned j = 0; j < k; ++j) sq = apply_P_plus(sq, 2.0);
    Field center = sq.slices[sq.center_index()].derivative(1);
    center *= -0.5 * rc.a;
    return center;
}

DiagnosticsSeries dilation_residual(const Trajectory& traj, const ReducedCoefficients& rc,
                                    unsigned k) {
    if (k != 0)
        throw std::invalid_argument("dilation_residual: only k = 0 is supported");
    const auto& s = traj.states;
    const std::size_t n_uniform = traj.uniform ? s.size() : s.size() - 1;
    if (n_uniform < 5)
        throw std::invalid_argument("dilation_residual: need >= 5 uniformly spaced snapshots");
    const double h = traj.step_size;

    DiagnosticsSeries out;
    auto& cu = out.channel("dil_u");
    auto& cv = out.channel("dil_v");
    for (std::size_t i = 2; i + 2 < n_uniform; ++i) {
        const double t = s[i].t;
        auto ddt = [&](auto pick) {
            Field d = (-1.0) * pick(i + 2) + 8.0 * pick(i + 1) - 8.0 * pick(i - 1) +
                      1.0 * pick(i - 2);
            d *= 1.0 / (12.0 * h);
            return d;
        };
        const Field ut = ddt([&](std::size_t j) -> const Field& { return s[j].u; });
        const Field vt = ddt([&](std::size_t j) -> const Field& { return s[j].v; });
        auto [bu, bv] = rhs_nonlinear(s[i], rc); // B_0 and C_0 totals

        auto residual = [&](const Field& f, const Field& ft, const Field& b) {
            const Field xfx = x_multiply(f.derivative(1));
            Field pu = ft;
            pu *= 3.0 * t;
            pu += xfx;
            Field r = f.derivative(3);
            r *= t;
            r += (1.0 / 3.0) * pu;
            r -= (1.0 / 3.0) * xfx;
            r -= t * b;
            return r.l2_norm();
        };
        out.append(t);
        cu.push_back(residual(s[i].u, ut, bu));
        cv.push_back(residual(s[i].v, vt, bv));
    }
    out.validate();
    return out;
}

} // namespace ckdv
