#include "ckdv/initial_data.hpp"

#include <cmath>
#include <stdexcept>

namespace ckdv {

Field dirac_approx(GridPtr grid, double eps, DiracKind kind) {
    if (!(eps > 0.0)) throw std::invalid_argument("dirac_approx: eps must be positive");
    if (kind == DiracKind::Gaussian && eps < 4.0 * grid->dx())
        throw std::invalid_argument("dirac_approx: gaussian width eps is unresolvable, need eps >= 4*L/N");
    Field f(grid);
    const auto& xi = grid->xi();
    const double inv_l = 1.0 / grid->length();
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (kind == DiracKind::Gaussian) {
            f.coeffs()[k] = inv_l * std::exp(-0.5 * eps * eps * xi[k] * xi[k]);
        } else {
            f.coeffs()[k] = (std::abs(xi[k]) <= 1.0 / eps) ? cplx{inv_l, 0.0} : cplx{0.0, 0.0};
        }
    }
    return f;
}

Field pv_reciprocal(GridPtr grid, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("pv_reciprocal: eps must be positive");
    Field f(grid);
    const auto& xi = grid->xi();
    const double inv_l = 1.0 / grid->length();
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double sgn = (xi[k] > 0.0) ? 1.0 : (xi[k] < 0.0 ? -1.0 : 0.0);
        f.coeffs()[k] = cplx{0.0, -M_PI * sgn * inv_l * std::exp(-eps * std::abs(xi[k]))};
    }
    // The Nyquist mode has no conjugate partner; keep the field real.
    f.coeffs()[grid->nyquist_index()] = cplx{0.0, 0.0};
    return f;
}

Field soliton(GridPtr grid, double kappa, double x0, double a) {
    if (a == 0.0) throw std::invalid_argument("soliton: a must be nonzero");
    if (!(kappa > 0.0)) throw std::invalid_argument("soliton: kappa must be positive");
    if (kappa * grid->length() < 20.0)
        throw std::invalid_argument("soliton: kappa*L < 20, tails would wrap around");
    const double amp = 12.0 * kappa * kappa / a;
    const auto& x = grid->x();
    std::vector<double> samples(grid->size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double s = 1.0 / std::cosh(kappa * (x[j] - x0));
        samples[j] = amp * s * s;
    }
    return Field::from_physical(grid, samples);
}

StateDump from_file(const std::filesystem::path& path) { return read_state_dump(path); }

} // namespace ckdv
