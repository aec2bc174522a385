#include "ckdv/field.hpp"

#include "ckdv/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ckdv {
namespace {

void check_same_grid(const Field& a, const Field& b) {
    if (!(*a.grid() == *b.grid()))
        throw std::invalid_argument("field grid mismatch");
}

// Alternating sign carries the x-offset of the grid origin (-L/2) between
// index-space FFT order and the true-coordinate coefficients.
inline double alt(std::size_t k) { return (k & 1u) ? -1.0 : 1.0; }

} // namespace

Field::Field(GridPtr grid) : grid_(std::move(grid)), coeffs_(grid_->size(), cplx{0.0, 0.0}) {}

Field::Field(GridPtr grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_->size())
        throw std::invalid_argument("coefficient count does not match grid");
}

Field Field::from_physical_complex(GridPtr grid, const std::vector<cplx>& samples) {
    if (samples.size() != grid->size())
        throw std::invalid_argument("sample count does not match grid");
    std::vector<cplx> c = samples;
    fft::forward(c);
    const double ninv = 1.0 / static_cast<double>(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= alt(k) * ninv;
    return Field(std::move(grid), std::move(c));
}

Field Field::from_physical(GridPtr grid, const std::vector<double>& samples) {
    std::vector<cplx> s(samples.begin(), samples.end());
    return from_physical_complex(std::move(grid), s);
}

std::vector<cplx> Field::physical() const {
    std::vector<cplx> d = coeffs_;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] *= alt(k);
    fft::inverse(d);
    return d;
}

std::vector<double> Field::physical_real() const {
    const auto p = physical();
    std::vector<double> r(p.size());
    std::transform(p.begin(), p.end(), r.begin(), [](cplx z) { return z.real(); });
    return r;
}

cplx Field::eval(double x) const {
    const auto& xi = grid_->xi();
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        acc += coeffs_[k] * std::polar(1.0, xi[k] * x);
    return acc;
}

Field Field::derivative(unsigned order) const {
    if (order > 6) throw std::invalid_argument("derivative order > 6 not supported");
    if (order == 0) return *this;
    Field out(*this);
    const auto& xi = grid_->xi();
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k) {
        const cplx ix{0.0, xi[k]};
        cplx m{1.0, 0.0};
        for (unsigned j = 0; j < order; ++j) m *= ix;
        out.coeffs_[k] *= m;
    }
    // The Nyquist mode has no well-defined sign for odd derivatives.
    if (order % 2 == 1) out.coeffs_[grid_->nyquist_index()] = cplx{0.0, 0.0};
    return out;
}

Field Field::dealias() const {
    Field out(*this);
    const auto& xi = grid_->xi();
    const double cut = grid_->xi_cut();
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
        if (std::abs(xi[k]) > cut) out.coeffs_[k] = cplx{0.0, 0.0};
    return out;
}

Field Field::airy_propagate(double t) const {
    Field out(*this);
    const auto& xi = grid_->xi();
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
        out.coeffs_[k] *= std::polar(1.0, xi[k] * xi[k] * xi[k] * t);
    return out;
}

double Field::sobolev_norm(double s) const {
    const auto& xi = grid_->xi();
    double acc = 0.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + xi[k] * xi[k], s);
        acc += w * std::norm(coeffs_[k]);
    }
    return std::sqrt(grid_->length() * acc);
}

double Field::linf_norm() const {
    const auto p = physical();
    double m = 0.0;
    for (const auto& z : p) m = std::max(m, std::abs(z.real()));
    return m;
}

double Field::max_imag_physical() const {
    const auto p = physical();
    double m = 0.0;
    for (const auto& z : p) m = std::max(m, std::abs(z.imag()));
    return m;
}

Field Field::real_part() const {
    auto p = physical();
    for (auto& z : p) z = cplx{z.real(), 0.0};
    return from_physical_complex(grid_, p);
}

Field& Field::operator+=(const Field& o) {
    check_same_grid(*this, o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    check_same_grid(*this, o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

Field& Field::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Field product(const Field& a, const Field& b) {
    check_same_grid(a, b);
    auto pa = a.physical();
    if (&a == &b || a.coeffs() == b.coeffs()) {
        for (auto& z : pa) z *= z;
    } else {
        const auto pb = b.physical();
        for (std::size_t j = 0; j < pa.size(); ++j) pa[j] *= pb[j];
    }
    return Field::from_physical_complex(a.grid(), pa).dealias();
}

Field scale_map(const Field& f, double alpha, ScaleDirection dir) {
    if (alpha == 0.0) throw std::invalid_argument("scale_map: alpha must be nonzero");
    double factor = std::cbrt(1.0 / alpha); // x -> alpha^{-1/3} x
    if (dir == ScaleDirection::Inverse) factor = 1.0 / factor;
    if (factor == 1.0) return f;
    const auto& x = f.grid()->x();
    std::vector<cplx> samples(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) samples[j] = f.eval(factor * x[j]);
    return Field::from_physical_complex(f.grid(), samples);
}

Field combine(const std::vector<Field>& fields, const std::vector<double>& weights) {
    if (fields.empty() || fields.size() != weights.size())
        throw std::invalid_argument("combine: need matching nonempty fields/weights");
    Field out(fields.front().grid());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        check_same_grid(out, fields[i]);
        Field term = fields[i];
        term *= weights[i];
        out += term;
    }
    return out;
}

} // namespace ckdv
