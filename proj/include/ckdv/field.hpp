#pragma once

#include "ckdv/grid.hpp"

#include <complex>
#include <vector>

namespace ckdv {

using cplx = std::complex<double>;

// A field on a periodic grid, stored as Fourier coefficients u_hat[k] with
//   u(x) = sum_k u_hat[k] e^{i xi_k x},   x the true coordinate on [-L/2, L/2).
// With this normalization u_hat[0] is the spatial mean, so the mass functional
// is L * u_hat[0], and Parseval reads  int |u|^2 dx = L * sum_k |u_hat[k]|^2.
class Field {
  public:
    explicit Field(GridPtr grid);
    Field(GridPtr grid, std::vector<cplx> coeffs);

    static Field from_physical(GridPtr grid, const std::vector<double>& samples);
    static Field from_physical_complex(GridPtr grid, const std::vector<cplx>& samples);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::vector<cplx>& coeffs() { return coeffs_; }

    std::vector<cplx> physical() const;
    // Real part of the physical samples (fields representing u or v are real).
    std::vector<double> physical_real() const;

    // Spectral evaluation of u(x) at an arbitrary point; O(N).
    cplx eval(double x) const;

    Field derivative(unsigned order) const;
    Field dealias() const;
    Field airy_propagate(double t) const;
    double sobolev_norm(double s) const;
    double l2_norm() const { return sobolev_norm(0.0); }
    double linf_norm() const;
    double max_imag_physical() const;

    // Drops any nonzero imaginary part in physical space.
    Field real_part() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }

  private:
    GridPtr grid_;
    std::vector<cplx> coeffs_;
};

// Pointwise product computed in physical space, dealiased (2/3 rule).
Field product(const Field& a, const Field& b);

// Resampling under x -> alpha^{-1/3} x (spectral interpolation).
enum class ScaleDirection { Forward, Inverse };
Field scale_map(const Field& f, double alpha, ScaleDirection dir);

// Weighted sum; all fields must share a grid.
Field combine(const std::vector<Field>& fields, const std::vector<double>& weights);

} // namespace ckdv
