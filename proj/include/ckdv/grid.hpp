#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ckdv {

// Periodic Fourier grid on [-L/2, L/2) with N collocation points.
// Wavenumbers are integer multiples of 2*pi/L in standard FFT order
// (0, 1, ..., N/2-1, -N/2, ..., -1).
class SpectralGrid {
  public:
    SpectralGrid(std::size_t n, double length) : n_(n), length_(length) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw std::invalid_argument("SpectralGrid: N must be a power of two, N >= 16");
        if (!(length > 0.0))
            throw std::invalid_argument("SpectralGrid: L must be positive");
        const double dx = length_ / static_cast<double>(n_);
        const double dxi = 2.0 * M_PI / length_;
        x_.resize(n_);
        xi_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j)
            x_[j] = -0.5 * length_ + dx * static_cast<double>(j);
        for (std::size_t k = 0; k < n_; ++k) {
            const auto m = (k < n_ / 2) ? static_cast<long>(k)
                                        : static_cast<long>(k) - static_cast<long>(n_);
            xi_[k] = dxi * static_cast<double>(m);
        }
    }

    std::size_t size() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / static_cast<double>(n_); }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& xi() const { return xi_; }
    double xi_max() const { return 2.0 * M_PI / length_ * static_cast<double>(n_ / 2); }
    // 2/3-rule cutoff used by dealias().
    double xi_cut() const { return (2.0 / 3.0) * xi_max(); }
    std::size_t nyquist_index() const { return n_ / 2; }

    bool operator==(const SpectralGrid& o) const {
        return n_ == o.n_ && length_ == o.length_;
    }

  private:
    std::size_t n_;
    double length_;
    std::vector<double> x_;
    std::vector<double> xi_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

inline GridPtr make_grid(std::size_t n, double length) {
    return std::make_shared<const SpectralGrid>(n, length);
}

} // namespace ckdv
