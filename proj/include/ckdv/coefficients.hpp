#pragma once

#include <array>
#include <string>
#include <vector>

namespace ckdv {

// Constants of the coupled system
//   u_t + u_xxx + a3 v_xxx + u u_x + a1 v v_x + a2 (uv)_x = 0
//   b1 v_t + v_xxx + b2 a3 u_xxx + v v_x + b2 a2 u u_x + b2 a1 (uv)_x = 0
struct OriginalCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double b1 = 1.0;
    double b2 = 1.0;
};

// Constants of the reduced system
//   u_t + u_xxx + a u u_x + b v v_x + c (uv)_x = 0
//   v_t + v_xxx + at u u_x + bt v v_x + ct (uv)_x = 0
struct ReducedCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double a_tilde = 0.0;
    double b_tilde = 0.0;
    double c_tilde = 0.0;

    bool all_zero() const {
        return a == 0.0 && b == 0.0 && c == 0.0 && a_tilde == 0.0 && b_tilde == 0.0 &&
               c_tilde == 0.0;
    }
};

struct Mat2 {
    // row-major [[m00, m01], [m10, m11]]
    std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};
    double operator()(int r, int c) const { return m[2 * r + c]; }
    double& operator()(int r, int c) { return m[2 * r + c]; }
    Mat2 inverse() const;
    Mat2 mul(const Mat2& o) const;
    double det() const { return m[0] * m[3] - m[1] * m[2]; }
};

struct Diagonalization {
    double alpha_plus = 1.0;
    double alpha_minus = 1.0;
    Mat2 basis_matrix;  // columns are eigenvectors of A
    Mat2 basis_inverse;
    bool identity = false; // a3 == 0 path
};

// The dispersion matrix A of the associated linear system W_t + A W_xxx = 0.
Mat2 dispersion_matrix(const OriginalCoefficients& oc);

// Standing-assumption check. An empty list means the coefficients are valid.
std::vector<std::string> validate(const OriginalCoefficients& oc);
bool is_valid(const OriginalCoefficients& oc);

// Closed-form eigenvalues of A, returned as (alpha_plus, alpha_minus).
std::pair<double, double> eigenvalues(const OriginalCoefficients& oc);

// Eigenbasis conjugation of the nonlinear terms followed by the per-equation
// x-rescaling that normalizes both dispersion coefficients to one.
std::pair<ReducedCoefficients, Diagonalization> reduce(const OriginalCoefficients& oc);

} // namespace ckdv
