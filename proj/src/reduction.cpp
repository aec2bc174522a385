#include "ckdv/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace ckdv {

Mat2 Mat2::inverse() const {
    const double d = det();
    if (d == 0.0) throw std::domain_error("Mat2: singular matrix");
    Mat2 r;
    r.m = {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
    return r;
}

Mat2 Mat2::mul(const Mat2& o) const {
    Mat2 r;
    r.m = {m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
           m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]};
    return r;
}

Mat2 dispersion_matrix(const OriginalCoefficients& oc) {
    Mat2 a;
    a.m = {1.0, oc.a3, oc.a3 * oc.b2 / oc.b1, 1.0 / oc.b1};
    return a;
}

std::vector<std::string> validate(const OriginalCoefficients& oc) {
    std::vector<std::string> violations;
    if (!(oc.b1 > 0.0)) violations.push_back("b1>0");
    if (!(oc.b2 > 0.0)) violations.push_back("b2>0");
    const double d = oc.a3 * oc.a3 * oc.b2 - 1.0;
    if (d == 0.0) {
        violations.push_back("a3^2*b2 != 1");
    } else if (std::abs(d) < 1e-9) {
        // alpha_minus -> 0 makes the x-rescaling singular
        violations.push_back("ill-conditioned reduction");
    }
    return violations;
}

bool is_valid(const OriginalCoefficients& oc) { return validate(oc).empty(); }

namespace {

void require_valid(const OriginalCoefficients& oc) {
    const auto v = validate(oc);
    if (!v.empty()) {
        std::string msg = "invalid coefficients:";
        for (const auto& s : v) msg += " [" + s + "]";
        throw std::invalid_argument(msg);
    }
}

// Unit eigenvector of A for eigenvalue alpha, a3 != 0. Sign convention:
// positive first component, ties broken by positive second component.
std::array<double, 2> eigenvector(const OriginalCoefficients& oc, double alpha) {
    double w0 = oc.a3;
    double w1 = alpha - 1.0;
    const double n = std::hypot(w0, w1);
    w0 /= n;
    w1 /= n;
    if (w0 < 0.0 || (w0 == 0.0 && w1 < 0.0)) {
        w0 = -w0;
        w1 = -w1;
    }
    return {w0, w1};
}

} // namespace

std::pair<double, double> eigenvalues(const OriginalCoefficients& oc) {
    require_valid(oc);
    const double inv_b1 = 1.0 / oc.b1;
    const double disc =
        std::sqrt((1.0 - inv_b1) * (1.0 - inv_b1) + 4.0 * oc.b2 * oc.a3 * oc.a3 * inv_b1);
    const double alpha_plus = 0.5 * (1.0 + inv_b1 + disc);
    const double alpha_minus = 0.5 * (1.0 + inv_b1 - disc);
    return {alpha_plus, alpha_minus};
}

std::pair<ReducedCoefficients, Diagonalization> reduce(const OriginalCoefficients& oc) {
    require_valid(oc);

    Diagonalization diag;
    Mat2 m, minv;
    if (oc.a3 == 0.0) {
        // No dispersive coupling: the system is already diagonal.
        diag.identity = true;
        diag.alpha_plus = 1.0;
        diag.alpha_minus = 1.0 / oc.b1;
    } else {
        auto [ap, am] = eigenvalues(oc);
        diag.alpha_plus = ap;
        diag.alpha_minus = am;
        const auto wp = eigenvector(oc, ap);
        const auto wm = eigenvector(oc, am);
        m.m = {wp[0], wm[0], wp[1], wm[1]};
        minv = m.inverse();
    }
    diag.basis_matrix = m;
    diag.basis_inverse = minv;

    // Nonlinearity of the original system in the basis (u u_x, v v_x, (uv)_x):
    //   row per equation, after dividing the second equation by b1.
    const double g[2][3] = {
        {1.0, oc.a1, oc.a2},
        {oc.b2 * oc.a2 / oc.b1, 1.0 / oc.b1, oc.b2 * oc.a1 / oc.b1}};

    // Conjugate by the eigenbasis: with (u,v) = M (p,q), each quadratic term
    // stays in the span of (p p_x, q q_x, (pq)_x).
    const double m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const double s[3][3] = {
        {m00 * m00, m01 * m01, m00 * m01},
        {m10 * m10, m11 * m11, m10 * m11},
        {2.0 * m00 * m10, 2.0 * m01 * m11, m00 * m11 + m01 * m10}};

    double h[2][3] = {{0, 0, 0}, {0, 0, 0}};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 3; ++j)
                    h[r][c] += minv(r, i) * g[i][j] * s[j][c];

    // x -> alpha^{-1/3} x per equation scales each nonlinear term by alpha^{-1/3}.
    const double lp = std::cbrt(diag.alpha_plus);
    const double lm = std::cbrt(diag.alpha_minus);
    ReducedCoefficients rc;
    rc.a = h[0][0] / lp;
    rc.b = h[0][1] / lp;
    rc.c = h[0][2] / lp;
    rc.a_tilde = h[1][0] / lm;
    rc.b_tilde = h[1][1] / lm;
    rc.c_tilde = h[1][2] / lm;
    return {rc, diag};
}

} // namespace ckdv
