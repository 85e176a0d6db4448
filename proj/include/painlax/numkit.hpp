#pragma once

// Small dense complex linear algebra: closed-form eigen-decomposition of
// 2x2 and 3x3 matrices and a cancellation-safe quadratic root solver.
//
// Eigenvalue ordering convention: descending real part, ties broken by
// descending imaginary part.  When the caller asserts that one eigenvalue
// is analytically zero (Jordan-form normalizations place it in the last
// slot), pass force_zero_last = true.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <complex>
#include <utility>

#include "painlax/errors.hpp"
#include "painlax/jet.hpp"

namespace painlax {

using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Vec2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline double frob(const MatX& m) { return m.norm(); }

struct QuadraticRoots {
    cplx r1, r2;  // r1 has the larger real part (tie: larger imaginary part)
};

// Roots of a*x^2 + b*x + c = 0 via the sign-matched discriminant form,
// avoiding cancellation between -b and the square root.
inline QuadraticRoots polyroot_quadratic(cplx a, cplx b, cplx c) {
    if (std::abs(a) == 0.0)
        fail(ErrorCode::DegenerateLeadingCoefficient, "polyroot_quadratic: leading coefficient is zero");
    cplx s = std::sqrt(b * b - 4.0 * a * c);
    if (std::real(std::conj(b) * s) < 0.0) s = -s;
    cplx q = -0.5 * (b + s);
    cplx r1, r2;
    if (std::abs(q) > 0.0) {
        r1 = q / a;
        r2 = c / q;
    } else {
        r1 = r2 = cplx(0.0);  // b and c both vanish
    }
    auto before = [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    };
    if (!before(r1, r2) && (r1 != r2)) std::swap(r1, r2);
    return {r1, r2};
}

namespace detail {

// roots of x^3 + a x^2 + b x + c (complex Cardano + Newton polish)
inline std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c) {
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    std::array<cplx, 3> t;
    if (std::abs(p) == 0.0 && std::abs(q) == 0.0) {
        t = {cplx(0), cplx(0), cplx(0)};
    } else {
        cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        cplx u3 = -q / 2.0 + disc;
        if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
        cplx u = std::pow(u3, 1.0 / 3.0);
        const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
        for (int k = 0; k < 3; ++k) {
            cplx uk = u * (k == 0 ? cplx(1) : (k == 1 ? omega : omega * omega));
            t[k] = (std::abs(uk) > 0.0) ? uk - p / (3.0 * uk) : cplx(0.0);
        }
    }
    std::array<cplx, 3> r;
    for (int k = 0; k < 3; ++k) {
        cplx x = t[k] - a / 3.0;
        for (int it = 0; it < 3; ++it) {  // Newton polish on the original cubic
            cplx f = ((x + a) * x + b) * x + c;
            cplx df = (3.0 * x + 2.0 * a) * x + b;
            if (std::abs(df) == 0.0) break;
            x -= f / df;
        }
        r[k] = x;
    }
    return r;
}

inline bool eig_before(cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
}

// kernel vector of a (numerically) singular 3x3 matrix
inline Vec3 kernel3(const Mat3& A) {
    // columns of the adjugate lie in the kernel when rank(A) = 2
    Mat3 adj;
    adj << A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1), A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2),
        A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1), A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2),
        A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0), A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2),
        A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0), A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1),
        A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    int best = 0;
    double bn = -1.0;
    for (int j = 0; j < 3; ++j) {
        double n = adj.col(j).norm();
        if (n > bn) { bn = n; best = j; }
    }
    if (bn > 1e-14 * (1.0 + A.norm() * A.norm())) return adj.col(best);
    // rank <= 1: any vector annihilated by the largest row (bilinear orthogonality)
    int r = 0;
    double rn = -1.0;
    for (int i = 0; i < 3; ++i)
        if (A.row(i).norm() > rn) { rn = A.row(i).norm(); r = i; }
    Vec3 row = A.row(r).transpose();
    auto cross_nc = [](const Vec3& x, const Vec3& y) {  // plain, non-conjugated cross product
        return Vec3(x(1) * y(2) - x(2) * y(1), x(2) * y(0) - x(0) * y(2), x(0) * y(1) - x(1) * y(0));
    };
    Vec3 c1 = cross_nc(row, Vec3::Unit((r + 1) % 3)), c2 = cross_nc(row, Vec3::Unit((r + 2) % 3));
    return (c1.norm() > c2.norm()) ? c1 : c2;
}

inline void normalize_max_entry(VecX& v) {
    int idx = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > best) { best = std::abs(v(i)); idx = i; }
    if (best > 0.0) v /= v(idx);
}

}  // namespace detail

struct EigResult {
    VecX values;   // sorted per the ordering convention
    MatX vectors;  // columns match values, each scaled to unit max-entry
    double condition = 0.0;
};

// Closed-form eigen-decomposition of a 2x2 or 3x3 complex matrix.
// Throws DefectiveMatrix when the eigenvector matrix condition exceeds 1e12.
inline EigResult eig_small(const MatX& M, bool force_zero_last = false) {
    const int n = static_cast<int>(M.rows());
    EigResult out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    if (n == 2) {
        cplx tr = M(0, 0) + M(1, 1);
        cplx det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        QuadraticRoots r = polyroot_quadratic(1.0, -tr, det);
        out.values << r.r1, r.r2;
    } else if (n == 3) {
        cplx tr = M.trace();
        cplx tr2 = (M * M).trace();
        auto roots = detail::cubic_roots(-tr, 0.5 * (tr * tr - tr2), -M.determinant());
        for (int k = 0; k < 3; ++k) out.values(k) = roots[k];
    } else {
        fail(ErrorCode::SingularEvaluation, "eig_small: only 2x2 and 3x3 supported");
    }
    std::sort(out.values.data(), out.values.data() + n, detail::eig_before);
    if (force_zero_last) {
        int zi = 0;
        double zn = std::abs(out.values(0));
        for (int i = 1; i < n; ++i)
            if (std::abs(out.values(i)) < zn) { zn = std::abs(out.values(i)); zi = i; }
        cplx zval = out.values(zi);
        for (int i = zi; i + 1 < n; ++i) out.values(i) = out.values(i + 1);
        out.values(n - 1) = zval;
    }
    for (int k = 0; k < n; ++k) {
        VecX v;
        cplx lam = out.values(k);
        if (n == 2) {
            Vec2 v1(M(0, 1), lam - M(0, 0)), v2(lam - M(1, 1), M(1, 0));
            v = (v1.norm() >= v2.norm()) ? VecX(v1) : VecX(v2);
            if (v.norm() == 0.0) v = VecX(Vec2::Unit(k));
        } else {
            v = detail::kernel3(M - lam * Mat3::Identity());
            if (v.norm() == 0.0) v = VecX(Vec3::Unit(k));
        }
        detail::normalize_max_entry(v);
        out.vectors.col(k) = v;
    }
    Eigen::FullPivLU<MatX> lu(out.vectors);
    if (!lu.isInvertible()) fail(ErrorCode::DefectiveMatrix, "eig_small: eigenvector matrix is singular");
    out.condition = out.vectors.norm() * lu.inverse().norm();
    if (out.condition > 1e12)
        fail(ErrorCode::DefectiveMatrix, "eig_small: eigenvector matrix condition exceeds 1e12");
    return out;
}

}  // namespace painlax
