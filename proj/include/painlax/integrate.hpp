#pragma once

// Adaptive Dormand-Prince 5(4) integration of complex ODE systems along
// polyline paths in the complex plane, plus parallel transport of matrix
// frames and central finite differences.
//
// Step-size control: PI controller, safety factor 0.9, growth factor
// clamped to [0.2, 5.0].

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "painlax/errors.hpp"
#include "painlax/numkit.hpp"
#include "painlax/path.hpp"

namespace painlax {

using OdeRhs = std::function<VecX(cplx, const VecX&)>;
using MatrixField = std::function<MatX(cplx)>;

namespace detail {

struct Dopri5 {
    // Dormand-Prince coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // difference between the 5th and embedded 4th order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

inline void guard_state(const VecX& y, double pole_guard) {
    for (int i = 0; i < y.size(); ++i) {
        cplx v = y(i);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::NonFiniteRhs, "integrate_path: state became non-finite");
        if (std::abs(v) > pole_guard)
            fail(ErrorCode::PoleEncountered, "integrate_path: state magnitude exceeded pole_guard");
    }
}

inline void guard_rhs(const VecX& dy) {
    for (int i = 0; i < dy.size(); ++i)
        if (!std::isfinite(dy(i).real()) || !std::isfinite(dy(i).imag()))
            fail(ErrorCode::NonFiniteRhs, "integrate_path: right-hand side is non-finite");
}

}  // namespace detail

// Integrate dy/ds = rhs(z(s), y) along the path with adaptive 5(4) stepping.
// Samples are appended at every accepted step.
inline Trajectory integrate_path(const OdeRhs& rhs, const VecX& initial, const ComplexPath& path,
                                 const IntegratorConfig& cfg) {
    using D = detail::Dopri5;
    path.validate();
    cfg.validate();

    Trajectory traj;
    VecX y = initial;
    detail::guard_state(y, cfg.pole_guard);
    double arclen = 0.0;
    traj.samples.push_back({path.vertices.front(), 0.0, y});

    const double total = path.length();
    double h = std::min(cfg.max_step, total / 100.0);
    double err_old = 1.0;
    long steps = 0;

    VecX k1 = rhs(path.vertices.front(), y);
    detail::guard_rhs(k1);

    for (size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
        const cplx za = path.vertices[seg], zb = path.vertices[seg + 1];
        const double L = std::abs(zb - za);
        const cplx dir = (zb - za) / L;  // unit-speed direction
        double s = 0.0;
        // rhs w.r.t. arclength within the segment
        auto f = [&](double u, const VecX& yy) -> VecX {
            VecX g = rhs(za + dir * u, yy);
            detail::guard_rhs(g);
            return dir * g;
        };
        k1 = f(s, y);
        while (s < L) {
            if (++steps > cfg.max_steps)
                fail(ErrorCode::StepLimitExceeded, "integrate_path: step limit exceeded");
            h = std::min({h, cfg.max_step, L - s});
            if (h < 1e-14 * std::max(1.0, total))
                fail(ErrorCode::StepLimitExceeded, "integrate_path: step size underflow");

            VecX k2 = f(s + D::c2 * h, y + h * (D::a21 * k1));
            VecX k3 = f(s + D::c3 * h, y + h * (D::a31 * k1 + D::a32 * k2));
            VecX k4 = f(s + D::c4 * h, y + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
            VecX k5 = f(s + D::c5 * h, y + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4));
            VecX k6 = f(s + h, y + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5));
            VecX y5 = y + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
            VecX k7 = f(s + h, y5);
            VecX errv = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);

            double err = 0.0;
            for (int i = 0; i < y.size(); ++i) {
                double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
                double e = std::abs(errv(i)) / sc;
                err += e * e;
            }
            err = std::sqrt(err / std::max<int>(1, static_cast<int>(y.size())));

            if (err <= 1.0) {
                s += h;
                arclen += h;
                y = y5;
                k1 = k7;  // first-same-as-last
                detail::guard_state(y, cfg.pole_guard);
                traj.samples.push_back({za + dir * s, arclen, y});
                ++traj.accepted_steps;
                double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2) * std::pow(err_old, 0.08);
                h *= std::min(5.0, std::max(0.2, fac));
                err_old = std::max(err, 1e-4);
            } else {
                ++traj.rejected_steps;
                double fac = 0.9 * std::pow(err, -0.2);
                h *= std::min(1.0, std::max(0.2, fac));
            }
        }
    }
    return traj;
}

// Transport a square frame F along the path under dF/dz = A(z) F.  For a
// closed path the result is frame * (monodromy factor): with the identity
// frame the returned matrix is the monodromy in the base-point frame.
inline MatX linear_transport(const MatrixField& coeff, const MatX& frame, const ComplexPath& path,
                             const IntegratorConfig& cfg) {
    const int n = static_cast<int>(frame.rows());
    VecX y(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) y(j * n + i) = frame(i, j);
    auto rhs = [&, n](cplx z, const VecX& v) -> VecX {
        MatX F(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) F(i, j) = v(j * n + i);
        MatX dF = coeff(z) * F;
        VecX out(n * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out(j * n + i) = dF(i, j);
        return out;
    };
    Trajectory traj = integrate_path(rhs, y, path, cfg);
    MatX out(n, n);
    const VecX& v = traj.back().state;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out(i, j) = v(j * n + i);
    return out;
}

// Central finite differences on >= 5 equally spaced samples.  Order 1 uses
// the five-point O(h^4) stencil, order 2 the three-point O(h^2) stencil,
// both evaluated at the middle sample.
inline cplx finite_difference_derivative(const std::vector<std::pair<cplx, cplx>>& samples, int order) {
    const size_t n = samples.size();
    if (n < 5) fail(ErrorCode::InsufficientSamples, "finite_difference_derivative: need at least 5 samples");
    if (n % 2 == 0)
        fail(ErrorCode::InsufficientSamples, "finite_difference_derivative: need an odd sample count");
    const cplx h = samples[1].first - samples[0].first;
    double hs = std::abs(h);
    if (hs == 0.0) fail(ErrorCode::NonUniformSpacing, "finite_difference_derivative: zero spacing");
    // uniform to 1e-12 relative to the abscissa scale (rounding of the
    // sample points themselves is tolerated)
    double scale = hs;
    for (const auto& s : samples) scale = std::max(scale, std::abs(s.first));
    for (size_t k = 0; k + 1 < n; ++k) {
        cplx dk = samples[k + 1].first - samples[k].first;
        if (std::abs(dk - h) > 1e-12 * scale)
            fail(ErrorCode::NonUniformSpacing, "finite_difference_derivative: spacing non-uniform beyond 1e-12");
    }
    const size_t c = n / 2;
    auto fv = [&](long off) { return samples[c + off].second; };
    if (order == 1) {
        return (-fv(2) + 8.0 * fv(1) - 8.0 * fv(-1) + fv(-2)) / (12.0 * h);
    } else if (order == 2) {
        return (fv(1) - 2.0 * fv(0) + fv(-1)) / (h * h);
    }
    fail(ErrorCode::ConfigError, "finite_difference_derivative: order must be 1 or 2");
}

// O(h^4) five-point second derivative, used where tighter oracles are needed.
inline cplx finite_difference_second4(const std::vector<std::pair<cplx, cplx>>& samples) {
    const size_t n = samples.size();
    if (n < 5) fail(ErrorCode::InsufficientSamples, "finite_difference_second4: need at least 5 samples");
    if (n % 2 == 0) fail(ErrorCode::InsufficientSamples, "finite_difference_second4: need an odd sample count");
    const cplx h = samples[1].first - samples[0].first;
    const size_t c = n / 2;
    auto fv = [&](long off) { return samples[c + off].second; };
    return (-fv(2) + 16.0 * fv(1) - 30.0 * fv(0) + 16.0 * fv(-1) - fv(-2)) / (12.0 * h * h);
}

}  // namespace painlax
