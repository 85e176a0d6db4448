#pragma once

// Bidirectional maps between the coupled amplitude sextuples and the
// Painleve coordinate charts, the gauge-factor (f, g) flows, the
// correspondences to the three-wave similarity amplitudes, assembly of
// full three-wave fields, and physical-case reality verification.

#include <functional>
#include <optional>
#include <variant>

#include "painlax/integrate.hpp"
#include "painlax/systems.hpp"

namespace painlax {

template <class S>
struct GaugeT {
    S f{}, g{};
};
using GaugeFactors = GaugeT<cplx>;

template <class S>
struct GaugeDeriv {
    S dlogf{}, dlogg{};
};

// ---------------------------------------------------------------------------
// coordinates from amplitudes
// ---------------------------------------------------------------------------

template <class S>
CoordT<S> coords_from_w_p5(const WaveT<S>& s, const P5Monodromy& p) {
    S prod22 = s.w[1] * s.ws[1];
    cplx half = (p.theta0 + p.theta1 - p.theta_inf) / 2.0;
    S denom = (prod22 - half) * s.w[0] * s.w[1];
    if (std::abs(value_of(s.w[0] * s.w[1])) == 0.0)
        fail(ErrorCode::SingularParametrization, "coords_from_w_p5: w1 w2 = 0");
    if (std::abs(value_of(prod22 - half)) == 0.0)
        fail(ErrorCode::SingularParametrization,
             "coords_from_w_p5: w2*ws2 = (theta0+theta1-theta_inf)/2");
    CoordT<S> c;
    c.variant = CoordVariant::C40_P5;
    c.y = prod22 * (s.ws[2] + s.w[0] * s.w[1]) / denom;
    c.z = prod22 - p.theta0;
    c.u = -s.w[0] / s.ws[1];
    return c;
}

template <class S>
CoordT<S> coords_from_w_p4(const WaveT<S>& s) {
    if (std::abs(value_of(s.ws[2])) == 0.0)
        fail(ErrorCode::SingularParametrization, "coords_from_w_p4: ws3 = 0");
    CoordT<S> c;
    c.variant = CoordVariant::YZ_P4;
    c.y = -2.0 * s.w[0] * s.w[1] / s.ws[2];
    c.z = s.w[0] * s.ws[0];
    return c;
}

template <class S>
CoordT<S> coords_from_w_p3(const WaveT<S>& s) {
    if (std::abs(value_of(s.t * s.w[0] * s.w[1])) == 0.0)
        fail(ErrorCode::SingularParametrization, "coords_from_w_p3: t w1 w2 = 0");
    CoordT<S> c;
    c.variant = CoordVariant::YZW_P3;
    c.y = s.ws[2] / (s.t * s.w[0] * s.w[1]);
    c.z = s.t * s.w[0] * s.ws[0];
    c.w = s.w[0] * s.w[1];
    return c;
}

// ---------------------------------------------------------------------------
// amplitudes from coordinates
// ---------------------------------------------------------------------------

template <class S>
WaveT<S> w_from_coords_p5(const CoordT<S>& c, const GaugeT<S>& gauge, const P5Monodromy& p,
                          const S& t) {
    const cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    const cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    if (std::abs(value_of(c.z)) == 0.0 || std::abs(value_of(c.z + p.theta0)) == 0.0 ||
        std::abs(value_of(c.y)) == 0.0)
        fail(ErrorCode::SingularParametrization, "w_from_coords_p5: z, z+theta0 and y must be nonzero");
    const S& f = gauge.f;
    const S& g = gauge.g;
    WaveT<S> s;
    s.t = t;
    s.w[0] = -f * c.z * (c.z + p.theta0);
    s.w[1] = 1.0 / (g * c.z);
    s.w[2] = g / f * ((c.z + cp) / c.y - c.z);
    s.ws[0] = 1.0 / (f * (c.z + p.theta0));
    s.ws[1] = g * c.z * (c.z + p.theta0);
    s.ws[2] = -f / g * (c.y * (c.z + cm) - (c.z + p.theta0));
    return s;
}

template <class S>
WaveT<S> w_from_coords_p4(const CoordT<S>& c, const GaugeT<S>& gauge, const P4Monodromy& p,
                          const S& tau) {
    const cplx I(0, 1);
    if (std::abs(value_of(c.y)) == 0.0 || std::abs(value_of(c.z)) == 0.0)
        fail(ErrorCode::SingularParametrization, "w_from_coords_p4: y and z must be nonzero");
    const S& f = gauge.f;
    const S& g = gauge.g;
    WaveT<S> s;
    s.t = tau;
    s.w[0] = -f * c.y * c.z / 2.0;
    s.w[1] = 1.0 / (g * c.z);
    s.w[2] = -2.0 * g / f * (c.z - I * p.theta0 - I * p.theta_inf);
    s.ws[0] = -2.0 / (f * c.y);
    s.ws[1] = g * c.z * (c.z - 2.0 * I * p.theta0);
    s.ws[2] = f / g;
    return s;
}

template <class S>
WaveT<S> w_from_coords_p3(const CoordT<S>& c, const GaugeT<S>& gauge, const P3Monodromy& p,
                          const S& t) {
    S czt = p.c1 * t - c.z;
    if (std::abs(value_of(c.z)) == 0.0 || std::abs(value_of(czt)) == 0.0)
        fail(ErrorCode::SingularParametrization, "w_from_coords_p3: z and c1 t - z must be nonzero");
    const S& f = gauge.f;
    const S& g = gauge.g;
    WaveT<S> s;
    s.t = t;
    s.w[0] = c.z * f / czt;
    s.w[1] = g * czt / c.z;
    s.w[2] = (c.y * c.z * czt - p.theta_inf * c.z + (p.theta0 + p.c1 * p.theta_inf) / 2.0 * t) /
             (t * f * g);
    s.ws[0] = czt / (t * f);
    s.ws[1] = c.z / (t * g);
    s.ws[2] = t * f * g * c.y;
    return s;
}

// sixth Painleve amplitudes from (y, y') and the gauge pair
template <class S>
WaveT<S> w_from_coords_p6(const CoordT<S>& c, const GaugeT<S>& gauge, const P6Monodromy& p,
                          const S& t) {
    const cplx h1 = p.theta1, h2 = p.theta2, h3 = p.theta3, hi = p.theta_inf;
    const S& y = c.y;
    const S& yp = c.yprime;
    const S& f = gauge.f;
    const S& g = gauge.g;
    S ym1 = y - 1.0, ymt = y - t, tm1 = t - 1.0;
    if (std::abs(value_of(y)) == 0.0 || std::abs(value_of(ym1)) == 0.0 ||
        std::abs(value_of(ymt)) == 0.0)
        fail(ErrorCode::SingularParametrization, "w_from_coords_p6: y in {0,1,t}");
    WaveT<S> s;
    s.t = t;
    s.w[0] = f * ((tm1 * yp - h1 * ym1) / (2.0 * y) + (h3 * tm1 + (hi - 1.0) * ym1) / (2.0 * t));
    s.ws[0] = (-(h3 * y - t * yp) / (2.0 * ym1) + (h1 * t + (hi - 1.0) * y) / (2.0 * tm1)) / f;
    s.w[1] = g / f *
             (-(h2 * y + t * yp) / (2.0 * ymt) - (h1 + hi * y) / (2.0 * tm1) +
              y * ym1 / (2.0 * tm1 * ymt));
    s.ws[1] = f / g *
              ((t * tm1 * yp - h1 * ymt) / (2.0 * y) - (h2 * tm1 - hi * ymt + y - 1.0) / 2.0);
    s.w[2] = (-(h3 * ymt + t * tm1 * yp) / (2.0 * ym1) + (h2 * t - hi * ymt + y) / 2.0) / g;
    s.ws[2] = g * (-(tm1 * yp + h2 * ym1) / (2.0 * ymt) + (h3 - hi * ym1) / (2.0 * t) +
                   y * ym1 / (2.0 * t * ymt));
    return s;
}

// ---------------------------------------------------------------------------
// gauge-factor flows (logarithmic derivatives)
// ---------------------------------------------------------------------------

template <class S>
GaugeDeriv<S> gauge_rhs_p5(const CoordT<S>& c, const P5Monodromy& p, const S& t) {
    const cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    const cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    if (std::abs(value_of(c.z)) == 0.0 || std::abs(value_of(c.z + p.theta0)) == 0.0)
        fail(ErrorCode::SingularEvaluation, "gauge_rhs_p5: z or z+theta0 vanishes");
    S tz1 = t * coordinate_rhs(c, p, t).dz;
    S a = c.y * (c.z + cm) - (c.z + p.theta0);
    S b = (c.z + cp) / c.y - c.z;
    GaugeDeriv<S> d;
    d.dlogf = (-tz1 / (c.z + p.theta0) - tz1 / (2.0 * c.z) + 0.5 * a +
               (c.z + p.theta0) / (2.0 * c.z) * b) /
              t;
    d.dlogg = (-tz1 / c.z - tz1 / (2.0 * (c.z + p.theta0)) -
               c.z / (2.0 * (c.z + p.theta0)) * a - 0.5 * b) /
              t;
    return d;
}

// sigma-form of the same flow; sigma supplied by the caller.  The carrier
// combination consistent with the quartic first integral is
// sigma - (t + theta_inf) sigma' (with sigma' = -z).
template <class S>
GaugeDeriv<S> gauge_rhs_p5_sigma(const CoordT<S>& c, const S& sigma, const P5Monodromy& p,
                                 const S& t) {
    S tz1 = t * coordinate_rhs(c, p, t).dz;
    S carrier = sigma + (t + p.theta_inf) * c.z;
    GaugeDeriv<S> d;
    d.dlogf = (-tz1 / (c.z + p.theta0) - tz1 / (2.0 * c.z) + carrier / (2.0 * c.z)) / t;
    d.dlogg = (-tz1 / c.z - tz1 / (2.0 * (c.z + p.theta0)) - carrier / (2.0 * (c.z + p.theta0))) / t;
    return d;
}

template <class S>
GaugeDeriv<S> gauge_rhs_p4(const CoordT<S>& c, const P4Monodromy& p, const S& tau) {
    const cplx I(0, 1);
    if (std::abs(value_of(c.y)) == 0.0 || std::abs(value_of(c.z)) == 0.0 ||
        std::abs(value_of(c.z - 2.0 * I * p.theta0)) == 0.0)
        fail(ErrorCode::SingularEvaluation, "gauge_rhs_p4: y, z or z-2i theta0 vanishes");
    auto flow = coordinate_rhs(c, p, tau);
    const S& y1 = flow.dy;
    const S& z1 = flow.dz;
    S zm = c.z - I * p.theta0 - I * p.theta_inf;
    GaugeDeriv<S> d;
    d.dlogf = -y1 / c.y - 0.5 * (z1 / c.z - c.y * zm / c.z + 2.0 * (c.z - 2.0 * I * p.theta0) / c.y);
    // the g-flow consistent with the amplitude system (equivalently
    // d log g = -z'/z + 2z/y, rewritten in the bracket shape of the f-flow)
    d.dlogg = -z1 / c.z -
              0.5 * (z1 / (c.z - 2.0 * I * p.theta0) + c.y * zm / (c.z - 2.0 * I * p.theta0) -
                     2.0 * c.z / c.y);
    return d;
}

template <class S>
GaugeDeriv<S> gauge_rhs_p3(const CoordT<S>& c, const P3Monodromy& p, const S& t) {
    S czt = p.c1 * t - c.z;
    if (std::abs(value_of(c.z)) == 0.0 || std::abs(value_of(czt)) == 0.0)
        fail(ErrorCode::SingularEvaluation, "gauge_rhs_p3: z or c1 t - z vanishes");
    S z1 = coordinate_rhs(c, p, t).dz;
    S dlograt = z1 / c.z - (p.c1 - z1) / czt;  // d/dt log(z / (c1 t - z))
    GaugeDeriv<S> d;
    d.dlogf = (2.0 * c.y * czt) / t - dlograt;
    d.dlogg = (-2.0 * c.y * c.z) / t + dlograt;
    return d;
}

template <class S>
GaugeDeriv<S> gauge_rhs_p6(const CoordT<S>& c, const P6Monodromy& p, const S& t) {
    const cplx h1 = p.theta1, h2 = p.theta2, h3 = p.theta3;
    const S& y = c.y;
    const S& yp = c.yprime;
    S ym1 = y - 1.0, ymt = y - t, tm1 = t - 1.0;
    if (std::abs(value_of(y * ym1 * ymt)) == 0.0)
        fail(ErrorCode::SingularEvaluation, "gauge_rhs_p6: y in {0,1,t}");
    GaugeDeriv<S> d;
    d.dlogf = -yp / (2.0 * y * ym1) - (1.0 + h1 - h2 + h3) / (2.0 * t * tm1) +
              h1 / (2.0 * tm1 * y) + h3 / (2.0 * t * ym1);
    d.dlogg = (yp - 1.0) / (2.0 * ymt) - yp / (2.0 * ym1) + (1.0 - h1 + h2 - h3) / (2.0 * t) +
              h2 * (1.0 / tm1 + 1.0 / (2.0 * ymt)) +
              h3 * (-1.0 / (t * tm1) + 1.0 / (2.0 * t * ym1));
    return d;
}

// quadrature constructor for the gauge pair: trapezoid integration of the
// logarithmic-derivative callbacks from the anchor t0 (where f = f0, g = g0)
// to t, at caller-chosen resolution.  All three constants (t0, f0, g0) stay
// exposed; none is collapsed into the others.
inline GaugeFactors gauge_from_quadrature(const std::function<GaugeDeriv<cplx>(cplx)>& dlog,
                                          cplx t0, cplx t, int steps, cplx f0, cplx g0) {
    if (steps < 1) fail(ErrorCode::ConfigError, "gauge_from_quadrature: steps must be positive");
    cplx h = (t - t0) / double(steps);
    cplx logf = std::log(f0), logg = std::log(g0);
    GaugeDeriv<cplx> prev = dlog(t0);
    for (int k = 1; k <= steps; ++k) {
        GaugeDeriv<cplx> cur = dlog(t0 + double(k) * h);
        logf += 0.5 * h * (prev.dlogf + cur.dlogf);
        logg += 0.5 * h * (prev.dlogg + cur.dlogg);
        prev = cur;
    }
    return {std::exp(logf), std::exp(logg)};
}

// ---------------------------------------------------------------------------
// correspondences between w-amplitudes and three-wave v-amplitudes
// ---------------------------------------------------------------------------

// fifth Painleve: the similarity variable is tau = i t
template <class S>
WaveT<S> p5_v_from_w(const WaveT<S>& s, cplx theta_inf) {
    const cplx I(0, 1);
    const cplx irho = -theta_inf;  // i*rho with rho = i*theta_inf
    S tau = I * s.t;
    WaveT<S> v;
    v.t = tau;
    v.w[0] = -s.w[0];
    v.w[1] = -I * s.w[1];
    v.w[2] = I * cpow(tau, -irho) * jet_exp(-I * tau) * s.w[2];
    v.ws[0] = I * s.ws[0];
    v.ws[1] = s.ws[1];
    v.ws[2] = I * cpow(tau, irho) * jet_exp(I * tau) * s.ws[2];
    return v;
}

template <class S>
WaveT<S> p5_w_from_v(const WaveT<S>& v, cplx theta_inf) {
    const cplx I(0, 1);
    const cplx irho = -theta_inf;
    const S& tau = v.t;
    WaveT<S> s;
    s.t = -I * tau;
    s.w[0] = -v.w[0];
    s.w[1] = I * v.w[1];
    s.w[2] = -I * cpow(tau, irho) * jet_exp(I * tau) * v.w[2];
    s.ws[0] = -I * v.ws[0];
    s.ws[1] = v.ws[1];
    s.ws[2] = -I * cpow(tau, -irho) * jet_exp(-I * tau) * v.ws[2];
    return s;
}

template <class S>
WaveT<S> p4_v_from_w(const WaveT<S>& s, cplx rho) {
    const cplx I(0, 1);
    S phase = (s.t + rho) * (s.t + rho);
    WaveT<S> v;
    v.t = s.t;
    v.w[0] = 2.0 * I * s.w[0];
    v.w[1] = -I * s.w[1];
    v.w[2] = -I * jet_exp(-I * phase) * s.w[2];
    v.ws[0] = -I * s.ws[0];
    v.ws[1] = 2.0 * I * s.ws[1];
    v.ws[2] = -I * jet_exp(I * phase) * s.ws[2];
    return v;
}

template <class S>
WaveT<S> p4_w_from_v(const WaveT<S>& v, cplx rho) {
    const cplx I(0, 1);
    S phase = (v.t + rho) * (v.t + rho);
    WaveT<S> s;
    s.t = v.t;
    s.w[0] = -I * v.w[0] / 2.0;
    s.w[1] = I * v.w[1];
    s.w[2] = I * jet_exp(I * phase) * v.w[2];
    s.ws[0] = I * v.ws[0];
    s.ws[1] = -I * v.ws[1] / 2.0;
    s.ws[2] = I * jet_exp(-I * phase) * v.ws[2];
    return s;
}

// third Painleve: W-state lives at t = sqrt(tau)
template <class S>
WaveT<S> p3_v_from_w(const WaveT<S>& s, cplx theta_inf) {
    const cplx I(0, 1);
    const cplx two_irho = -2.0 * theta_inf;  // 2 i rho with rho = i theta_inf
    WaveT<S> v;
    v.t = s.t * s.t;
    v.w[0] = -I * s.w[0];
    v.w[1] = -I * s.w[1];
    v.w[2] = -I * cpow(s.t, -two_irho) * s.w[2];
    v.ws[0] = I * s.ws[0];
    v.ws[1] = I * s.ws[1];
    v.ws[2] = I * cpow(s.t, two_irho) * s.ws[2];
    return v;
}

template <class S>
WaveT<S> p3_w_from_v(const WaveT<S>& v, cplx theta_inf) {
    const cplx I(0, 1);
    const cplx two_irho = -2.0 * theta_inf;
    S t = jet_sqrt(v.t);
    WaveT<S> s;
    s.t = t;
    s.w[0] = I * v.w[0];
    s.w[1] = I * v.w[1];
    s.w[2] = I * cpow(t, two_irho) * v.w[2];
    s.ws[0] = -I * v.ws[0];
    s.ws[1] = -I * v.ws[1];
    s.ws[2] = -I * cpow(t, -two_irho) * v.ws[2];
    return s;
}

// sixth Painleve: same deformation variable
template <class S>
WaveT<S> p6_v_from_w(const WaveT<S>& s, const P6Monodromy& p) {
    const cplx I(0, 1);
    const cplx ir2 = p.theta2 - p.theta1, ir3 = p.theta3 - p.theta2;
    const S& t = s.t;
    WaveT<S> v;
    v.t = t;
    v.w[0] = -I * s.w[0];
    v.w[1] = I * cpow(t, -ir2) * s.w[1];
    v.w[2] = -I * cpow(t - 1.0, -ir3) * s.w[2];
    v.ws[0] = -I * s.ws[0];
    v.ws[1] = I * cpow(t, ir2) * s.ws[1];
    v.ws[2] = -I * cpow(t - 1.0, ir3) * s.ws[2];
    return v;
}

template <class S>
WaveT<S> p6_w_from_v(const WaveT<S>& v, const P6Monodromy& p) {
    const cplx I(0, 1);
    const cplx ir2 = p.theta2 - p.theta1, ir3 = p.theta3 - p.theta2;
    const S& t = v.t;
    WaveT<S> s;
    s.t = t;
    s.w[0] = I * v.w[0];
    s.w[1] = -I * cpow(t, ir2) * v.w[1];
    s.w[2] = I * cpow(t - 1.0, ir3) * v.w[2];
    s.ws[0] = I * v.ws[0];
    s.ws[1] = -I * cpow(t, -ir2) * v.ws[1];
    s.ws[2] = I * cpow(t - 1.0, -ir3) * v.ws[2];
    return s;
}

// t-derivative of the sixth Painleve w-amplitudes, routed through the
// v-system so that the amplitude flow is exercised rather than assumed
inline WaveT<cplx> p6_w_rhs(const P6Monodromy& p, const WaveState& s) {
    WaveState v = p6_v_from_w(s, p);
    WaveT<cplx> dv = reduced_rhs_p6(p, v);
    WaveJet vj;
    for (int j = 0; j < 3; ++j) {
        vj.w[j] = jet(v.w[j], dv.w[j]);
        vj.ws[j] = jet(v.ws[j], dv.ws[j]);
    }
    vj.t = seed(v.t);
    WaveJet wj = p6_w_from_v(vj, p);
    WaveT<cplx> d;
    for (int j = 0; j < 3; ++j) {
        d.w[j] = wj.w[j].d;
        d.ws[j] = wj.ws[j].d;
    }
    d.t = 1.0;
    return d;
}

// ---------------------------------------------------------------------------
// similarity fields on (x1, x2, x3)
// ---------------------------------------------------------------------------

using MonodromyVariant = std::variant<P3Monodromy, P4Monodromy, P5Monodromy, P6Monodromy>;

template <class S>
struct AmplitudeTriple {
    std::array<S, 3> u{}, us{};
};

namespace detail {

// throws when principal-branch powers of a product do not factor
inline void check_branch(cplx whole, cplx part1, cplx part2, const char* where) {
    cplx defect = std::log(whole) - std::log(part1) - std::log(part2);
    if (std::abs(defect) > 1e-9)
        fail(ErrorCode::BranchCutCrossing, std::string(where) + ": similarity power crosses a branch cut");
}

}  // namespace detail

class SimilarityField {
  public:
    SimilarityField(PainleveKind kind, MonodromyVariant params, WaveState seed,
                    IntegratorConfig cfg = {})
        : kind_(kind), params_(std::move(params)), seed_(std::move(seed)), cfg_(cfg) {
        cfg_.rel_tol = std::min(cfg_.rel_tol, 1e-12);
        cfg_.abs_tol = std::min(cfg_.abs_tol, 1e-13);
    }

    PainleveKind kind() const { return kind_; }
    const MonodromyVariant& params() const { return params_; }
    const WaveState& seed() const { return seed_; }

    // w-chart amplitudes at deformation parameter t (integrated from the seed)
    WaveState wave_at(cplx t) const {
        if (t == seed_.t) return seed_;
        auto rhs = [this](cplx tt, const VecX& v) {
            WaveState s;
            s.w = {v(0), v(1), v(2)};
            s.ws = {v(3), v(4), v(5)};
            s.t = tt;
            WaveT<cplx> d = this->w_rhs(s);
            VecX out(6);
            out << d.w[0], d.w[1], d.w[2], d.ws[0], d.ws[1], d.ws[2];
            return out;
        };
        VecX v0(6);
        v0 << seed_.w[0], seed_.w[1], seed_.w[2], seed_.ws[0], seed_.ws[1], seed_.ws[2];
        auto traj = integrate_path(rhs, v0, ComplexPath::segment(seed_.t, t), cfg_);
        WaveState s;
        const VecX& v = traj.back().state;
        s.w = {v(0), v(1), v(2)};
        s.ws = {v(3), v(4), v(5)};
        s.t = t;
        return s;
    }

    WaveT<cplx> w_rhs(const WaveState& s) const {
        switch (kind_) {
            case PainleveKind::P3: return reduced_rhs_p3(std::get<P3Monodromy>(params_), s);
            case PainleveKind::P4: return reduced_rhs_p4(std::get<P4Monodromy>(params_), s);
            case PainleveKind::P5: return reduced_rhs_p5(std::get<P5Monodromy>(params_), s);
            case PainleveKind::P6: return p6_w_rhs(std::get<P6Monodromy>(params_), s);
        }
        return {};
    }

    // v-amplitudes with exact tau-derivatives
    WaveT<Jet1> amplitudes(const Jet1& tau) const {
        cplx t = t_of_tau(value_of(tau));
        WaveState s = wave_at(t);
        WaveT<cplx> ds = w_rhs(s);
        Jet1 tj = t_jet_of_tau(tau);
        WaveT<Jet1> sj;
        for (int j = 0; j < 3; ++j) {
            sj.w[j] = jet(s.w[j], ds.w[j] * tj.d);
            sj.ws[j] = jet(s.ws[j], ds.ws[j] * tj.d);
        }
        sj.t = tj;
        switch (kind_) {
            case PainleveKind::P3: return p3_v_from_w(sj, std::get<P3Monodromy>(params_).theta_inf);
            case PainleveKind::P4: return p4_v_from_w(sj, std::get<P4Monodromy>(params_).rho);
            case PainleveKind::P5: return p5_v_from_w(sj, std::get<P5Monodromy>(params_).theta_inf);
            case PainleveKind::P6: return p6_v_from_w(sj, std::get<P6Monodromy>(params_));
        }
        return {};
    }

    cplx tau_of(cplx x1, cplx x2, cplx x3) const {
        switch (kind_) {
            case PainleveKind::P3: return (x1 - x2) * std::exp(x3);
            case PainleveKind::P4: return x1 + x2 + x3;
            case PainleveKind::P5: return (x1 - x2) * x3;
            case PainleveKind::P6: return (x1 - x3) / (x2 - x3);
        }
        return {};
    }

    // assembled wave amplitudes u_j, u_j^* at a space point
    AmplitudeTriple<cplx> evaluate(cplx x1, cplx x2, cplx x3) const {
        std::array<Jet1, 3> x{Jet1(x1), Jet1(x2), Jet1(x3)};
        auto jets = evaluate_jets(x);
        AmplitudeTriple<cplx> out;
        for (int j = 0; j < 3; ++j) {
            out.u[j] = jets.u[j].v;
            out.us[j] = jets.us[j].v;
        }
        return out;
    }

    // amplitudes with derivatives along the seeded coordinate jets
    AmplitudeTriple<Jet1> evaluate_jets(const std::array<Jet1, 3>& x) const {
        const cplx I(0, 1);
        Jet1 tau;
        std::array<Jet1, 3> pref, prefs;
        switch (kind_) {
            case PainleveKind::P6: {
                const auto& p = std::get<P6Monodromy>(params_);
                tau = (x[0] - x[2]) / (x[1] - x[2]);
                detail::check_branch(tau.v, (x[0] - x[2]).v, 1.0 / (x[1] - x[2]).v, "P6 tau");
                detail::check_branch(tau.v - 1.0, (x[0] - x[1]).v, 1.0 / (x[1] - x[2]).v, "P6 tau-1");
                cplx ir1 = I * p.rho1(), ir2 = I * p.rho2(), ir3 = I * p.rho3();
                pref[0] = cpow(x[1] - x[2], -1.0 + ir1);
                pref[1] = cpow(x[0] - x[2], -1.0 + ir2);
                pref[2] = cpow(x[0] - x[1], -1.0 + ir3);
                prefs[0] = cpow(x[1] - x[2], -1.0 - ir1);
                prefs[1] = cpow(x[0] - x[2], -1.0 - ir2);
                prefs[2] = cpow(x[0] - x[1], -1.0 - ir3);
                break;
            }
            case PainleveKind::P5: {
                const auto& p = std::get<P5Monodromy>(params_);
                cplx irho = -p.theta_inf;
                tau = (x[0] - x[1]) * x[2];
                detail::check_branch(tau.v, (x[0] - x[1]).v, x[2].v, "P5 tau");
                pref[0] = jet_exp(-I * x[1] * x[2]) * cpow(x[2], irho / 2.0);
                pref[1] = jet_exp(I * x[2] * x[0]) * cpow(x[2], irho / 2.0);
                pref[2] = cpow(x[0] - x[1], -1.0 + irho);
                prefs[0] = jet_exp(I * x[1] * x[2]) * cpow(x[2], -irho / 2.0);
                prefs[1] = jet_exp(-I * x[2] * x[0]) * cpow(x[2], -irho / 2.0);
                prefs[2] = cpow(x[0] - x[1], -1.0 - irho);
                break;
            }
            case PainleveKind::P4: {
                const auto& p = std::get<P4Monodromy>(params_);
                tau = x[0] + x[1] + x[2];
                Jet1 phi1 = p.rho * x[2] + 0.5 * x[2] * x[2] + 2.0 * x[1] * x[2] + 0.5 * p.rho * p.rho;
                Jet1 phi2 = p.rho * x[2] + 0.5 * x[2] * x[2] + 2.0 * x[2] * x[0] + 0.5 * p.rho * p.rho;
                Jet1 x12 = x[0] + x[1];
                Jet1 phi3 = 2.0 * p.rho * x12 + x12 * x12;
                pref[0] = jet_exp(I * phi1);
                pref[1] = jet_exp(I * phi2);
                pref[2] = jet_exp(I * phi3);
                prefs[0] = jet_exp(-1.0 * I * phi1);
                prefs[1] = jet_exp(-1.0 * I * phi2);
                prefs[2] = jet_exp(-1.0 * I * phi3);
                break;
            }
            case PainleveKind::P3: {
                const auto& p = std::get<P3Monodromy>(params_);
                cplx irho = -p.theta_inf;  // i*rho
                tau = (x[0] - x[1]) * jet_exp(x[2]);
                cplx defect = std::log(tau.v) - std::log((x[0] - x[1]).v) - x[2].v;
                if (std::abs(defect) > 1e-9)
                    fail(ErrorCode::BranchCutCrossing, "P3 tau: similarity power crosses a branch cut");
                Jet1 expf = jet_exp(0.5 * x[2] + 0.5 * irho * x[2]);
                Jet1 expfs = jet_exp(0.5 * x[2] - 0.5 * irho * x[2]);
                pref[0] = expf;
                pref[1] = expf;
                pref[2] = cpow(x[0] - x[1], -1.0 + irho);
                prefs[0] = expfs;
                prefs[1] = expfs;
                prefs[2] = cpow(x[0] - x[1], -1.0 - irho);
                break;
            }
        }
        WaveT<Jet1> v = amplitudes(tau);
        AmplitudeTriple<Jet1> out;
        for (int j = 0; j < 3; ++j) {
            out.u[j] = pref[j] * v.w[j];
            out.us[j] = prefs[j] * v.ws[j];
        }
        return out;
    }

  private:
    cplx t_of_tau(cplx tau) const {
        switch (kind_) {
            case PainleveKind::P3: return std::sqrt(tau);
            case PainleveKind::P4: return tau;
            case PainleveKind::P5: return cplx(0, -1) * tau;
            case PainleveKind::P6: return tau;
        }
        return {};
    }
    Jet1 t_jet_of_tau(const Jet1& tau) const {
        switch (kind_) {
            case PainleveKind::P3: return jet_sqrt(tau);
            case PainleveKind::P4: return tau;
            case PainleveKind::P5: return cplx(0, -1) * tau;
            case PainleveKind::P6: return tau;
        }
        return {};
    }

    PainleveKind kind_;
    MonodromyVariant params_;
    WaveState seed_;
    IntegratorConfig cfg_;
};

// assemble a similarity field from a w-chart seed state
inline SimilarityField similarity_assemble(PainleveKind kind, const WaveState& seed,
                                           const MonodromyVariant& params,
                                           IntegratorConfig cfg = {}) {
    return SimilarityField(kind, params, seed, cfg);
}

struct PdeResiduals {
    std::array<cplx, 3> direct{};     // du_j/dx_j - i u_m^* u_n^*
    std::array<cplx, 3> conjugate{};  // du_j^*/dx_j + i u_m u_n
    double max_abs() const {
        double m = 0.0;
        for (int j = 0; j < 3; ++j)
            m = std::max({m, std::abs(direct[j]), std::abs(conjugate[j])});
        return m;
    }
};

// residuals of the three-wave system at one space point, via the chain rule
inline PdeResiduals pde_residual_3wri(const SimilarityField& field, cplx x1, cplx x2, cplx x3) {
    const cplx I(0, 1);
    PdeResiduals r;
    AmplitudeTriple<cplx> vals = field.evaluate(x1, x2, x3);
    for (int j = 0; j < 3; ++j) {
        std::array<Jet1, 3> x{Jet1(x1), Jet1(x2), Jet1(x3)};
        x[j].d = 1.0;  // differentiate along x_j
        auto jets = field.evaluate_jets(x);
        int m = (j + 1) % 3, n = (j + 2) % 3;
        r.direct[j] = jets.u[j].d - I * vals.us[m] * vals.us[n];
        r.conjugate[j] = jets.us[j].d + I * vals.u[m] * vals.u[n];
    }
    return r;
}

// ---------------------------------------------------------------------------
// physical-case reality verification
// ---------------------------------------------------------------------------

struct RealityConfig {
    double tolerance = 1e-8;
    int samples = 20;
    double tau_begin = 0.0, tau_end = 0.0;  // sampling window (real tau)
    // sixth Painleve physical gauge constants, validated when supplied: a
    // nonzero c1 is admissible only for theta3 = theta1 = 0, a nonzero c2
    // only for theta3 = theta2 = 0
    std::optional<double> p6_c1, p6_c2;
};

struct RealityReport {
    bool passed = true;
    double max_conjugacy_defect = 0.0;
    std::string first_failure;
};

// parameter-level clauses per kind; returns an empty string when satisfied
inline std::string reality_parameter_clause(const MonodromyVariant& params) {
    auto imag_only = [](cplx v, const char* name) -> std::string {
        if (std::abs(v.real()) > 1e-12) return std::string(name) + " must be purely imaginary";
        return {};
    };
    if (std::holds_alternative<P5Monodromy>(params)) {
        const auto& p = std::get<P5Monodromy>(params);
        for (auto [v, n] : {std::pair{p.theta0, "theta0"}, {p.theta1, "theta1"},
                            {p.theta_inf, "theta_inf"}, {p.m, "m"}}) {
            auto s = imag_only(v, n);
            if (!s.empty()) return s;
        }
    } else if (std::holds_alternative<P4Monodromy>(params)) {
        const auto& p = std::get<P4Monodromy>(params);
        if (std::abs(p.rho.imag()) > 1e-12) return "rho must be real";
        for (auto [v, n] : {std::pair{p.theta0, "theta0"}, {p.theta_inf, "theta_inf"}}) {
            auto s = imag_only(v, n);
            if (!s.empty()) return s;
        }
    } else if (std::holds_alternative<P3Monodromy>(params)) {
        const auto& p = std::get<P3Monodromy>(params);
        if (std::abs(p.c1.imag()) > 1e-12) return "c1 must be real";
        for (auto [v, n] : {std::pair{p.theta0, "theta0"}, {p.theta_inf, "theta_inf"}}) {
            auto s = imag_only(v, n);
            if (!s.empty()) return s;
        }
    } else if (std::holds_alternative<P6Monodromy>(params)) {
        const auto& p = std::get<P6Monodromy>(params);
        for (auto [v, n] : {std::pair{p.theta1, "theta1"}, {p.theta2, "theta2"},
                            {p.theta3, "theta3"}}) {
            auto s = imag_only(v, n);
            if (!s.empty()) return s;
        }
        if (std::abs(p.theta_inf.imag()) > 1e-12) return "theta_inf must be real";
    }
    return {};
}

// verifies v_j^* = conj(v_j) along real tau samples, plus the printed
// parameter clauses
inline RealityReport reality_check(const SimilarityField& field, const RealityConfig& cfg,
                                   bool throw_on_failure = false) {
    RealityReport rep;
    std::string clause = reality_parameter_clause(field.params());
    if (clause.empty() && std::holds_alternative<P6Monodromy>(field.params())) {
        const auto& p = std::get<P6Monodromy>(field.params());
        auto vanishes = [](cplx v) { return std::abs(v) < 1e-12; };
        if (cfg.p6_c1 && *cfg.p6_c1 != 0.0 && !(vanishes(p.theta3) && vanishes(p.theta1)))
            clause = "c1 must vanish unless theta3 = theta1 = 0";
        else if (cfg.p6_c2 && *cfg.p6_c2 != 0.0 && !(vanishes(p.theta3) && vanishes(p.theta2)))
            clause = "c2 must vanish unless theta3 = theta2 = 0";
    }
    if (!clause.empty()) {
        rep.passed = false;
        rep.first_failure = clause;
        if (throw_on_failure) fail(ErrorCode::RealityViolated, clause);
        return rep;
    }
    for (int k = 0; k < cfg.samples; ++k) {
        double tau = cfg.tau_begin + (cfg.tau_end - cfg.tau_begin) * k / std::max(1, cfg.samples - 1);
        WaveT<Jet1> v = field.amplitudes(Jet1(cplx(tau)));
        for (int j = 0; j < 3; ++j) {
            double defect = std::abs(v.ws[j].v - std::conj(v.w[j].v));
            rep.max_conjugacy_defect = std::max(rep.max_conjugacy_defect, defect);
            if (defect > cfg.tolerance && rep.first_failure.empty()) {
                rep.passed = false;
                rep.first_failure = "conjugacy defect at tau = " + std::to_string(tau) +
                                    ", component " + std::to_string(j + 1);
            }
        }
    }
    if (!rep.passed && throw_on_failure) fail(ErrorCode::RealityViolated, rep.first_failure);
    return rep;
}

// seed construction for the physical fifth Painleve case through the real
// sigma parametrization; rho0, rho1, rho are the real reduction exponents
struct P5PhysicalSeed {
    WaveState state;  // w-chart amplitudes at t0 = -i tau0
    P5Monodromy params;
    cplx y, z;
    double sigma_ddot = 0.0;
};

inline P5PhysicalSeed p5_physical_seed(double rho0, double rho1, double rho, double sigma0,
                                       double sigma_dot0, double tau0) {
    const cplx I(0, 1);
    P5PhysicalSeed out;
    out.params.theta0 = -I * rho0;
    out.params.theta1 = -I * rho1;
    out.params.theta_inf = -I * rho;
    out.params.m = I * rho / 2.0;

    const double cp = (rho0 + rho1 + rho) / 2.0, cm = (rho0 - rho1 + rho) / 2.0;
    const double C = sigma0 - (tau0 + rho + 2.0 * rho0) * sigma_dot0 - 2.0 * sigma_dot0 * sigma_dot0;
    const double quart =
        4.0 * sigma_dot0 * (sigma_dot0 + rho0) * (sigma_dot0 + cp) * (sigma_dot0 + cm);
    const double disc = quart - C * C;
    if (!(sigma_dot0 > 0.0) || !(sigma_dot0 + rho0 < 0.0))
        fail(ErrorCode::RealityViolated, "p5_physical_seed: need sigma_dot > 0 and sigma_dot + rho0 < 0");
    if (disc < 0.0)
        fail(ErrorCode::RealityViolated, "p5_physical_seed: no real sigma'' branch at this jet");
    out.sigma_ddot = std::sqrt(disc) / tau0;

    out.z = -I * sigma_dot0;
    out.y = (cplx(-C) + I * tau0 * out.sigma_ddot) / (2.0 * sigma_dot0 * (sigma_dot0 + cm));

    GaugeFactors gauge;
    gauge.f = std::sqrt(1.0 / (sigma_dot0 * (sigma_dot0 + rho0) * (sigma_dot0 + rho0)));
    gauge.g = std::sqrt(-1.0 / (sigma_dot0 * sigma_dot0 * (sigma_dot0 + rho0)));

    CoordState c;
    c.variant = CoordVariant::C40_P5;
    c.y = out.y;
    c.z = out.z;
    out.state = w_from_coords_p5(c, gauge, out.params, cplx(-I * tau0));
    return out;
}

}  // namespace painlax
