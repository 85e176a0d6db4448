#pragma once

// The nonlinear layer: canonical Painleve III-VI residuals, the reduced
// coupled amplitude systems and their first integrals, the coordinate-level
// systems in the Jimbo-Miwa style variables, and the sigma (SD) functions.
//
// Formulas are templated on the scalar so that Jet arguments propagate
// analytic derivatives through every map.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "painlax/errors.hpp"
#include "painlax/jet.hpp"

namespace painlax {

enum class PainleveKind { P3, P4, P5, P6 };

inline const char* kind_name(PainleveKind k) {
    switch (k) {
        case PainleveKind::P3: return "P3";
        case PainleveKind::P4: return "P4";
        case PainleveKind::P5: return "P5";
        case PainleveKind::P6: return "P6";
    }
    return "?";
}

struct PainleveCoefficients {
    cplx alpha{}, beta{}, gamma{}, delta{};
};

// ---------------------------------------------------------------------------
// formal monodromies / reduction parameters per equation
// ---------------------------------------------------------------------------

struct P5Monodromy {
    cplx theta0{}, theta1{}, theta_inf{};
    cplx m{};  // first integral of the coupled system; mtilde - m = theta_inf
    cplx mtilde() const { return m + theta_inf; }
};

struct P4Monodromy {
    cplx theta0{}, theta_inf{};
    cplx rho{};  // similarity phase parameter
};

struct P3Monodromy {
    cplx theta0{}, theta_inf{};
    cplx c1{};
    cplx rho() const { return cplx(0, 1) * theta_inf; }
};

struct P6Monodromy {
    cplx theta1{}, theta2{}, theta3{}, theta_inf{};
    // reduction exponents; i*rho1 = theta1 - theta3 and cyclic
    cplx rho1() const { return (theta1 - theta3) / cplx(0, 1); }
    cplx rho2() const { return (theta2 - theta1) / cplx(0, 1); }
    cplx rho3() const { return (theta3 - theta2) / cplx(0, 1); }
};

struct SymP4Monodromy {
    cplx v1{1.0}, v2{}, v3{};
    cplx alpha0() const { return 1.0 + v3 - v1; }
    cplx alpha1() const { return v1 - v2; }
    cplx alpha2() const { return v2 - v3; }
};

// ---------------------------------------------------------------------------
// states
// ---------------------------------------------------------------------------

// six coupled amplitudes (w1..w3, conjugate partners) at parameter t
template <class S>
struct WaveT {
    std::array<S, 3> w{}, ws{};
    S t{};
};
using WaveState = WaveT<cplx>;
using WaveJet = WaveT<Jet1>;

enum class CoordVariant { JM_P5, C40_P5, TRUE_JM_P5, YZ_P4, YZW_P3, Z_P3, P6_Y };

template <class S>
struct CoordT {
    CoordVariant variant{CoordVariant::C40_P5};
    S y{}, z{}, u{};
    S w{};       // auxiliary product variable of the third Painleve chart
    S yprime{};  // slope slot for second-order charts
};
using CoordState = CoordT<cplx>;
using CoordJet = CoordT<Jet1>;

template <class S>
struct CoordDeriv {
    S dy{}, dz{}, dlogu{}, dlogw{}, dslope{};
};

// ---------------------------------------------------------------------------
// canonical Painleve residuals
// ---------------------------------------------------------------------------

template <class S>
S painleve_rhs(PainleveKind kind, const PainleveCoefficients& c, const S& t, const S& y, const S& y1) {
    switch (kind) {
        case PainleveKind::P3:
            return y1 * y1 / y - y1 / t + (c.alpha * y * y + c.beta) / t + c.gamma * y * y * y +
                   c.delta / y;
        case PainleveKind::P4:
            return y1 * y1 / (2.0 * y) + 1.5 * y * y * y + 4.0 * t * y * y +
                   2.0 * (t * t - c.alpha) * y + c.beta / y;
        case PainleveKind::P5: {
            S ym1 = y - 1.0;
            return (1.0 / (2.0 * y) + 1.0 / ym1) * y1 * y1 - y1 / t +
                   ym1 * ym1 / (t * t) * (c.alpha * y + c.beta / y) + c.gamma * y / t +
                   c.delta * y * (y + 1.0) / ym1;
        }
        case PainleveKind::P6: {
            S ym1 = y - 1.0, ymt = y - t, tm1 = t - 1.0;
            return 0.5 * (1.0 / y + 1.0 / ym1 + 1.0 / ymt) * y1 * y1 -
                   (1.0 / t + 1.0 / tm1 + 1.0 / ymt) * y1 +
                   y * ym1 * ymt / (t * t * tm1 * tm1) *
                       (c.alpha + c.beta * t / (y * y) + c.gamma * tm1 / (ym1 * ym1) +
                        c.delta * t * tm1 / (ymt * ymt));
        }
    }
    return S{};
}

inline void check_painleve_point(PainleveKind kind, cplx t, cplx y) {
    if (std::abs(t) == 0.0) fail(ErrorCode::SingularEvaluation, "painleve_residual: t = 0");
    if ((kind == PainleveKind::P3 || kind == PainleveKind::P4) && std::abs(y) == 0.0)
        fail(ErrorCode::SingularEvaluation, "painleve_residual: y = 0");
    if (kind == PainleveKind::P5 && (std::abs(y) == 0.0 || std::abs(y - 1.0) == 0.0))
        fail(ErrorCode::SingularEvaluation, "painleve_residual: y in {0,1}");
    if (kind == PainleveKind::P6) {
        if (std::abs(t - 1.0) == 0.0) fail(ErrorCode::SingularEvaluation, "painleve_residual: t = 1");
        if (std::abs(y) == 0.0 || std::abs(y - 1.0) == 0.0 || std::abs(y - t) == 0.0)
            fail(ErrorCode::SingularEvaluation, "painleve_residual: y in {0,1,t}");
    }
}

// y'' - RHS(t, y, y'); zero iff the jet lies on a solution
template <class S>
S painleve_residual(PainleveKind kind, const PainleveCoefficients& c, const S& t, const S& y,
                    const S& y1, const S& y2) {
    check_painleve_point(kind, value_of(t), value_of(y));
    return y2 - painleve_rhs(kind, c, t, y, y1);
}

// ---------------------------------------------------------------------------
// coefficient dictionaries
// ---------------------------------------------------------------------------

inline PainleveCoefficients p5_coefficients(const P5Monodromy& p) {
    cplx a = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    cplx b = (p.theta0 - p.theta1 - p.theta_inf) / 2.0;
    return {0.5 * a * a, -0.5 * b * b, 1.0 - p.theta0 - p.theta1, -0.5};
}

inline PainleveCoefficients p5_true_jm_coefficients(const P5Monodromy& p) {
    return {0.5 * p.theta1 * p.theta1, -0.5 * p.theta0 * p.theta0, 1.0 + p.theta_inf, -0.5};
}

inline PainleveCoefficients p6_coefficients(const P6Monodromy& p) {
    cplx a = p.theta_inf - 1.0;
    return {0.5 * a * a, -0.5 * p.theta1 * p.theta1, 0.5 * p.theta3 * p.theta3,
            0.5 * (1.0 - p.theta2 * p.theta2)};
}

inline PainleveCoefficients p4_coefficients(const P4Monodromy& p) {
    return {2.0 * p.theta_inf - 1.0, -8.0 * p.theta0 * p.theta0, 0.0, 0.0};
}

inline PainleveCoefficients p3_coefficients(const P3Monodromy& p) {
    return {4.0 * p.theta0, 4.0 * (1.0 - p.theta_inf), 4.0 * p.c1 * p.c1, -4.0};
}

// ---------------------------------------------------------------------------
// reduced coupled systems
// ---------------------------------------------------------------------------

template <class S>
WaveT<S> reduced_rhs_p5(const P5Monodromy& p, const WaveT<S>& s) {
    if (std::abs(value_of(s.t)) == 0.0) fail(ErrorCode::SingularEvaluation, "reduced_rhs_p5: t = 0");
    const S& t = s.t;
    cplx mdiff = p.m - p.mtilde();
    WaveT<S> d;
    d.w[0] = s.ws[1] * s.ws[2] / t;
    d.ws[0] = -s.w[1] * s.w[2] / t;
    d.w[1] = -s.ws[0] * s.ws[2] / t;
    d.ws[1] = s.w[0] * s.w[2] / t;
    d.w[2] = (-(t - mdiff) * s.w[2] - t * s.ws[0] * s.ws[1]) / t;
    d.ws[2] = ((t - mdiff) * s.ws[2] + t * s.w[0] * s.w[1]) / t;
    d.t = S(1.0);
    return d;
}

template <class S>
WaveT<S> reduced_rhs_p4(const P4Monodromy& p, const WaveT<S>& s) {
    const S& tau = s.t;
    const cplx I(0, 1);
    WaveT<S> d;
    d.w[0] = s.ws[1] * s.ws[2];
    d.ws[0] = -s.w[1] * s.w[2];
    d.w[1] = s.ws[0] * s.ws[2];
    d.ws[1] = -s.w[0] * s.w[2];
    d.w[2] = 2.0 * I * (tau + p.rho) * s.w[2] - 2.0 * s.ws[0] * s.ws[1];
    d.ws[2] = -2.0 * I * (tau + p.rho) * s.ws[2] + 2.0 * s.w[0] * s.w[1];
    d.t = S(1.0);
    return d;
}

// third Painleve chart in the variable t (tau = t^2)
template <class S>
WaveT<S> reduced_rhs_p3(const P3Monodromy& p, const WaveT<S>& s) {
    if (std::abs(value_of(s.t)) == 0.0) fail(ErrorCode::SingularEvaluation, "reduced_rhs_p3: t = 0");
    const S& t = s.t;
    WaveT<S> d;
    d.w[0] = 2.0 * s.ws[1] * s.ws[2] / t;
    d.ws[0] = 2.0 * s.w[1] * s.w[2] / t;
    d.w[1] = -2.0 * s.ws[0] * s.ws[2] / t;
    d.ws[1] = -2.0 * s.w[0] * s.w[2] / t;
    d.w[2] = (-2.0 * p.theta_inf * s.w[2] + 2.0 * t * t * s.ws[0] * s.ws[1]) / t;
    d.ws[2] = (2.0 * p.theta_inf * s.ws[2] + 2.0 * t * t * s.w[0] * s.w[1]) / t;
    d.t = S(1.0);
    return d;
}

// same chart in the similarity variable tau
template <class S>
WaveT<S> reduced_rhs_p3_tau(const P3Monodromy& p, const WaveT<S>& s) {
    if (std::abs(value_of(s.t)) == 0.0) fail(ErrorCode::SingularEvaluation, "reduced_rhs_p3_tau: tau = 0");
    const S& tau = s.t;
    WaveT<S> d;
    d.w[0] = s.ws[1] * s.ws[2] / tau;
    d.ws[0] = s.w[1] * s.w[2] / tau;
    d.w[1] = -s.ws[0] * s.ws[2] / tau;
    d.ws[1] = -s.w[0] * s.w[2] / tau;
    d.w[2] = (-p.theta_inf * s.w[2] + tau * s.ws[0] * s.ws[1]) / tau;
    d.ws[2] = (p.theta_inf * s.ws[2] + tau * s.w[0] * s.w[1]) / tau;
    d.t = S(1.0);
    return d;
}

// sixth Painleve reduction in the v-amplitudes, exponents (rho2, rho3)
template <class S>
WaveT<S> reduced_rhs_p6(const P6Monodromy& p, const WaveT<S>& s) {
    cplx tv = value_of(s.t);
    if (std::abs(tv) == 0.0 || std::abs(tv - 1.0) == 0.0)
        fail(ErrorCode::SingularEvaluation, "reduced_rhs_p6: tau in {0,1}");
    const S& tau = s.t;
    const cplx I(0, 1);
    const cplx ir2 = I * p.rho2(), ir3 = I * p.rho3();
    S ta = tau, tb = tau - 1.0;
    WaveT<S> d;
    d.w[0] = I * s.ws[1] * s.ws[2] * cpow(ta, -1.0 - ir2) * cpow(tb, -1.0 - ir3);
    d.w[1] = -I * s.ws[2] * s.ws[0] * cpow(ta, -ir2) * cpow(tb, -1.0 - ir3);
    d.w[2] = I * s.ws[0] * s.ws[1] * cpow(ta, -1.0 - ir2) * cpow(tb, -ir3);
    d.ws[0] = -I * s.w[1] * s.w[2] * cpow(ta, -1.0 + ir2) * cpow(tb, -1.0 + ir3);
    d.ws[1] = I * s.w[2] * s.w[0] * cpow(ta, ir2) * cpow(tb, -1.0 + ir3);
    d.ws[2] = -I * s.w[0] * s.w[1] * cpow(ta, -1.0 + ir2) * cpow(tb, ir3);
    d.t = S(1.0);
    return d;
}

// symmetric fourth Painleve system
template <class S>
struct SymP4T {
    std::array<S, 3> f{};
    S z{};
};
using SymP4State = SymP4T<cplx>;

template <class S>
SymP4T<S> reduced_rhs_symp4(const SymP4Monodromy& p, const SymP4T<S>& s) {
    SymP4T<S> d;
    d.f[0] = s.f[0] * (s.f[1] - s.f[2]) + p.alpha0();
    d.f[1] = s.f[1] * (s.f[2] - s.f[0]) + p.alpha1();
    d.f[2] = s.f[2] * (s.f[0] - s.f[1]) + p.alpha2();
    d.z = S(1.0);
    return d;
}

// ---------------------------------------------------------------------------
// first integrals
// ---------------------------------------------------------------------------

using NamedValues = std::vector<std::pair<std::string, cplx>>;

inline NamedValues first_integrals_p5(const WaveState& s, const P5Monodromy& p) {
    cplx theta0 = s.w[0] * s.ws[0] + s.w[1] * s.ws[1];
    cplx quartic = s.w[0] * s.w[1] * s.w[2] + s.ws[0] * s.ws[1] * s.ws[2] + s.w[2] * s.ws[2] +
                   0.5 * p.theta_inf * (s.w[1] * s.ws[1] - s.w[0] * s.ws[0]);
    return {{"m", p.m},
            {"theta_inf", p.mtilde() - p.m},
            {"theta0", theta0},
            {"quartic", quartic}};
}

inline NamedValues first_integrals_p4(const WaveState& s) {
    return {{"2i_theta0", s.w[0] * s.ws[0] - s.w[1] * s.ws[1]},
            {"2i_theta_inf", s.w[0] * s.ws[0] + s.w[1] * s.ws[1] + s.w[2] * s.ws[2]}};
}

inline NamedValues first_integrals_p3(const WaveState& s, const P3Monodromy& p) {
    cplx c1 = s.w[0] * s.ws[0] + s.w[1] * s.ws[1];
    cplx half_theta0 = s.w[0] * s.w[1] * s.w[2] - s.ws[0] * s.ws[1] * s.ws[2] +
                       0.5 * p.theta_inf * (s.w[0] * s.ws[0] - s.w[1] * s.ws[1]);
    return {{"c1", c1}, {"theta0_half", half_theta0}};
}

// conserved symmetric functions of the sixth Painleve amplitude matrix
inline NamedValues first_integrals_p6(const WaveState& v, const P6Monodromy& p) {
    cplx power = v.w[0] * v.ws[0] + v.w[1] * v.ws[1] + v.w[2] * v.ws[2];
    const cplx I(0, 1);
    cplx t = v.t;
    cplx w1 = I * v.w[0], ws1 = I * v.ws[0];
    cplx w2 = -I * cpow(t, I * p.rho2()) * v.w[1], ws2 = -I * cpow(t, -I * p.rho2()) * v.ws[1];
    cplx w3 = I * cpow(t - 1.0, I * p.rho3()) * v.w[2], ws3 = I * cpow(t - 1.0, -I * p.rho3()) * v.ws[2];
    cplx det = -p.theta1 * p.theta2 * p.theta3 + p.theta2 * w1 * ws1 + p.theta3 * w2 * ws2 +
               p.theta1 * w3 * ws3 + w1 * w2 * w3 + ws1 * ws2 * ws3;
    return {{"amplitude_power", power}, {"det_B6", det}};
}

inline NamedValues first_integrals(PainleveKind kind, const WaveState& s, const P5Monodromy& p5,
                                   const P4Monodromy& /*p4*/, const P3Monodromy& p3,
                                   const P6Monodromy& p6) {
    switch (kind) {
        case PainleveKind::P5: return first_integrals_p5(s, p5);
        case PainleveKind::P4: return first_integrals_p4(s);
        case PainleveKind::P3: return first_integrals_p3(s, p3);
        case PainleveKind::P6: return first_integrals_p6(s, p6);
    }
    return {};
}

// recover theta0 / theta1^2 from a fifth Painleve amplitude state
inline cplx p5_theta0_from_state(const WaveState& s) { return s.w[0] * s.ws[0] + s.w[1] * s.ws[1]; }

struct P5Theta1Result {
    cplx theta1;          // principal square root
    bool sign_free = true;  // theta1 -> -theta1 is an equally valid choice
};

inline P5Theta1Result p5_theta1_from_state(const WaveState& s, cplx theta_inf) {
    cplx theta0 = p5_theta0_from_state(s);
    cplx quartic = s.w[0] * s.w[1] * s.w[2] + s.ws[0] * s.ws[1] * s.ws[2] + s.w[2] * s.ws[2] +
                   0.5 * theta_inf * (s.w[1] * s.ws[1] - s.w[0] * s.ws[0]);
    cplx theta1sq = 4.0 * quartic + theta0 * theta0 + theta_inf * theta_inf;
    return {std::sqrt(theta1sq), true};
}

// ---------------------------------------------------------------------------
// coordinate-level systems
// ---------------------------------------------------------------------------

template <class S>
CoordDeriv<S> coordinate_rhs(const CoordT<S>& s, const P5Monodromy& p, const S& t) {
    cplx yv = value_of(s.y);
    if (std::abs(yv) == 0.0) fail(ErrorCode::SingularEvaluation, "coordinate_rhs: y = 0");
    if (std::abs(value_of(t)) == 0.0) fail(ErrorCode::SingularEvaluation, "coordinate_rhs: t = 0");
    const cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    const cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    const S& y = s.y;
    const S& z = s.z;
    S ym1 = y - 1.0;
    CoordDeriv<S> d;
    switch (s.variant) {
        case CoordVariant::C40_P5:
            d.dy = (t * y - 2.0 * z * ym1 * ym1 - cm * ym1 * ym1 + (p.theta0 + p.theta1) * ym1) / t;
            d.dz = (y * z * (z + cm) - (z + p.theta0) * (z + cp) / y) / t;
            d.dlogu = (-2.0 * z - p.theta0 + y * (z + cm) + (z + cp) / y) / t;
            break;
        case CoordVariant::JM_P5:
            d.dy = (t * y - 2.0 * z * ym1 * ym1 -
                    ym1 * (cm * y - (3.0 * p.theta0 + p.theta1 + p.theta_inf) / 2.0)) /
                   t;
            d.dz = (y * z * (z + cm) - (z + p.theta0) * (z + cp) / y) / t;
            d.dlogu = (-2.0 * z - p.theta0 + y * (z + cm) + (z + cp) / y) / t;
            break;
        case CoordVariant::TRUE_JM_P5: {
            cplx h0 = p.theta0 / 2.0, h1 = p.theta1 / 2.0, hi = p.theta_inf / 2.0;
            d.dy = (t * y - 2.0 * z * ym1 * ym1 - p.theta_inf * ym1) / t;
            d.dz = (y * (z * z - h1 * h1) - ((z - hi) * (z - hi) - h0 * h0) / y) / t;
            d.dlogu = 2.0 * (z - hi) * (1.0 / y - 1.0) / t;
            break;
        }
        default:
            fail(ErrorCode::ConfigError, "coordinate_rhs: variant does not take fifth Painleve data");
    }
    return d;
}

template <class S>
CoordDeriv<S> coordinate_rhs(const CoordT<S>& s, const P4Monodromy& p, const S& tau) {
    if (s.variant != CoordVariant::YZ_P4)
        fail(ErrorCode::ConfigError, "coordinate_rhs: variant does not take fourth Painleve data");
    if (std::abs(value_of(s.y)) == 0.0) fail(ErrorCode::SingularEvaluation, "coordinate_rhs: y = 0");
    const cplx I(0, 1);
    CoordDeriv<S> d;
    d.dy = -4.0 * s.z + s.y * s.y + 2.0 * I * (tau + p.rho) * s.y + 4.0 * I * p.theta0;
    d.dz = -s.y * (s.z - I * (p.theta0 + p.theta_inf)) -
           2.0 / s.y * s.z * (s.z - 2.0 * I * p.theta0);
    return d;
}

template <class S>
CoordDeriv<S> coordinate_rhs(const CoordT<S>& s, const P3Monodromy& p, const S& t) {
    if (std::abs(value_of(t)) == 0.0) fail(ErrorCode::SingularEvaluation, "coordinate_rhs: t = 0");
    CoordDeriv<S> d;
    if (s.variant == CoordVariant::YZW_P3) {
        d.dy = (2.0 * (2.0 * s.z - p.c1 * t) * s.y * s.y + (2.0 * p.theta_inf - 1.0) * s.y + 2.0 * t) / t;
        d.dz = (4.0 * s.z * (p.c1 * t - s.z) * s.y - (2.0 * p.theta_inf - 1.0) * s.z +
                (p.theta0 + p.c1 * p.theta_inf) * t) /
               t;
        d.dlogw = 2.0 * (p.c1 * t - 2.0 * s.z) * s.y / t;
    } else if (s.variant == CoordVariant::Z_P3) {
        // second-order flow for the SD-like z equation: state carries (z, z')
        const S& z = s.z;
        const S& z1 = s.yprime;
        S czt = p.c1 * t - z;
        if (std::abs(value_of(z)) == 0.0 || std::abs(value_of(czt)) == 0.0)
            fail(ErrorCode::SingularEvaluation, "coordinate_rhs: z(c1 t - z) = 0");
        cplx qp = p.theta0 + p.c1 * p.theta_inf, qm = p.theta0 - p.c1 * p.theta_inf;
        d.dz = z1;
        d.dslope = (p.c1 * t - 2.0 * z) / (2.0 * z * czt) * z1 * z1 + z / (t * czt) * z1 +
                   8.0 * z * czt / t + (p.c1 + 4.0 * p.theta0 * p.theta_inf) / (2.0 * t) +
                   (qm * qm - p.c1 * p.c1) / (2.0 * czt) - qp * qp / (2.0 * z);
    } else {
        fail(ErrorCode::ConfigError, "coordinate_rhs: variant does not take third Painleve data");
    }
    return d;
}

template <class S>
CoordDeriv<S> coordinate_rhs(const CoordT<S>& s, const P6Monodromy& p, const S& t) {
    if (s.variant != CoordVariant::P6_Y)
        fail(ErrorCode::ConfigError, "coordinate_rhs: variant does not take sixth Painleve data");
    CoordDeriv<S> d;
    d.dy = s.yprime;
    d.dslope = painleve_rhs(PainleveKind::P6, p6_coefficients(p), t, s.y, s.yprime);
    return d;
}

// residual form of the second-order z equation of the third Painleve chart
template <class S>
S z_p3_residual(const P3Monodromy& p, const S& t, const S& z, const S& z1, const S& z2) {
    CoordT<S> s;
    s.variant = CoordVariant::Z_P3;
    s.z = z;
    s.yprime = z1;
    return z2 - coordinate_rhs(s, p, t).dslope;
}

// ---------------------------------------------------------------------------
// sigma (SD) functions
// ---------------------------------------------------------------------------

template <class S>
S p5_sigma_from_wave(const WaveT<S>& s, const P5Monodromy& p) {
    cplx shift = ((p.theta0 + p.theta_inf) * (p.theta0 + p.theta_inf) - p.theta1 * p.theta1) / 4.0;
    return s.w[2] * s.ws[2] + s.t * s.w[0] * s.ws[0] + shift;
}

// sigma expressed through the coordinate chart (y, z)
template <class S>
S p5_sigma_from_coords(const S& y, const S& z, const S& t, const P5Monodromy& p) {
    cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    cplx shift = ((p.theta0 + p.theta_inf) * (p.theta0 + p.theta_inf) - p.theta1 * p.theta1) / 4.0;
    return -((z + cp) / y - z) * (y * (z + cm) - (z + p.theta0)) - t * z + shift;
}

// left-hand minus right-hand side of the fifth Painleve SD equation at the
// jet (sigma, sigma', sigma'')
template <class S>
S p5_sigma_residual(const P5Monodromy& p, const S& sigma, const S& s1, const S& s2, const S& t) {
    if (std::abs(value_of(t)) == 0.0) fail(ErrorCode::SingularEvaluation, "p5_sigma_residual: t = 0");
    cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    S bracket = sigma - (p.theta_inf + 2.0 * p.theta0 + t) * s1 + 2.0 * s1 * s1;
    S rhs = bracket * bracket - 4.0 * s1 * (s1 - p.theta0) * (s1 - cp) * (s1 - cm);
    return t * t * s2 * s2 - rhs;
}

template <class S>
S p4_sigma_from_coords(const S& y, const S& z, const S& tau, const P4Monodromy& p) {
    const cplx I(0, 1);
    S is = -y * (z - I * (p.theta0 + p.theta_inf)) + 2.0 * z * (z - 2.0 * I * p.theta0) / y -
           2.0 * I * (tau + p.rho) * z;
    return is / I;
}

template <class S>
S p4_sigma_from_wave(const WaveT<S>& s, const P4Monodromy& p) {
    const cplx I(0, 1);
    return I * (s.w[0] * s.w[1] * s.w[2] + s.ws[0] * s.ws[1] * s.ws[2]) -
           2.0 * (s.t + p.rho) * s.w[0] * s.ws[0];
}

template <class S>
S p4_sigma_residual(const P4Monodromy& p, const S& sigma, const S& s1, const S& s2, const S& tau) {
    const cplx I(0, 1);
    S lin = (tau + p.rho) * s1 - sigma;
    S rhs = -4.0 * lin * lin -
            4.0 * s1 * (s1 + 4.0 * I * p.theta0) * (s1 + 2.0 * I * p.theta0 + 2.0 * I * p.theta_inf);
    return s2 * s2 - rhs;
}

// the two half-relations recovering y and 1/y from the fourth Painleve sigma jet
template <class S>
std::pair<S, S> p4_y_from_sigma(const P4Monodromy& p, const S& z, const S& z1, const S& sigma,
                                const S& tau) {
    const cplx I(0, 1);
    S y = -(z1 + I * sigma + 2.0 * I * (tau + p.rho) * z) / (2.0 * (z - I * p.theta0 - I * p.theta_inf));
    S yinv = -(z1 - I * sigma - 2.0 * I * (tau + p.rho) * z) / (4.0 * z * (z - 2.0 * I * p.theta0));
    return {y, yinv};
}

// ---------------------------------------------------------------------------
// degenerate mapping out of the third Painleve chart
// ---------------------------------------------------------------------------

struct DegenerateP5Map {
    cplx y{}, tau{};
    PainleveCoefficients coefficients;
    bool degenerate_p3 = false;  // c1 = 0 branch
};

inline DegenerateP5Map p3_to_degenerate_p5(const CoordState& zstate, const P3Monodromy& p, cplx t) {
    DegenerateP5Map out;
    if (std::abs(p.c1) == 0.0) {
        out.degenerate_p3 = true;
        out.tau = t;
        out.y = zstate.z;
        out.coefficients = {-8.0, 2.0 * p.theta0 * p.theta_inf, 0.0, -p.theta0 * p.theta0};
        return out;
    }
    cplx denom = zstate.z - p.c1 * t;
    if (std::abs(denom) == 0.0) fail(ErrorCode::DegenerateBranch, "p3_to_degenerate_p5: z = c1 t");
    out.y = zstate.z / denom;
    out.tau = t * t;
    cplx qm = p.theta0 - p.c1 * p.theta_inf, qp = p.theta0 + p.c1 * p.theta_inf;
    out.coefficients = {qm * qm / (8.0 * p.c1 * p.c1), -qp * qp / (8.0 * p.c1 * p.c1), 2.0 * p.c1, 0.0};
    return out;
}

}  // namespace painlax
