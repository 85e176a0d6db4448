#pragma once

// The Backlund lattice of the fifth Painleve equation: the classical
// transformation with explicit branch choices, the theta-level lattice it
// induces, reflections, Schlesinger theta-shifts, the Okamoto-type
// transformation, and verification harnesses.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "painlax/integrate.hpp"
#include "painlax/systems.hpp"

namespace painlax {

// ---------------------------------------------------------------------------
// branch bookkeeping
// ---------------------------------------------------------------------------

struct BranchChoice {
    int eps = 1;      // square root of -2 delta
    int eps1 = 1;     // branch of sqrt(2 alpha)
    int eps2 = 1;     // branch of sqrt(-2 beta)
    int eps1_hat = 1;
    int eps2_hat = 1;

    void validate() const {
        for (int e : {eps, eps1, eps2, eps1_hat, eps2_hat})
            if (e != 1 && e != -1) fail(ErrorCode::ConfigError, "BranchChoice: entries must be +-1");
    }
};

enum class TransformTag { IDENTITY, GROMAK, OKAMOTO, R0, R1, RINF, R01, S_PP, S_PM, S_MP, S_MM };

inline const char* transform_name(TransformTag t) {
    switch (t) {
        case TransformTag::IDENTITY: return "identity";
        case TransformTag::GROMAK: return "gromak";
        case TransformTag::OKAMOTO: return "okamoto";
        case TransformTag::R0: return "R0";
        case TransformTag::R1: return "R1";
        case TransformTag::RINF: return "Rinf";
        case TransformTag::R01: return "R01";
        case TransformTag::S_PP: return "S++";
        case TransformTag::S_PM: return "S+-";
        case TransformTag::S_MP: return "S-+";
        case TransformTag::S_MM: return "S--";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// the classical transformation with explicit root values
// ---------------------------------------------------------------------------

struct GromakRoots {
    cplx sqrt_2alpha{}, sqrt_m2beta{}, sqrt_m2delta{};
};

struct GromakResult {
    cplx y_hat{};
    PainleveCoefficients coefficients;
};

// y_hat and the hatted coefficient set; the same root values must be used
// in the map and in the coefficient relations
inline GromakResult gromak_backlund(cplx t, cplx y, cplx y1, const PainleveCoefficients& c,
                                    const GromakRoots& r) {
    if (std::abs(c.delta) == 0.0) fail(ErrorCode::ZeroDelta, "gromak_backlund: delta = 0");
    cplx denom = t * y1 - r.sqrt_2alpha * y * y +
                 (r.sqrt_2alpha - r.sqrt_m2beta + t * r.sqrt_m2delta) * y + r.sqrt_m2beta;
    if (std::abs(denom) == 0.0)
        fail(ErrorCode::DegenerateDenominator, "gromak_backlund: vanishing denominator");
    GromakResult out;
    out.y_hat = 1.0 - 2.0 * r.sqrt_m2delta * t * y / denom;
    cplx sa = 0.5 * (c.gamma / r.sqrt_m2delta + 1.0 - r.sqrt_m2beta - r.sqrt_2alpha);
    cplx sb = 0.5 * (c.gamma / r.sqrt_m2delta - 1.0 + r.sqrt_m2beta + r.sqrt_2alpha);
    out.coefficients.alpha = 0.5 * sa * sa;
    out.coefficients.beta = -0.5 * sb * sb;
    out.coefficients.gamma = r.sqrt_m2delta * (r.sqrt_m2beta - r.sqrt_2alpha);
    out.coefficients.delta = c.delta;
    return out;
}

inline GromakRoots roots_from_thetas(const P5Monodromy& p, const BranchChoice& b) {
    GromakRoots r;
    r.sqrt_2alpha = double(b.eps1) * (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    r.sqrt_m2beta = double(b.eps2) * (p.theta0 - p.theta1 - p.theta_inf) / 2.0;
    r.sqrt_m2delta = double(b.eps);
    return r;
}

// ---------------------------------------------------------------------------
// theta-level lattice
// ---------------------------------------------------------------------------

struct ThetaTriple {
    cplx theta0{}, theta1{}, theta_inf{};
};

// the three printed relations for the hatted formal monodromies
inline ThetaTriple theta_lattice(const ThetaTriple& th, const BranchChoice& b) {
    b.validate();
    double e = b.eps, e1 = b.eps1, e2 = b.eps2, h1 = b.eps1_hat, h2 = b.eps2_hat;
    cplx S = e * (1.0 - th.theta0 - th.theta1);
    cplx T = 1.0 - 0.5 * (e1 + e2) * (th.theta0 - th.theta1) - 0.5 * (e1 - e2) * th.theta_inf;
    cplx hat_inf = 0.5 * (h1 - h2) * S + 0.5 * (h1 + h2) * T;
    cplx hat_diff = 0.5 * (h1 + h2) * S + 0.5 * (h1 - h2) * T;
    cplx hat_sum = 1.0 + e * (0.5 * (e1 - e2) * (th.theta0 - th.theta1) +
                              0.5 * (e1 + e2) * th.theta_inf);
    return {(hat_sum + hat_diff) / 2.0, (hat_sum - hat_diff) / 2.0, hat_inf};
}

// affine action on (theta0, theta1, theta_inf): x -> L x + c
struct ThetaAffine {
    Eigen::Matrix3d L = Eigen::Matrix3d::Identity();
    Eigen::Vector3d c = Eigen::Vector3d::Zero();

    ThetaTriple apply(const ThetaTriple& th) const {
        Eigen::Vector3cd v(th.theta0, th.theta1, th.theta_inf);
        Eigen::Vector3cd w = L.cast<cplx>() * v + c.cast<cplx>();
        return {w(0), w(1), w(2)};
    }
    ThetaAffine then(const ThetaAffine& second) const {  // apply *this first
        ThetaAffine out;
        out.L = second.L * L;
        out.c = second.L * c + second.c;
        return out;
    }
    bool same_as(const ThetaAffine& o, double tol = 1e-12) const {
        return (L - o.L).norm() < tol && (c - o.c).norm() < tol;
    }
};

inline ThetaAffine theta_map(TransformTag tag) {
    ThetaAffine a;
    switch (tag) {
        case TransformTag::IDENTITY: break;
        case TransformTag::R0: a.L(0, 0) = -1.0; break;
        case TransformTag::R1: a.L(1, 1) = -1.0; break;
        case TransformTag::RINF: a.L(2, 2) = -1.0; break;
        case TransformTag::R01:
            a.L.setZero();
            a.L(0, 1) = a.L(1, 0) = a.L(2, 2) = 1.0;
            break;
        case TransformTag::OKAMOTO:
            a.L << 0.5, 0.5, -0.5, 0.5, 0.5, 0.5, -1.0, 1.0, 0.0;
            break;
        case TransformTag::S_PP: a.c << 1.0, 0.0, 1.0; break;
        case TransformTag::S_PM: a.c << -1.0, 0.0, 1.0; break;
        case TransformTag::S_MP: a.c << 1.0, 0.0, -1.0; break;
        case TransformTag::S_MM: a.c << -1.0, 0.0, -1.0; break;
        case TransformTag::GROMAK:
            fail(ErrorCode::ConfigError, "theta_map: the branch map needs a BranchChoice");
    }
    return a;
}

// the lattice map of a branch tuple as an affine action
inline ThetaAffine theta_lattice_affine(const BranchChoice& b) {
    ThetaAffine a;
    ThetaTriple z = theta_lattice({0, 0, 0}, b);
    a.c << z.theta0.real(), z.theta1.real(), z.theta_inf.real();
    for (int k = 0; k < 3; ++k) {
        ThetaTriple e{k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
        ThetaTriple img = theta_lattice(e, b);
        a.L(0, k) = (img.theta0 - z.theta0).real();
        a.L(1, k) = (img.theta1 - z.theta1).real();
        a.L(2, k) = (img.theta_inf - z.theta_inf).real();
    }
    return a;
}

// breadth-first decomposition of an affine theta-map into the generator set
inline std::optional<std::vector<TransformTag>> decompose_theta_map(const ThetaAffine& target,
                                                                    int max_depth = 6) {
    const std::vector<TransformTag> gens{TransformTag::S_PP, TransformTag::S_PM,
                                         TransformTag::S_MP, TransformTag::S_MM,
                                         TransformTag::R0,   TransformTag::R1,
                                         TransformTag::RINF, TransformTag::R01,
                                         TransformTag::OKAMOTO};
    auto key = [](const ThetaAffine& a) {
        std::array<long long, 12> k{};
        int i = 0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) k[i++] = llround(a.L(r, c) * 4096.0);
        for (int r = 0; r < 3; ++r) k[i++] = llround(a.c(r) * 4096.0);
        return k;
    };
    ThetaAffine id;
    if (target.same_as(id)) return std::vector<TransformTag>{};
    std::map<std::array<long long, 12>, std::vector<TransformTag>> seen;
    std::vector<std::pair<ThetaAffine, std::vector<TransformTag>>> frontier{{id, {}}};
    seen[key(id)] = {};
    for (int depth = 0; depth < max_depth; ++depth) {
        std::vector<std::pair<ThetaAffine, std::vector<TransformTag>>> next;
        for (const auto& [map, word] : frontier) {
            for (TransformTag g : gens) {
                ThetaAffine cand = map.then(theta_map(g));
                if (cand.same_as(target)) {
                    auto w = word;
                    w.push_back(g);
                    return w;
                }
                auto k = key(cand);
                if (seen.count(k)) continue;
                auto w = word;
                w.push_back(g);
                seen[k] = w;
                next.push_back({cand, w});
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// transformations of the coordinate chart (y, z, u)
// ---------------------------------------------------------------------------

struct CoordMapResult {
    CoordState coords;    // hatted chart values (u carried only through dlogu)
    P5Monodromy params;   // hatted formal monodromies (m left untouched)
    cplx t{};             // hatted deformation parameter
    cplx dlogu_shift{};   // t dlog u_hat = t dlog u + shift (when applicable)
    PainleveCoefficients coefficients;  // hatted coefficient set
};

// Okamoto-type transformation on the (y, z) chart
inline CoordMapResult okamoto_p5(const CoordState& c, const P5Monodromy& p, cplx t) {
    const cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    const cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
    if (std::abs(c.z + cp) == 0.0)
        fail(ErrorCode::DegenerateDenominator, "okamoto_p5: z + (theta0+theta1+theta_inf)/2 = 0");
    CoordMapResult out;
    out.t = t;
    out.coords.variant = CoordVariant::C40_P5;
    out.coords.z = c.z + cm;
    out.coords.y = c.y * c.z / (c.z + cp);
    out.params.theta0 = (p.theta0 + p.theta1 - p.theta_inf) / 2.0;
    out.params.theta1 = -(p.theta0 + p.theta1 + p.theta_inf) / 2.0;
    out.params.theta_inf = p.theta1 - p.theta0;
    out.params.m = p.m;
    out.dlogu_shift = -cm * (c.y + 1.0);
    out.coefficients = {0.5 * p.theta1 * p.theta1, -0.5 * p.theta0 * p.theta0,
                        1.0 + p.theta_inf, -0.5};
    return out;
}

// reflections acting on the chart, the parameters and (for the last two) t
inline CoordMapResult reflection(TransformTag tag, const CoordState& c, const P5Monodromy& p,
                                 cplx t) {
    CoordMapResult out;
    out.t = t;
    out.params = p;
    out.coords = c;
    out.coords.variant = CoordVariant::C40_P5;
    switch (tag) {
        case TransformTag::R0: {
            if (std::abs(c.z + p.theta0) == 0.0)
                fail(ErrorCode::DegenerateDenominator, "reflection R0: z + theta0 = 0");
            out.params.theta0 = -p.theta0;
            out.coords.y = c.y * c.z / (c.z + p.theta0);
            out.coords.z = c.z + p.theta0;
            out.coords.u = c.u * (c.z + p.theta0) / c.z;
            break;
        }
        case TransformTag::R1: {
            cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
            cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
            if (std::abs(c.z + cp) == 0.0)
                fail(ErrorCode::DegenerateDenominator, "reflection R1: z + cp = 0");
            out.params.theta1 = -p.theta1;
            out.coords.y = c.y * (c.z + cm) / (c.z + cp);
            break;
        }
        case TransformTag::RINF: {
            out.params.theta_inf = -p.theta_inf;
            out.t = -t;
            out.coords.y = 1.0 / c.y;
            out.coords.z = -c.z - p.theta0;
            out.coords.u = 1.0 / c.u;
            break;
        }
        case TransformTag::R01: {
            out.params.theta0 = p.theta1;
            out.params.theta1 = p.theta0;
            out.t = -t;
            out.coords.y = 1.0 / c.y;
            out.coords.z = -c.z - (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
            out.coords.u = std::exp(-t) * c.y * c.u;
            break;
        }
        default:
            fail(ErrorCode::ConfigError, "reflection: tag is not a reflection");
    }
    out.coefficients = p5_coefficients(out.params);
    return out;
}

inline ThetaTriple schlesinger_theta(TransformTag tag, const ThetaTriple& th) {
    switch (tag) {
        case TransformTag::S_PP: return {th.theta0 + 1.0, th.theta1, th.theta_inf + 1.0};
        case TransformTag::S_PM: return {th.theta0 - 1.0, th.theta1, th.theta_inf + 1.0};
        case TransformTag::S_MP: return {th.theta0 + 1.0, th.theta1, th.theta_inf - 1.0};
        case TransformTag::S_MM: return {th.theta0 - 1.0, th.theta1, th.theta_inf - 1.0};
        default: fail(ErrorCode::ConfigError, "schlesinger_theta: tag is not a dressing shift");
    }
}

// ---------------------------------------------------------------------------
// verification harness
// ---------------------------------------------------------------------------

struct TransformVerdict {
    bool pass = false;
    double max_residual = 0.0;
    int samples = 0;
};

// target-equation residual statistics of a transformed object along a
// numeric trajectory of the (y, z) chart
inline TransformVerdict verify_on_trajectory(TransformTag tag, const CoordState& init,
                                             const P5Monodromy& p, cplx t0, cplx t1, int samples,
                                             double tolerance,
                                             const BranchChoice* branch = nullptr,
                                             const BranchChoice* branch_coeffs = nullptr) {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    auto rhs = [&](cplx t, const VecX& v) {
        CoordState c{CoordVariant::C40_P5, v(0), v(1)};
        auto d = coordinate_rhs(c, p, t);
        VecX out(2);
        out << d.dy, d.dz;
        return out;
    };
    VecX v0(2);
    v0 << init.y, init.z;

    TransformVerdict verdict;
    verdict.samples = samples;
    for (int k = 0; k < samples; ++k) {
        cplx t = t0 + (t1 - t0) * double(k) / double(samples - 1);
        VecX v = v0;
        if (t != t0) v = integrate_path(rhs, v0, ComplexPath::segment(t0, t), cfg).back().state;
        CoordState c{CoordVariant::C40_P5, v(0), v(1)};
        auto flow = coordinate_rhs(c, p, t);

        double res = 0.0;
        switch (tag) {
            case TransformTag::IDENTITY: {
                CoordJet cj;
                cj.variant = CoordVariant::C40_P5;
                cj.y = jet(c.y, flow.dy);
                cj.z = jet(c.z, flow.dz);
                auto dj = coordinate_rhs(cj, p, seed(t));
                res = std::abs(painleve_residual(PainleveKind::P5, p5_coefficients(p), t, c.y,
                                                 flow.dy, dj.dy.d));
                break;
            }
            case TransformTag::OKAMOTO:
            case TransformTag::R0:
            case TransformTag::R1: {
                // chain rule through the map; the hatted pair must satisfy the
                // hatted (y, z) flow pointwise
                CoordJet cj;
                cj.variant = CoordVariant::C40_P5;
                cj.y = jet(c.y, flow.dy);
                cj.z = jet(c.z, flow.dz);
                Jet1 yh, zh;
                P5Monodromy ph;
                if (tag == TransformTag::OKAMOTO) {
                    cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
                    cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
                    zh = cj.z + cm;
                    yh = cj.y * cj.z / (cj.z + cp);
                    auto m = okamoto_p5(c, p, t);
                    ph = m.params;
                } else if (tag == TransformTag::R0) {
                    zh = cj.z + p.theta0;
                    yh = cj.y * cj.z / (cj.z + p.theta0);
                    ph = p;
                    ph.theta0 = -p.theta0;
                } else {
                    cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
                    cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
                    zh = cj.z;
                    yh = cj.y * (cj.z + cm) / (cj.z + cp);
                    ph = p;
                    ph.theta1 = -p.theta1;
                }
                CoordState ch{CoordVariant::C40_P5, yh.v, zh.v};
                auto hf = coordinate_rhs(ch, ph, t);
                res = std::max(std::abs(yh.d - hf.dy), std::abs(zh.d - hf.dz));
                {
                    // the transformed function solves the equation with the
                    // hatted coefficient set
                    CoordJet hj;
                    hj.variant = CoordVariant::C40_P5;
                    hj.y = jet(yh.v, hf.dy);
                    hj.z = jet(zh.v, hf.dz);
                    auto hdj = coordinate_rhs(hj, ph, seed(t));
                    cplx co_res = painleve_residual(PainleveKind::P5, p5_coefficients(ph), t, yh.v,
                                                    hf.dy, hdj.dy.d);
                    res = std::max(res, std::abs(co_res));
                }
                break;
            }
            case TransformTag::RINF:
            case TransformTag::R01: {
                // t -> -t maps: check the hatted flow at -t via the chain rule
                cplx that = -t;
                P5Monodromy ph = p;
                Jet1 yj = jet(c.y, flow.dy), zj = jet(c.z, flow.dz);
                Jet1 yh = 1.0 / yj, zh;
                if (tag == TransformTag::RINF) {
                    ph.theta_inf = -p.theta_inf;
                    zh = -1.0 * zj - p.theta0;
                } else {
                    ph.theta0 = p.theta1;
                    ph.theta1 = p.theta0;
                    zh = -1.0 * zj - (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
                }
                CoordState ch{CoordVariant::C40_P5, yh.v, zh.v};
                auto hf = coordinate_rhs(ch, ph, that);
                // d/d(that) = -d/dt
                res = std::max(std::abs(-yh.d - hf.dy), std::abs(-zh.d - hf.dz));
                break;
            }
            case TransformTag::GROMAK: {
                if (!branch) fail(ErrorCode::ConfigError, "verify_on_trajectory: missing branch");
                const BranchChoice& bmap = *branch;
                const BranchChoice& bco = branch_coeffs ? *branch_coeffs : bmap;
                PainleveCoefficients co = p5_coefficients(p);
                GromakRoots rmap = roots_from_thetas(p, bmap);
                GromakRoots rco = roots_from_thetas(p, bco);
                // hatted coefficients always from rco; map from rmap
                GromakResult ref = gromak_backlund(t, c.y, flow.dy, co, rco);
                auto yhat_at = [&](cplx tt, const VecX& vv) {
                    CoordState cc{CoordVariant::C40_P5, vv(0), vv(1)};
                    auto ff = coordinate_rhs(cc, p, tt);
                    return gromak_backlund(tt, cc.y, ff.dy, co, rmap).y_hat;
                };
                const double h = 1e-4;
                std::vector<std::pair<cplx, cplx>> ys;
                for (int off = -2; off <= 2; ++off) {
                    cplx tt = t + double(off) * h;
                    VecX vv = v;
                    if (off != 0)
                        vv = integrate_path(rhs, v, ComplexPath::segment(t, tt), cfg).back().state;
                    ys.push_back({tt, yhat_at(tt, vv)});
                }
                cplx y1 = finite_difference_derivative(ys, 1);
                cplx y2 = finite_difference_derivative(ys, 2);
                res = std::abs(
                    painleve_residual(PainleveKind::P5, ref.coefficients, t, ys[2].second, y1, y2));
                break;
            }
            default:
                fail(ErrorCode::ConfigError, "verify_on_trajectory: unsupported tag");
        }
        verdict.max_residual = std::max(verdict.max_residual, res);
    }
    verdict.pass = verdict.max_residual < tolerance;
    return verdict;
}

}  // namespace painlax
