#pragma once

// Numerical monodromy of the 2x2 pairs at regular singular points and
// isomonodromy verification under deformation.  Loops are polygonal circles
// (>= 32 segments by default); transport accuracy, not loop smoothness,
// controls the error.

#include <functional>
#include <optional>

#include "painlax/integrate.hpp"
#include "painlax/linpair.hpp"

namespace painlax {

struct LoopSpec {
    cplx center{};
    double radius = 0.5;
    double base_angle = 0.0;  // base point = center + radius e^{i base_angle}
    int segments = 64;

    cplx base_point() const {
        return center + radius * cplx(std::cos(base_angle), std::sin(base_angle));
    }
    ComplexPath path() const {
        if (segments < 8) fail(ErrorCode::ConfigError, "LoopSpec: need at least 8 segments");
        if (!(radius > 0.0)) fail(ErrorCode::ConfigError, "LoopSpec: radius must be positive");
        return ComplexPath::circle(center, radius, segments, base_angle);
    }
};

struct MonodromyReport {
    MatX matrix;
    VecX eigenvalues;
    cplx trace{};
    LoopSpec loop;
    double condition = 0.0;
};

// how many catalogued singularities the loop encloses (with margin)
inline int enclosed_singularities(const LinearPair& pair, const LoopSpec& loop, double margin = 0.05) {
    int n = 0;
    for (cplx s : pair.singularities) {
        double d = std::abs(s - loop.center);
        if (std::abs(d - loop.radius) < margin * loop.radius)
            fail(ErrorCode::ConfigError, "monodromy: a singularity sits on the loop");
        if (d < loop.radius) ++n;
    }
    return n;
}

// transport of the identity frame around the loop; the result is the
// monodromy factor in the base-point frame
inline MonodromyReport monodromy_matrix(const LinearPair& pair, const LoopSpec& loop,
                                        const IntegratorConfig& cfg = {},
                                        bool require_isolating = true) {
    if (require_isolating && enclosed_singularities(pair, loop) > 1)
        fail(ErrorCode::ConfigError, "monodromy_matrix: loop encloses more than one singularity");
    MonodromyReport rep;
    rep.loop = loop;
    auto field = [&pair](cplx x) { return pair.A.eval(x); };
    IntegratorConfig icfg = cfg;
    icfg.rel_tol = std::min(icfg.rel_tol, 1e-12);
    icfg.abs_tol = std::min(icfg.abs_tol, 1e-14);
    rep.matrix = linear_transport(field, MatX::Identity(pair.dim, pair.dim), loop.path(), icfg);
    Eigen::FullPivLU<MatX> lu(rep.matrix);
    if (!lu.isInvertible())
        fail(ErrorCode::IllConditionedTransport, "monodromy_matrix: transport is singular");
    rep.condition = rep.matrix.norm() * lu.inverse().norm();
    if (rep.condition > 1e10)
        fail(ErrorCode::IllConditionedTransport, "monodromy_matrix: condition exceeds 1e10");
    rep.trace = rep.matrix.trace();
    rep.eigenvalues = eig_small(rep.matrix).values;
    return rep;
}

// eigenvalues of the order-one residue at a catalogued singular point
inline VecX local_exponents(const LinearPair& pair, cplx singularity) {
    MatX residue = MatX::Zero(pair.dim, pair.dim);
    bool found = false;
    for (const auto& p : pair.A.poles) {
        if (p.location != singularity) continue;
        if (p.order != 1 && p.coeff.norm() > 0.0)
            fail(ErrorCode::NotFirstOrderPole, "local_exponents: pole order exceeds one");
        if (p.order == 1) {
            residue += p.coeff;
            found = true;
        }
    }
    if (!found) fail(ErrorCode::NotFirstOrderPole, "local_exponents: not a catalogued first-order pole");
    return eig_small(residue).values;
}

// lasso path: base point -> circle entry -> around -> back
inline ComplexPath lasso(const LoopSpec& loop, cplx base) {
    cplx dir = (loop.center - base) / std::abs(loop.center - base);
    double entry_angle = std::arg(-dir);
    LoopSpec circ = loop;
    circ.base_angle = entry_angle;
    ComplexPath circle = circ.path();
    cplx entry = circle.vertices.front();  // exact join point
    ComplexPath out = ComplexPath::segment(base, entry);
    out = out.then(circle);
    out = out.then(ComplexPath::segment(entry, base));
    return out;
}

// monodromy around a loop, transported from a common base point
inline MatX based_monodromy(const LinearPair& pair, const LoopSpec& loop, cplx base,
                            const IntegratorConfig& cfg = {}) {
    auto field = [&pair](cplx x) { return pair.A.eval(x); };
    IntegratorConfig icfg = cfg;
    icfg.rel_tol = std::min(icfg.rel_tol, 1e-12);
    icfg.abs_tol = std::min(icfg.abs_tol, 1e-14);
    return linear_transport(field, MatX::Identity(pair.dim, pair.dim), lasso(loop, base), icfg);
}

// conjugation-invariant functionals: traces of each loop monodromy and of
// the pairwise products
inline std::vector<cplx> trace_functionals(const std::vector<MatX>& ms) {
    std::vector<cplx> out;
    for (const auto& m : ms) out.push_back(m.trace());
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = i + 1; j < ms.size(); ++j) out.push_back((ms[i] * ms[j]).trace());
    return out;
}

using PairFamily = std::function<LinearPair(cplx t)>;

// maximum drift of the trace functionals between the two ends of a
// deformation interval; all loops share one base point so that products of
// monodromies are frame-consistent
inline double isomonodromy_drift(const PairFamily& family, cplx t0, cplx t1,
                                 const std::vector<LoopSpec>& loops,
                                 const IntegratorConfig& cfg = {},
                                 std::optional<cplx> base_point = std::nullopt) {
    LinearPair p0 = family(t0);
    LinearPair p1 = family(t1);
    for (const auto& loop : loops) {
        int n0 = enclosed_singularities(p0, loop);
        int n1 = enclosed_singularities(p1, loop);
        if (n0 != 1 || n1 != 1)
            fail(ErrorCode::MovingPoleCollision,
                 "isomonodromy_drift: a loop does not isolate one singularity across the range");
    }
    cplx base;
    if (base_point) {
        base = *base_point;
    } else {
        double r = 1.0;
        for (cplx s : p0.singularities) r = std::max(r, std::abs(s));
        for (cplx s : p1.singularities) r = std::max(r, std::abs(s));
        base = cplx(0.0, -(r + 1.5));
    }
    std::vector<MatX> m0, m1;
    for (const auto& loop : loops) {
        m0.push_back(based_monodromy(p0, loop, base, cfg));
        m1.push_back(based_monodromy(p1, loop, base, cfg));
    }
    auto f0 = trace_functionals(m0);
    auto f1 = trace_functionals(m1);
    double drift = 0.0;
    for (size_t k = 0; k < f0.size(); ++k) drift = std::max(drift, std::abs(f1[k] - f0[k]));
    return drift;
}

}  // namespace painlax
