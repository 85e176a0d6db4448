#pragma once

// Configuration-driven scenario runner behind the command-line front end.
// Exit codes: 0 all rows pass, 1 residual failure, 2 configuration error,
// 3 numerical failure (pole, step limit, singular evaluation).

#include <random>

#include "painlax/concordance.hpp"
#include "painlax/linpair.hpp"
#include "painlax/monodromy.hpp"
#include "painlax/parametrize.hpp"
#include "painlax/report.hpp"
#include "painlax/transforms.hpp"

namespace painlax {

struct RunResult {
    int exit_code = 0;
    Report report;
    std::string trajectory_csv;  // empty when the scenario produces none
};

namespace cli_detail {

inline cplx get_cplx(const json& j, const std::string& key, std::optional<cplx> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        fail(ErrorCode::ConfigError, "missing field: " + key);
    }
    return cplx_from_json(j.at(key));
}

inline double get_real(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

inline PainleveKind parse_kind(const std::string& s) {
    if (s == "P3") return PainleveKind::P3;
    if (s == "P4") return PainleveKind::P4;
    if (s == "P5") return PainleveKind::P5;
    if (s == "P6") return PainleveKind::P6;
    fail(ErrorCode::ConfigError, "unknown kind: " + s);
}

inline WaveState parse_wave(const json& j) {
    WaveState s;
    if (!j.contains("w") || !j.contains("w_star"))
        fail(ErrorCode::ConfigError, "initial state needs fields w and w_star");
    for (int k = 0; k < 3; ++k) {
        s.w[k] = cplx_from_json(j.at("w").at(k));
        s.ws[k] = cplx_from_json(j.at("w_star").at(k));
    }
    s.t = get_cplx(j, "t");
    return s;
}

inline MonodromyVariant parse_params(PainleveKind kind, const json& p) {
    switch (kind) {
        case PainleveKind::P3: {
            P3Monodromy m;
            m.theta0 = get_cplx(p, "theta0", cplx(0));
            m.theta_inf = get_cplx(p, "theta_inf", cplx(0));
            m.c1 = get_cplx(p, "c1", cplx(0));
            return m;
        }
        case PainleveKind::P4: {
            P4Monodromy m;
            m.theta0 = get_cplx(p, "theta0", cplx(0));
            m.theta_inf = get_cplx(p, "theta_inf", cplx(0));
            m.rho = get_cplx(p, "rho", cplx(0));
            return m;
        }
        case PainleveKind::P5: {
            P5Monodromy m;
            m.theta0 = get_cplx(p, "theta0", cplx(0));
            m.theta1 = get_cplx(p, "theta1", cplx(0));
            m.theta_inf = get_cplx(p, "theta_inf", cplx(0));
            m.m = get_cplx(p, "m", cplx(0));
            return m;
        }
        case PainleveKind::P6: {
            P6Monodromy m;
            m.theta1 = get_cplx(p, "theta1", cplx(0));
            m.theta2 = get_cplx(p, "theta2", cplx(0));
            m.theta3 = get_cplx(p, "theta3", cplx(0));
            m.theta_inf = get_cplx(p, "theta_inf", cplx(0));
            return m;
        }
    }
    fail(ErrorCode::ConfigError, "unreachable kind");
}

inline IntegratorConfig parse_integrator(const json& cfg) {
    IntegratorConfig ic;
    if (cfg.contains("tolerances")) {
        const json& t = cfg.at("tolerances");
        ic.rel_tol = get_real(t, "rel_tol", 1e-12);
        ic.abs_tol = get_real(t, "abs_tol", 1e-14);
        ic.max_step = get_real(t, "max_step", 1e300);
        ic.pole_guard = get_real(t, "pole_guard", 1e8);
        if (t.contains("max_steps")) ic.max_steps = t.at("max_steps").get<long>();
    } else {
        ic.rel_tol = 1e-12;
        ic.abs_tol = 1e-14;
    }
    return ic;
}

inline double residual_tolerance(const json& cfg, double fallback) {
    if (cfg.contains("tolerances") && cfg.at("tolerances").contains("residual"))
        return cfg.at("tolerances").at("residual").get<double>();
    return fallback;
}

inline VecX pack_wave(const WaveState& s) {
    VecX v(6);
    v << s.w[0], s.w[1], s.w[2], s.ws[0], s.ws[1], s.ws[2];
    return v;
}

inline WaveState unpack_wave(const VecX& v, cplx t) {
    WaveState s;
    s.w = {v(0), v(1), v(2)};
    s.ws = {v(3), v(4), v(5)};
    s.t = t;
    return s;
}

inline OdeRhs wave_rhs(PainleveKind kind, const MonodromyVariant& params) {
    return [kind, params](cplx t, const VecX& v) {
        WaveState s = unpack_wave(v, t);
        WaveT<cplx> d;
        switch (kind) {
            case PainleveKind::P3: d = reduced_rhs_p3(std::get<P3Monodromy>(params), s); break;
            case PainleveKind::P4: d = reduced_rhs_p4(std::get<P4Monodromy>(params), s); break;
            case PainleveKind::P5: d = reduced_rhs_p5(std::get<P5Monodromy>(params), s); break;
            case PainleveKind::P6: d = p6_w_rhs(std::get<P6Monodromy>(params), s); break;
        }
        VecX out(6);
        out << d.w[0], d.w[1], d.w[2], d.ws[0], d.ws[1], d.ws[2];
        return out;
    };
}

inline NamedValues integrals_of(PainleveKind kind, const WaveState& s,
                                const MonodromyVariant& params) {
    switch (kind) {
        case PainleveKind::P3: return first_integrals_p3(s, std::get<P3Monodromy>(params));
        case PainleveKind::P4: return first_integrals_p4(s);
        case PainleveKind::P5: return first_integrals_p5(s, std::get<P5Monodromy>(params));
        case PainleveKind::P6: return first_integrals_p6(s, std::get<P6Monodromy>(params));
    }
    return {};
}

// drift rows of the printed first integrals between the two trajectory ends
inline std::vector<ReportRow> drift_rows(PainleveKind kind, const MonodromyVariant& params,
                                         const Trajectory& traj, double tol) {
    WaveState a = unpack_wave(traj.front().state, traj.front().t);
    WaveState b = unpack_wave(traj.back().state, traj.back().t);
    auto ia = integrals_of(kind, a, params);
    auto ib = integrals_of(kind, b, params);
    std::vector<ReportRow> rows;
    for (size_t k = 0; k < ia.size(); ++k) {
        cplx drift = (ib[k].second - ia[k].second) /
                     std::max(1.0, std::abs(ia[k].second));
        rows.push_back(ReportRow::residual("drift_" + ia[k].first, drift, tol));
    }
    return rows;
}

inline ComplexPath parse_path(const json& cfg, cplx start) {
    if (!cfg.contains("path")) fail(ErrorCode::ConfigError, "missing field: path");
    const json& p = cfg.at("path");
    if (p.contains("vertices")) {
        std::vector<cplx> pts;
        for (const auto& v : p.at("vertices")) pts.push_back(cplx_from_json(v));
        return ComplexPath(pts, p.value("closed", false));
    }
    if (p.contains("to")) return ComplexPath::segment(start, cplx_from_json(p.at("to")));
    fail(ErrorCode::ConfigError, "path needs either vertices or to");
}

}  // namespace cli_detail

inline RunResult run_config(const json& cfg);

namespace cli_detail {

inline void scenario_integrate(const json& cfg, RunResult& out) {
    PainleveKind kind = parse_kind(cfg.at("kind").get<std::string>());
    MonodromyVariant params = parse_params(kind, cfg.value("parameters", json::object()));
    WaveState s0 = parse_wave(cfg.at("initial"));
    IntegratorConfig ic = parse_integrator(cfg);
    double tol = residual_tolerance(cfg, 1e-8);
    ComplexPath path = parse_path(cfg, s0.t);
    Trajectory traj = integrate_path(wave_rhs(kind, params), pack_wave(s0), path, ic);
    out.trajectory_csv = trajectory_to_csv(traj, {"w1", "w2", "w3", "ws1", "ws2", "ws3"});
    out.report.rows = drift_rows(kind, params, traj, tol);
}

inline void scenario_residuals(const json& cfg, RunResult& out) {
    // canonical-equation residual along the fifth Painleve coordinate chart
    PainleveKind kind = parse_kind(cfg.value("kind", "P5"));
    if (kind != PainleveKind::P5)
        fail(ErrorCode::ConfigError, "residuals scenario supports kind P5");
    P5Monodromy p = std::get<P5Monodromy>(parse_params(kind, cfg.value("parameters", json::object())));
    const json& init = cfg.at("initial");
    CoordState c{CoordVariant::C40_P5, get_cplx(init, "y"), get_cplx(init, "z")};
    cplx t0 = get_cplx(init, "t");
    cplx t1 = get_cplx(cfg.at("path"), "to");
    int samples = cfg.value("samples", 9);
    double tol = residual_tolerance(cfg, 1e-9);
    IntegratorConfig ic = parse_integrator(cfg);

    auto rhs = [&](cplx t, const VecX& v) {
        CoordState cc{CoordVariant::C40_P5, v(0), v(1)};
        auto d = coordinate_rhs(cc, p, t);
        VecX o(2);
        o << d.dy, d.dz;
        return o;
    };
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        cplx t = t0 + (t1 - t0) * double(k) / double(samples - 1);
        VecX v(2);
        v << c.y, c.z;
        if (t != t0) v = integrate_path(rhs, v, ComplexPath::segment(t0, t), ic).back().state;
        CoordState cc{CoordVariant::C40_P5, v(0), v(1)};
        auto flow = coordinate_rhs(cc, p, t);
        CoordJet cj;
        cj.variant = CoordVariant::C40_P5;
        cj.y = jet(cc.y, flow.dy);
        cj.z = jet(cc.z, flow.dz);
        auto dj = coordinate_rhs(cj, p, seed(t));
        worst = std::max(worst, std::abs(painleve_residual(PainleveKind::P5, p5_coefficients(p), t,
                                                           cc.y, flow.dy, dj.dy.d)));
    }
    out.report.rows.push_back(ReportRow::residual("max_painleve_residual", worst, tol));
}

inline void scenario_zero_curvature(const json& cfg, RunResult& out) {
    std::string variant = cfg.at("variant").get<std::string>();
    double tol = residual_tolerance(cfg, 1e-11);
    int count = cfg.value("lambda_count", 10);
    std::mt19937 rng(cfg.value("lambda_seed", 7));
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    PairWithDt pd;
    if (variant == "NY-3x3" || variant == "reduced-NY") {
        SymP4Monodromy p;
        const json& pj = cfg.value("parameters", json::object());
        p.v2 = get_cplx(pj, "v2", cplx(0));
        p.v3 = get_cplx(pj, "v3", cplx(0));
        SymP4State s;
        if (cfg.contains("initial")) {
            const json& init = cfg.at("initial");
            for (int k = 0; k < 3; ++k) s.f[k] = cplx_from_json(init.at("f").at(k));
            s.z = get_cplx(init, "z");
        }
        auto ds = reduced_rhs_symp4(p, s);
        pd = (variant == "NY-3x3") ? build_ny_pair(s, ds, p) : build_reduced_ny_pair(s, ds, p);
    } else if (variant == "JM-P5" || variant == "true-JM-P5") {
        P5Monodromy p =
            std::get<P5Monodromy>(parse_params(PainleveKind::P5, cfg.value("parameters", json::object())));
        const json& init = cfg.at("initial");
        CoordState c;
        c.variant = (variant == "JM-P5") ? CoordVariant::JM_P5 : CoordVariant::TRUE_JM_P5;
        c.y = get_cplx(init, "y");
        c.z = get_cplx(init, "z");
        c.u = get_cplx(init, "u", cplx(1));
        cplx t = get_cplx(init, "t");
        auto dc = coordinate_rhs(c, p, t);
        pd = (variant == "JM-P5") ? build_jm_p5_pair(c, dc, p, t) : build_true_jm_pair(c, dc, p, t);
    } else {
        WaveState s = parse_wave(cfg.at("initial"));
        if (variant == "P6-3x3") {
            P6Monodromy p = std::get<P6Monodromy>(
                parse_params(PainleveKind::P6, cfg.value("parameters", json::object())));
            pd = build_p6_pair(s, p6_w_rhs(p, s), p);
        } else if (variant == "P5-3x3" || variant == "reduced-P5") {
            P5Monodromy p = std::get<P5Monodromy>(
                parse_params(PainleveKind::P5, cfg.value("parameters", json::object())));
            auto ds = reduced_rhs_p5(p, s);
            pd = (variant == "P5-3x3") ? build_p5_pair(s, ds, p) : build_reduced_p5_pair(s, ds, p);
        } else if (variant == "P4-3x3" || variant == "reduced-P4") {
            P4Monodromy p = std::get<P4Monodromy>(
                parse_params(PainleveKind::P4, cfg.value("parameters", json::object())));
            auto ds = reduced_rhs_p4(p, s);
            pd = (variant == "P4-3x3") ? build_p4_pair(s, ds, p) : build_reduced_p4_pair(s, ds, p);
        } else if (variant == "P3-3x3" || variant == "reduced-P3") {
            P3Monodromy p = std::get<P3Monodromy>(
                parse_params(PainleveKind::P3, cfg.value("parameters", json::object())));
            auto ds = reduced_rhs_p3_tau(p, s);
            pd = (variant == "P3-3x3") ? build_p3_pair(s, ds, p) : build_reduced_p3_pair(s, ds, p);
        } else {
            fail(ErrorCode::ConfigError, "unknown variant: " + variant);
        }
    }

    for (int k = 0; k < count; ++k) {
        cplx lambda;
        for (;;) {
            lambda = 2.0 * cplx(u(rng), u(rng));
            bool ok = true;
            for (cplx s : pd.pair.singularities) ok = ok && std::abs(lambda - s) > 0.3;
            if (ok) break;
        }
        double r = zero_curvature_residual(pd, lambda);
        std::ostringstream label;
        label << "zc[" << variant << "] lambda=" << std::setprecision(3) << lambda.real()
              << (lambda.imag() >= 0 ? "+" : "") << lambda.imag() << "i";
        out.report.rows.push_back(ReportRow::residual(label.str(), r, tol));
    }
}

inline void scenario_parametrize(const json& cfg, RunResult& out) {
    PainleveKind kind = parse_kind(cfg.at("kind").get<std::string>());
    const json& init = cfg.at("initial");
    GaugeFactors gauge{get_cplx(init, "f", cplx(1)), get_cplx(init, "g", cplx(1))};
    cplx t = get_cplx(init, "t");
    double tol = residual_tolerance(cfg, 1e-8);
    MonodromyVariant params = parse_params(kind, cfg.value("parameters", json::object()));

    CoordState c;
    c.y = get_cplx(init, "y", cplx(0));
    c.z = get_cplx(init, "z", cplx(0));
    c.w = get_cplx(init, "w", cplx(0));
    c.yprime = get_cplx(init, "yprime", cplx(0));

    WaveJet wj;
    WaveT<cplx> want;
    if (kind == PainleveKind::P5) {
        auto p = std::get<P5Monodromy>(params);
        c.variant = CoordVariant::C40_P5;
        auto flow = coordinate_rhs(c, p, t);
        auto gd = gauge_rhs_p5(c, p, t);
        CoordJet cj;
        cj.variant = c.variant;
        cj.y = jet(c.y, flow.dy);
        cj.z = jet(c.z, flow.dz);
        GaugeT<Jet1> gj{jet(gauge.f, gauge.f * gd.dlogf), jet(gauge.g, gauge.g * gd.dlogg)};
        wj = w_from_coords_p5(cj, gj, p, seed(t));
        WaveState w;
        for (int k = 0; k < 3; ++k) {
            w.w[k] = wj.w[k].v;
            w.ws[k] = wj.ws[k].v;
        }
        w.t = t;
        want = reduced_rhs_p5(p, w);
    } else if (kind == PainleveKind::P4) {
        auto p = std::get<P4Monodromy>(params);
        c.variant = CoordVariant::YZ_P4;
        auto flow = coordinate_rhs(c, p, t);
        auto gd = gauge_rhs_p4(c, p, t);
        CoordJet cj;
        cj.variant = c.variant;
        cj.y = jet(c.y, flow.dy);
        cj.z = jet(c.z, flow.dz);
        GaugeT<Jet1> gj{jet(gauge.f, gauge.f * gd.dlogf), jet(gauge.g, gauge.g * gd.dlogg)};
        wj = w_from_coords_p4(cj, gj, p, seed(t));
        WaveState w;
        for (int k = 0; k < 3; ++k) {
            w.w[k] = wj.w[k].v;
            w.ws[k] = wj.ws[k].v;
        }
        w.t = t;
        want = reduced_rhs_p4(p, w);
    } else if (kind == PainleveKind::P3) {
        auto p = std::get<P3Monodromy>(params);
        c.variant = CoordVariant::YZW_P3;
        auto flow = coordinate_rhs(c, p, t);
        auto gd = gauge_rhs_p3(c, p, t);
        CoordJet cj;
        cj.variant = c.variant;
        cj.y = jet(c.y, flow.dy);
        cj.z = jet(c.z, flow.dz);
        GaugeT<Jet1> gj{jet(gauge.f, gauge.f * gd.dlogf), jet(gauge.g, gauge.g * gd.dlogg)};
        wj = w_from_coords_p3(cj, gj, p, seed(t));
        WaveState w;
        for (int k = 0; k < 3; ++k) {
            w.w[k] = wj.w[k].v;
            w.ws[k] = wj.ws[k].v;
        }
        w.t = t;
        want = reduced_rhs_p3(p, w);
    } else {
        fail(ErrorCode::ConfigError, "parametrize scenario supports P3, P4 and P5");
    }
    double defect = 0.0;
    for (int k = 0; k < 3; ++k) {
        defect = std::max(defect, std::abs(wj.w[k].d - want.w[k]) / std::max(1.0, std::abs(want.w[k])));
        defect =
            std::max(defect, std::abs(wj.ws[k].d - want.ws[k]) / std::max(1.0, std::abs(want.ws[k])));
    }
    out.report.rows.push_back(ReportRow::residual("amplitude_chain_defect", defect, tol));
    json wout = json::array();
    for (int k = 0; k < 3; ++k) wout.push_back(cplx_to_json(wj.w[k].v));
    out.report.parameters["w"] = wout;
}

inline void scenario_similarity(const json& cfg, RunResult& out) {
    PainleveKind kind = parse_kind(cfg.at("kind").get<std::string>());
    MonodromyVariant params = parse_params(kind, cfg.value("parameters", json::object()));
    WaveState s0 = parse_wave(cfg.at("initial"));
    double tol = residual_tolerance(cfg, 1e-8);
    SimilarityField field(kind, params, s0, parse_integrator(cfg));
    if (!cfg.contains("points")) fail(ErrorCode::ConfigError, "similarity scenario needs points");
    int idx = 0;
    for (const auto& pt : cfg.at("points")) {
        cplx x1 = cplx_from_json(pt.at(0)), x2 = cplx_from_json(pt.at(1)),
             x3 = cplx_from_json(pt.at(2));
        auto r = pde_residual_3wri(field, x1, x2, x3);
        out.report.rows.push_back(
            ReportRow::residual("pde_residual[" + std::to_string(idx++) + "]", r.max_abs(), tol));
    }
}

inline void scenario_backlund(const json& cfg, RunResult& out, bool okamoto) {
    P5Monodromy p =
        std::get<P5Monodromy>(parse_params(PainleveKind::P5, cfg.value("parameters", json::object())));
    const json& init = cfg.at("initial");
    CoordState c{CoordVariant::C40_P5, get_cplx(init, "y"), get_cplx(init, "z")};
    cplx t0 = get_cplx(init, "t");
    cplx t1 = get_cplx(cfg.at("path"), "to");
    int samples = cfg.value("samples", okamoto ? 9 : 4);
    double tol = residual_tolerance(cfg, okamoto ? 1e-10 : 1e-5);
    if (okamoto) {
        auto v = verify_on_trajectory(TransformTag::OKAMOTO, c, p, t0, t1, samples, tol);
        out.report.rows.push_back(ReportRow::residual("okamoto_chain_residual", v.max_residual, tol));
    } else {
        BranchChoice b;
        if (cfg.contains("branch")) {
            const auto& br = cfg.at("branch");
            b.eps = br.value("eps", 1);
            b.eps1 = br.value("eps1", 1);
            b.eps2 = br.value("eps2", 1);
        }
        auto v = verify_on_trajectory(TransformTag::GROMAK, c, p, t0, t1, samples, tol, &b);
        out.report.rows.push_back(ReportRow::residual("backlund_fd_residual", v.max_residual, tol));
    }
}

inline void scenario_monodromy(const json& cfg, RunResult& out) {
    P5Monodromy p =
        std::get<P5Monodromy>(parse_params(PainleveKind::P5, cfg.value("parameters", json::object())));
    const json& init = cfg.at("initial");
    CoordState c0{CoordVariant::JM_P5, get_cplx(init, "y"), get_cplx(init, "z"),
                  get_cplx(init, "u", cplx(1))};
    cplx t0 = get_cplx(init, "t");
    cplx t1 = cfg.contains("path") ? get_cplx(cfg.at("path"), "to") : t0;
    double tol = residual_tolerance(cfg, 1e-6);
    IntegratorConfig ic = parse_integrator(cfg);

    std::vector<LoopSpec> loops;
    if (cfg.contains("loops")) {
        for (const auto& lj : cfg.at("loops")) {
            LoopSpec l;
            l.center = cplx_from_json(lj.at("center"));
            l.radius = lj.at("radius").get<double>();
            l.segments = lj.value("segments", 64);
            l.base_angle = lj.value("base_angle", 0.0);
            loops.push_back(l);
        }
    } else {
        loops = {{cplx(0.0), 0.4}, {cplx(1.0), 0.4}};
    }

    auto rhs = [&](cplx t, const VecX& v) {
        CoordState c{CoordVariant::JM_P5, v(0), v(1), v(2)};
        auto d = coordinate_rhs(c, p, t);
        VecX o(3);
        o << d.dy, d.dz, v(2) * d.dlogu;
        return o;
    };
    PairFamily family = [&](cplx t) {
        VecX v(3);
        v << c0.y, c0.z, c0.u;
        if (t != t0) v = integrate_path(rhs, v, ComplexPath::segment(t0, t), ic).back().state;
        CoordState c{CoordVariant::JM_P5, v(0), v(1), v(2)};
        return build_jm_p5_pair(c, coordinate_rhs(c, p, t), p, t).pair;
    };

    LinearPair pr = family(t0);
    for (size_t k = 0; k < loops.size(); ++k) {
        auto rep = monodromy_matrix(pr, loops[k], ic);
        out.report.parameters["trace_loop_" + std::to_string(k)] = cplx_to_json(rep.trace);
        // trace of the loop monodromy against the local-exponent prediction
        cplx singular = loops[k].center;
        VecX ex = local_exponents(pr, singular);
        cplx predicted = std::exp(cplx(0, 2 * M_PI) * ex(0)) + std::exp(cplx(0, 2 * M_PI) * ex(1));
        out.report.rows.push_back(ReportRow::residual("exponent_match_loop_" + std::to_string(k),
                                                      rep.trace - predicted, 1e-6));
    }
    if (t1 != t0) {
        double drift = isomonodromy_drift(family, t0, t1, loops, ic);
        out.report.rows.push_back(ReportRow::residual("trace_drift", drift, tol));
    }
}

inline void scenario_reduce(const json& cfg, RunResult& out) {
    std::string reduction = cfg.at("reduction").get<std::string>();
    if (reduction == "p5-alt") {
        WaveState s = parse_wave(cfg.at("initial"));
        cplx theta_inf = get_cplx(cfg.value("parameters", json::object()), "theta_inf", cplx(0));
        P5Monodromy p = p5_constrained_params(s, theta_inf);
        auto r = p5_alt_reduce(s, p);
        out.report.rows.push_back(ReportRow::residual("det_B", r.report.det_B, 1e-12));
        out.report.rows.push_back(ReportRow::residual("gauge_diagonalization", r.report.diagonalization, 1e-10));
        out.report.rows.push_back(ReportRow::residual("H_diagonalization", r.report.h_diagonalization, 1e-10));
        out.report.rows.push_back(ReportRow::residual("tr_A0", r.report.tr_A0, 1e-10));
        out.report.rows.push_back(ReportRow::residual("tr_A1", r.report.tr_A1, 1e-10));
        out.report.rows.push_back(
            ReportRow::residual("det_A0_defect", r.report.det_A0 + p.mtilde() * p.mtilde() / 4.0, 1e-10));
        out.report.rows.push_back(
            ReportRow::residual("det_A1_defect", r.report.det_A1 + p.m * p.m / 4.0, 1e-10));
        out.report.rows.push_back(ReportRow::residual("diag_sum_defect", r.report.diag_defect, 1e-10));
        out.report.rows.push_back(
            ReportRow::residual("mu_sum_defect", r.report.mu_sum_defect, 1e-12));
    } else if (reduction == "p6-fuchsian") {
        WaveState s = parse_wave(cfg.at("initial"));
        P6Monodromy p =
            std::get<P6Monodromy>(parse_params(PainleveKind::P6, cfg.value("parameters", json::object())));
        cplx t_end = cfg.contains("path") ? get_cplx(cfg.at("path"), "to") : s.t;
        auto r = p6_fuchsian_reduce(s, p, t_end, parse_integrator(cfg));
        out.report.rows.push_back(ReportRow::residual("zero_column", r.zero_column_norm, 1e-8));
        out.report.rows.push_back(
            ReportRow::residual("conjugation_drift", r.conjugation_drift, 1e-8));
        std::array<cplx, 3> expected{p.theta1, p.theta2, p.theta3};
        for (int k = 0; k < 3; ++k) {
            EigResult eg = eig_small(MatX(r.residues2[k]));
            double match =
                std::min(std::abs(eg.values(0) - expected[k]) + std::abs(eg.values(1)),
                         std::abs(eg.values(1) - expected[k]) + std::abs(eg.values(0)));
            out.report.rows.push_back(
                ReportRow::residual("exponents_residue_" + std::to_string(k), match, 1e-8));
        }
    } else if (reduction == "p3-eigen") {
        WaveState s = parse_wave(cfg.at("initial"));
        P3Monodromy p =
            std::get<P3Monodromy>(parse_params(PainleveKind::P3, cfg.value("parameters", json::object())));
        auto r = p3_alt_eigenreduce(s, p);
        out.report.rows.push_back(ReportRow::residual("det_rhs", r.det_rhs, 1e-9));
        out.report.rows.push_back(ReportRow::residual("zero_column", r.zero_column_norm, 1e-9));
    } else {
        fail(ErrorCode::ConfigError, "unknown reduction: " + reduction);
    }
}

}  // namespace cli_detail

inline RunResult run_config(const json& cfg) {
    RunResult out;
    try {
        if (!cfg.contains("scenario") || !cfg.at("scenario").is_string())
            fail(ErrorCode::ConfigError, "missing field: scenario");
        std::string scenario = cfg.at("scenario").get<std::string>();
        out.report.scenario = scenario;
        if (cfg.contains("parameters")) out.report.parameters = cfg.at("parameters");

        if (scenario == "integrate") {
            cli_detail::scenario_integrate(cfg, out);
        } else if (scenario == "residuals") {
            cli_detail::scenario_residuals(cfg, out);
        } else if (scenario == "zero-curvature") {
            cli_detail::scenario_zero_curvature(cfg, out);
        } else if (scenario == "parametrize") {
            cli_detail::scenario_parametrize(cfg, out);
        } else if (scenario == "similarity") {
            cli_detail::scenario_similarity(cfg, out);
        } else if (scenario == "backlund") {
            cli_detail::scenario_backlund(cfg, out, false);
        } else if (scenario == "okamoto") {
            cli_detail::scenario_backlund(cfg, out, true);
        } else if (scenario == "monodromy") {
            cli_detail::scenario_monodromy(cfg, out);
        } else if (scenario == "reduce") {
            cli_detail::scenario_reduce(cfg, out);
        } else {
            fail(ErrorCode::ConfigError, "unknown scenario: " + scenario);
        }
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::ConfigError:
                out.exit_code = 2;
                break;
            default:
                out.exit_code = 3;
        }
        out.report.rows.push_back({std::string(error_name(e.code())) + ": " + e.what(), cplx(0), 0.0,
                                   false});
        return out;
    } catch (const json::exception& e) {
        out.exit_code = 2;
        out.report.rows.push_back({std::string("ConfigError: ") + e.what(), cplx(0), 0.0, false});
        return out;
    }
    out.exit_code = out.report.all_pass() ? 0 : 1;
    return out;
}

inline json concordance_json() {
    json out;
    out["spec_version"] = 1;
    json entries = json::array();
    for (const auto& [label, op] : concordance_table())
        entries.push_back({{"label", label}, {"operation", op}});
    out["entries"] = entries;
    out["count"] = concordance_table().size();
    return out;
}

}  // namespace painlax
