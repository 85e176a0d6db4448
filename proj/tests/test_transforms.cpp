#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "painlax/linpair.hpp"
#include "painlax/transforms.hpp"

using namespace painlax;

namespace {

std::mt19937 rng(31);

cplx rand_cplx(double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

cplx rand_away(double min_abs = 0.3) {
    for (;;) {
        cplx z = rand_cplx();
        if (std::abs(z) >= min_abs) return z;
    }
}

std::vector<BranchChoice> all_branches() {
    std::vector<BranchChoice> out;
    for (int a : {1, -1})
        for (int b : {1, -1})
            for (int c : {1, -1})
                for (int d : {1, -1})
                    for (int e : {1, -1}) out.push_back({a, b, c, d, e});
    return out;
}

}  // namespace

TEST_CASE("classical transformation at printed points") {
    PainleveCoefficients c{0.5, -0.5, 0.0, -0.5};
    GromakRoots r{1.0, 1.0, 1.0};
    auto g = gromak_backlund(1.0, 2.0, 0.0, c, r);
    REQUIRE(std::abs(g.coefficients.alpha - 0.125) < 1e-15);
    REQUIRE(std::abs(g.coefficients.beta + 0.125) < 1e-15);
    REQUIRE(std::abs(g.coefficients.gamma) < 1e-15);
    REQUIRE(std::abs(g.coefficients.delta + 0.5) < 1e-15);
    REQUIRE(std::abs(g.y_hat - 5.0) < 1e-14);

    PainleveCoefficients nodelta{0.5, -0.5, 0.0, 0.0};
    REQUIRE_THROWS_AS(gromak_backlund(1.0, 2.0, 0.0, nodelta, r), Error);
}

TEST_CASE("theta lattice at the origin") {
    BranchChoice all_plus;
    ThetaTriple z{0, 0, 0};
    auto h = theta_lattice(z, all_plus);
    // at the all-plus tuple the lattice acts as the dressing shift S++
    REQUIRE(std::abs(h.theta_inf - 1.0) < 1e-15);
    REQUIRE(std::abs(h.theta0 - h.theta1 - 1.0) < 1e-15);
    REQUIRE(std::abs(h.theta0 + h.theta1 - 1.0) < 1e-15);

    BranchChoice mixed;
    mixed.eps2_hat = -1;
    auto m = theta_lattice(z, mixed);
    REQUIRE(std::abs(m.theta_inf - 1.0) < 1e-15);
    REQUIRE(std::abs(m.theta0 - m.theta1 - 1.0) < 1e-15);
    REQUIRE(std::abs(m.theta0 + m.theta1 - 1.0) < 1e-15);
}

TEST_CASE("lattice maps are unimodular and decomposable") {
    for (const auto& b : all_branches()) {
        ThetaAffine a = theta_lattice_affine(b);
        REQUIRE(std::abs(std::abs(a.L.determinant()) - 1.0) < 1e-12);
        auto word = decompose_theta_map(a);
        INFO("branch (" << b.eps << "," << b.eps1 << "," << b.eps2 << "," << b.eps1_hat << ","
                        << b.eps2_hat << ")");
        REQUIRE(word.has_value());
        // replay the word and compare against the lattice action
        ThetaAffine replay;
        for (TransformTag g : *word) replay = replay.then(theta_map(g));
        REQUIRE(replay.same_as(a));
    }
}

TEST_CASE("lattice maps agree with the underlying coefficient relations") {
    // substituting the root parametrization into the hatted-coefficient
    // relations must reproduce the lattice, for every branch tuple
    for (const auto& b : all_branches()) {
        ThetaTriple th{rand_cplx(), rand_cplx(), rand_cplx()};
        auto hat = theta_lattice(th, b);
        P5Monodromy p{th.theta0, th.theta1, th.theta_inf, 0};
        GromakRoots r = roots_from_thetas(p, b);
        r.sqrt_m2delta = double(b.eps);
        PainleveCoefficients c = p5_coefficients(p);
        GromakResult g = gromak_backlund(cplx(1.0), cplx(2.0), cplx(0.3), c, r);
        // hatted roots per the hatted branch pair
        cplx sa = double(b.eps1_hat) * (hat.theta0 - hat.theta1 + hat.theta_inf) / 2.0;
        cplx sb = double(b.eps2_hat) * (hat.theta0 - hat.theta1 - hat.theta_inf) / 2.0;
        REQUIRE(std::abs(0.5 * sa * sa - g.coefficients.alpha) < 1e-13);
        REQUIRE(std::abs(-0.5 * sb * sb - g.coefficients.beta) < 1e-13);
        REQUIRE(std::abs((1.0 - hat.theta0 - hat.theta1) - g.coefficients.gamma) < 1e-13);
    }
}

TEST_CASE("group relations at theta level") {
    auto O = theta_map(TransformTag::OKAMOTO);
    auto Rinf = theta_map(TransformTag::RINF);
    auto R01 = theta_map(TransformTag::R01);
    auto R0 = theta_map(TransformTag::R0);
    auto R1 = theta_map(TransformTag::R1);

    // R01 = Rinf o (Rinf o O)^2  (composition left to right in `then`)
    auto RinfO = O.then(Rinf);
    auto composed = RinfO.then(RinfO).then(Rinf);
    REQUIRE(composed.same_as(R01));

    // R1 = R01 o R0 o R01
    REQUIRE(R01.then(R0).then(R01).same_as(R1));

    // conjugating the (theta0 - 1) dressing by the theta0-sign flip gives
    // the (theta0 + 1) dressing
    REQUIRE(theta_map(TransformTag::R0)
                .then(theta_map(TransformTag::S_PM))
                .then(theta_map(TransformTag::R0))
                .same_as(theta_map(TransformTag::S_PP)));

    // the mixing transformation is an involution
    REQUIRE(O.then(O).same_as(ThetaAffine{}));
}

TEST_CASE("dressing shifts") {
    ThetaTriple z{0, 0, 0};
    auto s = schlesinger_theta(TransformTag::S_PP, z);
    REQUIRE(s.theta0 == cplx(1.0));
    REQUIRE(s.theta1 == cplx(0.0));
    REQUIRE(s.theta_inf == cplx(1.0));
    auto back = schlesinger_theta(TransformTag::S_MM, s);
    REQUIRE(back.theta0 == cplx(0.0));
    REQUIRE(back.theta_inf == cplx(0.0));
}

TEST_CASE("Okamoto map at printed points") {
    P5Monodromy p{cplx(2.0), cplx(0.0), cplx(0.0), 0};
    CoordState c{CoordVariant::C40_P5, cplx(2.0), cplx(1.0)};
    auto m = okamoto_p5(c, p, cplx(1.0));
    REQUIRE(m.params.theta0 == cplx(1.0));
    REQUIRE(m.params.theta1 == cplx(-1.0));
    REQUIRE(m.params.theta_inf == cplx(-2.0));
    REQUIRE(m.coords.z == cplx(2.0));
    REQUIRE(m.coords.y == cplx(1.0));

    P5Monodromy zero;
    CoordState c2{CoordVariant::C40_P5, rand_cplx(), rand_cplx()};
    auto id = okamoto_p5(c2, zero, cplx(1.0));
    REQUIRE(std::abs(id.coords.y - c2.y) < 1e-15);
    REQUIRE(std::abs(id.coords.z - c2.z) < 1e-15);
    REQUIRE(id.params.theta0 == cplx(0.0));
}

TEST_CASE("Okamoto map sends chart solutions to chart solutions") {
    // pointwise chain-rule residual against the hatted flow, no integration
    for (int k = 0; k < 100; ++k) {
        P5Monodromy p{rand_cplx(), rand_cplx(), rand_cplx(), 0};
        cplx t = rand_cplx() + cplx(2.0), y = rand_cplx() + cplx(1.6), z = rand_cplx();
        cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
        cplx cm = (p.theta0 - p.theta1 + p.theta_inf) / 2.0;
        if (std::abs(z + cp) < 0.25) continue;
        CoordState c{CoordVariant::C40_P5, y, z};
        auto flow = coordinate_rhs(c, p, t);
        CoordJet cj;
        cj.variant = CoordVariant::C40_P5;
        cj.y = jet(y, flow.dy);
        cj.z = jet(z, flow.dz);
        Jet1 zh = cj.z + cm;
        Jet1 yh = cj.y * cj.z / (cj.z + cp);
        auto m = okamoto_p5(c, p, t);
        CoordState ch{CoordVariant::C40_P5, yh.v, zh.v};
        auto hf = coordinate_rhs(ch, m.params, t);
        REQUIRE(std::abs(yh.d - hf.dy) < 1e-10);
        REQUIRE(std::abs(zh.d - hf.dz) < 1e-10);

        // induced logarithmic-derivative shift of the gauge ratio
        cplx dlogu = coordinate_rhs(c, p, t).dlogu;
        cplx dlogu_hat = coordinate_rhs(ch, m.params, t).dlogu;
        REQUIRE(std::abs(t * dlogu_hat - (t * dlogu + m.dlogu_shift)) < 1e-9);
    }
}

TEST_CASE("reflections at printed points and involution") {
    P5Monodromy p{cplx(1.0), 0, 0, 0};
    CoordState c{CoordVariant::C40_P5, cplx(2.0), cplx(1.0), cplx(1.0)};
    auto r0 = reflection(TransformTag::R0, c, p, cplx(1.0));
    REQUIRE(r0.coords.y == cplx(1.0));
    REQUIRE(r0.coords.z == cplx(2.0));
    REQUIRE(r0.coords.u == cplx(2.0));

    P5Monodromy p2{cplx(0.0), 0, 0, 0};
    CoordState c2{CoordVariant::C40_P5, cplx(2.0), cplx(1.0), cplx(1.0)};
    auto ri = reflection(TransformTag::RINF, c2, p2, cplx(1.0));
    REQUIRE(ri.coords.y == cplx(0.5));
    REQUIRE(ri.coords.z == cplx(-1.0));
    REQUIRE(ri.t == cplx(-1.0));

    for (int k = 0; k < 50; ++k) {
        P5Monodromy pr{rand_cplx(), rand_cplx(), rand_cplx(), 0};
        CoordState cr{CoordVariant::C40_P5, rand_cplx() + cplx(1.5), rand_cplx(), rand_cplx() + cplx(1.5)};
        cplx t = rand_cplx() + cplx(1.5);
        auto once = reflection(TransformTag::R1, cr, pr, t);
        auto twice = reflection(TransformTag::R1, once.coords, once.params, once.t);
        REQUIRE(std::abs(twice.coords.y - cr.y) < 1e-13 * std::max(1.0, std::abs(cr.y)));
        REQUIRE(std::abs(twice.coords.z - cr.z) < 1e-13);
        REQUIRE(std::abs(twice.params.theta1 - pr.theta1) < 1e-15);
    }
}

TEST_CASE("sign flips of theta0 and theta1 are invisible in the natural chart") {
    // the natural-parametrization flow depends on theta0, theta1 only
    // through their squares, so the same solution and the same coefficient
    // set survive either sign flip
    for (int k = 0; k < 20; ++k) {
        P5Monodromy p{rand_cplx(), rand_cplx(), rand_cplx(), 0};
        P5Monodromy pflip = p;
        pflip.theta0 = -p.theta0;
        pflip.theta1 = -p.theta1;
        CoordState c{CoordVariant::TRUE_JM_P5, rand_cplx() + cplx(1.5), rand_cplx()};
        cplx t = rand_cplx() + cplx(1.5);
        auto a = coordinate_rhs(c, p, t);
        auto b = coordinate_rhs(c, pflip, t);
        REQUIRE(std::abs(a.dy - b.dy) < 1e-15);
        REQUIRE(std::abs(a.dz - b.dz) < 1e-15);
        REQUIRE(std::abs(p5_true_jm_coefficients(p).alpha - p5_true_jm_coefficients(pflip).alpha) <
                1e-15);
    }
}

TEST_CASE("reflections R0 and R1 are invisible at the linear level") {
    // the transformed chart reproduces the identical pair matrices, so no
    // monodromy functional can change
    for (int k = 0; k < 20; ++k) {
        P5Monodromy p{rand_away(0.3), rand_cplx(), rand_cplx(), 0};
        CoordState c{CoordVariant::C40_P5, rand_away(0.3), rand_away(0.3), rand_away(0.3)};
        cplx t = rand_away(0.5);
        if (std::abs(c.z + p.theta0) < 0.2) continue;
        cplx cp = (p.theta0 + p.theta1 + p.theta_inf) / 2.0;
        if (std::abs(c.z + cp) < 0.2) continue;

        CoordState cj = c;
        cj.variant = CoordVariant::JM_P5;
        auto base = build_jm_p5_pair(cj, coordinate_rhs(cj, p, t), p, t);
        for (TransformTag tag : {TransformTag::R0, TransformTag::R1}) {
            auto m = reflection(tag, c, p, t);
            CoordState ch = m.coords;
            ch.variant = CoordVariant::JM_P5;
            auto hat = build_jm_p5_pair(ch, coordinate_rhs(ch, m.params, t), m.params, t);
            for (size_t q = 0; q < base.pair.A.poles.size(); ++q)
                REQUIRE((hat.pair.A.poles[q].coeff - base.pair.A.poles[q].coeff).norm() <
                        1e-11 * std::max(1.0, base.pair.A.poles[q].coeff.norm()));
        }
    }
}

TEST_CASE("verification harness on trajectories") {
    P5Monodromy p{cplx(0.21, 0.05), cplx(-0.13, 0.08), cplx(0.17, -0.04), 0};
    CoordState init{CoordVariant::C40_P5, cplx(1.8, 0.2), cplx(0.4, -0.1)};
    cplx t0(1.0), t1(1.6);

    auto ident = verify_on_trajectory(TransformTag::IDENTITY, init, p, t0, t1, 7, 1e-12);
    REQUIRE(ident.pass);

    auto oka = verify_on_trajectory(TransformTag::OKAMOTO, init, p, t0, t1, 7, 1e-10);
    REQUIRE(oka.pass);

    auto r0 = verify_on_trajectory(TransformTag::R0, init, p, t0, t1, 7, 1e-9);
    REQUIRE(r0.pass);

    auto rinf = verify_on_trajectory(TransformTag::RINF, init, p, t0, t1, 7, 1e-9);
    REQUIRE(rinf.pass);

    auto r01 = verify_on_trajectory(TransformTag::R01, init, p, t0, t1, 7, 1e-9);
    REQUIRE(r01.pass);

    BranchChoice plus;
    auto gro = verify_on_trajectory(TransformTag::GROMAK, init, p, t0, t1, 5, 1e-5, &plus);
    REQUIRE(gro.pass);

    // deliberately mismatched branch between the map and the coefficients
    BranchChoice flipped = plus;
    flipped.eps1 = -1;
    auto bad = verify_on_trajectory(TransformTag::GROMAK, init, p, t0, t1, 5, 1e-5, &plus, &flipped);
    REQUIRE_FALSE(bad.pass);
}

TEST_CASE("four distinct branch tuples pass the finite-difference check") {
    P5Monodromy p{cplx(0.11, -0.07), cplx(0.23, 0.04), cplx(-0.15, 0.06), 0};
    CoordState init{CoordVariant::C40_P5, cplx(2.1, -0.1), cplx(0.3, 0.2)};
    // tuples chosen so the transformed solution stays of moderate size on
    // the test window (the eps = -1 family runs close to a movable pole)
    std::vector<BranchChoice> tuples{{1, 1, 1, 1, 1}, {1, -1, 1, 1, 1}, {1, 1, -1, 1, 1},
                                     {1, -1, -1, 1, 1}};
    for (const auto& b : tuples) {
        auto v = verify_on_trajectory(TransformTag::GROMAK, init, p, cplx(1.1), cplx(1.5), 4, 1e-5,
                                      &b);
        INFO("branch eps=" << b.eps << " eps1=" << b.eps1 << " eps2=" << b.eps2);
        REQUIRE(v.pass);
    }
}
