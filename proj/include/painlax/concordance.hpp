#pragma once

// Formula-identifier index: every implemented display formula carries a
// stable label used throughout the test suite; this table maps each label
// to the operation that realizes it.

#include <string>
#include <utility>
#include <vector>

namespace painlax {

inline const std::vector<std::pair<std::string, std::string>>& concordance_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"(P3)", "systems.painleve_residual"},
        {"(P4)", "systems.painleve_residual"},
        {"(P5)", "systems.painleve_residual"},
        {"(P6)", "systems.painleve_residual"},
        {"(3WRIcharac)", "parametrize.pde_residual_3wri"},
        {"(3WRI-LP)", "parametrize.similarity_assemble"},
        {"(SimRedVI)", "parametrize.similarity_assemble"},
        {"(eq:P6-rho-relation)", "systems.FormalMonodromies"},
        {"(RedSysVIa)", "systems.reduced_rhs"},
        {"(RedSysVIb)", "systems.reduced_rhs"},
        {"(LP-VIgen)", "linpair.build_pair"},
        {"(LP-P6)", "linpair.build_pair"},
        {"(eq:FG-P6-ti-Y)", "linpair.p6_fuchsian_reduce"},
        {"(R3-Fuchsian)", "linpair.p6_fuchsian_reduce"},
        {"(P6-JM)", "linpair.p6_fuchsian_reduce"},
        {"(Mazz-param)", "parametrize.w_from_coords"},
        {"(eq:log-f)", "parametrize.gauge_rhs"},
        {"(eq:log-g)", "parametrize.gauge_rhs"},
        {"(Mazz-param2)", "parametrize.similarity_assemble"},
        {"(SimRedV)", "parametrize.similarity_assemble"},
        {"(SimRedV-tau)", "parametrize.similarity_assemble"},
        {"(RedSysV)", "parametrize.similarity_assemble"},
        {"(eq:P5-FG-3x3)", "linpair.build_pair"},
        {"(eq:P5-Bk-def)", "linpair.build_pair"},
        {"(eq:P5-Minfty-def)", "linpair.build_pair"},
        {"(P5sys)", "systems.reduced_rhs"},
        {"(eq:FG-P5-linear)", "linpair.p5_linear_form"},
        {"(eq:P5-J0J)", "linpair.p5_linear_form"},
        {"(eq:P5-B)", "linpair.p5_big_b"},
        {"(eq:P5-M)", "linpair.p5_linear_form"},
        {"(P5-LT)", "linpair.laplace_reduce"},
        {"(eq:P5-FG-2lambda)", "linpair.laplace_reduce"},
        {"(eq:P5-FG-2t)", "linpair.laplace_reduce"},
        {"(integrals5a)", "systems.first_integrals"},
        {"(P5-eqn)", "parametrize.coords_from_w"},
        {"(C.40)", "systems.coordinate_rhs"},
        {"(y-dash)", "systems.coordinate_rhs"},
        {"(eq:P5-z)", "systems.coordinate_rhs"},
        {"(eq:P5-u)", "systems.coordinate_rhs"},
        {"(eq:P5-coefficients-thetas)", "systems.painleve_residual"},
        {"(P5-wfunctions)", "parametrize.w_from_coords"},
        {"(eq:P5-fg-yz)", "parametrize.gauge_rhs"},
        {"(P5-fgfunctions)", "parametrize.gauge_rhs"},
        {"(P5-sigma)", "systems.sigma_residual"},
        {"(eq:P5-sigma-prime)", "systems.sigma_residual"},
        {"(P5-sigmaODE)", "systems.sigma_residual"},
        {"(eq:y-1/y-sigma)", "parametrize.reality_check"},
        {"(eq:P5-vj-wj)", "parametrize.similarity_assemble"},
        {"(eq:P5-real)", "parametrize.reality_check"},
        {"(eq:P5alt-m-def)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-tildeB)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-3x3linear)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-Ak)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-tildeMinfty)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-13-23-zeroes)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-MinftyAk-block)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-H-def)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-JM1)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-Dinfinity)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-D)", "linpair.p5_alt_reduce"},
        {"(eq:P5alt-JM-true)", "linpair.build_pair"},
        {"(eq:P5alt-A0+A1)", "linpair.p5_alt_reduce"},
        {"(eq:P5Okamoto-mu-quadratic)", "numkit.polyroot_quadratic"},
        {"(eq:P5Okamoto-H)", "linpair.p5_alt_reduce"},
        {"(eq:P5Okamoto-A1+A2)", "linpair.p5_alt_reduce"},
        {"(eq:P5Okamoto-hat-thetas)", "transforms.okamoto_p5"},
        {"(eq:P5Okamoto-hat-z)", "transforms.okamoto_p5"},
        {"(eq:P5Okamoto-hat-y)", "transforms.okamoto_p5"},
        {"(eq:P5Okamoto-hat-u)", "transforms.okamoto_p5"},
        {"(eq:P5Okamoto-transformations-yzu)", "transforms.okamoto_p5"},
        {"(eq:P5Okamoto-coefficients-natural)", "transforms.okamoto_p5"},
        {"(eq:P5-Okamoto-lderivative-hat-u)", "transforms.okamoto_p5"},
        {"(eq:P5Okamoto-integral)", "linpair.okamoto_kernel"},
        {"(eq:P5Okamoto-PQDmu)", "linpair.okamoto_kernel"},
        {"(SimRedIV)", "parametrize.similarity_assemble"},
        {"(SimRedIVb)", "parametrize.similarity_assemble"},
        {"(RedSysIV)", "parametrize.similarity_assemble"},
        {"(eq:P4-phi)", "parametrize.similarity_assemble"},
        {"(LP-IVgen)", "linpair.build_pair"},
        {"(LP-P4)", "linpair.build_pair"},
        {"(P4sys)", "systems.reduced_rhs"},
        {"(P4-LT1)", "linpair.laplace_reduce"},
        {"(P4-LT2)", "linpair.laplace_reduce"},
        {"(P4-JM)", "linpair.laplace_reduce"},
        {"(P4sysint)", "systems.first_integrals"},
        {"(P4-eqn)", "parametrize.coords_from_w"},
        {"(eq:yz-P4)", "systems.coordinate_rhs"},
        {"(P4-w)", "parametrize.w_from_coords"},
        {"(P4-f,g)", "parametrize.gauge_rhs"},
        {"(P4-f,g-integrals)", "parametrize.gauge_rhs"},
        {"(P4-sigma)", "systems.sigma_residual"},
        {"(eq:sigma-prime-P4)", "systems.sigma_residual"},
        {"(eq:P4-y-sigma)", "systems.sigma_residual"},
        {"(eq:sigma-P4)", "systems.sigma_residual"},
        {"(eq:P4-f,g-integrals-sigma)", "parametrize.gauge_rhs"},
        {"(eq:P4-vj-wj)", "parametrize.similarity_assemble"},
        {"(eq:symmetric-P4)", "systems.reduced_rhs"},
        {"(eq:P4-symmetric-y)", "systems.painleve_residual"},
        {"(eq:P4-symmetric-coeff)", "systems.painleve_residual"},
        {"(NY-P4-FG-z)", "linpair.build_pair"},
        {"(eq:NY-P4-FG-x)", "linpair.build_pair"},
        {"(eq:P4-v1=1)", "linpair.laplace_reduce"},
        {"(eq:P4-FG-tilde-Psi)", "linpair.laplace_reduce"},
        {"(eq:P4-FG-tilde-Y)", "linpair.laplace_reduce"},
        {"(SimRedIII)", "parametrize.similarity_assemble"},
        {"(RedSysIII)", "parametrize.similarity_assemble"},
        {"(lambdaIII)", "linpair.build_pair"},
        {"(LP-IIIgen)", "linpair.build_pair"},
        {"(LP-P3)", "linpair.build_pair"},
        {"(P3-JM)", "linpair.laplace_reduce"},
        {"(P3-compatibility)", "systems.reduced_rhs"},
        {"(eq:P3-first-integrals)", "systems.first_integrals"},
        {"(y-P3)", "parametrize.coords_from_w"},
        {"(eq:WJ)", "parametrize.w_from_coords"},
        {"(P3-f,g)", "parametrize.gauge_rhs"},
        {"(3WRI-P3)", "parametrize.similarity_assemble"},
        {"(eq:z-P3)", "systems.coordinate_rhs"},
        {"(eq:P3-degenerate-P5)", "systems.p3_to_degenerate_p5"},
        {"(P5-delta=0)", "linpair.p3_alt_eigenreduce"},
        {"(eq:backlund-y)", "transforms.gromak_backlund"},
        {"(eq:backlund-alpha)", "transforms.gromak_backlund"},
        {"(eq:backlund-beta)", "transforms.gromak_backlund"},
        {"(eq:backlund-gamma)", "transforms.gromak_backlund"},
        {"(aeq:mainl)", "linpair.build_pair"},
        {"(aeq:JM-P5parametrization)", "linpair.build_pair"},
        {"(aeq:ids1)", "systems.coordinate_rhs"},
        {"(aeq:ids2)", "systems.coordinate_rhs"},
        {"(aeq:ids3)", "systems.coordinate_rhs"},
        {"(aeq:maint)", "linpair.build_pair"},
        {"(eq:roots-theta)", "transforms.theta_lattice"},
        {"(eq:roots-theta-^)", "transforms.theta_lattice"},
        {"(eq:theta-epsilon-infty)", "transforms.theta_lattice"},
        {"(eq:theta-epsilon-0+1)", "transforms.theta_lattice"},
        {"(eq:theta-epsilon-0-1)", "transforms.theta_lattice"},
        {"(aeq:Spm)", "transforms.schlesinger_theta"},
        {"(aeq:R_0)", "transforms.reflection"},
        {"(aeq:R_1)", "transforms.reflection"},
        {"(aeq:R_inf)", "transforms.reflection"},
        {"(aeq:R_01)", "transforms.reflection"},
        {"(aeq:O)", "transforms.okamoto_p5"},
        {"(aeq:true-P5parametrization)", "linpair.build_pair"},
        {"(aeq:y-true)", "systems.coordinate_rhs"},
        {"(aeq:z-true)", "systems.coordinate_rhs"},
        {"(aeq:u-true)", "systems.coordinate_rhs"},
        {"(aeq:P5-JM-true-coefficients)", "systems.painleve_residual"},
    };
    return table;
}

}  // namespace painlax
