#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "painlax/cli.hpp"

using namespace painlax;
namespace fs = std::filesystem;

namespace {

json ones_initial(double t) {
    json init;
    init["w"] = {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    init["w_star"] = {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    init["t"] = {t, 0.0};
    return init;
}

json integrate_config() {
    json cfg;
    cfg["spec_version"] = 1;
    cfg["scenario"] = "integrate";
    cfg["kind"] = "P5";
    cfg["parameters"] = {{"theta_inf", {0.0, 0.0}}, {"m", {0.0, 0.0}}};
    cfg["initial"] = ones_initial(1.0);
    cfg["path"] = {{"to", {2.0, 0.0}}};
    cfg["tolerances"] = {{"rel_tol", 1e-12}, {"abs_tol", 1e-14}, {"residual", 1e-8}};
    return cfg;
}

}  // namespace

TEST_CASE("integrate scenario: drift rows pass and the CSV is monotone") {
    auto res = run_config(integrate_config());
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.report.all_pass());
    REQUIRE_FALSE(res.trajectory_csv.empty());

    Trajectory traj = trajectory_from_csv(res.trajectory_csv);
    for (size_t k = 1; k < traj.samples.size(); ++k)
        REQUIRE(traj.samples[k].t.real() > traj.samples[k - 1].t.real());
}

TEST_CASE("trajectory CSV round trip reproduces the report bit-identically") {
    json cfg = integrate_config();
    auto res = run_config(cfg);
    REQUIRE(res.exit_code == 0);

    // recompute the drift rows from the re-parsed samples
    Trajectory traj = trajectory_from_csv(res.trajectory_csv);
    P5Monodromy p;  // matches the config parameters
    WaveState a, b;
    for (int k = 0; k < 3; ++k) {
        a.w[k] = traj.front().state(k);
        a.ws[k] = traj.front().state(k + 3);
        b.w[k] = traj.back().state(k);
        b.ws[k] = traj.back().state(k + 3);
    }
    a.t = traj.front().t;
    b.t = traj.back().t;
    auto ia = first_integrals_p5(a, p);
    auto ib = first_integrals_p5(b, p);
    Report recomputed;
    recomputed.scenario = "integrate";
    recomputed.parameters = cfg["parameters"];
    for (size_t k = 0; k < ia.size(); ++k) {
        cplx drift = (ib[k].second - ia[k].second) / std::max(1.0, std::abs(ia[k].second));
        recomputed.rows.push_back(ReportRow::residual("drift_" + ia[k].first, drift, 1e-8));
    }
    REQUIRE(recomputed.to_json()["rows"].dump() == res.report.to_json()["rows"].dump());
}

TEST_CASE("zero-curvature scenario with the zero Noumi-Yamada state") {
    json cfg;
    cfg["scenario"] = "zero-curvature";
    cfg["variant"] = "NY-3x3";
    cfg["parameters"] = {{"v2", {0.0, 0.0}}, {"v3", {0.0, 0.0}}};
    cfg["initial"] = {{"f", {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}}, {"z", {0.5, 0.0}}};
    auto res = run_config(cfg);
    REQUIRE(res.exit_code == 0);
    for (const auto& r : res.report.rows) REQUIRE(std::abs(r.value) < 1e-13);
}

TEST_CASE("config errors name the offending field") {
    json cfg;
    cfg["scenario"] = "integrate";
    cfg["kind"] = "P5";
    cfg["initial"] = ones_initial(1.0);
    // no path
    auto res = run_config(cfg);
    REQUIRE(res.exit_code == 2);
    REQUIRE(res.report.rows.at(0).label.find("path") != std::string::npos);

    json bad;
    auto res2 = run_config(bad);
    REQUIRE(res2.exit_code == 2);
    REQUIRE(res2.report.rows.at(0).label.find("scenario") != std::string::npos);
}

TEST_CASE("exit codes are deterministic functions of the report") {
    json cfg = integrate_config();
    cfg["tolerances"]["residual"] = 1e-30;  // unreachable
    auto res = run_config(cfg);
    REQUIRE(res.exit_code == 1);

    json cfg3 = integrate_config();
    cfg3["tolerances"]["max_steps"] = 3;
    auto res3 = run_config(cfg3);
    REQUIRE(res3.exit_code == 3);
}

TEST_CASE("scenario coverage: parametrize, similarity, backlund, okamoto") {
    {
        json cfg;
        cfg["scenario"] = "parametrize";
        cfg["kind"] = "P5";
        cfg["parameters"] = {{"theta0", {0.12, 0.03}}, {"theta1", {-0.08, 0.05}},
                             {"theta_inf", {0.2, -0.1}}};
        cfg["initial"] = {{"y", {1.7, 0.2}}, {"z", {0.45, -0.15}}, {"f", {0.8, 0.1}},
                          {"g", {1.1, -0.2}}, {"t", {1.2, 0.0}}};
        auto res = run_config(cfg);
        REQUIRE(res.exit_code == 0);
    }
    {
        json cfg;
        cfg["scenario"] = "similarity";
        cfg["kind"] = "P4";
        cfg["parameters"] = {{"rho", {0.2, 0.0}}};
        cfg["initial"] = {{"w", {{0.3, 0.0}, {0.35, 0.0}, {0.4, 0.0}}},
                          {"w_star", {{0.25, 0.0}, {0.3, 0.0}, {0.35, 0.0}}},
                          {"t", {0.8, 0.0}}};
        cfg["points"] = {{{0.3, 0.0}, {0.25, 0.0}, {0.2, 0.0}},
                         {{0.4, 0.0}, {0.2, 0.0}, {0.3, 0.0}}};
        auto res = run_config(cfg);
        REQUIRE(res.exit_code == 0);
    }
    {
        json cfg;
        cfg["scenario"] = "backlund";
        cfg["parameters"] = {{"theta0", {0.11, -0.07}}, {"theta1", {0.23, 0.04}},
                             {"theta_inf", {-0.15, 0.06}}};
        cfg["initial"] = {{"y", {2.1, -0.1}}, {"z", {0.3, 0.2}}, {"t", {1.1, 0.0}}};
        cfg["path"] = {{"to", {1.4, 0.0}}};
        cfg["samples"] = 3;
        auto res = run_config(cfg);
        REQUIRE(res.exit_code == 0);
    }
    {
        json cfg;
        cfg["scenario"] = "okamoto";
        cfg["parameters"] = {{"theta0", {0.21, 0.05}}, {"theta1", {-0.13, 0.08}},
                             {"theta_inf", {0.17, -0.04}}};
        cfg["initial"] = {{"y", {1.8, 0.2}}, {"z", {0.4, -0.1}}, {"t", {1.0, 0.0}}};
        cfg["path"] = {{"to", {1.5, 0.0}}};
        cfg["samples"] = 5;
        auto res = run_config(cfg);
        REQUIRE(res.exit_code == 0);
    }
}

TEST_CASE("concordance covers the implemented formula labels") {
    json j = concordance_json();
    REQUIRE(j["count"].get<size_t>() >= 60);
    auto find = [&](const std::string& label) -> std::string {
        for (const auto& e : j["entries"])
            if (e["label"] == label) return e["operation"].get<std::string>();
        return {};
    };
    REQUIRE(find("(P5sys)") == "systems.reduced_rhs");
    REQUIRE(find("(eq:P5Okamoto-transformations-yzu)") == "transforms.okamoto_p5");
    REQUIRE(find("(P3-compatibility)") == "systems.reduced_rhs");
    REQUIRE(find("(aeq:O)") == "transforms.okamoto_p5");

    // labels are duplicate-free
    std::set<std::string> seen;
    for (const auto& e : j["entries"]) {
        auto [it, fresh] = seen.insert(e["label"].get<std::string>());
        REQUIRE(fresh);
    }
}

#ifdef PAINLAX_CLI_PATH
TEST_CASE("binary front end: run and concordance") {
    fs::path dir = fs::temp_directory_path() / "painlax_cli_test";
    fs::create_directories(dir);

    fs::path cfg_path = dir / "integrate.json";
    fs::path csv_path = dir / "traj.csv";
    fs::path report_path = dir / "report.json";
    json cfg = integrate_config();
    cfg["output"] = {{"format", "csv"}, {"path", csv_path.string()}, {"report", report_path.string()}};
    {
        std::ofstream f(cfg_path);
        f << cfg.dump(2);
    }
    std::string cmd = std::string(PAINLAX_CLI_PATH) + " run --config " + cfg_path.string() +
                      " > " + (dir / "stdout.json").string();
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WEXITSTATUS(rc) == 0);
    REQUIRE(fs::exists(csv_path));
    REQUIRE(fs::exists(report_path));
    {
        std::ifstream f(report_path);
        json rep;
        f >> rep;
        REQUIRE(rep["summary"]["all_pass"].get<bool>());
        REQUIRE(rep["spec_version"].get<int>() == 1);
    }

    // malformed JSON config: exit 2 with a parse diagnostic
    fs::path bad_path = dir / "bad.json";
    {
        std::ofstream f(bad_path);
        f << "{ \"scenario\": ";
    }
    std::string bad_cmd = std::string(PAINLAX_CLI_PATH) + " run --config " + bad_path.string() +
                          " 2> " + (dir / "stderr.txt").string() + " > /dev/null";
    int rc2 = std::system(bad_cmd.c_str());
    REQUIRE(WEXITSTATUS(rc2) == 2);

    std::string conc_cmd = std::string(PAINLAX_CLI_PATH) + " concordance --output " +
                           (dir / "concordance.json").string();
    int rc3 = std::system(conc_cmd.c_str());
    REQUIRE(WEXITSTATUS(rc3) == 0);
    std::ifstream cf(dir / "concordance.json");
    json conc;
    cf >> conc;
    REQUIRE(conc["count"].get<size_t>() >= 60);
}
#endif
