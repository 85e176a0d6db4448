// command-line front end: scenario runner and the formula concordance

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "painlax/cli.hpp"

using namespace painlax;

int main(int argc, char** argv) {
    CLI::App app{"painlax: verification scenarios for the coupled three-wave reductions"};
    app.require_subcommand(1);

    std::string config_path, output_path;

    auto* run = app.add_subcommand("run", "execute a scenario described by a JSON config");
    run->add_option("--config", config_path, "path to the JSON configuration")->required();

    auto* conc = app.add_subcommand("concordance", "emit the formula-to-operation table as JSON");
    conc->add_option("--output", output_path, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (conc->parsed()) {
        json j = concordance_json();
        if (output_path.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_file(output_path, j.dump(2) + "\n");
        return 0;
    }

    json cfg;
    {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "cannot open config: " << config_path << "\n";
            return 2;
        }
        try {
            f >> cfg;
        } catch (const json::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 2;
        }
    }

    RunResult result = run_config(cfg);

    if (cfg.contains("output")) {
        const json& o = cfg.at("output");
        try {
            if (o.contains("report")) write_file(o.at("report").get<std::string>(),
                                                 result.report.to_json().dump(2) + "\n");
            std::string fmt = o.value("format", "json");
            if (o.contains("path")) {
                if (fmt == "csv" && !result.trajectory_csv.empty())
                    write_file(o.at("path").get<std::string>(), result.trajectory_csv);
                else if (fmt == "json")
                    write_file(o.at("path").get<std::string>(),
                               result.report.to_json().dump(2) + "\n");
            }
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }

    std::cout << result.report.to_json().dump(2) << "\n";
    return result.exit_code;
}
