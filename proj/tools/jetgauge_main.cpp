#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "jetgauge/runcmd.hpp"

int main(int argc, char** argv) {
    std::string command_list;
    for (const auto& name : jetgauge::command_names()) {
        if (!command_list.empty()) command_list += ", ";
        command_list += name;
    }

    CLI::App app{"symbolic checks for twisted jet prolongations"};
    std::string command, input;
    std::uint64_t seed = 0;
    int samples = 0;
    double tol = 0;
    std::string out_path;
    bool machine = false;

    app.add_option("command", command, "one of: " + command_list)->required();
    app.add_option("input", input, "problem file path (or example number)")->required();
    auto* seed_opt = app.add_option("--seed", seed, "oracle seed");
    auto* samples_opt = app.add_option("--samples", samples, "oracle samples per check");
    auto* tol_opt = app.add_option("--tol", tol, "oracle tolerance");
    app.add_option("--out", out_path, "also write the machine report to this file");
    app.add_flag("--machine", machine, "print the machine report instead of prose");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    jetgauge::CommandOptions opt;
    if (*seed_opt) opt.seed = seed;
    if (*samples_opt) opt.samples = samples;
    if (*tol_opt) opt.tol = tol;

    try {
        jetgauge::Report report = jetgauge::run_command(command, input, opt);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write '" << out_path << "'\n";
                return 2;
            }
            out << report.machine();
        }
        std::cout << (machine ? report.machine() : report.human());
        return report.all_true() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
