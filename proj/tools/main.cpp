#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "warped/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Coboundary solving, path division, and holonomy-obstruction "
        "diagnostics over irrational circle rotations"};
    app.require_subcommand(1);

    warped::RunConfig config;
    std::string out_path;
    std::string format = "json";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", config.alpha_spec,
                        "rotation number: golden | cf:a1,a2,... | float:x")
            ->capture_default_str();
        cmd->add_option("--K", config.truncation, "Fourier truncation per circle")
            ->capture_default_str();
        cmd->add_option("--J", config.radial_intervals, "radial grid intervals")
            ->capture_default_str();
        cmd->add_option("--nmax", config.n_max, "deck-translation search window")
            ->capture_default_str();
        cmd->add_option("--out", out_path, "write the data output here, not stdout");
        cmd->add_option("--format", format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--mean-tol", config.tolerances.mean_tol,
                        "obstruction threshold on circle means")
            ->capture_default_str();
        cmd->add_option("--solve-tol", config.tolerances.solve_tol,
                        "residual / certificate tolerance")
            ->capture_default_str();
        cmd->add_option("--fiber-tol", config.tolerances.fiber_tol,
                        "fiber comparison slack")
            ->capture_default_str();
        cmd->add_option("--angle-tol", config.tolerances.angle_tol,
                        "override the angle-matching tolerance");
    };

    std::string function_spec;
    auto* solve = app.add_subcommand("solve", "solve the coboundary equation for f");
    add_common(solve);
    solve->add_option("--f", function_spec,
                      "abs2 | re | im | zero | monomial:k | const:c | table:PATH")
        ->required();

    auto* verdict = app.add_subcommand("class", "decide whether [f] is trivial");
    add_common(verdict);
    verdict->add_option("--f", function_spec,
                        "abs2 | re | im | zero | monomial:k | const:c | table:PATH")
        ->required();

    std::int64_t n = 0;
    std::vector<int> truncations;
    auto* obstruction = app.add_subcommand(
        "obstruction", "certify that no gauge change absorbs a deck translation");
    add_common(obstruction);
    obstruction->add_option("--n", n, "deck translation index (nonzero)")->required();
    obstruction->add_option("--Ks", truncations, "comma-separated truncation list")
        ->delimiter(',');

    std::string in_path;
    auto* divide = app.add_subcommand(
        "divide-path", "nodewise fiber division of two sampled paths");
    add_common(divide);
    divide->add_option("--in", in_path, "sampled-path csv file")->required();

    std::int64_t k_max = 0;
    auto* smalldiv = app.add_subcommand(
        "smalldiv", "table of the Fourier denominators 2|sin(pi k alpha)|");
    add_common(smalldiv);
    smalldiv->add_option("--kmax", k_max, "largest mode")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return warped::kExitUsage;
    }

    config.format =
        format == "csv" ? warped::OutputFormat::csv : warped::OutputFormat::json;

    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        out_file.open(out_path);
        if (!out_file) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return warped::kExitUsage;
        }
        out = &out_file;
    }

    if (solve->parsed()) return warped::cmd_solve(config, function_spec, *out, std::cerr);
    if (verdict->parsed())
        return warped::cmd_class(config, function_spec, *out, std::cerr);
    if (obstruction->parsed())
        return warped::cmd_obstruction(config, n, truncations, *out, std::cerr);
    if (divide->parsed()) {
        std::ifstream in(in_path);
        if (!in) {
            std::cerr << "error: cannot open input file '" << in_path << "'\n";
            return warped::kExitUsage;
        }
        return warped::cmd_divide_path(config, in, *out, std::cout, std::cerr);
    }
    if (smalldiv->parsed()) return warped::cmd_smalldiv(config, k_max, *out, std::cerr);
    return warped::kExitUsage;
}
