#include "warped/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "warped/cohomology.hpp"
#include "warped/errors.hpp"
#include "warped/io.hpp"
#include "warped/rotation.hpp"

namespace warped {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.category() == Error::Category::numerical ? kExitNumerical
                                                          : kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

SolveOptions solve_options(const RunConfig& config) {
    SolveOptions opts;
    opts.mean_tol = config.tolerances.mean_tol;
    opts.solve_tol = config.tolerances.solve_tol;
    return opts;
}

/// Builtins are sampled on the configured grid; `table:PATH` brings its
/// own grid and truncation with it.
DiskFunction resolve_function(const RunConfig& config, std::string_view spec) {
    constexpr std::string_view kTablePrefix = "table:";
    if (spec.rfind(kTablePrefix, 0) == 0) {
        auto path = std::string(spec.substr(kTablePrefix.size()));
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open table file '" + path + "'");
        return read_coefficient_table(in);
    }
    return sample_builtin(spec, config.truncation,
                          DiskFunction::uniform_radii(config.radial_intervals));
}

json config_json(const RunConfig& config, const RotationNumber& alpha) {
    auto window = MatchWindow::for_rotation(alpha, config.n_max,
                                            config.tolerances.angle_tol);
    return json{
        {"alpha", alpha_json(alpha)},
        {"K", config.truncation},
        {"J", config.radial_intervals},
        {"n_max", config.n_max},
        {"tolerances",
         {{"mean_tol", config.tolerances.mean_tol},
          {"solve_tol", config.tolerances.solve_tol},
          {"fiber_tol", config.tolerances.fiber_tol},
          {"angle_tol", window.angle_tol}}},
    };
}

json document(const char* command, const RunConfig& config,
              const RotationNumber& alpha) {
    return json{{"command", command}, {"config", config_json(config, alpha)}};
}

}  // namespace

void RunConfig::validate() const {
    if (truncation < 1) throw std::invalid_argument("K must be >= 1");
    if (radial_intervals < 2) throw std::invalid_argument("J must be >= 2");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const auto& t = tolerances;
    if (!(t.mean_tol > 0) || !(t.solve_tol > 0) || !(t.fiber_tol > 0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (t.angle_tol && !(*t.angle_tol > 0)) {
        throw std::invalid_argument("angle_tol must be positive");
    }
}

int cmd_solve(const RunConfig& config, std::string_view function_spec,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        auto alpha = RotationNumber::parse(config.alpha_spec);
        auto f = resolve_function(config, function_spec);
        auto report = solve_coboundary(alpha, f, solve_options(config));
        if (config.format == OutputFormat::json) {
            auto doc = document("solve", config, alpha);
            doc.update(report_json(report, f.radii()));
            out << doc.dump(2) << '\n';
        } else if (report.status == CoboundaryStatus::solved) {
            write_coefficient_table(out, *report.sigma);
        } else {
            write_profile_csv(out, f.radii(), report.obstruction_profile);
        }
        return kExitOk;
    });
}

int cmd_class(const RunConfig& config, std::string_view function_spec,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        auto alpha = RotationNumber::parse(config.alpha_spec);
        auto f = resolve_function(config, function_spec);
        auto cert = class_is_trivial(alpha, f, solve_options(config));
        auto doc = document("class", config, alpha);
        doc.update(certificate_json(cert, f.radii()));
        out << doc.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_obstruction(const RunConfig& config, std::int64_t n,
                    std::vector<int> truncations, std::ostream& out,
                    std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        auto alpha = RotationNumber::parse(config.alpha_spec);
        if (truncations.empty()) truncations = {8, 16, 32};
        auto report =
            certify_obstruction(alpha, n, truncations, config.tolerances.solve_tol);
        if (config.format == OutputFormat::json) {
            auto doc = document("obstruction", config, alpha);
            doc.update(report_json(report));
            out << doc.dump(2) << '\n';
        } else {
            out << "K,min_residual,deviation\n";
            for (const auto& e : report.entries) {
                out << e.truncation << ',' << format_double(e.min_residual) << ','
                    << format_double(e.deviation) << '\n';
            }
        }
        if (!report.all_match) {
            err << "error: some minimum residual deviates from |n| by more than "
                << format_double(report.tolerance) << '\n';
            return kExitNumerical;
        }
        return kExitOk;
    });
}

int cmd_divide_path(const RunConfig& config, std::istream& path_csv,
                    std::ostream& data_out, std::ostream& summary_out,
                    std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        auto alpha = RotationNumber::parse(config.alpha_spec);
        auto window = MatchWindow::for_rotation(alpha, config.n_max,
                                                config.tolerances.angle_tol);
        auto path = read_path_csv(path_csv);
        auto division = divide_path(alpha, path, window);
        write_division_csv(data_out, path, division);

        auto summary = summarize_division(path, division);
        auto doc = document("divide-path", config, alpha);
        doc.update(json{{"nodes", summary.nodes},
                        {"degenerate_nodes", summary.degenerate_nodes},
                        {"branch_runs", summary.branch_runs},
                        {"max_sprime_jump", summary.max_sprime_jump}});
        summary_out << doc.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_smalldiv(const RunConfig& config, std::int64_t k_max, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
        auto alpha = RotationNumber::parse(config.alpha_spec);
        write_small_divisor_csv(out, alpha, k_max);
        return kExitOk;
    });
}

DivisionSummary summarize_division(const SampledPath& path,
                                   const PathDivision& division) {
    DivisionSummary summary;
    summary.nodes = path.size();
    for (auto d : division.degenerate) {
        if (d) ++summary.degenerate_nodes;
    }
    for (std::size_t i = 0; i < division.m.size(); ++i) {
        if (i == 0 || division.m[i] != division.m[i - 1]) ++summary.branch_runs;
    }
    if (path.size() >= 3) {
        double prev = (division.s[1] - division.s[0]) / (path.ts[1] - path.ts[0]);
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            double cur =
                (division.s[i + 1] - division.s[i]) / (path.ts[i + 1] - path.ts[i]);
            summary.max_sprime_jump =
                std::max(summary.max_sprime_jump, std::fabs(cur - prev));
            prev = cur;
        }
    }
    return summary;
}

}  // namespace warped
