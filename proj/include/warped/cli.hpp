#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "warped/quotient.hpp"

namespace warped {

struct Tolerances {
    double mean_tol = 1e-10;    // circle mean above this -> obstructed
    double solve_tol = 1e-9;    // residual / certificate match tolerance
    double fiber_tol = 1e-9;    // fiber comparison slack
    std::optional<double> angle_tol;  // window override; default from the orbit gap
};

enum class OutputFormat { json, csv };

/// Everything a command run depends on. Every report embeds the resolved
/// form of this record so results carry their truncation context.
struct RunConfig {
    std::string alpha_spec = "golden";
    int truncation = 32;               // K: Fourier modes kept per circle
    std::size_t radial_intervals = 32;  // J: radial grid intervals
    std::int64_t n_max = 1024;          // deck-translation search window
    Tolerances tolerances;
    OutputFormat format = OutputFormat::json;

    /// Bounds check (K >= 1, J >= 2, n_max >= 1, tolerances positive).
    /// Throws std::invalid_argument.
    void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 3;

/// Solve the coboundary equation for the named function. JSON format
/// emits the report; CSV emits the solution's coefficient table when
/// solved, the obstruction profile when not. Exit 0 for either status
/// (both are completed analyses), 1 on bad input, 3 on numerical failure.
int cmd_solve(const RunConfig& config, std::string_view function_spec,
              std::ostream& out, std::ostream& err);

/// Triviality verdict for the function's class; always JSON.
int cmd_class(const RunConfig& config, std::string_view function_spec,
              std::ostream& out, std::ostream& err);

/// Least-squares infeasibility certificate for the gauge equation at each
/// truncation (default 8,16,32). Exit 3 if some minimum misses |n|.
int cmd_obstruction(const RunConfig& config, std::int64_t n,
                    std::vector<int> truncations, std::ostream& out,
                    std::ostream& err);

/// Divide two sampled paths node by node: `t,s,m` rows to data_out, a
/// JSON summary (branch runs, worst jump of the finite-difference s') to
/// summary_out.
int cmd_divide_path(const RunConfig& config, std::istream& path_csv,
                    std::ostream& data_out, std::ostream& summary_out,
                    std::ostream& err);

/// `k,divisor` table of the Fourier denominators up to k_max.
int cmd_smalldiv(const RunConfig& config, std::int64_t k_max, std::ostream& out,
                 std::ostream& err);

struct DivisionSummary {
    std::size_t nodes = 0;
    std::size_t degenerate_nodes = 0;
    std::size_t branch_runs = 0;       // maximal constant-m runs
    double max_sprime_jump = 0.0;      // sup |s'(t_{i+1}) - s'(t_i)|, forward differences
};

DivisionSummary summarize_division(const SampledPath& path,
                                   const PathDivision& division);

}  // namespace warped
