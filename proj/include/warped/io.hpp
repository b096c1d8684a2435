#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "warped/bundle.hpp"
#include "warped/cohomology.hpp"
#include "warped/quotient.hpp"
#include "warped/rotation.hpp"

namespace warped {

using json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips to the same double (zero loses
/// its sign). All CSV cells go through this so output is byte-deterministic.
std::string format_double(double x);

/// Read a sampled-path table. Exact header
/// `t,re_w1,im_w1,tau1,re_w2,im_w2,tau2`, one node per row, strictly
/// increasing t, 7 numeric fields. Throws MalformedCsv with the offending
/// line number.
SampledPath read_path_csv(std::istream& in);
void write_path_csv(std::ostream& out, const SampledPath& path);

/// Read a Fourier coefficient table with header `r,k,re_c,im_c`. Rows must
/// be grouped by radius with radii strictly increasing; modes may appear
/// in any order inside a group. A missing -k row is filled from the k row
/// by the reality condition; if both appear they must be conjugate. The
/// truncation is the largest |k| present anywhere. Throws MalformedTable.
DiskFunction read_coefficient_table(std::istream& in);

/// Inverse of read_coefficient_table. Only modes k >= 0 are written; the
/// negative half is implied by the reality condition.
void write_coefficient_table(std::ostream& out, const DiskFunction& f);

/// `t,s,m` rows for a path division.
void write_division_csv(std::ostream& out, const SampledPath& path,
                        const PathDivision& division);

/// `r,mean` rows for an orbit-average (obstruction) profile.
void write_profile_csv(std::ostream& out, const std::vector<double>& radii,
                       const std::vector<double>& means);

/// `k,divisor` rows, 1 <= k <= k_max.
void write_small_divisor_csv(std::ostream& out, const RotationNumber& alpha,
                             std::int64_t k_max);

// --- JSON fragments. Commands wrap these with {"command", "config"}. ----

json alpha_json(const RotationNumber& alpha);
json report_json(const CoboundaryReport& report, const std::vector<double>& radii);
json report_json(const ObstructionReport& report);
json report_json(const EquivarianceReport& report);
json certificate_json(const TrivialityCertificate& cert, const std::vector<double>& radii);

}  // namespace warped
