#include "warped/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "warped/errors.hpp"

namespace warped {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            out.push_back(trim(line));
            return out;
        }
        out.push_back(trim(line.substr(0, comma)));
        line.remove_prefix(comma + 1);
    }
}

template <typename Err>
double parse_double(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || end != field.data() + field.size()) {
        std::ostringstream os;
        os << "line " << line_no << ": '" << field << "' is not a number";
        throw Err(os.str());
    }
    return v;
}

template <typename Err>
std::int64_t parse_int(std::string_view field, std::size_t line_no) {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || end != field.data() + field.size()) {
        std::ostringstream os;
        os << "line " << line_no << ": '" << field << "' is not an integer";
        throw Err(os.str());
    }
    return v;
}

/// Pull the next non-blank line; returns false at end of stream.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) return true;
    }
    return false;
}

}  // namespace

std::string format_double(double x) {
    if (x == 0.0) return "0";  // normalize the sign of zero
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;  // 64 bytes always suffice for a double
    return std::string(buf, end);
}

SampledPath read_path_csv(std::istream& in) {
    static constexpr std::string_view kHeader = "t,re_w1,im_w1,tau1,re_w2,im_w2,tau2";
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no) || trim(line) != kHeader) {
        std::ostringstream os;
        os << "path csv: expected header '" << kHeader << "'";
        throw MalformedCsv(os.str());
    }
    SampledPath path;
    while (next_line(in, line, line_no)) {
        auto fields = split_fields(trim(line));
        if (fields.size() != 7) {
            std::ostringstream os;
            os << "line " << line_no << ": expected 7 fields, got " << fields.size();
            throw MalformedCsv(os.str());
        }
        double v[7];
        for (int i = 0; i < 7; ++i) v[i] = parse_double<MalformedCsv>(fields[i], line_no);
        path.ts.push_back(v[0]);
        path.w1.emplace_back(v[1], v[2]);
        path.tau1.push_back(v[3]);
        path.w2.emplace_back(v[4], v[5]);
        path.tau2.push_back(v[6]);
    }
    try {
        path.validate();
    } catch (const std::exception& e) {
        throw MalformedCsv(std::string("path csv: ") + e.what());
    }
    return path;
}

void write_path_csv(std::ostream& out, const SampledPath& path) {
    out << "t,re_w1,im_w1,tau1,re_w2,im_w2,tau2\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        out << format_double(path.ts[i]) << ',' << format_double(path.w1[i].real())
            << ',' << format_double(path.w1[i].imag()) << ','
            << format_double(path.tau1[i]) << ',' << format_double(path.w2[i].real())
            << ',' << format_double(path.w2[i].imag()) << ','
            << format_double(path.tau2[i]) << '\n';
    }
}

DiskFunction read_coefficient_table(std::istream& in) {
    static constexpr std::string_view kHeader = "r,k,re_c,im_c";
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no) || trim(line) != kHeader) {
        std::ostringstream os;
        os << "coefficient table: expected header '" << kHeader << "'";
        throw MalformedTable(os.str());
    }

    struct Row {
        double r;
        std::int64_t k;
        std::complex<double> c;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    while (next_line(in, line, line_no)) {
        auto fields = split_fields(trim(line));
        if (fields.size() != 4) {
            std::ostringstream os;
            os << "line " << line_no << ": expected 4 fields, got " << fields.size();
            throw MalformedTable(os.str());
        }
        Row row;
        row.r = parse_double<MalformedTable>(fields[0], line_no);
        row.k = parse_int<MalformedTable>(fields[1], line_no);
        row.c = {parse_double<MalformedTable>(fields[2], line_no),
                 parse_double<MalformedTable>(fields[3], line_no)};
        row.line_no = line_no;
        rows.push_back(row);
    }
    if (rows.empty()) throw MalformedTable("coefficient table: no data rows");

    std::int64_t big_k = 0;
    for (const auto& row : rows) big_k = std::max(big_k, std::abs(row.k));
    if (big_k > 4096) throw MalformedTable("coefficient table: |k| > 4096");
    auto truncation = static_cast<int>(big_k);
    auto width = 2 * static_cast<std::size_t>(big_k) + 1;

    std::vector<double> radii;
    std::vector<CircleFunction> slices;
    std::vector<std::complex<double>> coeffs;
    std::vector<char> given;

    auto flush_group = [&](std::size_t group_line) {
        // Fill any missing -k entry from its partner; the constructor then
        // enforces conjugacy for pairs that were both given.
        for (std::int64_t k = 1; k <= big_k; ++k) {
            auto pos = static_cast<std::size_t>(big_k + k);
            auto neg = static_cast<std::size_t>(big_k - k);
            if (given[pos] && !given[neg]) coeffs[neg] = std::conj(coeffs[pos]);
            if (given[neg] && !given[pos]) coeffs[pos] = std::conj(coeffs[neg]);
        }
        try {
            slices.emplace_back(truncation, coeffs);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "radius group ending at line " << group_line << ": " << e.what();
            throw MalformedTable(os.str());
        }
    };

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (radii.empty() || row.r != radii.back()) {
            if (!radii.empty()) flush_group(rows[i - 1].line_no);
            if (!radii.empty() && row.r <= radii.back()) {
                std::ostringstream os;
                os << "line " << row.line_no
                   << ": radii must be grouped and strictly increasing";
                throw MalformedTable(os.str());
            }
            radii.push_back(row.r);
            coeffs.assign(width, {0.0, 0.0});
            given.assign(width, 0);
        }
        auto pos = static_cast<std::size_t>(big_k + row.k);
        if (given[pos]) {
            std::ostringstream os;
            os << "line " << row.line_no << ": duplicate mode " << row.k
               << " at radius " << format_double(row.r);
            throw MalformedTable(os.str());
        }
        coeffs[pos] = row.c;
        given[pos] = 1;
    }
    flush_group(rows.back().line_no);

    try {
        return DiskFunction(std::move(radii), std::move(slices));
    } catch (const std::exception& e) {
        throw MalformedTable(std::string("coefficient table: ") + e.what());
    }
}

void write_coefficient_table(std::ostream& out, const DiskFunction& f) {
    out << "r,k,re_c,im_c\n";
    for (std::size_t j = 0; j < f.slice_count(); ++j) {
        const auto& slice = f.slice(j);
        for (int k = 0; k <= slice.truncation(); ++k) {
            auto c = slice.coeff(k);
            out << format_double(f.radii()[j]) << ',' << k << ','
                << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
        }
    }
}

void write_division_csv(std::ostream& out, const SampledPath& path,
                        const PathDivision& division) {
    out << "t,s,m\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        out << format_double(path.ts[i]) << ',' << format_double(division.s[i]) << ','
            << division.m[i] << '\n';
    }
}

void write_profile_csv(std::ostream& out, const std::vector<double>& radii,
                       const std::vector<double>& means) {
    out << "r,mean\n";
    for (std::size_t j = 0; j < radii.size() && j < means.size(); ++j) {
        out << format_double(radii[j]) << ',' << format_double(means[j]) << '\n';
    }
}

void write_small_divisor_csv(std::ostream& out, const RotationNumber& alpha,
                             std::int64_t k_max) {
    out << "k,divisor\n";
    for (std::int64_t k = 1; k <= k_max; ++k) {
        out << k << ',' << format_double(alpha.small_divisor(k)) << '\n';
    }
}

json alpha_json(const RotationNumber& alpha) {
    const char* kind = nullptr;
    switch (alpha.kind()) {
        case AlphaKind::golden: kind = "golden"; break;
        case AlphaKind::cf_specified: kind = "cf"; break;
        case AlphaKind::float_given: kind = "float"; break;
    }
    return json{{"kind", kind},
                {"value", alpha.value()},
                {"cf_prefix", alpha.partial_quotients()}};
}

json report_json(const CoboundaryReport& report, const std::vector<double>& radii) {
    json doc;
    doc["status"] =
        report.status == CoboundaryStatus::solved ? "solved" : "obstructed";
    doc["truncation"] = report.truncation;
    doc["radial_intervals"] = report.radial_intervals;
    doc["radii"] = radii;
    doc["obstruction_profile"] = report.obstruction_profile;
    if (report.status == CoboundaryStatus::solved) {
        doc["amplification"] = {{"value", report.amplification.value},
                                {"mode", report.amplification.mode}};
        doc["residual"] = report.residual;
    }
    doc["tolerances"] = {{"mean_tol", report.tolerances.mean_tol},
                         {"solve_tol", report.tolerances.solve_tol},
                         {"overflow_guard", report.tolerances.overflow_guard}};
    return doc;
}

json report_json(const ObstructionReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"truncation", e.truncation},
                           {"min_residual", e.min_residual},
                           {"deviation", e.deviation}});
    }
    return json{{"n", report.n},
                {"tolerance", report.tolerance},
                {"entries", std::move(entries)},
                {"all_match", report.all_match}};
}

json report_json(const EquivarianceReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"n", e.n},
                           {"path_id", e.path_id},
                           {"sup_violation", e.sup_violation},
                           {"at_s", e.at_s}});
    }
    json samples = json::array();
    for (const auto& b : report.boundary_samples) {
        samples.push_back({{"theta", b.theta}, {"value", b.value}});
    }
    return json{{"max_violation", report.max_violation},
                {"entries", std::move(entries)},
                {"boundary_samples", std::move(samples)}};
}

json certificate_json(const TrivialityCertificate& cert,
                      const std::vector<double>& radii) {
    json doc;
    doc["trivial"] = cert.trivial;
    if (cert.trivial) {
        doc["certificate"] = {
            {"amplification",
             {{"value", cert.report.amplification.value},
              {"mode", cert.report.amplification.mode}}},
            {"residual", cert.report.residual},
            {"truncation", cert.report.truncation}};
    } else {
        doc["profile"] = {{"radii", radii},
                          {"means", cert.report.obstruction_profile}};
    }
    return doc;
}

}  // namespace warped
