#include "warped/bundle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "warped/errors.hpp"

namespace warped {

namespace {

const double kTau = 2.0 * std::numbers::pi;

double angle_fraction(std::complex<double> z) {
    double x = std::arg(z) / kTau;
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    return x;
}

}  // namespace

PullbackPoint pullback_forward(const DiskPoint& z, double t) {
    return PullbackPoint{z, WRep{z, t}};
}

double pullback_inverse(const RotationNumber& alpha, const DiskPoint& z, const WRep& y,
                        const MatchWindow& window, double delta_zero) {
    return divide(alpha, WRep{z, 0.0}, y, window, delta_zero);
}

DiskFunction BoundaryCocycle::as_boundary_function() const {
    return DiskFunction({1.0}, {generator});
}

BoundaryCocycle restrict_boundary(const RotationNumber& alpha, int truncation) {
    return BoundaryCocycle{alpha, CircleFunction::constant(1.0, truncation)};
}

DRep contract(double s, const DRep& d) {
    if (!(s >= 0.0 && s <= 1.0)) {
        std::ostringstream os;
        os << "contraction parameter " << s << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
    return DRep{DiskPoint(s * d.rep.value())};
}

BasePath make_radial_path(std::complex<double> z1, std::size_t nodes, std::string id) {
    if (nodes < 2) throw std::invalid_argument("a path needs at least two nodes");
    if (std::abs(z1) > 1.0 + 1e-12) {
        throw std::invalid_argument("radial path endpoint outside the closed disk");
    }
    BasePath path;
    if (id.empty()) {
        std::ostringstream os;
        os << "radial:" << angle_fraction(z1);
        id = os.str();
    }
    path.id = std::move(id);
    path.radial = true;
    path.s.reserve(nodes);
    path.z.reserve(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        double s = static_cast<double>(j) / static_cast<double>(nodes - 1);
        path.s.push_back(s);
        path.z.push_back(s * z1);
    }
    return path;
}

std::vector<BasePath> make_radial_fan(std::size_t count, std::size_t nodes) {
    if (count < 1) throw std::invalid_argument("fan needs at least one path");
    std::vector<BasePath> fan;
    fan.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        double x = static_cast<double>(m) / static_cast<double>(count);
        fan.push_back(make_radial_path(std::polar(1.0, kTau * x), nodes));
    }
    return fan;
}

LiftCandidate make_trivial_lift() {
    return LiftCandidate{
        "trivial",
        [](const std::vector<std::complex<double>>& z, double t0) {
            return std::vector<double>(z.size(), t0);
        }};
}

LiftCandidate make_gauge_lift(const CircleFunction& g, double delta_zero) {
    std::ostringstream name;
    name << "gauge:K=" << g.truncation();
    auto term = [g, delta_zero](std::complex<double> w) {
        double r = std::abs(w);
        if (r <= delta_zero) return 0.0;
        return g.eval(angle_fraction(w)) * r * r;
    };
    return LiftCandidate{
        name.str(),
        [term](const std::vector<std::complex<double>>& z, double t0) {
            std::vector<double> out(z.size());
            double base = term(z.front());
            for (std::size_t j = 0; j < z.size(); ++j) {
                out[j] = t0 + term(z[j]) - base;
            }
            return out;
        }};
}

EquivarianceReport test_lift_equivariance(const RotationNumber& alpha,
                                          const LiftCandidate& candidate,
                                          const std::vector<BasePath>& paths,
                                          const std::vector<std::int64_t>& n_set,
                                          double t0) {
    if (paths.empty()) throw std::invalid_argument("no paths supplied");
    if (!candidate.lift) throw std::invalid_argument("candidate has no callback");

    EquivarianceReport report;
    for (const auto& path : paths) {
        if (path.z.size() != path.s.size() || path.z.size() < 2) {
            throw std::invalid_argument("path grid malformed: " + path.id);
        }
        auto run_lift = [&](const std::vector<std::complex<double>>& z,
                            double start) {
            auto values = candidate.lift(z, start);
            if (values.size() != z.size()) {
                std::ostringstream os;
                os << "candidate '" << candidate.name << "' returned "
                   << values.size() << " samples for a " << z.size()
                   << "-node path (" << path.id << ")";
                throw GridMismatch(os.str());
            }
            if (std::fabs(values.front() - start) > 1e-12) {
                std::ostringstream os;
                os << "candidate '" << candidate.name
                   << "' violates the initial condition on path " << path.id
                   << ": H(s_0) = " << values.front() << " but t0 = " << start;
                throw std::invalid_argument(os.str());
            }
            return values;
        };

        auto base_lift = run_lift(path.z, t0);
        if (path.radial) {
            report.boundary_samples.push_back(BoundarySample{
                angle_fraction(path.z.back()), base_lift.back() - t0});
        }
        double start_norm = std::norm(path.z.front());
        for (std::int64_t n : n_set) {
            double angle = kTau * std::remainder(static_cast<double>(n) * alpha.value(), 1.0);
            std::complex<double> rot = std::polar(1.0, angle);
            std::vector<std::complex<double>> rotated(path.z.size());
            for (std::size_t j = 0; j < path.z.size(); ++j) rotated[j] = path.z[j] * rot;
            auto lifted = run_lift(rotated, t0 + static_cast<double>(n) * start_norm);

            EquivarianceEntry entry;
            entry.n = n;
            entry.path_id = path.id;
            for (std::size_t j = 0; j < path.z.size(); ++j) {
                double expected = base_lift[j] + static_cast<double>(n) * std::norm(path.z[j]);
                double v = std::fabs(lifted[j] - expected);
                if (v > entry.sup_violation) {
                    entry.sup_violation = v;
                    entry.at_s = path.s[j];
                }
            }
            report.max_violation = std::max(report.max_violation, entry.sup_violation);
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

}  // namespace warped
