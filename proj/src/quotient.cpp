#include "warped/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "warped/errors.hpp"

namespace warped {

namespace {

constexpr double kAngleTolCap = 1e-8;

// Distance between two angle fractions in R/Z.
double circle_dist(double x, double y) {
    double d = x - y;
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

// n * alpha reduced to [0, 1).
double orbit_angle(const RotationNumber& alpha, std::int64_t n) {
    double r = std::remainder(static_cast<double>(n) * alpha.value(), 1.0);
    if (r < 0.0) r += 1.0;
    if (r >= 1.0) r = 0.0;
    return r;
}

// Angle fraction of b relative to a, in [0, 1).
double relative_angle(std::complex<double> a, std::complex<double> b) {
    double theta = std::arg(b / a) / (2.0 * std::numbers::pi);
    theta -= std::floor(theta);
    if (theta >= 1.0) theta = 0.0;
    return theta;
}

// Scan the window for integers n with n*alpha matching theta.
std::optional<std::int64_t> match_angle(const RotationNumber& alpha, double theta,
                                        const MatchWindow& window) {
    std::optional<std::int64_t> found;
    for (std::int64_t n = -window.n_max; n <= window.n_max; ++n) {
        if (circle_dist(orbit_angle(alpha, n), theta) <= window.angle_tol) {
            if (found) {
                std::ostringstream os;
                os << "angle " << theta << " matches both n = " << *found
                   << " and n = " << n << " within tolerance " << window.angle_tol
                   << "; the window tolerance violates its uniqueness precondition";
                throw AmbiguousMatch(os.str());
            }
            found = n;
        }
    }
    return found;
}

}  // namespace

DiskPoint::DiskPoint(std::complex<double> z) : z_(z) {
    if (std::abs(z) > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "point (" << z.real() << ", " << z.imag()
           << ") lies outside the closed unit disk";
        throw std::domain_error(os.str());
    }
}

MatchWindow MatchWindow::for_rotation(const RotationNumber& alpha, std::int64_t n_max,
                                      std::optional<double> angle_tol_override) {
    if (n_max < 1) throw std::invalid_argument("MatchWindow: n_max must be >= 1");
    double gap = alpha.min_orbit_gap(n_max);
    double tol = angle_tol_override.value_or(std::min(gap / 2.0, kAngleTolCap));
    if (!(tol > 0.0) || tol >= gap) {
        std::ostringstream os;
        os << "angle tolerance " << tol << " must lie in (0, " << gap
           << "), the minimal orbit gap for n_max = " << n_max;
        throw std::invalid_argument(os.str());
    }
    return MatchWindow{n_max, tol};
}

DiskPoint act_d(const RotationNumber& alpha, std::int64_t n, const DiskPoint& p) {
    if (n == 0) return p;
    double angle = 2.0 * std::numbers::pi *
                   std::remainder(static_cast<double>(n) * alpha.value(), 1.0);
    return DiskPoint(p.value() * std::polar(1.0, angle));
}

WRep act_w(const RotationNumber& alpha, std::int64_t n, const WRep& y) {
    if (n == 0) return y;
    double shift = static_cast<double>(n) * std::norm(y.z.value());
    return WRep{act_d(alpha, n, y.z), y.t + shift};
}

WRep act_r(double s, const WRep& y) { return WRep{y.z, y.t + s}; }

DRep project(const WRep& y) { return DRep{y.z}; }

std::optional<std::int64_t> equal_in_d(const RotationNumber& alpha,
                                       const DRep& a, const DRep& b,
                                       const MatchWindow& window,
                                       double delta_zero) {
    double ra = a.rep.modulus();
    double rb = b.rep.modulus();
    bool a_axis = ra <= delta_zero;
    bool b_axis = rb <= delta_zero;
    if (a_axis && b_axis) return 0;  // the axis maps to the single cone point
    if (a_axis || b_axis) return std::nullopt;
    if (std::fabs(ra - rb) > kRadiusMatchTol) return std::nullopt;
    double theta = relative_angle(a.rep.value(), b.rep.value());
    return match_angle(alpha, theta, window);
}

std::optional<std::int64_t> equal_in_w(const RotationNumber& alpha,
                                       const WRep& a, const WRep& b,
                                       const MatchWindow& window,
                                       double delta_zero, double fiber_tol) {
    auto base = equal_in_d(alpha, project(a), project(b), window, delta_zero);
    if (!base) return std::nullopt;
    std::int64_t n = *base;
    double scale = 1.0 + std::max(std::fabs(a.t), std::fabs(b.t));
    // On the axis the Z-action fixes t, so the only candidate shift is 0.
    double shift = a.z.modulus() <= delta_zero
                       ? 0.0
                       : static_cast<double>(n) * std::norm(a.z.value());
    if (std::fabs(b.t - a.t - shift) <= fiber_tol * scale) return n;
    return std::nullopt;
}

double divide(const RotationNumber& alpha, const WRep& y1, const WRep& y2,
              const MatchWindow& window, double delta_zero) {
    double r1 = y1.z.modulus();
    double r2 = y2.z.modulus();
    bool axis1 = r1 <= delta_zero;
    bool axis2 = r2 <= delta_zero;
    if (axis1 != axis2) {
        std::ostringstream os;
        os << "cannot divide: one base point is on the axis (|z1| = " << r1
           << ", |z2| = " << r2 << ")";
        throw NotSameFiber(os.str());
    }
    if (axis1) return y2.t - y1.t;
    if (std::fabs(r1 - r2) > kRadiusMatchTol) {
        std::ostringstream os;
        os << "cannot divide: base moduli differ, |z1| = " << r1
           << " vs |z2| = " << r2;
        throw NotSameFiber(os.str());
    }
    double theta = relative_angle(y1.z.value(), y2.z.value());
    auto m = match_angle(alpha, theta, window);
    if (!m) {
        std::ostringstream os;
        os << "cannot divide: no integer |n| <= " << window.n_max
           << " rotates the base points onto each other (relative angle "
           << theta << ")";
        throw WindowExhausted(os.str());
    }
    return y2.t - y1.t - static_cast<double>(*m) * std::norm(y1.z.value());
}

void SampledPath::validate() const {
    std::size_t n = ts.size();
    if (n == 0) throw std::invalid_argument("sampled path is empty");
    if (w1.size() != n || tau1.size() != n || w2.size() != n || tau2.size() != n) {
        throw std::invalid_argument("sampled path columns have mismatched lengths");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(ts[i] > ts[i - 1])) {
            std::ostringstream os;
            os << "time grid must increase strictly; t[" << i - 1 << "] = "
               << ts[i - 1] << ", t[" << i << "] = " << ts[i];
            throw std::invalid_argument(os.str());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(w1[i]) > 1.0 + 1e-12 || std::abs(w2[i]) > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "path leaves the closed unit disk at node " << i;
            throw std::invalid_argument(os.str());
        }
    }
}

PathDivision divide_path(const RotationNumber& alpha, const SampledPath& path,
                         const MatchWindow& window, double delta_zero) {
    path.validate();
    std::size_t n = path.size();
    PathDivision out;
    out.s.resize(n);
    out.m.assign(n, 0);
    out.degenerate.assign(n, 0);

    // Pass 1: per-node branch integers where the data determines them.
    for (std::size_t i = 0; i < n; ++i) {
        double r1 = std::abs(path.w1[i]);
        double r2 = std::abs(path.w2[i]);
        if (r1 <= delta_zero) {
            out.degenerate[i] = 1;
            if (r2 > delta_zero + kRadiusMatchTol) {
                std::ostringstream os;
                os << "node " << i << " (t = " << path.ts[i]
                   << "): first path is at the axis but |w2| = " << r2;
                throw NotSameFiber(os.str());
            }
            continue;
        }
        if (std::fabs(r1 - r2) > kRadiusMatchTol) {
            std::ostringstream os;
            os << "node " << i << " (t = " << path.ts[i]
               << "): base moduli differ, |w1| = " << r1 << " vs |w2| = " << r2;
            throw NotSameFiber(os.str());
        }
        double theta = relative_angle(path.w1[i], path.w2[i]);
        auto m = match_angle(alpha, theta, window);
        if (!m) {
            std::ostringstream os;
            os << "node " << i << " (t = " << path.ts[i]
               << "): no integer |n| <= " << window.n_max
               << " aligns the base points";
            throw NotSameFiber(os.str());
        }
        out.m[i] = *m;
    }

    // Pass 2: the branch must be locally constant away from zeros of w1.
    bool in_run = false;
    std::int64_t run_m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.degenerate[i]) {
            in_run = false;
            continue;
        }
        if (in_run && out.m[i] != run_m) {
            std::ostringstream os;
            os << "branch integer jumps from " << run_m << " to " << out.m[i]
               << " at node " << i << " (t = " << path.ts[i]
               << ") with no zero of w1 in between";
            throw BranchJumpWithoutZero(os.str());
        }
        in_run = true;
        run_m = out.m[i];
    }

    // Pass 3: fill degenerate nodes from the nearest determined node so the
    // reported m column is total; s there ignores m since |w1| ~ 0.
    std::vector<std::ptrdiff_t> prev(n, -1), next(n, -1);
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.degenerate[i]) last = static_cast<std::ptrdiff_t>(i);
        prev[i] = last;
    }
    last = -1;
    for (std::size_t i = n; i-- > 0;) {
        if (!out.degenerate[i]) last = static_cast<std::ptrdiff_t>(i);
        next[i] = last;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.degenerate[i]) continue;
        std::ptrdiff_t pi = prev[i], ni = next[i];
        std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(i);
        if (pi < 0 && ni < 0) {
            out.m[i] = 0;
        } else if (pi < 0) {
            out.m[i] = out.m[static_cast<std::size_t>(ni)];
        } else if (ni < 0 || idx - pi <= ni - idx) {
            out.m[i] = out.m[static_cast<std::size_t>(pi)];
        } else {
            out.m[i] = out.m[static_cast<std::size_t>(ni)];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        double base = path.tau2[i] - path.tau1[i];
        out.s[i] = out.degenerate[i]
                       ? base
                       : base - static_cast<double>(out.m[i]) * std::norm(path.w1[i]);
    }
    return out;
}

}  // namespace warped
