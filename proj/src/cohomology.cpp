#include "warped/cohomology.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "warped/errors.hpp"

namespace warped {

namespace {

const double kTau = 2.0 * std::numbers::pi;

// Relative floor below which quadrature output counts as rounding noise.
constexpr double kCoeffNoiseFloor = 1e-13;

// Tolerance for the reality condition of user-supplied coefficients.
constexpr double kSymmetryTol = 1e-9;

std::complex<double> mode_multiplier(const RotationNumber& alpha, std::int64_t k) {
    double angle = kTau * std::remainder(static_cast<double>(k) * alpha.value(), 1.0);
    return std::polar(1.0, angle) - 1.0;
}

}  // namespace

CircleFunction::CircleFunction(int truncation) : k_(truncation) {
    if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
    c_.assign(2 * static_cast<std::size_t>(truncation) + 1, {0.0, 0.0});
}

CircleFunction::CircleFunction(int truncation, std::vector<std::complex<double>> coeffs)
    : k_(truncation), c_(std::move(coeffs)) {
    if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
    if (c_.size() != 2 * static_cast<std::size_t>(truncation) + 1) {
        std::ostringstream os;
        os << "coefficient vector has size " << c_.size() << ", expected "
           << 2 * truncation + 1;
        throw std::invalid_argument(os.str());
    }
    double scale = 1.0;
    for (const auto& c : c_) scale = std::max(scale, std::abs(c));
    for (int k = 0; k <= k_; ++k) {
        auto& pos = c_[static_cast<std::size_t>(k_ + k)];
        auto& neg = c_[static_cast<std::size_t>(k_ - k)];
        if (std::abs(neg - std::conj(pos)) > kSymmetryTol * scale) {
            std::ostringstream os;
            os << "coefficients violate the reality condition at k = " << k
               << ": c_{-k} = (" << neg.real() << ", " << neg.imag()
               << ") vs conj(c_k) = (" << pos.real() << ", " << -pos.imag() << ")";
            throw std::invalid_argument(os.str());
        }
        // Store the exact symmetrization so reality holds bitwise.
        std::complex<double> sym = 0.5 * (pos + std::conj(neg));
        if (k == 0) sym = {sym.real(), 0.0};
        pos = sym;
        neg = std::conj(sym);
    }
}

CircleFunction CircleFunction::constant(double c, int truncation) {
    CircleFunction g(truncation);
    g.c_[static_cast<std::size_t>(truncation)] = {c, 0.0};
    return g;
}

std::complex<double> CircleFunction::coeff(int k) const {
    if (k < -k_ || k > k_) {
        std::ostringstream os;
        os << "mode " << k << " outside truncation " << k_;
        throw std::out_of_range(os.str());
    }
    return c_[static_cast<std::size_t>(k_ + k)];
}

double CircleFunction::eval(double angle_fraction) const {
    // c_0 + 2 Re sum_{k>=1} c_k e^{i 2 pi k x}: real by construction.
    std::complex<double> rot = std::polar(1.0, kTau * angle_fraction);
    std::complex<double> power = 1.0;
    double acc = c_[static_cast<std::size_t>(k_)].real();
    for (int k = 1; k <= k_; ++k) {
        power *= rot;
        acc += 2.0 * (c_[static_cast<std::size_t>(k_ + k)] * power).real();
    }
    return acc;
}

double CircleFunction::l2_norm() const {
    double sum = 0.0;
    for (const auto& c : c_) sum += std::norm(c);
    return std::sqrt(sum);
}

DiskFunction::DiskFunction(std::vector<double> radii, std::vector<CircleFunction> slices)
    : radii_(std::move(radii)), slices_(std::move(slices)) {
    if (radii_.empty() || radii_.size() != slices_.size()) {
        throw std::invalid_argument("radial grid and slice list must match and be nonempty");
    }
    for (std::size_t j = 0; j < radii_.size(); ++j) {
        if (radii_[j] < 0.0 || radii_[j] > 1.0 + 1e-12) {
            throw std::invalid_argument("radial grid must lie in [0, 1]");
        }
        if (j > 0 && !(radii_[j] > radii_[j - 1])) {
            throw std::invalid_argument("radial grid must increase strictly");
        }
        if (slices_[j].truncation() != slices_[0].truncation()) {
            throw std::invalid_argument("all slices must share one truncation");
        }
    }
    if (radii_.front() == 0.0) {
        const auto& zero_slice = slices_.front();
        for (int k = 1; k <= zero_slice.truncation(); ++k) {
            if (std::abs(zero_slice.coeff(k)) > 1e-12) {
                std::ostringstream os;
                os << "slice at r = 0 carries mode " << k
                   << " with magnitude " << std::abs(zero_slice.coeff(k))
                   << "; a zero-radius circle is a single point";
                throw std::invalid_argument(os.str());
            }
        }
    }
}

std::vector<double> DiskFunction::uniform_radii(std::size_t intervals) {
    if (intervals < 1) throw std::invalid_argument("need at least one radial interval");
    std::vector<double> r(intervals + 1);
    for (std::size_t j = 0; j <= intervals; ++j) {
        r[j] = static_cast<double>(j) / static_cast<double>(intervals);
    }
    return r;
}

double DiskFunction::eval(std::complex<double> z) const {
    double r = std::abs(z);
    const double tol = 1e-12;
    if (r < radii_.front() - tol || r > radii_.back() + tol) {
        std::ostringstream os;
        os << "modulus " << r << " outside the radial grid ["
           << radii_.front() << ", " << radii_.back() << "]";
        throw RadiusOutOfRange(os.str());
    }
    r = std::clamp(r, radii_.front(), radii_.back());
    double x = r == 0.0 ? 0.0 : std::arg(z) / kTau;
    x -= std::floor(x);

    auto hi = std::lower_bound(radii_.begin(), radii_.end(), r);
    std::size_t j1 = std::min(static_cast<std::size_t>(hi - radii_.begin()),
                              radii_.size() - 1);
    if (j1 == 0) return slices_[0].eval(x);
    std::size_t j0 = j1 - 1;
    double h = radii_[j1] - radii_[j0];
    double lam = (r - radii_[j0]) / h;
    return (1.0 - lam) * slices_[j0].eval(x) + lam * slices_[j1].eval(x);
}

std::vector<double> DiskFunction::means() const {
    std::vector<double> m(slices_.size());
    for (std::size_t j = 0; j < slices_.size(); ++j) {
        m[j] = slices_[j].coeff(0).real();
    }
    return m;
}

CircleFunction sample_circle(const PointFunction& f, int truncation, double radius) {
    if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
    int m_nodes = 4 * truncation + 1;
    std::vector<double> values(static_cast<std::size_t>(m_nodes));
    for (int m = 0; m < m_nodes; ++m) {
        double x = static_cast<double>(m) / static_cast<double>(m_nodes);
        values[static_cast<std::size_t>(m)] = f(std::polar(radius, kTau * x));
    }
    std::vector<std::complex<double>> coeffs(2 * static_cast<std::size_t>(truncation) + 1);
    for (int k = -truncation; k <= truncation; ++k) {
        std::complex<double> acc = 0.0;
        for (int m = 0; m < m_nodes; ++m) {
            double angle = -kTau * static_cast<double>(k) * static_cast<double>(m) /
                           static_cast<double>(m_nodes);
            acc += values[static_cast<std::size_t>(m)] * std::polar(1.0, angle);
        }
        coeffs[static_cast<std::size_t>(k + truncation)] =
            acc / static_cast<double>(m_nodes);
    }
    double scale = 1.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    double floor = kCoeffNoiseFloor * scale;
    for (auto& c : coeffs) {
        // Snap the components independently: a genuine real mode still
        // carries imaginary rounding dust, and the closed forms the
        // builtins document are exactly clean.
        double re = std::fabs(c.real()) <= floor ? 0.0 : c.real();
        double im = std::fabs(c.imag()) <= floor ? 0.0 : c.imag();
        c = {re, im};
    }
    return CircleFunction(truncation, std::move(coeffs));
}

DiskFunction sample_disk(const PointFunction& f, int truncation,
                         const std::vector<double>& radii) {
    std::vector<CircleFunction> slices;
    slices.reserve(radii.size());
    for (double r : radii) slices.push_back(sample_circle(f, truncation, r));
    return DiskFunction(radii, std::move(slices));
}

DiskFunction sample_builtin(std::string_view spec, int truncation,
                            const std::vector<double>& radii) {
    PointFunction f;
    if (spec == "abs2") {
        f = [](std::complex<double> z) { return std::norm(z); };
    } else if (spec == "re") {
        f = [](std::complex<double> z) { return z.real(); };
    } else if (spec == "im") {
        f = [](std::complex<double> z) { return z.imag(); };
    } else if (spec == "zero") {
        f = [](std::complex<double>) { return 0.0; };
    } else if (spec.rfind("monomial:", 0) == 0) {
        std::string tail(spec.substr(9));
        int k = 0;
        try {
            std::size_t pos = 0;
            k = std::stoi(tail, &pos);
            if (pos != tail.size()) throw std::invalid_argument(tail);
        } catch (const std::exception&) {
            throw UnknownBuiltin("monomial: expects an integer degree, got '" + tail + "'");
        }
        if (k < 1 || k > 2 * truncation) {
            std::ostringstream os;
            os << "monomial degree " << k << " must lie in [1, " << 2 * truncation
               << "] for truncation " << truncation
               << "; higher modes would alias under the sampling grid";
            throw std::invalid_argument(os.str());
        }
        f = [k](std::complex<double> z) {
            std::complex<double> p = 1.0;
            for (int i = 0; i < k; ++i) p *= z;
            return p.real();
        };
    } else if (spec.rfind("const:", 0) == 0) {
        std::string tail(spec.substr(6));
        double c = 0.0;
        try {
            std::size_t pos = 0;
            c = std::stod(tail, &pos);
            if (pos != tail.size()) throw std::invalid_argument(tail);
        } catch (const std::exception&) {
            throw UnknownBuiltin("const: expects a number, got '" + tail + "'");
        }
        f = [c](std::complex<double>) { return c; };
    } else {
        throw UnknownBuiltin("unknown function '" + std::string(spec) +
                             "'; expected abs2, re, im, zero, monomial:k, const:c, or table:PATH");
    }
    return sample_disk(f, truncation, radii);
}

DiskFunction delta_alpha(const RotationNumber& alpha, const DiskFunction& f) {
    int big_k = f.truncation();
    std::vector<CircleFunction> slices;
    slices.reserve(f.slice_count());
    for (std::size_t j = 0; j < f.slice_count(); ++j) {
        std::vector<std::complex<double>> coeffs(2 * static_cast<std::size_t>(big_k) + 1);
        for (int k = -big_k; k <= big_k; ++k) {
            std::complex<double> c = f.slice(j).coeff(k);
            coeffs[static_cast<std::size_t>(k + big_k)] =
                k == 0 ? std::complex<double>(0.0, 0.0) : mode_multiplier(alpha, k) * c;
        }
        slices.emplace_back(big_k, std::move(coeffs));
    }
    return DiskFunction(f.radii(), std::move(slices));
}

CircleFunction delta_alpha(const RotationNumber& alpha, const CircleFunction& g,
                           std::int64_t n) {
    int big_k = g.truncation();
    std::vector<std::complex<double>> coeffs(2 * static_cast<std::size_t>(big_k) + 1);
    for (int k = -big_k; k <= big_k; ++k) {
        std::complex<double> c = g.coeff(k);
        coeffs[static_cast<std::size_t>(k + big_k)] =
            k == 0 ? std::complex<double>(0.0, 0.0)
                   : mode_multiplier(alpha, static_cast<std::int64_t>(k) * n) * c;
    }
    return CircleFunction(big_k, std::move(coeffs));
}

std::vector<double> orbit_average(const DiskFunction& f) { return f.means(); }

CoboundaryReport solve_coboundary(const RotationNumber& alpha, const DiskFunction& f,
                                  const SolveOptions& options) {
    CoboundaryReport report;
    report.obstruction_profile = f.means();
    report.truncation = f.truncation();
    report.radial_intervals = f.slice_count() - 1;
    report.tolerances = options;

    double worst_mean = 0.0;
    for (double m : report.obstruction_profile) {
        worst_mean = std::max(worst_mean, std::fabs(m));
    }
    if (worst_mean > options.mean_tol) {
        report.status = CoboundaryStatus::obstructed;
        return report;
    }

    int big_k = f.truncation();
    std::vector<CircleFunction> sigma_slices;
    sigma_slices.reserve(f.slice_count());
    Amplification amp;
    double residual = 0.0;
    for (std::size_t j = 0; j < f.slice_count(); ++j) {
        std::vector<std::complex<double>> coeffs(2 * static_cast<std::size_t>(big_k) + 1);
        // Gauge normalization sigma_0 = 0; the residual picks up whatever
        // mean survived the tolerance test.
        double slice_residual_sq = std::norm(f.slice(j).coeff(0));
        // Modes come in conjugate pairs (reality), so handle k and -k
        // together; the reported amplification mode is then always the
        // positive one.
        for (int k = 1; k <= big_k; ++k) {
            std::complex<double> ck = f.slice(j).coeff(k);
            if (ck == 0.0) continue;
            std::complex<double> mult = mode_multiplier(alpha, k);
            double d = std::abs(mult);
            double blowup = std::abs(ck) / d;
            if (blowup > options.overflow_guard) {
                std::ostringstream os;
                os << "mode k = " << k << " at radius " << f.radii()[j]
                   << " amplifies by |c|/d = " << blowup
                   << ", past the overflow guard " << options.overflow_guard
                   << " (small divisor d = " << d << ")";
                throw SmallDivisorOverflow(os.str());
            }
            std::complex<double> sk = ck / mult;
            coeffs[static_cast<std::size_t>(big_k + k)] = sk;
            coeffs[static_cast<std::size_t>(big_k - k)] = std::conj(sk);
            slice_residual_sq += 2.0 * std::norm(sk * mult - ck);
            double ratio = std::abs(sk) / std::abs(ck);
            if (ratio > amp.value) {
                amp.value = ratio;
                amp.mode = k;
            }
        }
        sigma_slices.emplace_back(big_k, std::move(coeffs));
        residual = std::max(residual, std::sqrt(slice_residual_sq));
    }

    report.status = CoboundaryStatus::solved;
    report.sigma = DiskFunction(f.radii(), std::move(sigma_slices));
    report.amplification = amp;
    report.residual = residual;
    return report;
}

TrivialityCertificate class_is_trivial(const RotationNumber& alpha, const DiskFunction& f,
                                       const SolveOptions& options) {
    TrivialityCertificate cert;
    cert.report = solve_coboundary(alpha, f, options);
    cert.trivial = cert.report.status == CoboundaryStatus::solved;
    return cert;
}

double gauge_residual(const RotationNumber& alpha, const CircleFunction& g,
                      std::int64_t n) {
    if (n == 0) return 0.0;
    double sum = static_cast<double>(n) * static_cast<double>(n);
    for (int k = 1; k <= g.truncation(); ++k) {
        double d = alpha.small_divisor(static_cast<std::int64_t>(k) * n);
        // Modes k and -k contribute equally for a real G.
        sum += 2.0 * std::norm(g.coeff(k)) * d * d;
    }
    return std::sqrt(sum);
}

ObstructionReport certify_obstruction(const RotationNumber& alpha, std::int64_t n,
                                      const std::vector<int>& truncations,
                                      double match_tol) {
    if (n == 0) {
        throw std::invalid_argument(
            "certify_obstruction: n = 0 asks about the trivial equation");
    }
    if (truncations.empty()) {
        throw std::invalid_argument("certify_obstruction: no truncations given");
    }
    ObstructionReport report;
    report.n = n;
    report.tolerance = match_tol;
    report.all_match = true;

    double shift = std::remainder(static_cast<double>(n) * alpha.value(), 1.0);
    for (int big_k : truncations) {
        if (big_k < 1) throw std::invalid_argument("truncations must be >= 1");
        // Least squares over G(x) = a_0 + sum a_k cos(2 pi k x) + b_k sin(2 pi k x):
        // rows are grid values of G(x + n alpha) - G(x), target is the
        // constant n. The grid of 4K+1 nodes integrates products of
        // degree-2K trig polynomials exactly, so the discrete minimum is
        // the true L2 minimum.
        int m_nodes = 4 * big_k + 1;
        int unknowns = 2 * big_k + 1;
        Eigen::MatrixXd a(m_nodes, unknowns);
        Eigen::VectorXd b(m_nodes);
        for (int m = 0; m < m_nodes; ++m) {
            double x = static_cast<double>(m) / static_cast<double>(m_nodes);
            a(m, 0) = 0.0;  // constants cancel in the difference
            for (int k = 1; k <= big_k; ++k) {
                double w = kTau * static_cast<double>(k);
                a(m, k) = std::cos(w * (x + shift)) - std::cos(w * x);
                a(m, big_k + k) = std::sin(w * (x + shift)) - std::sin(w * x);
            }
            b(m) = static_cast<double>(n);
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::VectorXd x = svd.solve(b);
        double res = (a * x - b).norm() / std::sqrt(static_cast<double>(m_nodes));
        ObstructionEntry entry;
        entry.truncation = big_k;
        entry.min_residual = res;
        entry.deviation = std::fabs(res - std::fabs(static_cast<double>(n)));
        report.all_match = report.all_match && entry.deviation <= match_tol;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace warped
