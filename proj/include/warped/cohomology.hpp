#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "warped/rotation.hpp"

namespace warped {

/// A real-valued function on a circle, stored as a truncated Fourier
/// series c_k, -K <= k <= K. Construction enforces the reality condition
/// c_{-k} = conj(c_k) (and Im c_0 = 0) up to a small consistency tolerance
/// and then stores the exactly symmetrized coefficients. Values are
/// immutable afterwards.
class CircleFunction {
public:
    /// The zero function at truncation K.
    explicit CircleFunction(int truncation);

    /// coeffs has size 2K+1, ordered c_{-K} ... c_K.
    CircleFunction(int truncation, std::vector<std::complex<double>> coeffs);

    static CircleFunction constant(double c, int truncation = 0);

    int truncation() const noexcept { return k_; }

    /// c_k for |k| <= K.
    std::complex<double> coeff(int k) const;

    /// All coefficients, ordered c_{-K} ... c_K.
    const std::vector<std::complex<double>>& coeffs() const noexcept { return c_; }

    /// Evaluate at the angle fraction x (the point e^{i 2 pi x}).
    double eval(double angle_fraction) const;

    /// sqrt(sum |c_k|^2): the L^2 norm over the normalized circle.
    double l2_norm() const;

private:
    int k_;
    std::vector<std::complex<double>> c_;
};

/// A real-valued function on the closed disk: one CircleFunction per
/// radius of a strictly increasing grid in [0,1], all at a common
/// truncation. If the grid starts at r = 0, that slice must be purely
/// the mean (a circle of radius zero is a point).
class DiskFunction {
public:
    DiskFunction(std::vector<double> radii, std::vector<CircleFunction> slices);

    /// {0, 1/J, ..., 1}.
    static std::vector<double> uniform_radii(std::size_t intervals);

    int truncation() const noexcept { return slices_.front().truncation(); }
    const std::vector<double>& radii() const noexcept { return radii_; }
    std::size_t slice_count() const noexcept { return slices_.size(); }
    const CircleFunction& slice(std::size_t j) const { return slices_.at(j); }

    /// Evaluate at z: exact Fourier sum on the slice circles, linear
    /// interpolation in the radius between them. Throws RadiusOutOfRange
    /// if |z| falls outside the radial grid.
    double eval(std::complex<double> z) const;

    /// The circle means Re c_0(r_j), one per slice.
    std::vector<double> means() const;

private:
    std::vector<double> radii_;
    std::vector<CircleFunction> slices_;
};

using PointFunction = std::function<double(std::complex<double>)>;

/// Compute one Fourier slice of f on the circle of radius r by equispaced
/// trigonometric quadrature with M = 4K+1 nodes (exact for trigonometric
/// polynomials of degree <= 2K). Coefficients below the machine-noise
/// floor 1e-13 * max(1, sup |c|) are snapped to zero so that functions
/// which are exactly representable come out with exact zero modes.
CircleFunction sample_circle(const PointFunction& f, int truncation, double radius);

/// Sample f on every circle of the radial grid.
DiskFunction sample_disk(const PointFunction& f, int truncation,
                         const std::vector<double>& radii);

/// Named functions accepted on the command line:
/// abs2, re, im, zero, monomial:k, const:c. Throws UnknownBuiltin.
/// monomial:k requires 1 <= k <= 2*truncation (beyond that the quadrature
/// would alias the mode instead of dropping it).
DiskFunction sample_builtin(std::string_view spec, int truncation,
                            const std::vector<double>& radii);

/// Coboundary operator: (delta f)(z) = f(z e^{i 2 pi alpha}) - f(z), acting
/// as multiplication by (e^{i 2 pi k alpha} - 1) on mode k. The mean (k=0)
/// is annihilated exactly.
DiskFunction delta_alpha(const RotationNumber& alpha, const DiskFunction& f);

/// Circle-level coboundary for the n-step rotation: g(x + n alpha) - g(x).
CircleFunction delta_alpha(const RotationNumber& alpha, const CircleFunction& g,
                           std::int64_t n = 1);

/// The circle means M(f)(r_j) — the orbit averages of f.
std::vector<double> orbit_average(const DiskFunction& f);

struct SolveOptions {
    double mean_tol = 1e-10;
    double solve_tol = 1e-9;
    double overflow_guard = 1e12;
};

enum class CoboundaryStatus { solved, obstructed };

/// Worst Fourier-mode amplification |c_k^sigma| / |c_k^f| of a solve and
/// the mode attaining it; {0, 0} when no nonzero mode exists.
struct Amplification {
    double value = 0.0;
    std::int64_t mode = 0;
};

struct CoboundaryReport {
    CoboundaryStatus status = CoboundaryStatus::obstructed;
    std::optional<DiskFunction> sigma;      // present iff solved; c_0 == 0
    std::vector<double> obstruction_profile;  // circle means of f, per radius
    Amplification amplification;            // meaningful when solved
    double residual = 0.0;                  // sup_r || delta sigma - f ||_L2, when solved
    int truncation = 0;                     // K of f
    std::size_t radial_intervals = 0;       // J (slice count - 1)
    SolveOptions tolerances;
};

/// Solve delta_alpha(sigma) = f mode by mode. If some circle mean of f
/// exceeds mean_tol the equation is obstructed (the mean is the invariant
/// the coboundary can never produce) and the report carries the profile.
/// Otherwise sigma_k = f_k / (e^{i 2 pi k alpha} - 1), gauge-normalized by
/// sigma_0 = 0. Throws SmallDivisorOverflow when |f_k| / d_k would exceed
/// the overflow guard.
CoboundaryReport solve_coboundary(const RotationNumber& alpha, const DiskFunction& f,
                                  const SolveOptions& options = {});

struct TrivialityCertificate {
    bool trivial = false;
    CoboundaryReport report;
};

/// Whether [f] = 0 in the quotient of functions by coboundaries, at the
/// stated truncation and tolerances. The report doubles as certificate:
/// sigma when trivial, the obstruction profile when not.
TrivialityCertificate class_is_trivial(const RotationNumber& alpha, const DiskFunction& f,
                                       const SolveOptions& options = {});

/// Coefficient-space norm of G(x + n alpha) - G(x) - n:
/// sqrt(n^2 + sum_{k != 0} |c_k|^2 |e^{i 2 pi k n alpha} - 1|^2).
/// The n^2 term is irreducible — the left side has zero mean — so the
/// residual is bounded below by |n| for every G; that bound is the whole
/// obstruction.
double gauge_residual(const RotationNumber& alpha, const CircleFunction& g,
                      std::int64_t n);

struct ObstructionEntry {
    int truncation = 0;
    double min_residual = 0.0;
    double deviation = 0.0;  // |min_residual - |n||
};

struct ObstructionReport {
    std::int64_t n = 0;
    double tolerance = 0.0;
    std::vector<ObstructionEntry> entries;
    bool all_match = false;
};

/// Independent infeasibility certificate for the gauge equation
/// G(x + n alpha) = G(x) + n: for each truncation K, minimize
/// || G(x + n alpha) - G(x) - n ||_L2 over all trig polynomials of degree
/// <= K by dense least squares on a 4K+1 value grid, and compare the
/// minimum against |n| (they agree iff no G can do better than giving up
/// the constant). Requires n != 0.
ObstructionReport certify_obstruction(const RotationNumber& alpha, std::int64_t n,
                                      const std::vector<int>& truncations,
                                      double match_tol = 1e-9);

}  // namespace warped
