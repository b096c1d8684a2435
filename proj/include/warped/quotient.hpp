#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "warped/rotation.hpp"

namespace warped {

/// Threshold below which a point counts as sitting on the central axis.
inline constexpr double kDeltaZero = 1e-9;

/// Absolute tolerance for matching the moduli of two base points.
inline constexpr double kRadiusMatchTol = 1e-9;

/// Fiber coordinates are compared to fiber_tol * (1 + |t|).
inline constexpr double kFiberTol = 1e-9;

/// A point of the closed unit disk; construction rejects |z| > 1 + 1e-12.
class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(std::complex<double> z);

    std::complex<double> value() const noexcept { return z_; }
    double modulus() const noexcept { return std::abs(z_); }

private:
    std::complex<double> z_ = {0.0, 0.0};
};

/// Representative of a point in the quotient disk D_alpha = D / Z.
struct DRep {
    DiskPoint rep;
};

/// Representative (z, t) of a point in the warped space W_alpha.
struct WRep {
    DiskPoint z;
    double t = 0.0;
};

/// Finite search window for deciding orbit membership.
///
/// angle_tol must stay below min_orbit_gap(alpha, n_max) so that at most
/// one integer can match. The factory default is far tighter:
/// min(gap/2, 1e-8). The gap/2 ceiling alone would accept any angle that
/// merely falls near the orbit by accident -- adversarially chosen points
/// (not constructed by the group action) can sit within gap/2 of an orbit
/// point while not lying on the orbit at all, and 1e-8 is still orders of
/// magnitude above the rounding noise of genuinely constructed points.
struct MatchWindow {
    std::int64_t n_max = 1024;
    double angle_tol = 0.0;

    static MatchWindow for_rotation(const RotationNumber& alpha,
                                    std::int64_t n_max = 1024,
                                    std::optional<double> angle_tol_override = std::nullopt);
};

/// z -> z * e^{i 2 pi n alpha}.
DiskPoint act_d(const RotationNumber& alpha, std::int64_t n, const DiskPoint& p);

/// (z, t) -> (z * e^{i 2 pi n alpha}, t + n |z|^2). Points on the axis are
/// fixed exactly; on the boundary circle the fiber shifts by exactly n.
WRep act_w(const RotationNumber& alpha, std::int64_t n, const WRep& y);

/// (z, t) -> (z, t + s), the fiberwise translation flow.
WRep act_r(double s, const WRep& y);

/// Bundle projection [z, t] -> [z].
DRep project(const WRep& y);

/// Decide whether two representatives name the same point of D_alpha by
/// scanning |n| <= window.n_max. Returns the matching n, or nullopt.
/// Throws AmbiguousMatch if two integers match (window tolerance misused).
std::optional<std::int64_t> equal_in_d(const RotationNumber& alpha,
                                       const DRep& a, const DRep& b,
                                       const MatchWindow& window,
                                       double delta_zero = kDeltaZero);

/// Same-point test in W_alpha: the base points must match under some n and
/// the fiber coordinates must satisfy t_b = t_a + n |z_a|^2 within
/// fiber_tol * (1 + max |t|).
std::optional<std::int64_t> equal_in_w(const RotationNumber& alpha,
                                       const WRep& a, const WRep& b,
                                       const MatchWindow& window,
                                       double delta_zero = kDeltaZero,
                                       double fiber_tol = kFiberTol);

/// Fiberwise division: the unique s with y2 = s . y1 modulo the Z-action,
/// i.e. s = t2 - t1 - m |z1|^2 for the window match m (s = t2 - t1 on the
/// axis). Throws NotSameFiber if the base points differ, WindowExhausted
/// if no integer in the window aligns the angles.
double divide(const RotationNumber& alpha, const WRep& y1, const WRep& y2,
              const MatchWindow& window, double delta_zero = kDeltaZero);

/// Two paths in W_alpha sampled on a common strictly increasing time grid.
struct SampledPath {
    std::vector<double> ts;
    std::vector<std::complex<double>> w1;
    std::vector<double> tau1;
    std::vector<std::complex<double>> w2;
    std::vector<double> tau2;

    std::size_t size() const noexcept { return ts.size(); }
    void validate() const;
};

/// Output of divide_path: s(t_i), the branch integer m(t_i) used at each
/// node, and whether the node was degenerate (|w1| <= delta_zero, where
/// the branch is not determined by the data).
struct PathDivision {
    std::vector<double> s;
    std::vector<std::int64_t> m;
    std::vector<std::uint8_t> degenerate;
};

/// Nodewise division s(t) = tau2 - tau1 - m(t) |w1(t)|^2 along two sampled
/// paths over the same base path. The branch integer m is required to be
/// constant on every maximal run of non-degenerate nodes
/// (BranchJumpWithoutZero otherwise); it may change across zeros of w1.
/// Degenerate nodes take s = tau2 - tau1 and inherit m from the nearest
/// non-degenerate node (by index, ties toward the earlier one; paths with
/// no non-degenerate node report m = 0).
PathDivision divide_path(const RotationNumber& alpha, const SampledPath& path,
                         const MatchWindow& window, double delta_zero = kDeltaZero);

}  // namespace warped
