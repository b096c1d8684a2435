#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "warped/cohomology.hpp"
#include "warped/quotient.hpp"
#include "warped/rotation.hpp"

namespace warped {

/// A point of the pullback of the warped bundle along the quotient map:
/// the trivialization sends (z, t) to the pair (base point, warped fiber
/// representative).
struct PullbackPoint {
    DiskPoint base;
    WRep fiber;
};

/// The trivializing map (z, t) -> (z, [z, t]).
PullbackPoint pullback_forward(const DiskPoint& z, double t);

/// Its inverse on the fiber over z: the unique t with (z, t) naming the
/// same warped point as y, computed by dividing against the reference
/// (z, 0). Throws NotSameFiber / WindowExhausted when y does not actually
/// sit over z.
double pullback_inverse(const RotationNumber& alpha, const DiskPoint& z, const WRep& y,
                        const MatchWindow& window, double delta_zero = kDeltaZero);

/// What the warped bundle looks like over the boundary circle: the
/// twisting reduces to the integer cocycle generated by the constant
/// function 1, kept here together with its rotation number so it can be
/// fed straight into the class test.
struct BoundaryCocycle {
    RotationNumber alpha;
    CircleFunction generator;

    /// The generator as a one-slice function on the circle r = 1.
    DiskFunction as_boundary_function() const;
};

BoundaryCocycle restrict_boundary(const RotationNumber& alpha, int truncation = 8);

/// The radial contraction [z] -> [s z]; s = 1 is the identity, s = 0 the
/// constant map onto the cone point. Requires 0 <= s <= 1.
DRep contract(double s, const DRep& d);

/// A base path sampled on a parameter grid s_0 < ... < s_{N-1}; radial
/// paths (s |-> s z_1) are tagged so the tester can read boundary values
/// off their endpoints.
struct BasePath {
    std::string id;
    std::vector<double> s;
    std::vector<std::complex<double>> z;
    bool radial = false;
};

/// The radial path s |-> s z_1 on the default grid s_j = j/(nodes-1).
BasePath make_radial_path(std::complex<double> z1, std::size_t nodes = 65,
                          std::string id = "");

/// count radial paths ending at the equispaced unit points e^{i 2 pi m/count}.
std::vector<BasePath> make_radial_fan(std::size_t count, std::size_t nodes = 65);

/// A horizontal-lift candidate: given the sampled base path and the start
/// fiber t0, produce the lifted fiber values on the same grid.
struct LiftCandidate {
    std::string name;
    std::function<std::vector<double>(const std::vector<std::complex<double>>&, double)>
        lift;
};

/// H(z, t0)(s) = t0: the lift that never moves.
LiftCandidate make_trivial_lift();

/// H(z, t0)(s) = t0 + G(z(s)/|z(s)|) |z(s)|^2 - G(z(0)/|z(0)|) |z(0)|^2,
/// the family into which any equivariant lift would have to fall; points
/// with |z| <= delta_zero contribute 0 (the factor |z|^2 wins).
LiftCandidate make_gauge_lift(const CircleFunction& g, double delta_zero = kDeltaZero);

struct EquivarianceEntry {
    std::int64_t n = 0;
    std::string path_id;
    double sup_violation = 0.0;
    double at_s = 0.0;
};

struct BoundarySample {
    double theta = 0.0;  // angle fraction of the path endpoint
    double value = 0.0;  // lift endpoint minus t0: the implied G(z1)
};

struct EquivarianceReport {
    double max_violation = 0.0;
    std::vector<EquivarianceEntry> entries;
    std::vector<BoundarySample> boundary_samples;
};

/// Measure how far a candidate is from the equivariance identity
/// H(z_n, t0 + n |z(0)|^2)(s) = H(z, t0)(s) + n |z(s)|^2, where z_n is the
/// path rotated by e^{i 2 pi n alpha}. One entry per (path, n) records the
/// sup over the grid; radial paths also contribute their implied boundary
/// value. A candidate returning the wrong grid size raises GridMismatch;
/// one that breaks the initial condition H(...)(s_0) = t0 is rejected as
/// invalid input.
EquivarianceReport test_lift_equivariance(const RotationNumber& alpha,
                                          const LiftCandidate& candidate,
                                          const std::vector<BasePath>& paths,
                                          const std::vector<std::int64_t>& n_set,
                                          double t0 = 0.0);

}  // namespace warped
