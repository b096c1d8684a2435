#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace warped {

using BigInt = boost::multiprecision::cpp_int;

/// One continued-fraction convergent p/q of a rotation number.
struct Convergent {
    BigInt p;
    BigInt q;
};

enum class AlphaKind { golden, cf_specified, float_given };

/// An irrational rotation number alpha in (0,1), stored together with a
/// finite prefix of its continued-fraction expansion [0; a_1, a_2, ...]
/// and the convergents p_k/q_k derived from it.
///
/// Convergents are kept with exact integer arithmetic; the recurrence
/// p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2} overflows
/// int64 almost immediately for expansions with large partial quotients.
///
/// The stored list begins with the canonical pair (0, 1) except when
/// a_1 = 1: there (0,1) and (1,1) share the denominator and only (1,1)
/// is kept, so that q is strictly increasing along the list.
class RotationNumber {
public:
    /// (sqrt(5)-1)/2 = [0; 1, 1, 1, ...], truncated at `depth` quotients.
    /// The default depth 36 is the deepest prefix whose convergents all
    /// satisfy the best-approximation bound against the double value;
    /// q_36 is already 2.4e7, past any window size used here.
    static RotationNumber golden(std::size_t depth = 36);

    /// Rotation number from explicit partial quotients (all >= 1).
    static RotationNumber from_cf(const std::vector<std::int64_t>& quotients);

    /// Expand a double in (0,1) to `depth` partial quotients by the exact
    /// Euclidean algorithm on its binary rational value. Throws
    /// FloatLooksRational if the expansion terminates early or hits a
    /// partial quotient above 10^6.
    static RotationNumber from_float(double x, std::size_t depth = 16);

    /// Parse "golden", "cf:a1,a2,...", or "float:0.xxxx".
    static RotationNumber parse(std::string_view spec);

    double value() const noexcept { return value_; }
    AlphaKind kind() const noexcept { return kind_; }
    const std::vector<std::int64_t>& partial_quotients() const noexcept {
        return quotients_;
    }
    const std::vector<Convergent>& stored_convergents() const noexcept {
        return convergents_;
    }

    /// First `depth` stored convergents. Throws DepthExceedsExpansion if
    /// the stored expansion is shorter.
    std::vector<Convergent> convergents(std::size_t depth) const;

    /// d_k = |e^{i 2 pi k alpha} - 1| = 2 |sin(pi k alpha)|, k != 0.
    double small_divisor(std::int64_t k) const;

    /// min over 1 <= n <= n_max of the distance from n*alpha to the
    /// nearest integer. Uses the best-approximation property of the
    /// stored convergents when they reach past n_max, otherwise falls
    /// back to a direct scan.
    double min_orbit_gap(std::int64_t n_max) const;

private:
    RotationNumber(AlphaKind kind, double value,
                   std::vector<std::int64_t> quotients);

    AlphaKind kind_;
    double value_;
    std::vector<std::int64_t> quotients_;
    std::vector<Convergent> convergents_;
};

/// Precomputed table of small divisors d_k for |k| <= k_max.
class SmallDivisorTable {
public:
    SmallDivisorTable(const RotationNumber& alpha, std::int64_t k_max);

    std::int64_t k_max() const noexcept { return k_max_; }

    /// d_|k|; throws std::out_of_range for k = 0 or |k| > k_max.
    double at(std::int64_t k) const;

private:
    std::int64_t k_max_;
    std::vector<double> d_;  // d_[k-1] = d_k, k = 1..k_max
};

}  // namespace warped
