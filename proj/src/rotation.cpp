#include "warped/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "warped/errors.hpp"

namespace warped {

namespace {

constexpr std::int64_t kFloatQuotientGuard = 1'000'000;
constexpr std::int64_t kBruteGapLimit = 100'000'000;

// Largest q that still converts to double exactly.
const double kExactDoubleLimit = 9007199254740992.0;  // 2^53

double to_double(const BigInt& v) { return v.convert_to<double>(); }

// Evaluate [0; a_1, ..., a_n] backwards; relative error stays at a few ulp
// instead of the cancellation incurred by forming p_n/q_n in double.
double evaluate_cf(const std::vector<std::int64_t>& quotients) {
    double v = 0.0;
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
        v = 1.0 / (static_cast<double>(*it) + v);
    }
    return v;
}

}  // namespace

RotationNumber::RotationNumber(AlphaKind kind, double value,
                               std::vector<std::int64_t> quotients)
    : kind_(kind), value_(value), quotients_(std::move(quotients)) {
    if (quotients_.empty()) {
        throw std::invalid_argument("rotation number needs at least one partial quotient");
    }
    for (std::int64_t a : quotients_) {
        if (a < 1) throw std::invalid_argument("partial quotients must be >= 1");
    }
    if (!(value_ > 0.0 && value_ < 1.0)) {
        throw std::invalid_argument("rotation number must lie in (0,1)");
    }

    // p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1.
    BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
    if (quotients_.front() >= 2) convergents_.push_back({p, q});
    for (std::int64_t a : quotients_) {
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = p; q_prev = q; p = p_next; q = q_next;
        convergents_.push_back({p, q});
    }

    // Sanity-check the stored value against the best-approximation bound
    // |q_k alpha - p_k| < 1/q_{k+1} for every convergent whose successor is
    // stored. The double value itself carries a half-ulp of quantization,
    // which matters once q_k approaches 1/eps; allow for it explicitly.
    for (std::size_t i = 0; i + 1 < convergents_.size(); ++i) {
        const auto& c = convergents_[i];
        const auto& next = convergents_[i + 1];
        if (c.q > BigInt(static_cast<std::int64_t>(kExactDoubleLimit))) break;
        double qd = to_double(c.q);
        double pd = to_double(c.p);
        double err = std::fabs(std::fma(value_, qd, -pd));
        double bound = 1.0 / to_double(next.q) +
                       2.0 * qd * std::numeric_limits<double>::epsilon();
        if (err >= bound) {
            std::ostringstream os;
            os << "convergent " << i << " violates the approximation bound: |q a - p| = "
               << err << " >= " << bound;
            throw std::logic_error(os.str());
        }
    }
}

RotationNumber RotationNumber::golden(std::size_t depth) {
    if (depth == 0) throw std::invalid_argument("golden: depth must be >= 1");
    std::vector<std::int64_t> ones(depth, 1);
    double value = (std::sqrt(5.0) - 1.0) / 2.0;
    return RotationNumber(AlphaKind::golden, value, std::move(ones));
}

RotationNumber RotationNumber::from_cf(const std::vector<std::int64_t>& quotients) {
    return RotationNumber(AlphaKind::cf_specified, evaluate_cf(quotients), quotients);
}

RotationNumber RotationNumber::from_float(double x, std::size_t depth) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::invalid_argument("from_float: value must lie in (0,1)");
    }
    if (depth == 0) throw std::invalid_argument("from_float: depth must be >= 1");

    // x = m * 2^(exp-53) exactly, with m a 53-bit integer.
    int exp = 0;
    double mant = std::frexp(x, &exp);
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    BigInt num = m;
    BigInt den = BigInt(1) << (53 - exp);

    std::vector<std::int64_t> quotients;
    while (quotients.size() < depth) {
        if (num == 0) {
            std::ostringstream os;
            os << "float expansion of " << x << " terminates after "
               << quotients.size() << " quotients; value is rational";
            throw FloatLooksRational(os.str());
        }
        BigInt a = den / num;
        if (a > kFloatQuotientGuard) {
            std::ostringstream os;
            os << "float expansion of " << x << " hits partial quotient "
               << a << " > " << kFloatQuotientGuard
               << "; value is indistinguishable from a rational";
            throw FloatLooksRational(os.str());
        }
        quotients.push_back(a.convert_to<std::int64_t>());
        BigInt r = den - a * num;
        den = num;
        num = r;
    }
    return RotationNumber(AlphaKind::float_given, x, std::move(quotients));
}

RotationNumber RotationNumber::parse(std::string_view spec) {
    if (spec == "golden") return golden();
    auto parse_tail = [&](std::string_view prefix) {
        return std::string(spec.substr(prefix.size()));
    };
    if (spec.rfind("cf:", 0) == 0) {
        std::string tail = parse_tail("cf:");
        std::vector<std::int64_t> quotients;
        std::istringstream is(tail);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                std::size_t pos = 0;
                std::int64_t a = std::stoll(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                quotients.push_back(a);
            } catch (const std::exception&) {
                throw std::invalid_argument("cf: expects comma-separated integers, got '" + tok + "'");
            }
        }
        if (quotients.empty()) {
            throw std::invalid_argument("cf: expects at least one partial quotient");
        }
        return from_cf(quotients);
    }
    if (spec.rfind("float:", 0) == 0) {
        std::string tail = parse_tail("float:");
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(tail, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("float: expects a decimal number, got '" + tail + "'");
        }
        if (pos != tail.size()) {
            throw std::invalid_argument("float: trailing characters in '" + tail + "'");
        }
        return from_float(x);
    }
    throw std::invalid_argument("unknown rotation spec '" + std::string(spec) +
                                "'; expected golden, cf:..., or float:...");
}

std::vector<Convergent> RotationNumber::convergents(std::size_t depth) const {
    if (depth > convergents_.size()) {
        std::ostringstream os;
        os << "requested " << depth << " convergents but only "
           << convergents_.size() << " are stored";
        throw DepthExceedsExpansion(os.str());
    }
    return {convergents_.begin(), convergents_.begin() + static_cast<std::ptrdiff_t>(depth)};
}

double RotationNumber::small_divisor(std::int64_t k) const {
    if (k == 0) throw std::invalid_argument("small_divisor: k must be nonzero");
    // remainder() gives k*alpha reduced to [-1/2, 1/2] at full precision,
    // which is exactly the distance that the sine below needs.
    double frac = std::remainder(static_cast<double>(k) * value_, 1.0);
    return 2.0 * std::fabs(std::sin(std::numbers::pi * frac));
}

double RotationNumber::min_orbit_gap(std::int64_t n_max) const {
    if (n_max < 1) throw std::invalid_argument("min_orbit_gap: n_max must be >= 1");

    // Best approximations are exactly the convergent denominators, so the
    // minimum over n <= n_max is attained at the largest stored q <= n_max
    // -- provided the stored expansion reaches beyond n_max.
    double best = std::numeric_limits<double>::infinity();
    bool prefix_covers = false;
    for (const auto& c : convergents_) {
        if (c.q > n_max) {
            prefix_covers = true;
            break;
        }
        if (c.q == 0) continue;  // canonical (0,1) has q = 1, never hit; guard anyway
        double err = std::fabs(std::fma(value_, to_double(c.q), -to_double(c.p)));
        best = std::min(best, err);
    }
    if (prefix_covers) return best;

    if (n_max > kBruteGapLimit) {
        throw std::invalid_argument(
            "min_orbit_gap: stored expansion too shallow for this n_max and the "
            "direct scan would be unreasonable");
    }
    best = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 1; n <= n_max; ++n) {
        double nd = static_cast<double>(n);
        double nearest = std::nearbyint(nd * value_);
        best = std::min(best, std::fabs(std::fma(value_, nd, -nearest)));
    }
    return best;
}

SmallDivisorTable::SmallDivisorTable(const RotationNumber& alpha, std::int64_t k_max)
    : k_max_(k_max) {
    if (k_max < 1) throw std::invalid_argument("SmallDivisorTable: k_max must be >= 1");
    d_.reserve(static_cast<std::size_t>(k_max));
    for (std::int64_t k = 1; k <= k_max; ++k) {
        d_.push_back(alpha.small_divisor(k));
    }
}

double SmallDivisorTable::at(std::int64_t k) const {
    std::int64_t a = std::llabs(k);
    if (a < 1 || a > k_max_) {
        std::ostringstream os;
        os << "small divisor index " << k << " outside table range 1.." << k_max_;
        throw std::out_of_range(os.str());
    }
    return d_[static_cast<std::size_t>(a - 1)];
}

}  // namespace warped
