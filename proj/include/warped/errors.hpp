#pragma once

#include <stdexcept>
#include <string>

namespace warped {

/// Every failure the library reports deliberately derives from Error.
/// The category drives the process exit code of the command-line tool:
/// input errors exit 1, numerical errors exit 3.
class Error : public std::runtime_error {
public:
    enum class Category { input, numerical };

    Error(Category cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

// --- input / usage -------------------------------------------------------

/// The continued-fraction expansion of a float terminated (or produced an
/// implausibly large partial quotient), i.e. the input looks rational.
class FloatLooksRational : public Error {
public:
    explicit FloatLooksRational(const std::string& msg)
        : Error(Category::input, msg) {}
};

/// More convergents were requested than the stored expansion provides.
class DepthExceedsExpansion : public Error {
public:
    explicit DepthExceedsExpansion(const std::string& msg)
        : Error(Category::input, msg) {}
};

/// A coefficient table or path file could not be parsed.
class MalformedTable : public Error {
public:
    explicit MalformedTable(const std::string& msg)
        : Error(Category::input, msg) {}
};

class MalformedCsv : public Error {
public:
    explicit MalformedCsv(const std::string& msg)
        : Error(Category::input, msg) {}
};

/// A function was named on the command line that the tool does not know.
class UnknownBuiltin : public Error {
public:
    explicit UnknownBuiltin(const std::string& msg)
        : Error(Category::input, msg) {}
};

/// A disk function was evaluated at a modulus outside its radial grid.
class RadiusOutOfRange : public Error {
public:
    explicit RadiusOutOfRange(const std::string& msg)
        : Error(Category::input, msg) {}
};

// --- numerical -----------------------------------------------------------

/// Two matches were found inside an orbit window; the window tolerance
/// violated its own uniqueness precondition.
class AmbiguousMatch : public Error {
public:
    explicit AmbiguousMatch(const std::string& msg)
        : Error(Category::numerical, msg) {}
};

/// Fiberwise division was attempted between points over different base
/// points (modulus mismatch, or exactly one of the two sits on the axis).
class NotSameFiber : public Error {
public:
    explicit NotSameFiber(const std::string& msg)
        : Error(Category::numerical, msg) {}
};

/// The base points agree in modulus but no integer in the window rotates
/// one angle onto the other.
class WindowExhausted : public Error {
public:
    explicit WindowExhausted(const std::string& msg)
        : Error(Category::numerical, msg) {}
};

/// The branch integer changed between two nodes of a sampled path without
/// an intervening zero of the first coordinate.
class BranchJumpWithoutZero : public Error {
public:
    explicit BranchJumpWithoutZero(const std::string& msg)
        : Error(Category::numerical, msg) {}
};

/// A Fourier mode would be amplified past the overflow guard when dividing
/// by its small divisor.
class SmallDivisorOverflow : public Error {
public:
    explicit SmallDivisorOverflow(const std::string& msg)
        : Error(Category::numerical, msg) {}
};

/// A lift candidate returned a sample vector of the wrong length.
class GridMismatch : public Error {
public:
    explicit GridMismatch(const std::string& msg)
        : Error(Category::numerical, msg) {}
};

}  // namespace warped
