#pragma once
#include <stdexcept>
#include <string>

namespace chm {

// Series has no monomial-led lowest q-part, or is zero.
struct NotInvertible : std::runtime_error {
    explicit NotInvertible(const std::string& what) : std::runtime_error(what) {}
};

// y = -1 specialization requested on a term with half-integer y-exponent.
struct HalfIntegerExponent : std::runtime_error {
    explicit HalfIntegerExponent(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (syntax level).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input failing a semantic validation; `where` names the
// offending item (e.g. "irrep chi45a, class 7A" or a row pair).
struct IntegrityError : std::runtime_error {
    std::string where;
    IntegrityError(const std::string& what, std::string where_)
        : std::runtime_error(what + " [" + where_ + "]"), where(std::move(where_)) {}
};

struct MissingTwiningData : std::runtime_error {
    explicit MissingTwiningData(const std::string& what) : std::runtime_error(what) {}
};

// Neither sign choice reproduces the pinning identity.
struct SignResolutionFailure : std::runtime_error {
    explicit SignResolutionFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolution : std::runtime_error {
    explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

struct NonUnique : std::runtime_error {
    explicit NonUnique(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chm
