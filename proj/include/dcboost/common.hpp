#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace dcboost {

using Vector = Eigen::VectorXd;

/// Bad caller input: dimension mismatch, out-of-range argument, unknown name.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The problem lies outside what an operation can handle (e.g. a subproblem
/// without strong convexity).
class UnsupportedProblem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A proved inequality failed beyond its numerical slack. Always a bug or a
/// tolerance misconfiguration.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed serialized data (trace files, expression JSON, config documents).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical slacks shared by the checkers.
inline constexpr double kInexactSlack = 1e-12;
inline constexpr double kMembershipTol = 1e-10;
inline constexpr double kDescentSlack = 1e-9;

} // namespace dcboost
