#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace equimap {

/// Arbitrary-precision signed integer. Hermite/Smith intermediates grow past
/// any fixed width even for small inputs, so all lattice arithmetic uses this.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, stored reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Integer vector of length k (the ambient rank of the surrounding context).
using IntVector = std::vector<Int>;

/// A zero weight or zero character appeared where the fixed-point free
/// hypothesis (V^G = {0}) forbids it.
struct TrivialSummandError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operands live in incompatible ambient groups (different rank, p or l).
struct RankMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A desk-scale enumeration limit was exceeded.
struct BoundsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The zero representation was passed to a decision operation.
struct ZeroRepresentationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation precondition does not hold.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace equimap
