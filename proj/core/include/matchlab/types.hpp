#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace matchlab {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

using BigInt = boost::multiprecision::cpp_int;

// Probabilities and Gibbs weights are carried in extended precision.
using Real = long double;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive computation would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised when a pinning admits no matching.
class UnsatisfiablePinning : public Error {
 public:
  using Error::Error;
};

}  // namespace matchlab
