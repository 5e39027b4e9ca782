#pragma once

#include <stdexcept>

namespace dfsarc {

// A requested computation exceeds a configured size limit (index or degree cap).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A denominator evaluated to zero: the point lies outside the function's domain.
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The geometric sampler exhausted its per-draw trial cap.
class SamplerCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dfsarc
