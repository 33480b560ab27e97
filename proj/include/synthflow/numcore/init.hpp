#pragma once

#include "synthflow/numcore/tensor.hpp"

#include <cstdint>

namespace synthflow::numcore {

struct Fans {
  Index fan_in = 0;
  Index fan_out = 0;
};

// [n] -> (n, n); [out, in] -> (in, out); [out, in, k...] -> (in*k, out*k).
Fans compute_fans(const Shape& shape);

// Glorot uniform on [-a, a], a = sqrt(6 / (fan_in + fan_out)).
// Throws std::invalid_argument when either fan is zero.
template <typename Scalar>
Tensor<Scalar> xavier_init(const Shape& shape, std::uint64_t seed);

// Deterministic stream of child seeds for building a model layer by layer.
class SeedSequence {
 public:
  explicit SeedSequence(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace synthflow::numcore
