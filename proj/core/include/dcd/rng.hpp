#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace dcd {

using Permutation = std::vector<int>;

/// Seedable generator with a platform-independent stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded integers use rejection sampling, shuffles are
/// Fisher-Yates from the back, and reals take the top 53 bits. None of the
/// std distributions are used because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in the open interval (0, 1).
  double open01();

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  /// Uniformly random permutation of {0, ..., n-1}.
  Permutation permutation(int n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the `index`-th independent stream derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

bool is_permutation_of_range(std::span<const int> values, int n);

}  // namespace dcd
