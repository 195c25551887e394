#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcd/matrix.hpp"
#include "dcd/rng.hpp"

namespace dcd {

/// All the randomness of one construction run.
///
/// Only the fields used by the chosen construction are filled. `expand`
/// holds, per quantitative column, one permutation of {0..s-1} for each of
/// the n/s levels of the collapsed column; when empty it is drawn from
/// Rng(seed) at assembly time.
struct PermutationPlan {
  std::vector<Permutation> v;                     // construction 1: p perms of {0..lambda-1}
  std::vector<std::vector<Permutation>> w;        // construction 1: p x lambda, construction 2: p x 1
  std::vector<std::vector<Permutation>> b_cells;  // construction 2: p x s^2 perms of {0..lambda-1}
  std::vector<Permutation> c_perms;               // construction 3: p level perms of {0..s-1}
  std::vector<std::vector<Permutation>> expand;
  std::uint64_t seed = 0;

  friend bool operator==(const PermutationPlan&, const PermutationPlan&) = default;
};

/// D~2 = s B + C, the decomposition a construction used.
struct Witness {
  IntegerMatrix b;
  IntegerMatrix c;
  PermutationPlan plan;
};

/// (D1, D2): q qualitative s-level columns and a Latin hypercube with p columns.
struct CoupledDesign {
  IntegerMatrix d1;
  IntegerMatrix d2;
  int s = 0;
  std::optional<Witness> witness;
  std::vector<std::string> warnings;

  int runs() const { return d1.rows(); }
  int qualitative() const { return d1.cols(); }
  int quantitative() const { return d2.cols(); }
};

/// Builds a design from explicit matrices; checks only shapes and ranges.
CoupledDesign make_design(IntegerMatrix d1, IntegerMatrix d2, int s);

}  // namespace dcd
