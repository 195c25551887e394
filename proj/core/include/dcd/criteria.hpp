#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcd/constructions.hpp"
#include "dcd/design.hpp"
#include "dcd/matrix.hpp"

namespace dcd {

enum class Criterion { Maximin, CenteredL2 };

enum class Sense { Maximize, Minimize };

struct CriterionScore {
  Criterion criterion = Criterion::Maximin;
  double value = 0.0;

  Sense sense() const { return criterion == Criterion::Maximin ? Sense::Maximize : Sense::Minimize; }
};

/// "maximin" / "cl2".
std::string to_string(Criterion c);
Criterion parse_criterion(const std::string& name);

/// Minimum pairwise Euclidean distance of the points (l + 0.5) / n.
double maximin_distance(const IntegerMatrix& d2);

/// Centered L2 discrepancy of the points (l + 0.5) / n, closed form.
/// Returns the discrepancy itself (square root of the usual double sum).
double centered_l2_discrepancy(const IntegerMatrix& d2);

CriterionScore score(const IntegerMatrix& d2, Criterion criterion);

/// Strictly better beyond a 1e-12 tolerance.
bool better(double candidate, double incumbent, Criterion criterion);

struct OptimizeOptions {
  Criterion criterion = Criterion::Maximin;
  int restarts = 1;
  std::uint64_t seed = 0;
  int climb_steps = 0;  // swap moves tried per restart
  bool parallel = false;
};

struct OptimizeResult {
  CoupledDesign best;
  double best_score = 0.0;
  int best_restart = 0;
  std::vector<double> scores;      // final score of each restart
  std::vector<double> trajectory;  // running best after each restart
};

/// Random restarts over plans of `family`; restart r draws from
/// Rng(derive_seed(seed, r)). Ties go to the lower restart index.
OptimizeResult optimize_d2(const Family& family, const OptimizeOptions& options);

}  // namespace dcd
