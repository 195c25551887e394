#include "dcd/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "dcd/error.hpp"

namespace dcd {
namespace {

constexpr double kTieTolerance = 1e-12;

double midpoint(int level, int n) { return (level + 0.5) / n; }

struct RestartOutcome {
  PermutationPlan plan;
  double score = 0.0;
};

RestartOutcome run_restart(const Family& family, const OptimizeOptions& options, int r) {
  const auto stream = derive_seed(options.seed, static_cast<std::uint64_t>(r));
  Rng rng(stream);
  auto plan = sample_plan(family, rng);
  plan.seed = stream;
  double current = score(build(family, plan).d2, options.criterion).value;

  if (options.climb_steps > 0) {
    auto slots = plan_permutations(plan);
    for (int step = 0; step < options.climb_steps && !slots.empty(); ++step) {
      auto& perm = *slots[static_cast<std::size_t>(rng.below(slots.size()))];
      const auto i = static_cast<std::size_t>(rng.below(perm.size()));
      auto j = static_cast<std::size_t>(rng.below(perm.size() - 1));
      if (j >= i) ++j;
      std::swap(perm[i], perm[j]);
      const double trial = score(build(family, plan).d2, options.criterion).value;
      if (better(trial, current, options.criterion))
        current = trial;
      else
        std::swap(perm[i], perm[j]);
    }
  }
  return {std::move(plan), current};
}

}  // namespace

std::string to_string(Criterion c) { return c == Criterion::Maximin ? "maximin" : "cl2"; }

Criterion parse_criterion(const std::string& name) {
  if (name == "maximin") return Criterion::Maximin;
  if (name == "cl2" || name == "centered-L2") return Criterion::CenteredL2;
  throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + name + "'");
}

double maximin_distance(const IntegerMatrix& d2) {
  const int n = d2.rows();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "maximin distance needs at least two runs");
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double sum = 0.0;
      for (int k = 0; k < d2.cols(); ++k) {
        const double diff = (d2(a, k) - d2(b, k)) / static_cast<double>(n);
        sum += diff * diff;
      }
      best = std::min(best, sum);
    }
  return std::sqrt(best);
}

double centered_l2_discrepancy(const IntegerMatrix& d2) {
  const int n = d2.rows();
  const int d = d2.cols();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "discrepancy needs at least one run");
  std::vector<double> dev(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < d; ++k)
      dev[static_cast<std::size_t>(r * d + k)] = std::abs(midpoint(d2(r, k), n) - 0.5);

  double single = 0.0;
  for (int r = 0; r < n; ++r) {
    double prod = 1.0;
    for (int k = 0; k < d; ++k) {
      const double z = dev[static_cast<std::size_t>(r * d + k)];
      prod *= 1.0 + 0.5 * z - 0.5 * z * z;
    }
    single += prod;
  }
  double pair = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double prod = 1.0;
      for (int k = 0; k < d; ++k) {
        const double za = dev[static_cast<std::size_t>(a * d + k)];
        const double zb = dev[static_cast<std::size_t>(b * d + k)];
        const double gap = std::abs(d2(a, k) - d2(b, k)) / static_cast<double>(n);
        prod *= 1.0 + 0.5 * za + 0.5 * zb - 0.5 * gap;
      }
      pair += prod;
    }
  const double sq = std::pow(13.0 / 12.0, d) - 2.0 * single / n + pair / (static_cast<double>(n) * n);
  return std::sqrt(std::max(0.0, sq));
}

CriterionScore score(const IntegerMatrix& d2, Criterion criterion) {
  return {criterion, criterion == Criterion::Maximin ? maximin_distance(d2) : centered_l2_discrepancy(d2)};
}

bool better(double candidate, double incumbent, Criterion criterion) {
  return criterion == Criterion::Maximin ? candidate > incumbent + kTieTolerance
                                         : candidate < incumbent - kTieTolerance;
}

OptimizeResult optimize_d2(const Family& family, const OptimizeOptions& options) {
  if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
  if (options.climb_steps < 0) throw Error(ErrorCode::InvalidArgument, "climb steps must be nonnegative");
  const int total = options.restarts;
  std::vector<std::optional<RestartOutcome>> outcomes(static_cast<std::size_t>(total));

  if (options.parallel && total > 1) {
    const int workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), total));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int r = w; r < total; r += workers)
            outcomes[static_cast<std::size_t>(r)] = run_restart(family, options, r);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (int r = 0; r < total; ++r) outcomes[static_cast<std::size_t>(r)] = run_restart(family, options, r);
  }

  OptimizeResult result;
  for (int r = 0; r < total; ++r) {
    const double value = outcomes[static_cast<std::size_t>(r)]->score;
    result.scores.push_back(value);
    if (r == 0 || better(value, result.best_score, options.criterion)) {
      result.best_score = value;
      result.best_restart = r;
    }
    result.trajectory.push_back(result.best_score);
  }
  result.best = build(family, outcomes[static_cast<std::size_t>(result.best_restart)]->plan);
  return result;
}

}  // namespace dcd
