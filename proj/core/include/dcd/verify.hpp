#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcd/design.hpp"

namespace dcd {

/// Rows matching `levels` on D1 columns `factors` fail to give a Latin
/// hypercube in D2 column `column` after collapsing by s^l. `column` is -1
/// when the level combination does not occur at all.
struct CouplingViolation {
  int l = 0;
  std::vector<int> factors;
  std::vector<int> levels;
  int column = 0;
};

struct GridCheck {
  int i = 0;
  int j = 0;
  int gx = 0;
  int gy = 0;
  bool pass = false;
};

/// Aggregated verdicts. Checks that were not run stay empty; pass() is the
/// conjunction of those that were. Stratification entries are informational.
struct VerificationReport {
  int n = 0;
  int s = 0;
  int q = 0;
  int p = 0;
  int omega_checked = 0;

  std::optional<bool> d1_orthogonal;  // D1 is OA(n, q, s, min(2, q))
  std::optional<bool> d2_latin;

  std::optional<bool> coupling;
  std::vector<CouplingViolation> coupling_violations;

  std::optional<bool> condition_a;
  std::vector<std::pair<int, int>> condition_a_failures;  // (i, k)
  std::optional<bool> condition_b;
  std::vector<std::array<int, 3>> condition_b_failures;  // (i, j, k)

  std::optional<bool> croa_partition;
  std::optional<bool> witness_check;
  std::vector<std::string> witness_failures;

  std::vector<GridCheck> stratification;

  bool pass() const;
};

/// Definition of an omega-way coupled design, checked by slicing rows.
VerificationReport check_omega_coupled(const CoupledDesign& design, int omega);

/// One-way coupling (marginally coupled design).
VerificationReport check_mcd(const CoupledDesign& design);

/// Two-condition characterization of a DCD with an OA(n, q, s, 2) as D1:
/// (a) every (z_i, d~_k) is balanced on s x n/s levels,
/// (b) every (z_i, z_j, d~~_k) is balanced on s x s x n/s^2 levels.
VerificationReport check_dcd_theorem1(const CoupledDesign& design);

/// D1 splits into consecutive s^2-row blocks that are each CROA(s^2, q, s, 2).
bool check_croa_partition(const IntegerMatrix& d1, int s);

/// Same property with an unrestricted row partition; n <= 16.
bool check_croa_partition_exhaustive(const IntegerMatrix& d1, int s);

struct Theorem3Result {
  IntegerMatrix b;
  IntegerMatrix c;
  bool pass = false;
  std::vector<std::string> failures;
};

/// Recovers B = floor(D~2 / s), C = D~2 - s B and checks the triple conditions.
Theorem3Result theorem3_witness(const CoupledDesign& design);

/// Largest q for which a DCD with D1 an s-level strength-2 OA can exist.
constexpr int max_qualitative_factors(int s) { return s; }

/// Grid stratification of every pair of quantitative columns on the grids
/// (n/s^2)^2, (n/s) x s, s x (n/s), (n/s^2) x s, s x (n/s^2) and s x s.
std::vector<GridCheck> stratification_report(const CoupledDesign& design);

/// Conditions (a) and (b), consecutive CROA partition and, when the design
/// carries one, the witness identity floor(D2 / s) = s B + C.
VerificationReport check_dcd(const CoupledDesign& design);

/// Human-readable multi-line summary.
std::string describe(const VerificationReport& report);

}  // namespace dcd
