#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dcd/arrays.hpp"
#include "dcd/design.hpp"
#include "dcd/verify.hpp"

namespace dcd {

inline constexpr const char* kBundleFormat = "dcd-bundle/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct BundleMetadata {
  std::string method;  // c1, c2, c3-case1, c3-case2, c3-custom, loaded
  int n = 0;
  int s = 0;
  int q = 0;
  int p = 0;
  int lambda = 0;  // 0 when not applicable
  int u = 0;
  std::uint64_t seed = 0;
  std::string plan_digest;
  std::string tool_version = kToolVersion;
  int omega = 2;
  std::optional<std::string> criterion;
  std::vector<double> trajectory;
};

/// A design with its provenance and a stored verification report.
struct DesignBundle {
  BundleMetadata metadata;
  CoupledDesign design;
  VerificationReport report;
};

/// FNV-1a (64-bit, hex) over every permutation of the plan, in field order.
std::string plan_digest(const PermutationPlan& plan);

/// Verification used for bundles: check_dcd when omega is 2, otherwise
/// check_omega_coupled.
VerificationReport verify_for_omega(const CoupledDesign& design, int omega);

/// Fills the derived metadata fields and runs verification.
DesignBundle make_bundle(CoupledDesign design, BundleMetadata metadata);

std::string report_to_json(const VerificationReport& report);
std::string bundle_to_json(const DesignBundle& bundle);

/// Parses a bundle, re-verifies it and throws ParseError when the stored
/// report differs from the recomputed one.
DesignBundle bundle_from_json(const std::string& text);

void save_bundle(const DesignBundle& bundle, const std::filesystem::path& path);
DesignBundle load_bundle(const std::filesystem::path& path);

/// Header "z1,...,zq,x1,...,xp" then one row per run. With `continuous`
/// the quantitative entries are reals printed with 17 significant digits.
std::string design_to_csv(const CoupledDesign& design, const ContinuousDesign* continuous = nullptr);

/// Reads an integer CSV written by design_to_csv; s is not stored in CSV.
CoupledDesign design_from_csv(const std::string& text, int s);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dcd
