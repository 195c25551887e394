#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dcd/arrays.hpp"
#include "dcd/gf.hpp"

namespace dcd {

/// s^u runs; row r holds the base-s digits of r, most significant first.
OrthogonalArray full_factorial(int s, int u);

/// Coefficients (mu_1, ..., mu_u) of the column sum_j mu_j xi_j over GF(s).
struct LinearColumnSpec {
  std::vector<int> coefficients;
};

/// xi_j(r) is the j-th base-s digit of r, xi_1 being the most significant.
Column basis_column(int s, int u, int j);

/// Column of length s^u with entries sum_j mu_j xi_j(r) in GF(s).
Column linear_column(const GaloisField& field, int u, const LinearColumnSpec& spec);

/// Bush construction OA(s^t, s+1, s, t), t in {2, 3}, s >= t.
///
/// Row r encodes the polynomial whose coefficients, leading one first, are the
/// base-s digits of r. Column j < s evaluates it at field element j; the last
/// column holds the leading coefficient, so it is (0_s, 1_s, ...) for t = 2.
OrthogonalArray bush_oa(const GaloisField& field, int t);

/// Last column equals (0_s, 1_s, ..., (s-1)_s) with s^2 runs.
bool is_block_form(const IntegerMatrix& a);

/// Stable row sort on the last column. Requires an s^2-run array whose last
/// column has s levels.
OrthogonalArray normalize_block_form(const OrthogonalArray& a);

/// OA text format: header "n m s t" (or "n m s1,...,sm t"), then n rows of m
/// integers. '#' starts a comment. Strength is re-verified on parse.
OrthogonalArray parse_oa(const std::string& text);
OrthogonalArray load_oa(const std::filesystem::path& path);
std::string format_oa(const OrthogonalArray& a);
void save_oa(const OrthogonalArray& a, const std::filesystem::path& path);

/// Like parse_oa but accepts any matrix (strength field 0, no verification).
/// Used for quantitative columns, where "levels" is the run size.
IntegerMatrix parse_matrix_text(const std::string& text, std::vector<int>* levels = nullptr, int* strength = nullptr);

}  // namespace dcd
