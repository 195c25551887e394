#include "dcd/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dcd/arrays.hpp"
#include "dcd/combinations.hpp"
#include "dcd/error.hpp"

namespace dcd {
namespace {

int ipow(int base, int e) {
  int v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

void require_square_divisible(const CoupledDesign& d) {
  const int n = d.runs();
  const int s = d.s;
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "s must be at least 2");
  const int need = d.qualitative() >= 2 ? s * s : s;
  if (n % need != 0)
    throw Error(ErrorCode::RunSizeNotDivisible,
                "run size " + std::to_string(n) + " is not divisible by " + std::to_string(need));
}

void fill_params(VerificationReport& r, const CoupledDesign& d) {
  r.n = d.runs();
  r.s = d.s;
  r.q = d.qualitative();
  r.p = d.quantitative();
}

bool d1_is_oa(const CoupledDesign& d) {
  if (d.qualitative() == 0) return true;
  return is_orthogonal_array(d.d1, d.s, std::min(2, d.qualitative()));
}

std::string triple_name(const char* a, int i, const char* b, int j, const char* c, int k) {
  std::ostringstream os;
  os << '(' << a << i + 1 << ", " << b << j + 1 << ", " << c << k + 1 << ')';
  return os.str();
}

}  // namespace

bool VerificationReport::pass() const {
  for (const auto& check : {d1_orthogonal, d2_latin, coupling, condition_a, condition_b, croa_partition, witness_check})
    if (check.has_value() && !*check) return false;
  return true;
}

VerificationReport check_omega_coupled(const CoupledDesign& design, int omega) {
  const int n = design.runs();
  const int q = design.qualitative();
  const int s = design.s;
  if (omega < 0) throw Error(ErrorCode::InvalidArgument, "omega must be nonnegative");
  if (omega > q)
    throw Error(ErrorCode::OmegaExceedsQ, "omega " + std::to_string(omega) + " exceeds q = " + std::to_string(q));
  if (n % ipow(s, omega) != 0)
    throw Error(ErrorCode::RunSizeNotDivisible, "run size not divisible by s^omega");

  VerificationReport report;
  fill_params(report, design);
  report.omega_checked = omega;
  report.d2_latin = is_latin_hypercube(design.d2);
  report.coupling = true;
  if (!*report.d2_latin) report.coupling = false;

  const auto d2cols = design.d2.columns();
  for (int l = 1; l <= omega; ++l) {
    const int width = ipow(s, l);
    const int slice = n / width;
    for_each_subset(q, l, [&](const std::vector<int>& factors) {
      std::map<std::vector<int>, std::vector<int>> groups;
      for (int r = 0; r < n; ++r) {
        std::vector<int> key;
        key.reserve(factors.size());
        for (int f : factors) key.push_back(design.d1(r, f));
        groups[key].push_back(r);
      }
      if (static_cast<int>(groups.size()) != ipow(s, l)) {
        // Report every absent combination.
        std::vector<int> combo(static_cast<std::size_t>(l), 0);
        for (int code = 0; code < ipow(s, l); ++code) {
          int rest = code;
          for (int i = l - 1; i >= 0; --i) {
            combo[static_cast<std::size_t>(i)] = rest % s;
            rest /= s;
          }
          if (!groups.count(combo)) {
            report.coupling = false;
            report.coupling_violations.push_back({l, factors, combo, -1});
          }
        }
      }
      for (const auto& [levels, rows] : groups) {
        for (int k = 0; k < design.quantitative(); ++k) {
          std::vector<int> vals;
          vals.reserve(rows.size());
          for (int r : rows) vals.push_back(d2cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] / width);
          if (!is_permutation_of_range(vals, slice)) {
            report.coupling = false;
            report.coupling_violations.push_back({l, factors, levels, k});
          }
        }
      }
      return true;
    });
  }
  return report;
}

VerificationReport check_mcd(const CoupledDesign& design) { return check_omega_coupled(design, 1); }

VerificationReport check_dcd_theorem1(const CoupledDesign& design) {
  require_square_divisible(design);
  const int n = design.runs();
  const int s = design.s;
  const int q = design.qualitative();
  const int p = design.quantitative();

  VerificationReport report;
  fill_params(report, design);
  report.omega_checked = std::min(2, q);
  report.d1_orthogonal = d1_is_oa(design);
  report.d2_latin = is_latin_hypercube(design.d2);

  const auto z = design.d1.columns();
  const auto tilde = level_collapse(design.d2, s).columns();
  const auto ttilde = level_collapse(design.d2, s * s).columns();
  const int lt = n / s;
  const int ltt = q >= 2 ? n / (s * s) : std::max(1, n / (s * s));

  auto in_range = [](const Column& col, int levels) {
    return std::all_of(col.begin(), col.end(), [&](int v) { return v < levels; });
  };

  report.condition_a = true;
  for (int i = 0; i < q; ++i)
    for (int k = 0; k < p; ++k) {
      const auto& zi = z[static_cast<std::size_t>(i)];
      const auto& dk = tilde[static_cast<std::size_t>(k)];
      if (!in_range(dk, lt) || !is_balanced({std::span<const int>(zi), std::span<const int>(dk)}, {s, lt})) {
        report.condition_a = false;
        report.condition_a_failures.emplace_back(i, k);
      }
    }

  report.condition_b = true;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (int k = 0; k < p; ++k) {
        const auto& dk = ttilde[static_cast<std::size_t>(k)];
        if (!in_range(dk, ltt) ||
            !is_balanced({std::span<const int>(z[static_cast<std::size_t>(i)]),
                          std::span<const int>(z[static_cast<std::size_t>(j)]), std::span<const int>(dk)},
                         {s, s, ltt})) {
          report.condition_b = false;
          report.condition_b_failures.push_back({i, j, k});
        }
      }
  return report;
}

bool check_croa_partition(const IntegerMatrix& d1, int s) {
  const int block = s * s;
  if (s < 2 || d1.rows() % block != 0) return false;
  for (int b = 0; b < d1.rows() / block; ++b)
    if (!is_croa(d1.row_block(b * block, block), s)) return false;
  return true;
}

bool check_croa_partition_exhaustive(const IntegerMatrix& d1, int s) {
  const int n = d1.rows();
  if (n > 16) throw Error(ErrorCode::TooLarge, "exhaustive partition search is limited to 16 rows");
  const int block = s * s;
  if (s < 2 || n % block != 0) return false;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> group;
  // Choose groups of s^2 rows anchored at the smallest unused row.
  auto search = [&](auto&& self) -> bool {
    int anchor = 0;
    while (anchor < n && used[static_cast<std::size_t>(anchor)]) ++anchor;
    if (anchor == n) return true;
    std::vector<int> chosen{anchor};
    used[static_cast<std::size_t>(anchor)] = 1;
    auto extend = [&](auto&& ext, int from) -> bool {
      if (static_cast<int>(chosen.size()) == block) {
        const auto sub = d1.select_rows(chosen);
        if (!has_croa_partition_exhaustive(sub, s)) return false;
        return self(self);
      }
      for (int r = from; r < n; ++r) {
        if (used[static_cast<std::size_t>(r)]) continue;
        used[static_cast<std::size_t>(r)] = 1;
        chosen.push_back(r);
        if (ext(ext, r + 1)) return true;
        chosen.pop_back();
        used[static_cast<std::size_t>(r)] = 0;
      }
      return false;
    };
    const bool ok = extend(extend, anchor + 1);
    if (!ok) used[static_cast<std::size_t>(anchor)] = 0;
    return ok;
  };
  return search(search);
}

Theorem3Result theorem3_witness(const CoupledDesign& design) {
  require_square_divisible(design);
  const int n = design.runs();
  const int s = design.s;
  const int q = design.qualitative();
  const int p = design.quantitative();
  const int lb = std::max(1, n / (s * s));

  Theorem3Result out;
  const auto tilde = level_collapse(design.d2, s);
  out.b = level_collapse(tilde, s);
  out.c = IntegerMatrix(n, p);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < p; ++k) out.c(r, k) = tilde(r, k) - s * out.b(r, k);

  auto fail = [&](std::string msg) { out.failures.push_back(std::move(msg)); };
  if (!is_latin_hypercube(design.d2)) fail("D2 is not a Latin hypercube");
  if (!d1_is_oa(design)) fail("D1 is not an OA of strength 2");

  const auto bcols = out.b.columns();
  const auto ccols = out.c.columns();
  const auto z = design.d1.columns();
  for (int k = 0; k < p; ++k) {
    const auto& bk = bcols[static_cast<std::size_t>(k)];
    if (std::any_of(bk.begin(), bk.end(), [&](int v) { return v >= lb; }) ||
        !is_balanced({std::span<const int>(bk)}, {lb}))
      fail("B column " + std::to_string(k + 1) + " is not balanced on n/s^2 levels");
    if (!is_balanced({std::span<const int>(ccols[static_cast<std::size_t>(k)])}, {s}))
      fail("C column " + std::to_string(k + 1) + " is not balanced on s levels");
  }
  for (int k = 0; k < p; ++k) {
    const auto& bk = bcols[static_cast<std::size_t>(k)];
    if (std::any_of(bk.begin(), bk.end(), [&](int v) { return v >= lb; })) continue;
    for (int i = 0; i < q; ++i) {
      const auto& zi = z[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < q; ++j)
        if (!is_balanced({std::span<const int>(zi), std::span<const int>(z[static_cast<std::size_t>(j)]),
                          std::span<const int>(bk)},
                         {s, s, lb}))
          fail("triple " + triple_name("z", i, "z", j, "b", k) + " is not a full factorial");
      if (!is_balanced({std::span<const int>(zi), std::span<const int>(ccols[static_cast<std::size_t>(k)]),
                        std::span<const int>(bk)},
                       {s, s, lb}))
        fail("triple " + triple_name("z", i, "c", k, "b", k) + " is not a full factorial");
    }
  }
  out.pass = out.failures.empty();
  return out;
}

std::vector<GridCheck> stratification_report(const CoupledDesign& design) {
  const int n = design.runs();
  const int s = design.s;
  std::vector<std::pair<int, int>> grids;
  auto add = [&](int gx, int gy) {
    if (gx < 1 || gy < 1 || gx * gy <= 1 || n % gx != 0 || n % gy != 0) return;
    if (std::find(grids.begin(), grids.end(), std::pair{gx, gy}) == grids.end()) grids.emplace_back(gx, gy);
  };
  const int n_s2 = n / (s * s);
  add(n_s2, n_s2);
  add(n / s, s);
  add(s, n / s);
  add(n_s2, s);
  add(s, n_s2);
  add(s, s);

  std::vector<GridCheck> out;
  const auto cols = design.d2.columns();
  for (int i = 0; i < design.quantitative(); ++i)
    for (int j = i + 1; j < design.quantitative(); ++j)
      for (const auto& [gx, gy] : grids)
        out.push_back({i, j, gx, gy,
                       grid_stratification(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)], n, n,
                                           gx, gy)});
  return out;
}

VerificationReport check_dcd(const CoupledDesign& design) {
  auto report = check_dcd_theorem1(design);
  report.croa_partition = check_croa_partition(design.d1, design.s);
  if (design.witness) {
    const auto& w = *design.witness;
    bool ok = w.b.rows() == design.runs() && w.c.rows() == design.runs() && w.b.cols() == design.quantitative() &&
              w.c.cols() == design.quantitative();
    if (ok) {
      const auto tilde = level_collapse(design.d2, design.s);
      for (int r = 0; r < design.runs() && ok; ++r)
        for (int k = 0; k < design.quantitative(); ++k)
          if (tilde(r, k) != design.s * w.b(r, k) + w.c(r, k)) {
            ok = false;
            report.witness_failures.push_back("floor(D2/s) != sB + C at row " + std::to_string(r + 1) + ", column " +
                                              std::to_string(k + 1));
            break;
          }
    } else {
      report.witness_failures.push_back("witness shape does not match the design");
    }
    report.witness_check = ok;
  }
  report.stratification = stratification_report(design);
  return report;
}

std::string describe(const VerificationReport& r) {
  std::ostringstream os;
  auto verdict = [](const std::optional<bool>& v) -> const char* {
    if (!v) return "not run";
    return *v ? "pass" : "FAIL";
  };
  os << "design: n=" << r.n << " s=" << r.s << " q=" << r.q << " p=" << r.p << " (omega=" << r.omega_checked
     << ")\n";
  os << "  D1 orthogonal array     : " << verdict(r.d1_orthogonal) << '\n';
  os << "  D2 Latin hypercube      : " << verdict(r.d2_latin) << '\n';
  if (r.coupling) {
    os << "  omega-way coupling      : " << verdict(r.coupling);
    if (!r.coupling_violations.empty()) os << " (" << r.coupling_violations.size() << " offending cells)";
    os << '\n';
  }
  if (r.condition_a) {
    os << "  condition (a)           : " << verdict(r.condition_a);
    for (const auto& [i, k] : r.condition_a_failures) os << " (z" << i + 1 << ",d" << k + 1 << ")";
    os << '\n';
  }
  if (r.condition_b) {
    os << "  condition (b)           : " << verdict(r.condition_b);
    for (const auto& t : r.condition_b_failures) os << " (z" << t[0] + 1 << ",z" << t[1] + 1 << ",d" << t[2] + 1 << ")";
    os << '\n';
  }
  if (r.croa_partition) os << "  consecutive CROA blocks : " << verdict(r.croa_partition) << '\n';
  if (r.witness_check) os << "  witness sB + C          : " << verdict(r.witness_check) << '\n';
  if (!r.stratification.empty()) {
    std::map<std::pair<int, int>, std::pair<int, int>> tally;
    for (const auto& g : r.stratification) {
      auto& [passed, total] = tally[{g.gx, g.gy}];
      passed += g.pass ? 1 : 0;
      ++total;
    }
    for (const auto& [grid, counts] : tally)
      os << "  grid " << grid.first << "x" << grid.second << " stratification : " << counts.first << "/"
         << counts.second << " pairs\n";
  }
  os << "overall: " << (r.pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace dcd
