#include "dcd/bundle.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcd/error.hpp"

namespace dcd {
namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const IntegerMatrix& m) {
  auto rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    auto row = ordered_json::array();
    for (int v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

IntegerMatrix matrix_from_json(const ordered_json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw Error(ErrorCode::ParseError, std::string(what) + ": expected " + std::to_string(rows) + " rows");
  IntegerMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw Error(ErrorCode::ParseError, std::string(what) + ": row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(what) + ": non-integer entry");
      m(r, c) = v.get<int>();
    }
  }
  return m;
}

template <typename F>
void each_plan_perm(const PermutationPlan& plan, F&& f) {
  for (const auto& p : plan.v) f(p);
  for (const auto& row : plan.w)
    for (const auto& p : row) f(p);
  for (const auto& col : plan.b_cells)
    for (const auto& p : col) f(p);
  for (const auto& p : plan.c_perms) f(p);
  for (const auto& col : plan.expand)
    for (const auto& p : col) f(p);
}

ordered_json plan_json(const PermutationPlan& plan) {
  ordered_json j;
  j["v"] = plan.v;
  j["w"] = plan.w;
  j["b_cells"] = plan.b_cells;
  j["c_perms"] = plan.c_perms;
  j["expand"] = plan.expand;
  j["seed"] = plan.seed;
  return j;
}

PermutationPlan plan_from_json(const ordered_json& j) {
  PermutationPlan plan;
  j.at("v").get_to(plan.v);
  j.at("w").get_to(plan.w);
  j.at("b_cells").get_to(plan.b_cells);
  j.at("c_perms").get_to(plan.c_perms);
  j.at("expand").get_to(plan.expand);
  j.at("seed").get_to(plan.seed);
  return plan;
}

ordered_json optional_bool(const std::optional<bool>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json report_json(const VerificationReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["s"] = r.s;
  j["q"] = r.q;
  j["p"] = r.p;
  j["omega_checked"] = r.omega_checked;
  j["pass"] = r.pass();
  j["d1_orthogonal"] = optional_bool(r.d1_orthogonal);
  j["d2_latin"] = optional_bool(r.d2_latin);
  j["coupling"] = optional_bool(r.coupling);
  auto violations = ordered_json::array();
  for (const auto& v : r.coupling_violations)
    violations.push_back({{"l", v.l}, {"factors", v.factors}, {"levels", v.levels}, {"column", v.column}});
  j["coupling_violations"] = violations;
  j["condition_a"] = optional_bool(r.condition_a);
  auto fa = ordered_json::array();
  for (const auto& [i, k] : r.condition_a_failures) fa.push_back({i, k});
  j["condition_a_failures"] = fa;
  j["condition_b"] = optional_bool(r.condition_b);
  auto fb = ordered_json::array();
  for (const auto& t : r.condition_b_failures) fb.push_back({t[0], t[1], t[2]});
  j["condition_b_failures"] = fb;
  j["croa_partition"] = optional_bool(r.croa_partition);
  j["witness_check"] = optional_bool(r.witness_check);
  j["witness_failures"] = r.witness_failures;
  auto strat = ordered_json::array();
  for (const auto& g : r.stratification)
    strat.push_back({{"i", g.i}, {"j", g.j}, {"gx", g.gx}, {"gy", g.gy}, {"pass", g.pass}});
  j["stratification"] = strat;
  return j;
}

int get_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw Error(ErrorCode::ParseError, std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string plan_digest(const PermutationPlan& plan) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint32_t word) {
    for (int b = 0; b < 4; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  each_plan_perm(plan, [&](const Permutation& p) {
    feed(static_cast<std::uint32_t>(p.size()));
    for (int v : p) feed(static_cast<std::uint32_t>(v));
  });
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

VerificationReport verify_for_omega(const CoupledDesign& design, int omega) {
  return omega == 2 ? check_dcd(design) : check_omega_coupled(design, omega);
}

DesignBundle make_bundle(CoupledDesign design, BundleMetadata metadata) {
  metadata.n = design.runs();
  metadata.s = design.s;
  metadata.q = design.qualitative();
  metadata.p = design.quantitative();
  metadata.tool_version = kToolVersion;
  metadata.plan_digest = design.witness ? plan_digest(design.witness->plan) : "";
  auto report = verify_for_omega(design, metadata.omega);
  return {std::move(metadata), std::move(design), std::move(report)};
}

std::string report_to_json(const VerificationReport& report) { return report_json(report).dump(2) + "\n"; }

std::string bundle_to_json(const DesignBundle& b) {
  const auto& m = b.metadata;
  ordered_json meta;
  meta["method"] = m.method;
  meta["n"] = m.n;
  meta["s"] = m.s;
  meta["q"] = m.q;
  meta["p"] = m.p;
  meta["lambda"] = m.lambda;
  meta["u"] = m.u;
  meta["seed"] = m.seed;
  meta["plan_digest"] = m.plan_digest;
  meta["tool_version"] = m.tool_version;
  meta["omega"] = m.omega;
  meta["criterion"] = m.criterion ? ordered_json(*m.criterion) : ordered_json(nullptr);
  meta["trajectory"] = m.trajectory;

  ordered_json j;
  j["format"] = kBundleFormat;
  j["metadata"] = meta;
  j["D1"] = matrix_json(b.design.d1);
  j["D2"] = matrix_json(b.design.d2);
  if (b.design.witness) {
    j["B"] = matrix_json(b.design.witness->b);
    j["C"] = matrix_json(b.design.witness->c);
    j["plan"] = plan_json(b.design.witness->plan);
  }
  j["warnings"] = b.design.warnings;
  j["report"] = report_json(b.report);
  return j.dump(2) + "\n";
}

DesignBundle bundle_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != kBundleFormat)
      throw Error(ErrorCode::ParseError, std::string("not a ") + kBundleFormat + " bundle");
    const auto& meta = j.at("metadata");
    BundleMetadata m;
    m.method = meta.at("method").get<std::string>();
    m.n = get_int(meta, "n");
    m.s = get_int(meta, "s");
    m.q = get_int(meta, "q");
    m.p = get_int(meta, "p");
    m.lambda = get_int(meta, "lambda");
    m.u = get_int(meta, "u");
    m.seed = meta.at("seed").get<std::uint64_t>();
    m.plan_digest = meta.at("plan_digest").get<std::string>();
    m.tool_version = meta.at("tool_version").get<std::string>();
    m.omega = get_int(meta, "omega");
    if (!meta.at("criterion").is_null()) m.criterion = meta.at("criterion").get<std::string>();
    meta.at("trajectory").get_to(m.trajectory);

    CoupledDesign design = make_design(matrix_from_json(j.at("D1"), m.n, m.q, "D1"),
                                       matrix_from_json(j.at("D2"), m.n, m.p, "D2"), m.s);
    if (j.contains("B")) {
      Witness w{matrix_from_json(j.at("B"), m.n, m.p, "B"), matrix_from_json(j.at("C"), m.n, m.p, "C"),
                plan_from_json(j.at("plan"))};
      if (plan_digest(w.plan) != m.plan_digest)
        throw Error(ErrorCode::ParseError, "plan digest does not match the stored plan");
      design.witness = std::move(w);
    }
    if (j.contains("warnings")) j.at("warnings").get_to(design.warnings);

    auto report = verify_for_omega(design, m.omega);
    if (report_json(report) != j.at("report"))
      throw Error(ErrorCode::ParseError, "stored report does not match re-verification");
    return {std::move(m), std::move(design), std::move(report)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed bundle: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

void save_bundle(const DesignBundle& bundle, const std::filesystem::path& path) {
  write_text_file(path, bundle_to_json(bundle));
}

DesignBundle load_bundle(const std::filesystem::path& path) { return bundle_from_json(read_text_file(path)); }

std::string design_to_csv(const CoupledDesign& design, const ContinuousDesign* continuous) {
  const int q = design.qualitative();
  const int p = design.quantitative();
  if (continuous && (continuous->rows != design.runs() || continuous->cols != p))
    throw Error(ErrorCode::DimensionMismatch, "continuous design shape differs from D2");
  std::string out;
  for (int i = 0; i < q; ++i) out += (i ? ",z" : "z") + std::to_string(i + 1);
  for (int k = 0; k < p; ++k) out += (q + k ? ",x" : "x") + std::to_string(k + 1);
  out += '\n';
  char buf[32];
  for (int r = 0; r < design.runs(); ++r) {
    for (int i = 0; i < q; ++i) {
      if (i) out += ',';
      out += std::to_string(design.d1(r, i));
    }
    for (int k = 0; k < p; ++k) {
      if (q + k) out += ',';
      if (continuous) {
        std::snprintf(buf, sizeof buf, "%.17g", (*continuous)(r, k));
        out += buf;
      } else {
        out += std::to_string(design.d2(r, k));
      }
    }
    out += '\n';
  }
  return out;
}

CoupledDesign design_from_csv(const std::string& text, int s) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  int q = 0;
  int p = 0;
  for (const auto& h : header) {
    const bool z = h.size() > 1 && h[0] == 'z';
    const bool x = h.size() > 1 && h[0] == 'x';
    if (z && p == 0 && h == "z" + std::to_string(q + 1)) {
      ++q;
    } else if (x && h == "x" + std::to_string(p + 1)) {
      ++p;
    } else {
      throw Error(ErrorCode::ParseError, "unexpected CSV header field '" + h + "'");
    }
  }
  std::vector<std::vector<int>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != q + p)
      throw Error(ErrorCode::ParseError, "CSV row " + std::to_string(rows.size() + 1) + " has wrong width");
    std::vector<int> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != c.size()) throw Error(ErrorCode::ParseError, "non-integer CSV entry '" + c + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  IntegerMatrix d1(n, q);
  IntegerMatrix d2(n, p);
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < q; ++i) d1(r, i) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    for (int k = 0; k < p; ++k) d2(r, k) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(q + k)];
  }
  return make_design(std::move(d1), std::move(d2), s);
}

}  // namespace dcd
