#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>

#include "dcd/arrays.hpp"
#include "dcd/bundle.hpp"
#include "dcd/constructions.hpp"
#include "dcd/criteria.hpp"
#include "dcd/error.hpp"
#include "dcd/gf.hpp"
#include "dcd/oa.hpp"
#include "dcd/verify.hpp"

namespace dcd::cli {
namespace {

struct GenerateArgs {
  std::string method;
  int s = 0;
  int lambda = 1;
  int u = 3;
  std::optional<int> q;
  std::optional<int> p;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> oa;
  std::string oa_b;
  std::vector<int> select;
  bool random_split = false;
};

struct OptimizeArgs {
  std::string criterion = "maximin";
  int restarts = 1;
  int climb = 0;
  bool parallel = false;
};

struct VerifyArgs {
  std::string bundle;
  std::string d1;
  std::string d2;
  std::string csv;
  int s = 0;
  int omega = 2;
};

struct ExportArgs {
  std::string bundle;
  std::string format = "csv";
  bool continuous = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

/// A family plus the metadata describing how it was chosen.
struct Setup {
  Family family;
  BundleMetadata metadata;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DCD_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, "DCD_SEED is not an unsigned integer");
  }
  return 0;
}

[[noreturn]] void infeasible(const std::string& message) { throw Error(ErrorCode::InfeasibleParameters, message); }

void check_bound(int q, int s) {
  if (q > max_qualitative_factors(s))
    infeasible("q exceeds Corollary-1 bound s=" + std::to_string(s));
  if (q < 1) infeasible("q must be at least 1");
}

/// OA(s^3, m, s, 3) used by case 1 when no array is supplied.
OrthogonalArray default_strength3(const GaloisField& field) {
  if (field.order() >= 3) return bush_oa(field, 3);
  std::vector<Column> cols;
  for (const auto& mu : std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})
    cols.push_back(linear_column(field, 3, LinearColumnSpec{mu}));
  return OrthogonalArray::verified(IntegerMatrix::from_columns(cols), 2, 3);
}

/// First q columns and the block-form column of OA(s^2, s+1, s, 2).
OrthogonalArray default_block_array(const GaloisField& field, int q) {
  const auto full = bush_oa(field, 2);
  std::vector<int> keep(static_cast<std::size_t>(q));
  std::iota(keep.begin(), keep.end(), 0);
  keep.push_back(full.matrix.cols() - 1);
  return OrthogonalArray::verified(full.matrix.select_columns(keep), field.order(), 2);
}

Setup make_setup(const GenerateArgs& g, std::uint64_t seed) {
  Setup out;
  auto& m = out.metadata;
  m.method = g.method;
  m.seed = seed;
  if (g.method == "c1" || g.method == "c2") {
    if (g.lambda < 1) infeasible("lambda must be at least 1");
    if (g.p && *g.p < 1) infeasible("p must be at least 1");
    const int p = g.p.value_or(1);
    std::vector<OrthogonalArray> arrays;
    int s = g.s;
    if (!g.oa.empty()) {
      for (const auto& path : g.oa) arrays.push_back(load_oa(path));
      s = arrays.front().uniform_levels();
      if (g.s && g.s != s) throw Error(ErrorCode::DimensionMismatch, "--s disagrees with the supplied arrays");
      check_bound(arrays.front().matrix.cols() - 1, s);
    } else {
      if (s < 2) throw Error(ErrorCode::InvalidArgument, "--s is required");
      const int q = g.q.value_or(s);
      check_bound(q, s);
      const GaloisField field(s);
      arrays.push_back(default_block_array(field, q));
    }
    m.lambda = g.method == "c2" ? g.lambda : (g.oa.size() > 1 ? static_cast<int>(g.oa.size()) : g.lambda);
    if (g.method == "c1") {
      if (arrays.size() == 1) arrays.assign(static_cast<std::size_t>(m.lambda), arrays.front());
      out.family = Construction1Family{std::move(arrays), p};
    } else {
      if (arrays.size() != 1) throw Error(ErrorCode::InvalidArgument, "c2 takes exactly one --oa");
      out.family = Construction2Family{std::move(arrays.front()), g.lambda, p};
    }
    return out;
  }

  if (g.method == "c3-case1") {
    OrthogonalArray gmat;
    if (!g.oa.empty()) {
      gmat = load_oa(g.oa.front());
    } else {
      if (g.s < 2) throw Error(ErrorCode::InvalidArgument, "--s is required");
      gmat = default_strength3(GaloisField(g.s));
    }
    const int s = gmat.uniform_levels();
    const int q = g.q.value_or(1);
    check_bound(q, s);
    if (q + 1 >= gmat.matrix.cols())
      infeasible("case 1 needs q + 1 < m = " + std::to_string(gmat.matrix.cols()));
    std::optional<Rng> split;
    if (g.random_split) split.emplace(derive_seed(seed, ~std::uint64_t{0}));
    auto in = case1_inputs(gmat, q, split ? &*split : nullptr);
    if (g.p) {
      if (*g.p < 1 || *g.p > in.b.cols())
        infeasible("case 1 supports 1 <= p <= " + std::to_string(in.b.cols()));
      std::vector<int> keep(static_cast<std::size_t>(*g.p));
      std::iota(keep.begin(), keep.end(), 0);
      in.b = in.b.select_columns(keep);
    }
    // The last column of A plays a*.
    std::vector<int> select(static_cast<std::size_t>(q));
    std::iota(select.begin(), select.end(), 0);
    out.family = Construction3Family{std::move(in.a), std::move(in.b), select};
    return out;
  }

  if (g.method == "c3-case2") {
    if (g.s < 2) throw Error(ErrorCode::InvalidArgument, "--s is required");
    const int q = g.q.value_or(g.s);
    check_bound(q, g.s);
    if (g.u < 3) infeasible("case 2 needs u >= 3");
    const GaloisField field(g.s);
    auto in = case2_inputs(field, g.u);
    auto select = case2_default_select(g.s, q);
    std::vector<int> keep{0};
    keep.insert(keep.end(), select.begin(), select.end());
    OrthogonalArray a{in.a.matrix.select_columns(keep), std::vector<int>(keep.size(), g.s), 2};
    std::vector<int> remapped(static_cast<std::size_t>(q));
    std::iota(remapped.begin(), remapped.end(), 1);
    if (g.p) {
      if (*g.p < 1 || *g.p > in.b.cols())
        infeasible("case 2 supports 1 <= p <= " + std::to_string(in.b.cols()));
      std::vector<int> cols(static_cast<std::size_t>(*g.p));
      std::iota(cols.begin(), cols.end(), 0);
      in.b = in.b.select_columns(cols);
    }
    m.u = g.u;
    out.family = Construction3Family{std::move(a), std::move(in.b), std::move(remapped)};
    return out;
  }

  if (g.method == "c3-custom") {
    if (g.oa.size() != 1 || g.oa_b.empty())
      throw Error(ErrorCode::InvalidArgument, "c3-custom needs one --oa (A) and --oa-b (B)");
    const auto a = load_oa(g.oa.front());
    const auto b = parse_matrix_text(read_text_file(g.oa_b));
    const int s = a.uniform_levels();
    std::vector<int> select = g.select;
    if (select.empty()) {
      select.resize(static_cast<std::size_t>(a.matrix.cols() - 1));
      std::iota(select.begin(), select.end(), 1);
    }
    check_bound(static_cast<int>(select.size()), s);
    int a_star = 0;
    while (std::find(select.begin(), select.end(), a_star) != select.end()) ++a_star;
    if (a_star >= a.matrix.cols()) throw Error(ErrorCode::InvalidArgument, "selection leaves no column for a*");
    std::vector<int> keep{a_star};
    keep.insert(keep.end(), select.begin(), select.end());
    for (int c : keep)
      if (c < 0 || c >= a.matrix.cols()) throw Error(ErrorCode::InvalidArgument, "selected column out of range");
    std::vector<int> remapped(select.size());
    std::iota(remapped.begin(), remapped.end(), 1);
    OrthogonalArray trimmed{a.matrix.select_columns(keep), std::vector<int>(keep.size(), s), 2};
    out.family = Construction3Family{std::move(trimmed), b, std::move(remapped)};
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + g.method + "'");
}

void emit_bundle(const DesignBundle& bundle, const std::string& path, std::ostream& out, std::ostream& err) {
  for (const auto& w : bundle.design.warnings) err << "warning: " << w << '\n';
  if (path.empty() || path == "-") {
    out << bundle_to_json(bundle);
    err << describe(bundle.report);
  } else {
    save_bundle(bundle, path);
    out << describe(bundle.report);
  }
}

int cmd_generate(const GenerateArgs& g, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(g.seed);
  auto setup = make_setup(g, seed);
  Rng rng(seed);
  auto plan = sample_plan(setup.family, rng);
  plan.seed = seed;
  auto bundle = make_bundle(build(setup.family, std::move(plan)), setup.metadata);
  emit_bundle(bundle, g.out, out, err);
  return bundle.report.pass() ? kPass : kVerificationFail;
}

int cmd_optimize(const GenerateArgs& g, const OptimizeArgs& o, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(g.seed);
  auto setup = make_setup(g, seed);
  OptimizeOptions opts;
  opts.criterion = parse_criterion(o.criterion);
  opts.restarts = o.restarts;
  opts.seed = seed;
  opts.climb_steps = o.climb;
  opts.parallel = o.parallel;
  auto result = optimize_d2(setup.family, opts);
  setup.metadata.criterion = to_string(opts.criterion);
  setup.metadata.trajectory = result.trajectory;
  auto bundle = make_bundle(std::move(result.best), setup.metadata);
  err << "best " << to_string(opts.criterion) << " = " << result.best_score << " (restart " << result.best_restart
      << " of " << opts.restarts << ")\n";
  emit_bundle(bundle, g.out, out, err);
  return bundle.report.pass() ? kPass : kVerificationFail;
}

int cmd_verify(const VerifyArgs& v, std::ostream& out) {
  VerificationReport report;
  if (!v.bundle.empty()) {
    auto bundle = load_bundle(v.bundle);
    report = v.omega == bundle.metadata.omega ? bundle.report : verify_for_omega(bundle.design, v.omega);
  } else if (!v.csv.empty()) {
    if (v.s < 2) throw Error(ErrorCode::ParseError, "--csv needs --s");
    report = verify_for_omega(design_from_csv(read_text_file(v.csv), v.s), v.omega);
  } else if (!v.d1.empty() && !v.d2.empty()) {
    std::vector<int> levels;
    auto d1 = parse_matrix_text(read_text_file(v.d1), &levels);
    auto d2 = parse_matrix_text(read_text_file(v.d2));
    int s = v.s;
    if (s == 0 && !levels.empty()) s = levels.front();
    report = verify_for_omega(make_design(std::move(d1), std::move(d2), s), v.omega);
  } else {
    throw Error(ErrorCode::ParseError, "verify needs a bundle, --d1 and --d2, or --csv");
  }
  out << describe(report);
  return report.pass() ? kPass : kVerificationFail;
}

int cmd_export(const ExportArgs& e, std::ostream& out) {
  const auto bundle = load_bundle(e.bundle);
  std::string text;
  if (e.format == "csv") {
    if (e.continuous) {
      Rng rng(resolve_seed(e.seed));
      const auto cont = to_continuous(bundle.design.d2, rng);
      text = design_to_csv(bundle.design, &cont);
    } else {
      text = design_to_csv(bundle.design);
    }
  } else if (e.format == "json") {
    text = bundle_to_json(bundle);
  } else if (e.format == "oa-text") {
    const auto& d1 = bundle.design.d1;
    int strength = 0;
    while (strength < std::min(3, d1.cols()) && is_orthogonal_array(d1, bundle.design.s, strength + 1)) ++strength;
    text = format_oa(OrthogonalArray{d1, std::vector<int>(static_cast<std::size_t>(d1.cols()), bundle.design.s),
                                     strength});
  } else {
    throw Error(ErrorCode::ParseError, "unknown export format '" + e.format + "'");
  }
  if (e.out.empty() || e.out == "-")
    out << text;
  else
    write_text_file(e.out, text);
  return kPass;
}

void add_generate_flags(CLI::App* sub, GenerateArgs& g) {
  sub->add_option("--method", g.method, "c1 | c2 | c3-case1 | c3-case2 | c3-custom")
      ->required()
      ->check(CLI::IsMember({"c1", "c2", "c3-case1", "c3-case2", "c3-custom"}));
  sub->add_option("--s", g.s, "number of levels of each qualitative factor");
  sub->add_option("--lambda", g.lambda, "number of stacked blocks (c1, c2)");
  sub->add_option("--u", g.u, "run size exponent, n = s^u (c3-case2)");
  sub->add_option("--q", g.q, "number of qualitative factors");
  sub->add_option("--p", g.p, "number of quantitative factors");
  sub->add_option("--seed", g.seed, "seed; defaults to $DCD_SEED, then 0");
  sub->add_option("--out", g.out, "bundle path; stdout when omitted");
  sub->add_option("--oa", g.oa, "OA text file (repeatable for c1)");
  sub->add_option("--oa-b", g.oa_b, "B matrix for c3-custom");
  sub->add_option("--select", g.select, "columns of A used as D1 (c3-custom)")->delimiter(',');
  sub->add_flag("--random-split", g.random_split, "random column split of G (c3-case1)");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleParameters:
    case ErrorCode::UTooSmall:
    case ErrorCode::OmegaExceedsQ:
    case ErrorCode::NotPrimePower:
    case ErrorCode::TooLarge:
    case ErrorCode::StrengthUnsupported:
      return kInfeasible;
    default:
      return kUsage;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Doubly coupled designs: generate, verify, optimize, export", "dcd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "build a design and write a bundle");
  add_generate_flags(generate, gen);

  GenerateArgs opt_gen;
  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "best of several random plans under a space-filling criterion");
  add_generate_flags(optimize, opt_gen);
  optimize->add_option("--criterion", opt.criterion, "maximin | cl2")->check(CLI::IsMember({"maximin", "cl2"}));
  optimize->add_option("--restarts", opt.restarts, "number of random plans")->check(CLI::PositiveNumber);
  optimize->add_option("--climb", opt.climb, "swap moves per restart")->check(CLI::NonNegativeNumber);
  optimize->add_flag("--parallel", opt.parallel, "run restarts on several threads");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "check a bundle or a pair of matrix files");
  verify->add_option("bundle", ver.bundle, "design bundle (JSON)");
  verify->add_option("--d1", ver.d1, "D1 in OA text format");
  verify->add_option("--d2", ver.d2, "D2 in OA text format");
  verify->add_option("--csv", ver.csv, "design CSV (needs --s)");
  verify->add_option("--s", ver.s, "levels of the qualitative factors");
  verify->add_option("--omega", ver.omega, "coupling order to check")->check(CLI::NonNegativeNumber);

  ExportArgs exp;
  auto* exporter = app.add_subcommand("export", "write a bundle as CSV, JSON or OA text");
  exporter->add_option("bundle", exp.bundle, "design bundle (JSON)")->required();
  exporter->add_option("--format", exp.format, "csv | json | oa-text")
      ->check(CLI::IsMember({"csv", "json", "oa-text"}));
  exporter->add_flag("--continuous", exp.continuous, "map levels to (l + U) / n");
  exporter->add_option("--seed", exp.seed, "seed for --continuous");
  exporter->add_option("--out", exp.out, "output path; stdout when omitted");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out, err);
    if (*optimize) return cmd_optimize(opt_gen, opt, out, err);
    if (*verify) return cmd_verify(ver, out);
    if (*exporter) return cmd_export(exp, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dcd::cli
