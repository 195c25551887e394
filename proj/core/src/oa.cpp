#include "dcd/oa.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dcd/error.hpp"

namespace dcd {
namespace {

constexpr long long kMaxRuns = 10'000'000;

int checked_power(int s, int u) {
  long long n = 1;
  for (int i = 0; i < u; ++i) {
    n *= s;
    if (n > kMaxRuns) throw Error(ErrorCode::TooLarge, "s^u exceeds 10^7 runs");
  }
  return static_cast<int>(n);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

int parse_int(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("bad ") + what + " '" + token + "'");
  }
}

}  // namespace

OrthogonalArray full_factorial(int s, int u) {
  if (s < 2 || u < 1) throw Error(ErrorCode::InvalidArgument, "full factorial needs s >= 2 and u >= 1");
  const int n = checked_power(s, u);
  IntegerMatrix m(n, u);
  for (int r = 0; r < n; ++r) {
    int rest = r;
    for (int c = u - 1; c >= 0; --c) {
      m(r, c) = rest % s;
      rest /= s;
    }
  }
  return OrthogonalArray{std::move(m), std::vector<int>(static_cast<std::size_t>(u), s), u};
}

Column basis_column(int s, int u, int j) {
  if (j < 1 || j > u) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  const int n = checked_power(s, u);
  const int weight = checked_power(s, u - j);
  Column out(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = (r / weight) % s;
  return out;
}

Column linear_column(const GaloisField& field, int u, const LinearColumnSpec& spec) {
  if (static_cast<int>(spec.coefficients.size()) != u)
    throw Error(ErrorCode::DimensionMismatch, "spec length must equal u");
  const int s = field.order();
  if (std::all_of(spec.coefficients.begin(), spec.coefficients.end(), [](int c) { return c == 0; }))
    throw Error(ErrorCode::AllZeroSpec, "linear column with all-zero coefficients");
  for (int c : spec.coefficients)
    if (c < 0 || c >= s) throw Error(ErrorCode::LevelOutOfRange, "coefficient is not a field element");
  const int n = checked_power(s, u);
  Column out(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= u; ++j) {
    const int mu = spec.coefficients[static_cast<std::size_t>(j - 1)];
    if (mu == 0) continue;
    const auto xi = basis_column(s, u, j);
    for (int r = 0; r < n; ++r) {
      auto& e = out[static_cast<std::size_t>(r)];
      e = field.add(e, field.mul(mu, xi[static_cast<std::size_t>(r)]));
    }
  }
  return out;
}

OrthogonalArray bush_oa(const GaloisField& field, int t) {
  const int s = field.order();
  if (t != 2 && t != 3) throw Error(ErrorCode::StrengthUnsupported, "Bush construction supports t = 2 or 3");
  if (s < t) throw Error(ErrorCode::StrengthUnsupported, "Bush construction needs s >= t");
  const int n = checked_power(s, t);
  IntegerMatrix m(n, s + 1);
  std::vector<int> coeff(static_cast<std::size_t>(t));  // coeff[0] is the leading coefficient
  for (int r = 0; r < n; ++r) {
    int rest = r;
    for (int i = t - 1; i >= 0; --i) {
      coeff[static_cast<std::size_t>(i)] = rest % s;
      rest /= s;
    }
    for (int alpha = 0; alpha < s; ++alpha) {
      int value = 0;  // Horner from the leading coefficient down
      for (int c : coeff) value = field.add(field.mul(value, alpha), c);
      m(r, alpha) = value;
    }
    m(r, s) = coeff.front();
  }
  auto oa = OrthogonalArray{std::move(m), std::vector<int>(static_cast<std::size_t>(s + 1), s), t};
  if (!is_orthogonal_array(oa.matrix, oa.levels, t))
    throw Error(ErrorCode::StrengthMismatch, "Bush construction failed verification");
  return oa;
}

bool is_block_form(const IntegerMatrix& a) {
  if (a.cols() == 0) return false;
  const int n = a.rows();
  int s = 1;
  while (s * s < n) ++s;
  if (s * s != n) return false;
  for (int r = 0; r < n; ++r)
    if (a(r, a.cols() - 1) != r / s) return false;
  return true;
}

OrthogonalArray normalize_block_form(const OrthogonalArray& a) {
  const int n = a.matrix.rows();
  int s = 1;
  while (s * s < n) ++s;
  if (a.matrix.cols() == 0 || s * s != n)
    throw Error(ErrorCode::NotSquareRunSize, "run size " + std::to_string(n) + " is not a perfect square");
  const int last = a.matrix.cols() - 1;
  const auto col = a.matrix.column(last);
  std::vector<int> counts(static_cast<std::size_t>(s), 0);
  for (int v : col) {
    if (v < 0 || v >= s) throw Error(ErrorCode::NotBlockForm, "last column does not have s levels");
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int c : counts)
    if (c != s) throw Error(ErrorCode::NotBlockForm, "last column is not level-balanced");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return col[static_cast<std::size_t>(x)] < col[static_cast<std::size_t>(y)];
  });
  return OrthogonalArray{a.matrix.select_rows(order), a.levels, a.strength};
}

IntegerMatrix parse_matrix_text(const std::string& text, std::vector<int>* levels_out, int* strength_out) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    line = strip_comment(line);
    if (blank(line)) continue;
    std::istringstream hs(line);
    for (std::string tok; hs >> tok;) header.push_back(tok);
  }
  if (header.size() != 4) throw Error(ErrorCode::ParseError, "header must be 'n m s t'");
  const int n = parse_int(header[0], "run count");
  const int m = parse_int(header[1], "factor count");
  const int t = parse_int(header[3], "strength");
  if (n < 1 || m < 0 || t < 0) throw Error(ErrorCode::ParseError, "nonpositive dimensions in header");
  std::vector<int> levels;
  {
    std::istringstream ls(header[2]);
    for (std::string tok; std::getline(ls, tok, ',');) levels.push_back(parse_int(tok, "level count"));
  }
  if (levels.size() == 1 && m != 1) levels.assign(static_cast<std::size_t>(m), levels.front());
  if (static_cast<int>(levels.size()) != m) throw Error(ErrorCode::ParseError, "level list length differs from m");

  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (blank(line)) continue;
    std::istringstream rs(line);
    std::vector<int> row;
    for (std::string tok; rs >> tok;) row.push_back(parse_int(tok, "entry"));
    if (static_cast<int>(row.size()) != m)
      throw Error(ErrorCode::ParseError, "row " + std::to_string(rows.size() + 1) + " has " +
                                             std::to_string(row.size()) + " entries, expected " + std::to_string(m));
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] < 0 || row[c] >= levels[c])
        throw Error(ErrorCode::ParseError, "entry " + std::to_string(row[c]) + " outside level range");
    rows.push_back(std::move(row));
  }
  if (static_cast<int>(rows.size()) != n)
    throw Error(ErrorCode::ParseError,
                "expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
  if (levels_out) *levels_out = levels;
  if (strength_out) *strength_out = t;
  if (m == 0) return IntegerMatrix(n, 0);
  return IntegerMatrix::from_rows(rows);
}

OrthogonalArray parse_oa(const std::string& text) {
  std::vector<int> levels;
  int t = 0;
  auto m = parse_matrix_text(text, &levels, &t);
  if (t > m.cols() || !is_orthogonal_array(m, levels, t))
    throw Error(ErrorCode::StrengthMismatch, "header claims strength " + std::to_string(t) + " but verification fails");
  return OrthogonalArray{std::move(m), std::move(levels), t};
}

OrthogonalArray load_oa(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_oa(buf.str());
}

std::string format_oa(const OrthogonalArray& a) {
  std::ostringstream out;
  out << a.matrix.rows() << ' ' << a.matrix.cols() << ' ';
  if (const int s = a.uniform_levels(); s != 0) {
    out << s;
  } else {
    for (std::size_t i = 0; i < a.levels.size(); ++i) out << (i ? "," : "") << a.levels[i];
  }
  out << ' ' << a.strength << '\n' << a.matrix;
  return out.str();
}

void save_oa(const OrthogonalArray& a, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << format_oa(a);
}

}  // namespace dcd
