#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// library's checking code; inputs are plain nested vectors.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<int>>;

inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Counts every level tuple of every t-subset of columns.
inline bool is_oa(const Rows& rows, const std::vector<int>& levels, int t) {
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(levels.size());
  for (const auto& r : rows)
    for (int c = 0; c < m; ++c)
      if (r[c] < 0 || r[c] >= levels[c]) return false;
  for (const auto& cols : subsets(m, t)) {
    long cells = 1;
    for (int c : cols) cells *= levels[c];
    if (n % cells != 0) return false;
    std::vector<int> count(static_cast<std::size_t>(cells), 0);
    for (const auto& r : rows) {
      long key = 0;
      for (int c : cols) key = key * levels[c] + r[c];
      ++count[static_cast<std::size_t>(key)];
    }
    for (int c : count)
      if (c != n / cells) return false;
  }
  return true;
}

inline bool is_permutation(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] != i) return false;
  return true;
}

inline int ipow(int b, int e) {
  int v = 1;
  while (e-- > 0) v *= b;
  return v;
}

/// Coupling by slicing rows: for every l <= omega, every l columns of D1 and
/// every level combination, each D2 column collapsed by s^l is a permutation.
inline bool coupled(const Rows& d1, const Rows& d2, int s, int omega) {
  const int n = static_cast<int>(d1.size());
  const int q = d1.empty() ? 0 : static_cast<int>(d1[0].size());
  const int p = d2.empty() ? 0 : static_cast<int>(d2[0].size());
  for (int k = 0; k < p; ++k) {
    std::vector<int> col;
    for (const auto& r : d2) col.push_back(r[k]);
    if (!is_permutation(col)) return false;
  }
  for (int l = 1; l <= omega; ++l) {
    const int w = ipow(s, l);
    for (const auto& cols : subsets(q, l)) {
      for (int combo = 0; combo < w; ++combo) {
        std::vector<int> want;
        for (int c = 0, x = combo; c < l; ++c, x /= s) want.push_back(x % s);
        for (int k = 0; k < p; ++k) {
          std::vector<int> picked;
          for (int r = 0; r < n; ++r) {
            bool match = true;
            for (int c = 0; c < l; ++c) match = match && d1[r][cols[c]] == want[c];
            if (match) picked.push_back(d2[r][k] / w);
          }
          if (static_cast<int>(picked.size()) != n / w || !is_permutation(picked)) return false;
        }
      }
    }
  }
  return true;
}

/// CROA: consecutive blocks of s rows, each column a permutation of 0..s-1.
inline bool consecutive_croa(const Rows& rows, int s, int first, int count) {
  const int m = static_cast<int>(rows[0].size());
  for (int b = first; b < first + count; b += s)
    for (int c = 0; c < m; ++c) {
      std::vector<int> v;
      for (int r = b; r < b + s; ++r) v.push_back(rows[r][c]);
      if (!is_permutation(v)) return false;
    }
  return true;
}

/// Centered L2 discrepancy squared by exact integration of the squared local
/// discrepancy over every nonempty coordinate subset. The integrand is a
/// polynomial of degree <= 2 per coordinate on each cell of the grid cut at
/// 0, 1/2, 1 and the point coordinates, so two-point Gauss-Legendre per
/// coordinate is exact.
inline double centered_l2_quadrature(const std::vector<std::vector<double>>& pts) {
  const int n = static_cast<int>(pts.size());
  const int d = static_cast<int>(pts[0].size());
  const double g = 0.5 / std::sqrt(3.0);
  double total = 0.0;
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<int> dims;
    for (int j = 0; j < d; ++j)
      if (mask & (1 << j)) dims.push_back(j);
    const int u = static_cast<int>(dims.size());
    std::vector<std::vector<double>> cuts(u);
    for (int a = 0; a < u; ++a) {
      std::set<double> c{0.0, 0.5, 1.0};
      for (const auto& p : pts) c.insert(p[dims[a]]);
      cuts[a].assign(c.begin(), c.end());
    }
    // Per dimension, the two nodes of every interval with their weights.
    std::vector<std::vector<std::pair<double, double>>> nodes(u);
    for (int a = 0; a < u; ++a)
      for (std::size_t i = 0; i + 1 < cuts[a].size(); ++i) {
        const double lo = cuts[a][i], hi = cuts[a][i + 1], mid = (lo + hi) / 2, h = hi - lo;
        nodes[a].push_back({mid - g * h, h / 2});
        nodes[a].push_back({mid + g * h, h / 2});
      }
    std::vector<std::size_t> idx(u, 0);
    for (;;) {
      double weight = 1.0, vol = 1.0;
      std::vector<double> x(u);
      for (int a = 0; a < u; ++a) {
        x[a] = nodes[a][idx[a]].first;
        weight *= nodes[a][idx[a]].second;
        vol *= x[a] <= 0.5 ? x[a] : 1.0 - x[a];
      }
      int inside = 0;
      for (const auto& p : pts) {
        bool in = true;
        for (int a = 0; a < u && in; ++a) {
          const double z = p[dims[a]];
          in = x[a] <= 0.5 ? z < x[a] : z >= x[a];
        }
        inside += in;
      }
      const double diff = static_cast<double>(inside) / n - vol;
      total += weight * diff * diff;
      int a = 0;
      while (a < u && ++idx[a] == nodes[a].size()) idx[a++] = 0;
      if (a == u) break;
    }
  }
  return total;
}

}  // namespace oracle
