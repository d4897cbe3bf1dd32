#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>

namespace oracle {

using latticelab::Elem;
using latticelab::FiniteQuadraticForm;
using Q = mpq_class;

latticelab::GramLattice to_lattice(const SmallMatrix& g) {
  latticelab::IntMatrix m;
  for (const auto& row : g) {
    std::vector<latticelab::Int> r;
    for (long x : row) r.emplace_back(x);
    m.push_back(r);
  }
  return latticelab::GramLattice::build(m);
}

std::pair<int, int> signature(const SmallMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
  int pos = 0, neg = 0;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a[i][i] != 0) piv = i;
    if (piv == n) {
      // all remaining diagonal entries vanish: replace e_i by e_i + e_j for a nonzero a[i][j]
      for (std::size_t i = 0; i < n && piv == n; ++i)
        for (std::size_t j = 0; j < n && piv == n; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
            for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
            piv = i;
          }
      if (piv == n) return {pos, neg};  // degenerate
    }
    const Q d = a[piv][piv];
    (d > 0 ? pos : neg)++;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Q f = a[i][piv] / d;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[piv][k];
    }
    for (std::size_t k = 0; k < n; ++k)
      if (!done[k]) a[piv][k] = 0, a[k][piv] = 0;
  }
  return {pos, neg};
}

long determinant(const SmallMatrix& g) {
  const std::size_t n = g.size();
  if (n == 0) return 1;
  if (n == 1) return g[0][0];
  long det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    SmallMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(g[i][k]);
      minor.push_back(row);
    }
    det += (j % 2 ? -1 : 1) * g[0][j] * determinant(minor);
  }
  return det;
}

SmallMatrix random_even_gram(std::mt19937& rng, int rank, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound), half(-bound / 2, bound / 2);
  for (;;) {
    SmallMatrix g(rank, std::vector<long>(rank));
    for (int i = 0; i < rank; ++i) {
      g[i][i] = 2 * half(rng);
      for (int j = i + 1; j < rank; ++j) g[i][j] = g[j][i] = entry(rng);
    }
    if (determinant(g) != 0) return g;
  }
}

bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  if (a.order() != b.order()) return false;
  const std::size_t n = a.num_generators();
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(a.generator(i));
  std::vector<Elem> all;
  for (std::int64_t k = 0; k < b.order(); ++k) all.push_back(b.element_at(k));
  std::vector<Elem> images;
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) {
      // the map is an isometry onto its image; bijective iff the images generate all of b
      std::set<std::int64_t> span{b.index_of(b.zero())};
      std::vector<Elem> frontier{b.zero()};
      while (!frontier.empty()) {
        Elem x = frontier.back();
        frontier.pop_back();
        for (const auto& g : images) {
          Elem y = b.add(x, g);
          if (span.insert(b.index_of(y)).second) frontier.push_back(y);
        }
      }
      return static_cast<std::int64_t>(span.size()) == b.order();
    }
    for (const auto& y : all) {
      if (b.element_order(y) != a.orders()[i]) continue;
      if (b.q_value(y) != a.q_value(gens[i])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = b.b_value(y, images[j]) == a.b_value(gens[i], gens[j]);
      if (!ok) continue;
      images.push_back(y);
      if (extend(i + 1)) return true;
      images.pop_back();
    }
    return false;
  };
  return extend(0);
}

std::vector<std::vector<std::int64_t>> isotropic_subgroups_small(const FiniteQuadraticForm& q) {
  std::set<std::vector<std::int64_t>> found;
  auto span = [&](const std::vector<Elem>& gens) {
    std::set<std::int64_t> idx{q.index_of(q.zero())};
    std::vector<Elem> frontier{q.zero()};
    while (!frontier.empty()) {
      Elem x = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        Elem y = q.add(x, g);
        if (idx.insert(q.index_of(y)).second) frontier.push_back(y);
      }
    }
    return std::vector<std::int64_t>(idx.begin(), idx.end());
  };
  for (std::int64_t i = 0; i < q.order(); ++i)
    for (std::int64_t j = i; j < q.order(); ++j) {
      auto h = span({q.element_at(i), q.element_at(j)});
      bool iso = true;
      for (auto k : h)
        if (q.q_value(q.element_at(k)) != 0) iso = false;
      if (iso) found.insert(h);
    }
  return {found.begin(), found.end()};
}

std::vector<std::vector<long>> box_vectors(const SmallMatrix& g, long norm, long radius) {
  const std::size_t n = g.size();
  std::vector<std::vector<long>> out;
  std::vector<long> v(n, -radius);
  for (;;) {
    long value = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) value += v[i] * g[i][j] * v[j];
    if (value == norm) {
      auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
      if (first != v.end() && *first > 0) out.push_back(v);
    }
    std::size_t k = 0;
    while (k < n && v[k] == radius) v[k++] = -radius;
    if (k == n) break;
    ++v[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<long, 4>> binary_isometries(long a, long b, long c) {
  const long det = a * c - b * b;
  const long sa = std::abs(a), sc = std::abs(c);
  // a column of norm n has |x| <= sqrt(n c / det), |y| <= sqrt(n a / det)
  const long rx = static_cast<long>(std::sqrt(static_cast<double>(std::max(sa, sc) * sc) / det)) + 1;
  const long ry = static_cast<long>(std::sqrt(static_cast<double>(std::max(sa, sc) * sa) / det)) + 1;
  auto form = [&](long x, long y) { return a * x * x + 2 * b * x * y + c * y * y; };
  auto pair = [&](long x1, long y1, long x2, long y2) { return a * x1 * x2 + b * (x1 * y2 + y1 * x2) + c * y1 * y2; };
  std::vector<std::array<long, 2>> col1, col2;
  for (long x = -rx; x <= rx; ++x)
    for (long y = -ry; y <= ry; ++y) {
      if (form(x, y) == a) col1.push_back({x, y});
      if (form(x, y) == c) col2.push_back({x, y});
    }
  std::vector<std::array<long, 4>> out;
  for (const auto& u : col1)
    for (const auto& w : col2)
      if (pair(u[0], u[1], w[0], w[1]) == b && std::abs(u[0] * w[1] - u[1] * w[0]) == 1)
        out.push_back({u[0], w[0], u[1], w[1]});
  return out;
}

int matrix_order(const std::array<long, 4>& m) {
  std::array<long, 4> p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p == std::array<long, 4>{1, 0, 0, 1}) return k;
    p = {p[0] * m[0] + p[1] * m[2], p[0] * m[1] + p[1] * m[3], p[2] * m[0] + p[3] * m[2], p[2] * m[1] + p[3] * m[3]};
  }
  return 0;
}

}  // namespace oracle
