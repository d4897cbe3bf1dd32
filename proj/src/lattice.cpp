#include "latticelab/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>

#include "latticelab/error.hpp"

namespace latticelab {

GramLattice GramLattice::build(const IntMatrix& gram) {
  const std::size_t n = gram.size();
  for (const auto& row : gram)
    if (row.size() != n) throw Error(ErrorCode::NonSymmetric, "Gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram[i][j] != gram[j][i]) throw Error(ErrorCode::NonSymmetric, "Gram matrix is not symmetric");
  GramLattice out;
  out.gram_ = gram;
  out.det_ = determinant(gram);
  if (out.det_ == 0) throw Error(ErrorCode::Degenerate, "Gram matrix has determinant 0");
  auto [p, m] = signature_of(gram);
  out.n_plus_ = p;
  out.n_minus_ = m;
  out.even_ = true;
  for (std::size_t i = 0; i < n; ++i)
    if (gram[i][i] % 2 != 0) out.even_ = false;
  return out;
}

Int GramLattice::inner(const std::vector<Int>& x, const std::vector<Int>& y) const {
  Int s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_[i][j] * y[j];
  }
  return s;
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g = zero_matrix(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
  return GramLattice::build(g);
}

GramLattice rescale(const GramLattice& lattice, long factor) {
  if (factor == 0) throw Error(ErrorCode::ZeroScale, "scale factor must be nonzero");
  IntMatrix g = lattice.gram();
  for (auto& row : g)
    for (auto& v : row) v *= factor;
  return GramLattice::build(g);
}

namespace {

IntMatrix cartan_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  IntMatrix g = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
  for (auto [i, j] : edges) g[i][j] = g[j][i] = -1;
  return g;
}

IntMatrix type_a(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return cartan_from_edges(n, e);
}

IntMatrix type_d(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(n - 3, n - 1);
  return cartan_from_edges(n, e);
}

// E_n: a chain of n-1 nodes with one extra node attached to the third.
IntMatrix type_e(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(2, n - 1);
  return cartan_from_edges(n, e);
}

IntMatrix hyperbolic_plane() { return {{0, 1}, {1, 0}}; }

IntMatrix block_sum(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  IntMatrix g = zero_matrix(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) g[off + i][off + j] = b[i][j];
    off += b.size();
  }
  return g;
}

IntMatrix negated(IntMatrix g) {
  for (auto& row : g)
    for (auto& v : row) v = -v;
  return g;
}

IntMatrix even_unimodular(long p, long q) {
  if (p < 0 || q < 0 || (p - q) % 8 != 0)
    throw Error(ErrorCode::BadSignature, "II(p,q) requires p = q mod 8");
  std::vector<IntMatrix> blocks;
  if (p >= q) {
    for (long i = 0; i < (p - q) / 8; ++i) blocks.push_back(type_e(8));
    for (long i = 0; i < q; ++i) blocks.push_back(hyperbolic_plane());
  } else {
    for (long i = 0; i < (q - p) / 8; ++i) blocks.push_back(negated(type_e(8)));
    for (long i = 0; i < p; ++i) blocks.push_back(hyperbolic_plane());
  }
  return block_sum(blocks);
}

IntMatrix single_named(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) name += c;
  std::smatch m;
  if (std::regex_match(name, m, std::regex(R"(A_?(\d+))"))) {
    long n = std::stol(m[1]);
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "A_n needs n >= 1");
    return type_a(n);
  }
  if (std::regex_match(name, m, std::regex(R"(D_?(\d+))"))) {
    long n = std::stol(m[1]);
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "D_n needs n >= 3");
    return type_d(n);
  }
  if (std::regex_match(name, m, std::regex(R"(E_?([678]))"))) return type_e(std::stol(m[1]));
  if (name == "U") return hyperbolic_plane();
  if (std::regex_match(name, m, std::regex(R"(II\((\d+),(\d+)\))")))
    return even_unimodular(std::stol(m[1]), std::stol(m[2]));
  if (std::regex_match(name, m, std::regex(R"(I\((\d+),(\d+)\))"))) {
    long p = std::stol(m[1]), q = std::stol(m[2]);
    IntMatrix g = zero_matrix(p + q, p + q);
    for (long i = 0; i < p + q; ++i) g[i][i] = i < p ? 1 : -1;
    return g;
  }
  if (std::regex_match(name, m, std::regex(R"(<(-?\d+)>)"))) return {{Int(std::stol(m[1]))}};
  if (name == "Borcherds" || name == "B") return even_unimodular(26, 2);
  if (name == "Lambda0")
    return block_sum({type_a(2), type_e(8), type_e(8), hyperbolic_plane(), hyperbolic_plane()});
  if (name == "Lambda2")
    return block_sum({{{Int(2)}}, type_e(8), type_e(8), hyperbolic_plane(), hyperbolic_plane()});
  if (name == "Lambda6")
    return block_sum({{{Int(6)}}, type_e(8), type_e(8), hyperbolic_plane(), hyperbolic_plane()});
  throw Error(ErrorCode::InvalidArgument, "unknown lattice name '" + raw + "'");
}

}  // namespace

GramLattice named_lattice(const std::string& name, long scale) {
  std::vector<IntMatrix> blocks;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= name.size(); ++i) {
    if (i < name.size() && name[i] == '(') ++depth;
    if (i < name.size() && name[i] == ')') --depth;
    if (i == name.size() || (name[i] == '+' && depth == 0)) {
      blocks.push_back(single_named(name.substr(start, i - start)));
      start = i + 1;
    }
  }
  GramLattice lat = GramLattice::build(block_sum(blocks));
  return scale == 1 ? lat : rescale(lat, scale);
}

std::vector<std::string> registry_names() {
  return {"A<n>", "D<n>", "E6", "E7", "E8", "U", "I(p,q)", "II(p,q)", "<d>",
          "Borcherds", "Lambda0", "Lambda2", "Lambda6"};
}

std::vector<std::vector<long>> short_vectors(const GramLattice& lattice, long norm,
                                             const ShortVectorOptions& options) {
  const std::size_t n = lattice.rank();
  if (n > options.max_rank)
    throw Error(ErrorCode::RankTooLarge, "rank " + std::to_string(n) + " exceeds enumeration bound");
  if (std::labs(norm) > options.max_abs_norm)
    throw Error(ErrorCode::CapExceeded, "norm exceeds configured cap");
  const bool positive = lattice.n_minus() == 0;
  const bool negative = lattice.n_plus() == 0;
  if (!positive && !negative) throw Error(ErrorCode::IndefiniteLattice, "lattice is indefinite");
  IntMatrix g = lattice.gram();
  long target = norm;
  if (!positive) {
    g = negated(g);
    target = -norm;
  }
  std::vector<std::vector<long>> out;
  if (target <= 0 || n == 0) return out;

  // q(x) = sum_i Q[i][i] * (x_i + sum_{j>i} Q[i][j] x_j)^2
  RatMatrix Q(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Q[i][j] = g[i][j];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Q[j][i] = Q[i][j];
      Q[i][j] /= Q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) Q[k][l] -= Q[k][i] * Q[i][l];
  }

  std::vector<long> x(n, 0);
  std::function<void(std::size_t, const Rat&)> descend = [&](std::size_t level, const Rat& budget) {
    const std::size_t i = level;
    Rat center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= Q[i][j] * x[j];
    auto cost = [&](long v) -> Rat {
      Rat d = Rat(v) - center;
      return Q[i][i] * d * d;
    };
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
    long lo = fl.get_si();
    long hi = lo + 1;
    while (cost(lo) <= budget) --lo;
    while (cost(hi) <= budget) ++hi;
    for (long v = lo + 1; v < hi; ++v) {
      x[i] = v;
      Rat rest = budget - cost(v);
      if (i == 0) {
        Int s = 0;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) s += g[a][b] * x[a] * x[b];
        if (s == target) out.push_back(x);
      } else {
        descend(i - 1, rest);
      }
    }
    x[i] = 0;
  };
  descend(n - 1, Rat(target));

  std::vector<std::vector<long>> reps;
  for (auto& v : out) {
    auto nz = std::find_if(v.begin(), v.end(), [](long c) { return c != 0; });
    if (nz != v.end() && *nz > 0) reps.push_back(v);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace latticelab
