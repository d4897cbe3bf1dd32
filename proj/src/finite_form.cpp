#include "latticelab/finite_form.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "latticelab/error.hpp"

namespace latticelab {

namespace {

using i128 = __int128;

std::int64_t mod(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  i128 l = static_cast<i128>(a / std::gcd(a, b)) * b;
  if (l > (static_cast<i128>(1) << 60)) throw Error(ErrorCode::CapExceeded, "denominator overflow");
  return static_cast<std::int64_t>(l);
}

int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_cap(const FiniteQuadraticForm& q, std::int64_t cap) {
  if (q.order() > cap)
    throw Error(ErrorCode::CapExceeded,
                "group order " + std::to_string(q.order()) + " exceeds cap " + std::to_string(cap));
}

// Form on explicit elements `vecs` of q whose orders (in the relevant quotient) are `orders`.
FiniteQuadraticForm form_on_vectors(const FiniteQuadraticForm& q, const std::vector<Elem>& vecs,
                                    const std::vector<std::int64_t>& orders) {
  if (vecs.empty()) return {};
  std::int64_t N = 1;
  for (auto d : orders) N = checked_lcm(N, d);
  const std::int64_t Nq = q.denominator();
  const std::size_t n = vecs.size();
  std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t t = (i == j) ? q.q_num(vecs[i]) : q.b_num(vecs[i], vecs[j]);
      i128 scaled = static_cast<i128>(t) * N;
      if (scaled % Nq != 0) throw Error(ErrorCode::Internal, "form values incompatible with quotient orders");
      g[i][j] = static_cast<std::int64_t>(scaled / Nq);
    }
  return FiniteQuadraticForm(orders, N, g);
}

// Presentation of <big_gens> / <small_gens> (both inside q, small contained in big).
FiniteQuadraticForm present_quotient(const FiniteQuadraticForm& q, const std::vector<Elem>& big_gens,
                                     const std::vector<Elem>& small_gens) {
  const std::size_t m = q.num_generators();
  if (m == 0) return {};
  auto lift = [&](const std::vector<Elem>& gens) {
    IntMatrix cols = zero_matrix(m, gens.size() + m);
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t i = 0; i < m; ++i) cols[i][k] = gens[k][i];
    for (std::size_t i = 0; i < m; ++i) cols[i][gens.size() + i] = q.orders()[i];
    return cols;
  };
  IntMatrix P = column_basis(lift(big_gens));
  RatMatrix Pinv = rational_inverse(P);
  IntMatrix small = lift(small_gens);
  IntMatrix C = zero_matrix(m, small[0].size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < small[0].size(); ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < m; ++k) s += Pinv[i][k] * small[k][j];
      if (s.get_den() != 1) throw Error(ErrorCode::Internal, "subgroup is not contained in the ambient subgroup");
      C[i][j] = s.get_num();
    }
  SmithForm snf = smith_normal_form(C);
  IntMatrix Uinv = unimodular_inverse(snf.U);
  std::vector<Elem> vecs;
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < m; ++i) {
    if (snf.diagonal[i] == 1) continue;
    if (snf.diagonal[i] == 0) throw Error(ErrorCode::Internal, "quotient is infinite");
    Elem v(m);
    for (std::size_t r = 0; r < m; ++r) {
      Int s = 0;
      for (std::size_t k = 0; k < m; ++k) s += P[r][k] * Uinv[k][i];
      Int red = s % q.orders()[r];
      if (red < 0) red += q.orders()[r];
      v[r] = red.get_si();
    }
    vecs.push_back(v);
    orders.push_back(to_int64(snf.diagonal[i]));
  }
  return form_on_vectors(q, vecs, orders);
}

}  // namespace

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<std::int64_t> orders, std::int64_t denominator,
                                         std::vector<std::vector<std::int64_t>> gram) {
  const std::size_t n = orders.size();
  if (denominator < 1) throw Error(ErrorCode::InvalidArgument, "denominator must be positive");
  if (gram.size() != n) throw Error(ErrorCode::InvalidArgument, "gram size does not match generator count");
  for (const auto& r : gram)
    if (r.size() != n) throw Error(ErrorCode::InvalidArgument, "gram is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (mod(gram[i][j] - gram[j][i], denominator) != 0)
        throw Error(ErrorCode::InvalidArgument, "bilinear form is not symmetric");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] < 1) throw Error(ErrorCode::InvalidArgument, "generator orders must be positive");
    if (orders[i] > 1) keep.push_back(i);
  }
  denom_ = denominator;
  order_ = 1;
  for (auto i : keep) {
    orders_.push_back(orders[i]);
    if (static_cast<i128>(order_) * orders[i] > (static_cast<i128>(1) << 40))
      throw Error(ErrorCode::CapExceeded, "group order too large");
    order_ *= orders[i];
  }
  gram_.assign(keep.size(), std::vector<std::int64_t>(keep.size()));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      gram_[a][b] = a == b ? mod(gram[keep[a]][keep[b]], 2 * denom_) : mod(gram[keep[a]][keep[b]], denom_);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    const std::int64_t d = orders_[a];
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (mod(static_cast<i128>(d) * gram_[a][b], denom_) != 0)
        throw Error(ErrorCode::InvalidArgument, "bilinear values incompatible with generator orders");
    if (mod(static_cast<i128>(d) * d * gram_[a][a], 2 * denom_) != 0)
      throw Error(ErrorCode::InvalidArgument, "quadratic values incompatible with generator orders");
  }
}

std::int64_t FiniteQuadraticForm::q_num(const Elem& x) const {
  i128 s = 0;
  const std::size_t n = orders_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    s += static_cast<i128>(gram_[i][i]) * x[i] % (2 * denom_) * x[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) s += static_cast<i128>(2 * gram_[i][j]) * x[i] % (2 * denom_) * x[j];
    s %= 2 * denom_;
  }
  return mod(s, 2 * denom_);
}

std::int64_t FiniteQuadraticForm::b_num(const Elem& x, const Elem& y) const {
  i128 s = 0;
  const std::size_t n = orders_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) s += static_cast<i128>(gram_[i][j]) * x[i] % denom_ * y[j];
    s %= denom_;
  }
  return mod(s, denom_);
}

Rat FiniteQuadraticForm::q_value(const Elem& x) const {
  Rat r(static_cast<long>(q_num(x)), static_cast<unsigned long>(denom_));
  r.canonicalize();
  return r;
}

Rat FiniteQuadraticForm::b_value(const Elem& x, const Elem& y) const {
  Rat r(static_cast<long>(b_num(x, y)), static_cast<unsigned long>(denom_));
  r.canonicalize();
  return r;
}

Elem FiniteQuadraticForm::generator(std::size_t i) const {
  Elem e = zero();
  e[i] = 1;
  return e;
}

Elem FiniteQuadraticForm::add(const Elem& x, const Elem& y) const {
  Elem r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = x[i] + y[i];
    if (r[i] >= orders_[i]) r[i] -= orders_[i];
  }
  return r;
}

Elem FiniteQuadraticForm::multiple(const Elem& x, std::int64_t k) const {
  Elem r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(static_cast<i128>(x[i]) * k, orders_[i]);
  return r;
}

Elem FiniteQuadraticForm::reduce(Elem x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
  return x;
}

std::int64_t FiniteQuadraticForm::element_order(const Elem& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], x[i]));
  return o;
}

std::int64_t FiniteQuadraticForm::index_of(const Elem& x) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx = idx * orders_[i] + x[i];
  return idx;
}

Elem FiniteQuadraticForm::element_at(std::int64_t index) const {
  Elem x(orders_.size());
  for (std::size_t i = x.size(); i-- > 0;) {
    x[i] = index % orders_[i];
    index /= orders_[i];
  }
  return x;
}

bool operator==(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  return a.orders() == b.orders() && a.denominator() == b.denominator() && a.gram() == b.gram();
}

Elem DiscriminantData::element_of_dual(const std::vector<Rat>& y) const {
  const std::size_t n = gram.size();
  std::vector<Int> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s += gram[i][j] * y[j];
    if (s.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "vector is not in the dual lattice");
    z[i] = s.get_num();
  }
  Elem e(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += U[k][j] * z[j];
    Int r = s % form.orders()[k];
    if (r < 0) r += form.orders()[k];
    e[k] = r.get_si();
  }
  return e;
}

DiscriminantData discriminant_data(const GramLattice& lattice) {
  if (!lattice.is_even()) throw Error(ErrorCode::OddLattice, "discriminant form requires an even lattice");
  DiscriminantData out;
  out.gram = lattice.gram();
  const std::size_t n = lattice.rank();
  if (n == 0) return out;
  SmithForm snf = smith_normal_form(lattice.gram());
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < n; ++i) {
    if (snf.diagonal[i] == 1) continue;
    out.kept.push_back(i);
    out.U.push_back(snf.U[i]);
    orders.push_back(to_int64(snf.diagonal[i]));
    std::vector<Rat> g(n);
    for (std::size_t r = 0; r < n; ++r) {
      g[r] = Rat(snf.V[r][i]) / Rat(snf.diagonal[i]);
      g[r].canonicalize();
    }
    out.generators.push_back(g);
  }
  std::int64_t N = 1;
  for (auto d : orders) N = checked_lcm(N, d);
  const std::size_t k = orders.size();
  std::vector<std::vector<std::int64_t>> gram(k, std::vector<std::int64_t>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Rat v = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (out.generators[a][r] == 0) continue;
        for (std::size_t c = 0; c < n; ++c) v += out.generators[a][r] * lattice.gram()[r][c] * out.generators[b][c];
      }
      v *= N;
      if (v.get_den() != 1) throw Error(ErrorCode::Internal, "dual pairing has unexpected denominator");
      Int mres = v.get_num() % Int(a == b ? 2 * N : N);
      gram[a][b] = mres.get_si();
    }
  out.form = FiniteQuadraticForm(orders, N, gram);
  return out;
}

FiniteQuadraticForm discriminant_form(const GramLattice& lattice) { return discriminant_data(lattice).form; }

FiniteQuadraticForm direct_sum_forms(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  const std::int64_t N = checked_lcm(a.denominator(), b.denominator());
  const std::size_t n = a.num_generators(), m = b.num_generators();
  std::vector<std::int64_t> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::vector<std::vector<std::int64_t>> g(n + m, std::vector<std::int64_t>(n + m, 0));
  const std::int64_t fa = N / a.denominator(), fb = N / b.denominator();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j] * fa;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j] * fb;
  return FiniteQuadraticForm(orders, N, g);
}

FiniteQuadraticForm negate_form(const FiniteQuadraticForm& q) {
  auto g = q.gram();
  for (auto& row : g)
    for (auto& v : row) v = -v;
  return FiniteQuadraticForm(q.orders(), q.denominator(), g);
}

FiniteQuadraticForm normalize_form(const FiniteQuadraticForm& q) {
  if (q.is_trivial()) return {};
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < q.num_generators(); ++i) gens.push_back(q.generator(i));
  return present_quotient(q, gens, {});
}

std::vector<std::int64_t> primes_of_order(const FiniteQuadraticForm& q) {
  std::vector<std::int64_t> primes;
  std::int64_t n = q.order();
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) primes.push_back(n);
  return primes;
}

std::map<std::int64_t, int> primary_lengths(const FiniteQuadraticForm& q) {
  std::map<std::int64_t, int> out;
  for (auto p : primes_of_order(q)) {
    int c = 0;
    for (auto d : q.orders())
      if (d % p == 0) ++c;
    out[p] = c;
  }
  return out;
}

int group_length(const FiniteQuadraticForm& q) {
  int l = 0;
  for (auto [p, c] : primary_lengths(q)) l = std::max(l, c);
  return l;
}

FiniteQuadraticForm primary_part(const FiniteQuadraticForm& q, std::int64_t p) {
  std::vector<Elem> vecs;
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < q.num_generators(); ++i) {
    const int v = valuation(q.orders()[i], p);
    if (v == 0) continue;
    const std::int64_t pk = ipow(p, v);
    vecs.push_back(q.multiple(q.generator(i), q.orders()[i] / pk));
    orders.push_back(pk);
  }
  return form_on_vectors(q, vecs, orders);
}

namespace {

// Sign (0..7) of the Gauss sum over the p-part, compared exactly in Z[zeta].
int primary_gauss_signature(const FiniteQuadraticForm& qp, std::int64_t p) {
  if (qp.is_trivial()) return 0;
  int K = 0;
  for (auto d : qp.orders()) K = std::max(K, valuation(d, p));
  int a = 0;
  for (auto d : qp.orders()) a += valuation(d, p);
  const std::int64_t pK = ipow(p, K);
  const std::int64_t N = qp.denominator();
  auto scaled_q = [&](const Elem& x) {
    i128 t = static_cast<i128>(qp.q_num(x)) * pK;
    if (t % N != 0) throw Error(ErrorCode::Internal, "q-value denominator exceeds exponent");
    return mod(t / N, 2 * pK);
  };
  if (p != 2) {
    const std::int64_t P1 = pK / p;
    std::vector<std::int64_t> c(pK, 0);
    for (std::int64_t idx = 0; idx < qp.order(); ++idx) {
      std::int64_t m = scaled_q(qp.element_at(idx));
      if (m % 2 != 0) throw Error(ErrorCode::Internal, "odd numerator on an odd primary part");
      c[m / 2 % pK] += 1;
    }
    auto is_zero = [&](const std::vector<std::int64_t>& v) {
      for (std::int64_t r = 0; r < P1; ++r)
        for (std::int64_t i = 1; i < p; ++i)
          if (v[r + i * P1] != v[r]) return false;
      return true;
    };
    if (a % 2 == 0) {
      for (int sgn : {1, -1}) {
        auto v = c;
        v[0] -= sgn * ipow(p, a / 2);
        if (is_zero(v)) return sgn > 0 ? 0 : 4;
      }
    } else {
      std::vector<std::int64_t> gp(pK, 0);
      for (std::int64_t x = 0; x < p; ++x) gp[(x * x % p) * P1] += 1;
      const std::int64_t scale = ipow(p, (a - 1) / 2);
      for (int sgn : {1, -1}) {
        auto v = c;
        for (std::int64_t i = 0; i < pK; ++i) v[i] -= sgn * scale * gp[i];
        if (is_zero(v)) return (p % 4 == 1 ? 0 : 2) + (sgn > 0 ? 0 : 4);
      }
    }
    throw Error(ErrorCode::Internal, "Gauss sum did not match any eighth root of unity");
  }
  const int n = std::max(K + 1, 3);
  const std::int64_t M = ipow(2, n);
  const std::int64_t step = ipow(2, n - K - 1);
  std::vector<std::int64_t> c(M, 0);
  for (std::int64_t idx = 0; idx < qp.order(); ++idx) c[scaled_q(qp.element_at(idx)) * step % M] += 1;
  auto is_zero = [&](const std::vector<std::int64_t>& v) {
    for (std::int64_t j = 0; j < M / 2; ++j)
      if (v[j] != v[j + M / 2]) return false;
    return true;
  };
  for (int s = 0; s < 8; ++s) {
    auto v = c;
    if (a % 2 == 0) {
      v[s * M / 8 % M] -= ipow(2, a / 2);
    } else {
      const std::int64_t w = ipow(2, (a - 1) / 2);
      v[(s + 1) * M / 8 % M] -= w;
      v[((s - 1 + 8) % 8) * M / 8 % M] -= w;
    }
    if (is_zero(v)) return s;
  }
  throw Error(ErrorCode::Internal, "Gauss sum did not match any eighth root of unity");
}

}  // namespace

int signature_mod8(const FiniteQuadraticForm& q) {
  int s = 0;
  for (auto p : primes_of_order(q)) s += primary_gauss_signature(primary_part(q, p), p);
  return s % 8;
}

Subgroup generate_subgroup(const FiniteQuadraticForm& q, const std::vector<Elem>& gens) {
  Subgroup h;
  h.generators = gens;
  std::set<std::int64_t> seen{q.index_of(q.zero())};
  std::vector<Elem> frontier{q.zero()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Elem y = q.add(x, g);
        if (seen.insert(q.index_of(y)).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  h.elements.assign(seen.begin(), seen.end());
  return h;
}

bool is_isotropic(const FiniteQuadraticForm& q, const std::vector<Elem>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (q.q_num(gens[i]) != 0) return false;
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (q.b_num(gens[i], gens[j]) != 0) return false;
  }
  return true;
}

std::vector<Subgroup> isotropic_subgroups_avoiding(const FiniteQuadraticForm& q, const std::vector<char>& forbidden,
                                                   std::int64_t cap) {
  require_cap(q, cap);
  std::vector<Elem> candidates;
  for (std::int64_t idx = 1; idx < q.order(); ++idx) {
    if (!forbidden.empty() && forbidden[idx]) continue;
    Elem x = q.element_at(idx);
    if (q.q_num(x) == 0) candidates.push_back(x);
  }
  std::set<std::vector<std::int64_t>> seen;
  std::vector<Subgroup> result;
  Subgroup trivial = generate_subgroup(q, {});
  seen.insert(trivial.elements);
  result.push_back(trivial);
  std::vector<Subgroup> frontier{trivial};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier) {
      std::vector<char> inside(q.order(), 0);
      for (auto e : h.elements) inside[e] = 1;
      for (const auto& x : candidates) {
        if (inside[q.index_of(x)]) continue;
        bool orth = true;
        for (const auto& g : h.generators)
          if (q.b_num(x, g) != 0) {
            orth = false;
            break;
          }
        if (!orth) continue;
        auto gens = h.generators;
        gens.push_back(x);
        Subgroup bigger = generate_subgroup(q, gens);
        if (seen.count(bigger.elements)) continue;
        bool ok = true;
        if (!forbidden.empty())
          for (auto e : bigger.elements)
            if (forbidden[e]) {
              ok = false;
              break;
            }
        seen.insert(bigger.elements);
        if (!ok) continue;
        result.push_back(bigger);
        next.push_back(bigger);
      }
    }
    frontier = std::move(next);
  }
  std::sort(result.begin(), result.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return result;
}

std::vector<Subgroup> isotropic_subgroups(const FiniteQuadraticForm& q, std::int64_t cap) {
  return isotropic_subgroups_avoiding(q, {}, cap);
}

FiniteQuadraticForm restrict_form(const FiniteQuadraticForm& q, const std::vector<Elem>& gens) {
  return present_quotient(q, gens, {});
}

FiniteQuadraticForm complement_quotient(const FiniteQuadraticForm& q, const Subgroup& H, std::int64_t cap) {
  if (!is_isotropic(q, H.generators)) throw Error(ErrorCode::NotIsotropic, "subgroup is not isotropic");
  if (H.order() == 1) return q;
  require_cap(q, cap);
  std::vector<Elem> perp_gens;
  std::vector<char> covered(q.order(), 0);
  covered[0] = 1;
  for (std::int64_t idx = 1; idx < q.order(); ++idx) {
    if (covered[idx]) continue;
    Elem x = q.element_at(idx);
    bool orth = true;
    for (const auto& h : H.generators)
      if (q.b_num(x, h) != 0) {
        orth = false;
        break;
      }
    if (!orth) continue;
    perp_gens.push_back(x);
    for (auto e : generate_subgroup(q, perp_gens).elements) covered[e] = 1;
  }
  return present_quotient(q, perp_gens, H.generators);
}

Elem apply_map(const FiniteQuadraticForm& target, const FormMap& map, const Elem& x) {
  Elem r = target.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) r = target.add(r, target.multiple(map.images[i], x[i]));
  return r;
}

std::vector<FormMap> isometric_embeddings(const FiniteQuadraticForm& small, const FiniteQuadraticForm& big,
                                          std::size_t limit, std::int64_t cap) {
  require_cap(big, cap);
  require_cap(small, cap);
  std::vector<FormMap> out;
  if (small.order() > big.order() || big.order() % small.order() != 0) return out;
  const std::size_t n = small.num_generators();
  if (n == 0) {
    out.push_back({});
    return out;
  }
  const std::int64_t L = checked_lcm(small.denominator(), big.denominator());
  const std::int64_t fs = L / small.denominator(), fb = L / big.denominator();
  std::vector<std::int64_t> qs(n);
  std::vector<std::vector<std::int64_t>> bs(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    qs[i] = mod(static_cast<i128>(small.gram()[i][i]) * fs, 2 * L);
    for (std::size_t j = 0; j < n; ++j) bs[i][j] = mod(static_cast<i128>(small.gram()[i][j]) * fs, L);
  }
  std::vector<std::vector<Elem>> cand(n);
  for (std::int64_t idx = 0; idx < big.order(); ++idx) {
    Elem y = big.element_at(idx);
    const std::int64_t qy = mod(static_cast<i128>(big.q_num(y)) * fb, 2 * L);
    const std::int64_t oy = big.element_order(y);
    for (std::size_t i = 0; i < n; ++i)
      if (small.orders()[i] % oy == 0 && qy == qs[i]) cand[i].push_back(y);
  }
  std::vector<Elem> chosen(n);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      out.push_back({chosen});
      return out.size() < limit;
    }
    for (const auto& y : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (mod(static_cast<i128>(big.b_num(y, chosen[j])) * fb, L) != bs[i][j]) ok = false;
      if (!ok) continue;
      chosen[i] = y;
      if (!self(self, i + 1)) return false;
    }
    return true;
  };
  rec(rec, 0);
  return out;
}

std::vector<FormMap> automorphisms(const FiniteQuadraticForm& q, std::int64_t cap) {
  return isometric_embeddings(q, q, SIZE_MAX, cap);
}

bool is_isomorphic_bruteforce(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, std::int64_t cap) {
  if (a.order() != b.order()) return false;
  if (normalize_form(a).orders() != normalize_form(b).orders()) return false;
  return !isometric_embeddings(a, b, 1, cap).empty();
}

EmbeddingOrbits form_embeddings_mod_aut(const FiniteQuadraticForm& small, const FiniteQuadraticForm& big,
                                        const std::vector<FormMap>& auts, std::int64_t cap) {
  EmbeddingOrbits result;
  std::map<std::vector<std::int64_t>, std::size_t> image_id;
  std::vector<Subgroup> images;
  for (const auto& emb : isometric_embeddings(small, big, SIZE_MAX, cap)) {
    Subgroup h = generate_subgroup(big, emb.images);
    if (h.order() != small.order()) continue;
    if (image_id.emplace(h.elements, images.size()).second) images.push_back(h);
  }
  std::sort(images.begin(), images.end(), [](const Subgroup& a, const Subgroup& b) { return a.elements < b.elements; });
  image_id.clear();
  for (std::size_t i = 0; i < images.size(); ++i) image_id[images[i].elements] = i;
  std::vector<std::size_t> parent(images.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < images.size(); ++i)
    for (const auto& aut : auts) {
      std::vector<std::int64_t> moved;
      for (auto e : images[i].elements) moved.push_back(big.index_of(apply_map(big, aut, big.element_at(e))));
      std::sort(moved.begin(), moved.end());
      auto it = image_id.find(moved);
      if (it == image_id.end()) throw Error(ErrorCode::Internal, "automorphism does not preserve the image set");
      std::size_t a = find(i), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  result.total_images = images.size();
  for (std::size_t i = 0; i < images.size(); ++i)
    if (find(i) == i) result.representatives.push_back(images[i]);
  result.count = result.representatives.size();
  return result;
}

std::string rational_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace latticelab
