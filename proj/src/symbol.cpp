#include "latticelab/symbol.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "latticelab/error.hpp"

namespace latticelab {

namespace {

using i128 = __int128;

std::int64_t mod(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t g = m, x = 0, r = mod(a, m), y = 1;
  while (r != 0) {
    std::int64_t qt = g / r;
    std::tie(g, r) = std::make_pair(r, g - qt * r);
    std::tie(x, y) = std::make_pair(y, x - qt * y);
  }
  if (g != 1) throw Error(ErrorCode::Internal, "non-invertible residue");
  return mod(x, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int unit_sign(std::int64_t theta) {
  const std::int64_t r = mod(theta, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

// Elementary Jordan block of a p-primary form.
struct Block {
  int exponent;
  int kind;             // 0 cyclic, 1 hyperbolic (U), 2 anisotropic (V)
  std::int64_t unit;    // cyclic: Legendre sign (odd p) or lattice unit mod 8 (p = 2)
};

std::vector<Block> jordan_blocks(const FiniteQuadraticForm& qp, std::int64_t p) {
  struct Gen {
    Elem x;
    int e;
  };
  std::vector<Gen> gens;
  for (std::size_t i = 0; i < qp.num_generators(); ++i) gens.push_back({qp.generator(i), valuation(qp.orders()[i], p)});
  const std::int64_t N = qp.denominator();
  std::vector<Block> blocks;
  while (!gens.empty()) {
    int K = 0;
    for (const auto& g : gens) K = std::max(K, g.e);
    const std::int64_t pK = ipow(p, K);
    auto val = [&](const Elem& x, const Elem& y) {
      return mod(static_cast<i128>(qp.b_num(x, y)) * pK / N, pK);
    };
    auto qval = [&](const Elem& x) { return mod(static_cast<i128>(qp.q_num(x)) * pK / N, 2 * pK); };
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].e == K) top.push_back(i);

    auto unit_diag = [&](std::size_t i) {
      return p == 2 ? qval(gens[i].x) % 2 != 0 : val(gens[i].x, gens[i].x) % p != 0;
    };
    std::optional<std::size_t> pick;
    for (auto i : top)
      if (unit_diag(i)) {
        pick = i;
        break;
      }
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    if (!pick) {
      for (std::size_t a = 0; a < top.size() && !pair; ++a)
        for (std::size_t b = a + 1; b < top.size() && !pair; ++b)
          if (val(gens[top[a]].x, gens[top[b]].x) % p != 0) pair = std::make_pair(top[a], top[b]);
      if (!pair) throw Error(ErrorCode::Internal, "degenerate finite form in Jordan splitting");
      if (p != 2) {
        gens[pair->first].x = qp.add(gens[pair->first].x, gens[pair->second].x);
        pick = pair->first;
      }
    }
    if (pick) {
      const Elem x = gens[*pick].x;
      const std::int64_t u = val(x, x);
      const std::int64_t uinv = mod_inverse(u, pK);
      if (p == 2) {
        const std::int64_t theta_dual = qval(x);
        blocks.push_back({K, 0, mod_inverse(mod(theta_dual, 8), 8)});
      } else {
        blocks.push_back({K, 0, legendre(u, p)});
      }
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(*pick));
      for (auto& h : gens) {
        const std::int64_t c = mod(static_cast<i128>(val(h.x, x)) * uinv, pK);
        h.x = qp.add(h.x, qp.multiple(x, -c));
      }
      continue;
    }
    const Elem x = gens[pair->first].x, y = gens[pair->second].x;
    const std::int64_t a = qval(x), d = qval(y), c = val(x, y);
    const std::int64_t det = mod(static_cast<i128>(a) * d - static_cast<i128>(c) * c, pK * 8);
    const std::int64_t dinv = mod_inverse(mod(det, pK), pK);
    blocks.push_back({K, mod(det, 8) == 7 ? 1 : 2, 1});
    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pair->second));
    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pair->first));
    for (auto& h : gens) {
      const std::int64_t r1 = val(h.x, x), r2 = val(h.x, y);
      const std::int64_t alpha = mod(static_cast<i128>(dinv) * mod(static_cast<i128>(d) * r1 - static_cast<i128>(c) * r2, pK), pK);
      const std::int64_t beta = mod(static_cast<i128>(dinv) * mod(static_cast<i128>(a) * r2 - static_cast<i128>(c) * r1, pK), pK);
      h.x = qp.add(h.x, qp.add(qp.multiple(x, -alpha), qp.multiple(y, -beta)));
    }
  }
  return blocks;
}

// 2-adic constituent during canonicalization; oddity is per-constituent or fused per compartment.
struct Dyadic {
  int k;
  int n;
  int eps;
  bool odd;
  int t;
  auto operator<=>(const Dyadic&) const = default;
};

std::vector<std::vector<std::size_t>> compartments(const std::vector<Dyadic>& s) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].odd) continue;
    if (!out.empty() && s[out.back().back()].k + 1 == s[i].k && out.back().back() + 1 == i)
      out.back().push_back(i);
    else
      out.push_back({i});
  }
  return out;
}

std::vector<std::vector<std::size_t>> trains(const std::vector<Dyadic>& s) {
  std::map<int, bool> odd_at;
  for (const auto& c : s) odd_at[c.k] = c.odd;
  auto even_at = [&](int k) {
    auto it = odd_at.find(k);
    return it == odd_at.end() || !it->second;
  };
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool split = out.empty();
    if (!split)
      for (int j = s[i - 1].k; j < s[i].k && !split; ++j)
        if (even_at(j) && even_at(j + 1)) split = true;
    if (split)
      out.push_back({i});
    else
      out.back().push_back(i);
  }
  return out;
}

// Oddity fusion and sign walking; fused oddities sit on the first constituent of each compartment.
std::vector<Dyadic> canonicalize(std::vector<Dyadic> s) {
  const auto comps = compartments(s);
  for (const auto& comp : comps) {
    int total = 0;
    for (auto i : comp) {
      total += s[i].t;
      s[i].t = 0;
    }
    s[comp.front()].t = total % 8;
  }
  for (const auto& train : trains(s)) {
    for (std::size_t pos = train.size(); pos-- > 1;) {
      const std::size_t i = train[pos];
      if (s[i].eps != -1) continue;
      s[i].eps = 1;
      s[i - 1].eps *= -1;
      for (const auto& comp : comps)
        if (std::find(comp.begin(), comp.end(), i) != comp.end() ||
            std::find(comp.begin(), comp.end(), i - 1) != comp.end())
          s[comp.front()].t = (s[comp.front()].t + 4) % 8;
    }
  }
  return s;
}

std::pair<int, std::vector<Dyadic>> canonical_key(const std::vector<Dyadic>& s) {
  int minus = 0;
  for (const auto& c : s)
    if (c.eps < 0) ++minus;
  return {minus, s};
}

// Reachable (sign, oddity) pairs for a diagonal odd form of rank n, as a bitmask over 16 states.
std::uint32_t odd_states(int n) {
  static std::vector<std::uint32_t> memo{1u << 8};  // rank 0: sign +, oddity 0
  while (static_cast<int>(memo.size()) <= n) {
    std::uint32_t prev = memo.back(), next = 0;
    for (int st = 0; st < 16; ++st) {
      if (!(prev >> st & 1)) continue;
      const int sgn = st >> 3, t = st & 7;
      for (int u : {1, 3, 5, 7}) {
        const int ns = unit_sign(u) > 0 ? sgn : 1 - sgn;
        next |= 1u << (ns << 3 | (t + u) % 8);
      }
    }
    memo.push_back(next);
  }
  return memo[n];
}

std::vector<Dyadic> canonical_invariant(const std::vector<Dyadic>& raw) {
  auto best = canonicalize(raw);
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (raw[i].k == 1 && raw[i].odd) {
      auto alt = raw;
      alt[i].eps = -alt[i].eps;
      alt[i].t = (alt[i].t + 4) % 8;
      auto cand = canonicalize(alt);
      if (canonical_key(cand) < canonical_key(best)) best = cand;
    }
  return best;
}

// Printable representative: the smallest realizable symbol with the same invariant,
// ordered by number of minus signs, then per constituent (scale, sign + before -, oddity).
std::vector<Dyadic> canonical_dyadic(const std::vector<Dyadic>& raw) {
  const auto target = canonical_invariant(raw);
  auto order_key = [](const std::vector<Dyadic>& s) {
    std::vector<std::array<int, 3>> parts;
    int minus = 0;
    for (const auto& c : s) {
      if (c.eps < 0) ++minus;
      parts.push_back({c.k, c.eps < 0 ? 1 : 0, c.t});
    }
    return std::make_pair(minus, parts);
  };
  std::optional<std::vector<Dyadic>> best;
  std::vector<Dyadic> cur = raw;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == cur.size()) {
      if (best && order_key(cur) >= order_key(*best)) return;
      if (canonical_invariant(cur) == target) best = cur;
      return;
    }
    for (int eps : {1, -1}) {
      cur[i].eps = eps;
      if (!cur[i].odd) {
        cur[i].t = 0;
        if (constituent_realizable(cur[i].n, eps, false, 0)) self(self, i + 1);
        continue;
      }
      for (int t = 0; t < 8; ++t)
        if (constituent_realizable(cur[i].n, eps, true, t)) {
          cur[i].t = t;
          self(self, i + 1);
        }
    }
  };
  rec(rec, 0);
  if (!best) throw Error(ErrorCode::Internal, "no realizable 2-adic symbol for the invariant");
  return *best;
}

std::int64_t smallest_nonresidue(std::int64_t p) {
  for (std::int64_t r = 2; r < p; ++r)
    if (legendre(r, p) < 0) return r;
  throw Error(ErrorCode::Internal, "no quadratic non-residue");
}

void sort_constituents(std::vector<JordanConstituent>& cs) {
  std::sort(cs.begin(), cs.end(), [](const JordanConstituent& a, const JordanConstituent& b) {
    return std::make_pair(a.prime, a.exponent) < std::make_pair(b.prime, b.exponent);
  });
}

}  // namespace

int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  std::int64_t r = 1, base = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<i128>(r) * base % p);
    base = static_cast<std::int64_t>(static_cast<i128>(base) * base % p);
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

bool constituent_realizable(int rank, int sign, bool odd_type, int oddity) {
  if (rank < 0 || (sign != 1 && sign != -1)) return false;
  if (rank == 0) return sign == 1 && !odd_type && oddity % 8 == 0;
  if (!odd_type) return rank % 2 == 0 && oddity % 8 == 0;
  if (oddity < 0 || oddity > 7) return false;
  return odd_states(rank) >> ((sign > 0 ? 1 : 0) << 3 | oddity) & 1;
}

std::int64_t JordanConstituent::scale() const { return ipow(prime, exponent); }

std::string JordanConstituent::to_string() const {
  std::ostringstream os;
  os << scale();
  if (prime == 2) {
    if (odd_type)
      os << "_" << oddity;
    else
      os << "_II";
  }
  os << "^" << (sign > 0 ? "+" : "-") << rank;
  return os.str();
}

std::int64_t GenusSymbol::group_order() const {
  std::int64_t n = 1;
  for (const auto& c : constituents) n *= ipow(c.scale(), c.rank);
  return n;
}

std::vector<JordanConstituent> GenusSymbol::at_prime(std::int64_t p) const {
  std::vector<JordanConstituent> out;
  for (const auto& c : constituents)
    if (c.prime == p) out.push_back(c);
  return out;
}

std::string GenusSymbol::to_string() const {
  if (constituents.empty()) return "1^+0";
  std::string out;
  for (const auto& c : constituents) {
    if (!out.empty()) out += ' ';
    out += c.to_string();
  }
  return out;
}

GenusSymbol to_symbol(const FiniteQuadraticForm& q, std::int64_t cap) {
  GenusSymbol sym;
  for (auto p : primes_of_order(q)) {
    FiniteQuadraticForm qp = primary_part(q, p);
    if (p == 2 && qp.order() > cap)
      throw Error(ErrorCode::CapExceeded, "2-primary part exceeds cap " + std::to_string(cap));
    std::map<int, std::vector<Block>> by_scale;
    for (const auto& b : jordan_blocks(qp, p)) by_scale[b.exponent].push_back(b);
    if (p != 2) {
      for (const auto& [k, bs] : by_scale) {
        int eps = 1;
        for (const auto& b : bs) eps *= static_cast<int>(b.unit);
        sym.constituents.push_back({p, k, static_cast<int>(bs.size()), eps, false, 0});
      }
      continue;
    }
    std::vector<Dyadic> raw;
    for (const auto& [k, bs] : by_scale) {
      Dyadic d{k, 0, 1, false, 0};
      for (const auto& b : bs) {
        if (b.kind == 0) {
          d.odd = true;
          d.n += 1;
          d.eps *= unit_sign(b.unit);
          d.t = (d.t + static_cast<int>(b.unit)) % 8;
        } else {
          d.n += 2;
          if (b.kind == 2) d.eps = -d.eps;
        }
      }
      raw.push_back(d);
    }
    for (const auto& d : canonical_dyadic(raw)) sym.constituents.push_back({2, d.k, d.n, d.eps, d.odd, d.t});
  }
  sort_constituents(sym.constituents);
  return sym;
}

GenusSymbol parse_symbol(const std::string& text) {
  static const std::regex token_re(R"(^(\d+)(?:_(II|[0-7]))?\^([+-])(\d+)$)");
  std::string cleaned;
  // a closing brace after an exponent ends the constituent, as in 3^{+2}9^{+1}
  bool exponent_brace = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '{') {
      exponent_brace = i > 0 && text[i - 1] == '^';
    } else if (ch == '}') {
      if (exponent_brace) cleaned += ' ';
      exponent_brace = false;
    } else {
      cleaned += ch;
    }
  }
  std::istringstream in(cleaned);
  std::string tok;
  GenusSymbol sym;
  std::set<std::pair<std::int64_t, int>> seen;
  while (in >> tok) {
    std::smatch m;
    if (!std::regex_match(tok, m, token_re)) throw Error(ErrorCode::SyntaxError, "bad constituent '" + tok + "'");
    std::int64_t scale = 0;
    int rank = 0;
    try {
      scale = std::stoll(m[1].str());
      rank = std::stoi(m[4].str());
    } catch (const std::exception&) {
      throw Error(ErrorCode::SyntaxError, "number out of range in '" + tok + "'");
    }
    const int sign = m[3].str() == "+" ? 1 : -1;
    if (scale == 1) {
      if (rank != 0 || m[2].matched) throw Error(ErrorCode::SyntaxError, "scale 1 is only allowed as '1^+0'");
      if (sign < 0) throw Error(ErrorCode::RealizabilityError, "rank 0 constituent must have sign +");
      continue;
    }
    std::int64_t p = 0;
    for (std::int64_t d = 2; d <= scale; ++d)
      if (scale % d == 0) {
        p = d;
        break;
      }
    const int k = valuation(scale, p);
    if (ipow(p, k) != scale || !is_prime(p)) throw Error(ErrorCode::SyntaxError, "scale is not a prime power in '" + tok + "'");
    if ((p == 2) != m[2].matched) throw Error(ErrorCode::SyntaxError, "type subscript required exactly for p = 2 in '" + tok + "'");
    if (!seen.insert({p, k}).second) throw Error(ErrorCode::SyntaxError, "repeated scale " + m[1].str());
    JordanConstituent c{p, k, rank, sign, false, 0};
    if (p == 2) {
      c.odd_type = m[2].str() != "II";
      c.oddity = c.odd_type ? std::stoi(m[2].str()) : 0;
      if (!constituent_realizable(rank, sign, c.odd_type, c.oddity))
        throw Error(ErrorCode::RealizabilityError, "constituent '" + tok + "' violates the 2-adic constraints");
    } else if (rank == 0 && sign < 0) {
      throw Error(ErrorCode::RealizabilityError, "rank 0 constituent must have sign +");
    }
    if (rank == 0) continue;
    sym.constituents.push_back(c);
  }
  sort_constituents(sym.constituents);
  return sym;
}

FiniteQuadraticForm form_from_symbol(const GenusSymbol& symbol) {
  // Blocks as (orders, gram numerators over the block's own scale).
  struct Piece {
    std::int64_t scale;
    std::vector<std::vector<std::int64_t>> gram;  // diagonal mod 2*scale, off-diagonal mod scale
  };
  std::vector<Piece> pieces;
  for (const auto& c : symbol.constituents) {
    const std::int64_t s = c.scale();
    if (c.prime != 2) {
      for (int i = 0; i < c.rank; ++i) {
        const std::int64_t theta = (i == c.rank - 1 && c.sign < 0) ? smallest_nonresidue(c.prime) : 1;
        std::int64_t t = mod_inverse(theta, s);
        if (t % 2 != 0) t += s;
        pieces.push_back({s, {{t}}});
      }
      continue;
    }
    if (!c.odd_type) {
      for (int i = 0; i < c.rank / 2; ++i) {
        const bool aniso = i == 0 && c.sign < 0;
        const std::int64_t diag = aniso ? 2 : 0;
        pieces.push_back({s, {{diag, 1}, {1, diag}}});
      }
      continue;
    }
    std::vector<int> units(c.rank);
    auto rec = [&](auto&& self, int pos, int sgn, int acc) -> bool {
      if (pos == c.rank) return sgn == c.sign && acc % 8 == c.oddity;
      for (int u : {1, 3, 5, 7}) {
        units[pos] = u;
        if (self(self, pos + 1, sgn * unit_sign(u), acc + u)) return true;
      }
      return false;
    };
    if (!rec(rec, 0, 1, 0))
      throw Error(ErrorCode::RealizabilityError, "constituent " + c.to_string() + " is not realizable");
    for (int u : units) pieces.push_back({s, {{mod_inverse(u, 2 * s)}}});
  }
  if (pieces.empty()) return {};
  std::int64_t N = 1;
  for (const auto& pc : pieces) N = std::lcm(N, pc.scale);
  std::size_t dim = 0;
  for (const auto& pc : pieces) dim += pc.gram.size();
  std::vector<std::int64_t> orders;
  std::vector<std::vector<std::int64_t>> gram(dim, std::vector<std::int64_t>(dim, 0));
  std::size_t off = 0;
  for (const auto& pc : pieces) {
    const std::int64_t f = N / pc.scale;
    for (std::size_t i = 0; i < pc.gram.size(); ++i) {
      orders.push_back(pc.scale);
      for (std::size_t j = 0; j < pc.gram.size(); ++j) gram[off + i][off + j] = pc.gram[i][j] * f;
    }
    off += pc.gram.size();
  }
  return normalize_form(FiniteQuadraticForm(orders, N, gram));
}

FiniteQuadraticForm parse_form(const std::string& text) { return form_from_symbol(parse_symbol(text)); }

GenusSymbol canonical_symbol(const GenusSymbol& symbol) {
  return to_symbol(form_from_symbol(symbol), INT64_MAX);
}

std::string symbol_string(const FiniteQuadraticForm& q) { return to_symbol(q, INT64_MAX).to_string(); }

bool is_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  if (a.order() != b.order()) return false;
  return to_symbol(a, INT64_MAX) == to_symbol(b, INT64_MAX);
}

}  // namespace latticelab
