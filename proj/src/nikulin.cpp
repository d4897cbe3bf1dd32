#include "latticelab/nikulin.hpp"

#include "latticelab/error.hpp"
#include "latticelab/symbol.hpp"

namespace latticelab {

namespace {

std::int64_t strip_prime(std::int64_t n, std::int64_t p) {
  while (n % p == 0) n /= p;
  return n;
}

}  // namespace

LatticeInvariant invariant_of(const GramLattice& lattice) {
  return {lattice.n_plus(), lattice.n_minus(), discriminant_form(lattice)};
}

ExistenceResult even_lattice_exists(const LatticeInvariant& inv) {
  auto fail = [](int cond, std::string why) { return ExistenceResult{false, cond, std::move(why)}; };
  const int rank = inv.n_plus + inv.n_minus;
  const int sig = signature_mod8(inv.form);
  if (((inv.n_plus - inv.n_minus - sig) % 8 + 8) % 8 != 0)
    return fail(1, "signature " + std::to_string(inv.n_plus - inv.n_minus) + " differs from sig(q) = " +
                       std::to_string(sig) + " mod 8");
  const int len = group_length(inv.form);
  if (inv.n_plus < 0 || inv.n_minus < 0 || rank < len)
    return fail(2, "rank " + std::to_string(rank) + " is smaller than l(A) = " + std::to_string(len));
  const GenusSymbol sym = to_symbol(inv.form, INT64_MAX);
  const std::int64_t order = inv.form.order();
  const auto lengths = primary_lengths(inv.form);
  for (const auto& [p, lp] : lengths) {
    if (p == 2 || lp != rank) continue;
    std::int64_t unit = strip_prime(order, p);
    if (inv.n_minus % 2 != 0) unit = -unit;
    int eps = 1;
    for (const auto& c : sym.at_prime(p)) eps *= c.sign;
    if (legendre(unit, p) != eps)
      return fail(3, "determinant class mismatch at p = " + std::to_string(p));
  }
  auto it2 = lengths.find(2);
  if (it2 != lengths.end() && it2->second == rank) {
    bool split_ambiguous = false;
    int eps = 1;
    for (const auto& c : sym.at_prime(2)) {
      eps *= c.sign;
      if (c.exponent == 1 && c.odd_type) split_ambiguous = true;
    }
    if (!split_ambiguous) {
      const std::int64_t unit = strip_prime(order, 2) % 8;
      const int lhs = (unit == 1 || unit == 7) ? 1 : -1;
      if (lhs != eps) return fail(4, "determinant class mismatch at p = 2");
    }
  }
  return {true, std::nullopt, ""};
}

UniquenessResult unique_primitive_embedding(const LatticeInvariant& inv, int l_plus, int l_minus) {
  const int slack = l_plus + l_minus - inv.n_plus - inv.n_minus;
  if (l_plus > inv.n_plus && l_minus > inv.n_minus && slack >= group_length(inv.form) + 2) return {true, ""};
  return {false, "criterion silent"};
}

EmbeddingResult primitive_embedding_into_even_unimodular_exists(const LatticeInvariant& inv, int l_plus,
                                                                int l_minus) {
  if (l_plus < inv.n_plus || l_minus < inv.n_minus || ((l_plus - l_minus) % 8 + 8) % 8 != 0)
    throw Error(ErrorCode::BadSignature, "target signature (" + std::to_string(l_plus) + "," +
                                             std::to_string(l_minus) + ") cannot contain (" +
                                             std::to_string(inv.n_plus) + "," + std::to_string(inv.n_minus) + ")");
  EmbeddingResult out;
  out.complement = {l_plus - inv.n_plus, l_minus - inv.n_minus, negate_form(inv.form)};
  out.complement_check = even_lattice_exists(out.complement);
  out.exists = out.complement_check.exists;
  return out;
}

std::vector<SaturationWitness> saturations_keeping_primitive(const FiniteQuadraticForm& q_S,
                                                             const FiniteQuadraticForm& q_R, std::int64_t cap) {
  const FiniteQuadraticForm sum = direct_sum_forms(q_S, q_R);
  if (sum.order() > cap)
    throw Error(ErrorCode::CapExceeded, "combined order " + std::to_string(sum.order()) + " exceeds cap");
  const std::size_t ns = q_S.num_generators();
  std::vector<char> forbidden(static_cast<std::size_t>(sum.order()), 0);
  for (std::int64_t idx = 1; idx < sum.order(); ++idx) {
    const Elem x = sum.element_at(idx);
    bool in_r = false;
    for (std::size_t i = ns; i < x.size(); ++i)
      if (x[i] != 0) in_r = true;
    if (!in_r) forbidden[idx] = 1;
  }
  std::vector<SaturationWitness> out;
  for (auto& h : isotropic_subgroups_avoiding(sum, forbidden, cap)) {
    SaturationWitness w;
    w.form = complement_quotient(sum, h, cap);
    w.index = h.order();
    w.glue = std::move(h);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace latticelab
