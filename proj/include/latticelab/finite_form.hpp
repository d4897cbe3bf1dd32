#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latticelab/lattice.hpp"

namespace latticelab {

inline constexpr std::int64_t kDefaultGroupCap = 4096;

using Elem = std::vector<std::int64_t>;

// Finite abelian group presented as a direct sum of cyclic groups Z/d_i with a
// Q/2Z-valued quadratic form.  With common denominator N:
//   q(g_i)      = gram[i][i] / N  (mod 2),  gram[i][i] in [0, 2N)
//   b(g_i, g_j) = gram[i][j] / N  (mod 1),  gram[i][j] in [0, N) for i != j
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;
  FiniteQuadraticForm(std::vector<std::int64_t> orders, std::int64_t denominator,
                      std::vector<std::vector<std::int64_t>> gram);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::int64_t denominator() const { return denom_; }
  const std::vector<std::vector<std::int64_t>>& gram() const { return gram_; }
  std::size_t num_generators() const { return orders_.size(); }
  std::int64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  std::int64_t q_num(const Elem& x) const;                  // in [0, 2N)
  std::int64_t b_num(const Elem& x, const Elem& y) const;   // in [0, N)
  Rat q_value(const Elem& x) const;
  Rat b_value(const Elem& x, const Elem& y) const;

  Elem zero() const { return Elem(orders_.size(), 0); }
  Elem generator(std::size_t i) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem multiple(const Elem& x, std::int64_t k) const;
  Elem reduce(Elem x) const;
  std::int64_t element_order(const Elem& x) const;
  std::int64_t index_of(const Elem& x) const;
  Elem element_at(std::int64_t index) const;

 private:
  std::vector<std::int64_t> orders_;
  std::int64_t denom_ = 1;
  std::vector<std::vector<std::int64_t>> gram_;
  std::int64_t order_ = 1;
};

bool operator==(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// Discriminant form of an even lattice together with the map from dual vectors to group elements.
struct DiscriminantData {
  FiniteQuadraticForm form;
  IntMatrix gram;                   // lattice Gram
  IntMatrix U;                      // rows of the Smith transform for the kept factors
  std::vector<std::size_t> kept;    // indices of nontrivial invariant factors
  std::vector<std::vector<Rat>> generators;  // dual vectors in lattice coordinates
  Elem element_of_dual(const std::vector<Rat>& y) const;
};

DiscriminantData discriminant_data(const GramLattice& lattice);
FiniteQuadraticForm discriminant_form(const GramLattice& lattice);

FiniteQuadraticForm direct_sum_forms(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
FiniteQuadraticForm negate_form(const FiniteQuadraticForm& q);

// Presentation with invariant factors d_1 | d_2 | ... and denominator equal to the exponent.
FiniteQuadraticForm normalize_form(const FiniteQuadraticForm& q);

int signature_mod8(const FiniteQuadraticForm& q);
std::map<std::int64_t, int> primary_lengths(const FiniteQuadraticForm& q);
int group_length(const FiniteQuadraticForm& q);

// Orthogonal p-primary component, presented on p-power cyclic generators.
FiniteQuadraticForm primary_part(const FiniteQuadraticForm& q, std::int64_t p);
std::vector<std::int64_t> primes_of_order(const FiniteQuadraticForm& q);

struct Subgroup {
  std::vector<Elem> generators;
  std::vector<std::int64_t> elements;  // sorted element indices
  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
};

Subgroup generate_subgroup(const FiniteQuadraticForm& q, const std::vector<Elem>& gens);
bool is_isotropic(const FiniteQuadraticForm& q, const std::vector<Elem>& gens);

std::vector<Subgroup> isotropic_subgroups(const FiniteQuadraticForm& q, std::int64_t cap = kDefaultGroupCap);

// Isotropic subgroups containing no element flagged in `forbidden` (indexed by element index).
std::vector<Subgroup> isotropic_subgroups_avoiding(const FiniteQuadraticForm& q,
                                                   const std::vector<char>& forbidden,
                                                   std::int64_t cap = kDefaultGroupCap);

// Induced form on the subgroup spanned by `gens`.
FiniteQuadraticForm restrict_form(const FiniteQuadraticForm& q, const std::vector<Elem>& gens);
// Induced form on H^perp / H.
FiniteQuadraticForm complement_quotient(const FiniteQuadraticForm& q, const Subgroup& H,
                                        std::int64_t cap = kDefaultGroupCap);

// Homomorphism given by generator images.
struct FormMap {
  std::vector<Elem> images;
};
Elem apply_map(const FiniteQuadraticForm& target, const FormMap& map, const Elem& x);

// Isometric embeddings small -> big (all of them, up to `limit`).
std::vector<FormMap> isometric_embeddings(const FiniteQuadraticForm& small, const FiniteQuadraticForm& big,
                                          std::size_t limit = SIZE_MAX, std::int64_t cap = kDefaultGroupCap);
std::vector<FormMap> automorphisms(const FiniteQuadraticForm& q, std::int64_t cap = kDefaultGroupCap);
bool is_isomorphic_bruteforce(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                              std::int64_t cap = kDefaultGroupCap);

struct EmbeddingOrbits {
  std::size_t count = 0;
  std::vector<Subgroup> representatives;
  std::size_t total_images = 0;
};

EmbeddingOrbits form_embeddings_mod_aut(const FiniteQuadraticForm& small, const FiniteQuadraticForm& big,
                                        const std::vector<FormMap>& auts, std::int64_t cap = kDefaultGroupCap);

std::string rational_string(const Rat& r);

}  // namespace latticelab
