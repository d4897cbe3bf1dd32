#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latticelab/finite_form.hpp"

namespace latticelab {

// Signature and discriminant form of a (possibly hypothetical) even lattice.
struct LatticeInvariant {
  int n_plus = 0;
  int n_minus = 0;
  FiniteQuadraticForm form;
};

LatticeInvariant invariant_of(const GramLattice& lattice);

struct ExistenceResult {
  bool exists = false;
  std::optional<int> failed_condition;  // 1..4
  std::string reason;                   // empty when exists
};

// Existence of an even lattice with the given invariant; conditions are checked in order 1..4.
ExistenceResult even_lattice_exists(const LatticeInvariant& inv);

struct UniquenessResult {
  bool unique = false;
  std::string note;  // "criterion silent" when the sufficient conditions fail
};

UniquenessResult unique_primitive_embedding(const LatticeInvariant& inv, int l_plus, int l_minus);

struct EmbeddingResult {
  bool exists = false;
  LatticeInvariant complement;  // invariant the orthogonal complement must have
  ExistenceResult complement_check;
};

// Primitive embedding into an even unimodular lattice of signature (l_plus, l_minus).
EmbeddingResult primitive_embedding_into_even_unimodular_exists(const LatticeInvariant& inv, int l_plus,
                                                                int l_minus);

struct SaturationWitness {
  Subgroup glue;              // inside q_S (+) q_R, first coordinates belong to q_S
  FiniteQuadraticForm form;   // glue^perp / glue
  std::int64_t index = 1;     // |glue|
};

// Overlattices of S (+) R in which S stays primitive, trivial glue first.
std::vector<SaturationWitness> saturations_keeping_primitive(const FiniteQuadraticForm& q_S,
                                                             const FiniteQuadraticForm& q_R,
                                                             std::int64_t cap = kDefaultGroupCap);

}  // namespace latticelab
