#pragma once

#include <string>
#include <vector>

#include "latticelab/intmat.hpp"

namespace latticelab {

class GramLattice {
 public:
  GramLattice() = default;

  // Validates symmetry and nondegeneracy; computes signature, determinant and parity.
  static GramLattice build(const IntMatrix& gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.size(); }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  const Int& det() const { return det_; }
  bool is_even() const { return even_; }
  bool is_positive_definite() const { return n_minus_ == 0; }
  bool is_negative_definite() const { return n_plus_ == 0 && rank() > 0; }

  Int inner(const std::vector<Int>& x, const std::vector<Int>& y) const;

 private:
  IntMatrix gram_;
  int n_plus_ = 0;
  int n_minus_ = 0;
  Int det_ = 1;
  bool even_ = true;
};

GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
GramLattice rescale(const GramLattice& lattice, long factor);

// Registry: A<n>, D<n>, E6, E7, E8, U, I(p,q), II(p,q), Borcherds, Lambda0, Lambda2, Lambda6.
// Summands may be joined with '+', e.g. "E6+A1".
GramLattice named_lattice(const std::string& name, long scale = 1);
std::vector<std::string> registry_names();

struct ShortVectorOptions {
  std::size_t max_rank = 8;
  long max_abs_norm = 100;
};

// All v with v G v^T = norm, one representative per pair {v, -v}, sorted lexicographically.
std::vector<std::vector<long>> short_vectors(const GramLattice& lattice, long norm,
                                             const ShortVectorOptions& options = {});

}  // namespace latticelab
