#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "latticelab/lattice.hpp"

namespace latticelab {

// Definite binary form sign * ((a, b), (b, c)) with (a, b, c) positive definite.
struct Rank2Form {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  int sign = 1;

  // Accepts a raw definite Gram ((a, b), (b, c)) of either sign.
  static Rank2Form from_gram(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t det() const { return a * c - b * b; }
  bool is_even() const { return a % 2 == 0 && c % 2 == 0; }
  bool is_reduced() const;
  GramLattice lattice() const;
  std::string to_string() const;  // "(a^b c)" or "-(a^b c)"

  auto operator<=>(const Rank2Form&) const = default;
};

Rank2Form rank2_reduce(const Rank2Form& form);
Rank2Form parse_rank2(const std::string& text);

// Reduced forms of the given determinant, ordered by (a, b, c).
std::vector<Rank2Form> rank2_enumerate(std::int64_t det, bool even_only, int sign);

using Matrix2 = std::array<std::int64_t, 4>;  // row-major (m00, m01, m10, m11)

// Integer matrices M with M^T G M = G; columns are images of the basis vectors.
std::vector<Matrix2> rank2_isometries(const Rank2Form& form);
int matrix2_order(const Matrix2& m);
std::set<int> rank2_automorphism_orders(const Rank2Form& form);

}  // namespace latticelab
