#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace latticelab {

using Int = mpz_class;
using Rat = mpq_class;
using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix zero_matrix(std::size_t rows, std::size_t cols);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);

// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& a);

// Inverse over Q; throws Error(Degenerate) on a singular matrix.
RatMatrix rational_inverse(const IntMatrix& a);

// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (nonnegative).
struct SmithForm {
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> diagonal;  // length min(rows, cols)
};
SmithForm smith_normal_form(const IntMatrix& a);

// Columns of `gens` (m x k) span a full-rank sublattice of Z^m; returns an m x m basis.
IntMatrix column_basis(const IntMatrix& gens);

// Signature (n_plus, n_minus) of a symmetric nondegenerate matrix via exact LDL^T.
std::pair<int, int> signature_of(const IntMatrix& sym);

std::int64_t to_int64(const Int& v);

}  // namespace latticelab
