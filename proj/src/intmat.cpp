#include "latticelab/intmat.hpp"

#include <utility>

#include "latticelab/error.hpp"

namespace latticelab {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, std::vector<Int>(cols, Int(0)));
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  IntMatrix out = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix out = zero_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

Int determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  IntMatrix a = input;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

RatMatrix rational_inverse(const IntMatrix& input) {
  const std::size_t n = input.size();
  RatMatrix a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = input[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::Degenerate, "matrix is singular");
    std::swap(a[col], a[piv]);
    Rat inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  RatMatrix out(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  RatMatrix inv = rational_inverse(a);
  IntMatrix out = zero_matrix(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (inv[i][j].get_den() != 1) throw Error(ErrorCode::Internal, "matrix is not unimodular");
      out[i][j] = inv[i][j].get_num();
    }
  return out;
}

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct SmithWork {
  IntMatrix A, U, V;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : A) std::swap(r[i], r[j]);
    for (auto& r : V) std::swap(r[i], r[j]);
  }
  // row_i += f * row_j
  void add_row(std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t c = 0; c < cols; ++c) A[i][c] += f * A[j][c];
    for (std::size_t c = 0; c < rows; ++c) U[i][c] += f * U[j][c];
  }
  // col_i += f * col_j
  void add_col(std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t r = 0; r < rows; ++r) A[r][i] += f * A[r][j];
    for (std::size_t r = 0; r < cols; ++r) V[r][i] += f * V[r][j];
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  SmithWork w;
  w.rows = input.size();
  w.cols = w.rows ? input[0].size() : 0;
  w.A = input;
  w.U = identity_matrix(w.rows);
  w.V = identity_matrix(w.cols);
  const std::size_t steps = std::min(w.rows, w.cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < w.rows; ++i)
        for (std::size_t j = t; j < w.cols; ++j) {
          if (w.A[i][j] == 0) continue;
          Int v = abs(w.A[i][j]);
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found) break;
      if (pi != t) w.swap_rows(pi, t);
      if (pj != t) w.swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (w.A[i][t] == 0) continue;
        w.add_row(i, t, -floor_div(w.A[i][t], w.A[t][t]));
        if (w.A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.cols; ++j) {
        if (w.A[t][j] == 0) continue;
        w.add_col(j, t, -floor_div(w.A[t][j], w.A[t][t]));
        if (w.A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the remaining block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < w.rows && divides; ++i)
        for (std::size_t j = t + 1; j < w.cols; ++j)
          if (w.A[i][j] % w.A[t][t] != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.A[t][t] < 0) {
      for (auto& v : w.A[t]) v = -v;
      for (auto& v : w.U[t]) v = -v;
    }
  }
  SmithForm out;
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.diagonal.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = w.A[t][t];
  return out;
}

IntMatrix column_basis(const IntMatrix& gens) {
  const std::size_t m = gens.size();
  SmithForm snf = smith_normal_form(gens);
  if (snf.diagonal.size() < m) throw Error(ErrorCode::Internal, "generators do not span a full-rank lattice");
  IntMatrix uinv = unimodular_inverse(snf.U);
  IntMatrix basis = zero_matrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    if (snf.diagonal[j] == 0) throw Error(ErrorCode::Internal, "generators do not span a full-rank lattice");
    for (std::size_t i = 0; i < m; ++i) basis[i][j] = uinv[i][j] * snf.diagonal[j];
  }
  return basis;
}

std::pair<int, int> signature_of(const IntMatrix& sym) {
  const std::size_t n = sym.size();
  RatMatrix a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = sym[i][j];
  int plus = 0, minus = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        std::swap(a[k], a[j]);
        for (auto& row : a) std::swap(row[k], row[j]);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) throw Error(ErrorCode::Degenerate, "matrix is singular");
        // basis change e_k -> e_k + e_j makes the pivot 2*a[k][j]
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    const Rat piv = a[k][k];
    if (piv > 0) ++plus; else ++minus;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / piv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i) a[k][i] = 0;
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = 0;
  }
  return {plus, minus};
}

std::int64_t to_int64(const Int& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::CapExceeded, "integer exceeds 64-bit range");
  return v.get_si();
}

}  // namespace latticelab
