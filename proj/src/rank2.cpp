#include "latticelab/rank2.hpp"

#include <regex>

#include "latticelab/error.hpp"

namespace latticelab {

Rank2Form Rank2Form::from_gram(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a * c - b * b <= 0 || a == 0) throw Error(ErrorCode::NotDefinite, "binary form is not definite");
  if (a > 0) return {a, b, c, 1};
  return {-a, -b, -c, -1};
}

bool Rank2Form::is_reduced() const {
  if (!(-a < 2 * b && 2 * b <= a && a <= c)) return false;
  if (a == c && b < 0) return false;
  return true;
}

GramLattice Rank2Form::lattice() const {
  return GramLattice::build({{Int(sign * a), Int(sign * b)}, {Int(sign * b), Int(sign * c)}});
}

std::string Rank2Form::to_string() const {
  std::string body = "(" + std::to_string(a) + "^" + std::to_string(b) + " " + std::to_string(c) + ")";
  return sign < 0 ? "-" + body : body;
}

namespace {

std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

}  // namespace

Rank2Form rank2_reduce(const Rank2Form& input) {
  if (input.a <= 0 || input.det() <= 0) throw Error(ErrorCode::NotDefinite, "binary form is not definite");
  std::int64_t a = input.a, b = input.b, c = input.c;
  while (true) {
    // shift b into (-a/2, a/2] with the substitution e2 -> e2 - k e1
    std::int64_t k = floor_div(2 * b + a - 1, 2 * a);
    if (k != 0) {
      c = c - 2 * k * b + k * k * a;
      b = b - k * a;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (2 * b == -a) b = -b;
  if (a == c && b < 0) b = -b;
  return {a, b, c, input.sign};
}

Rank2Form parse_rank2(const std::string& text) {
  static const std::regex notation(R"(\s*(-?)\s*\(\s*(\d+)\s*\^\s*(?:\{\s*(-?\d+)\s*\}\s*|(-?\d+)\s+)(\d+)\s*\)\s*)");
  static const std::regex triple(R"(\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, notation)) {
    const std::string b = m[3].matched ? m[3].str() : m[4].str();
    Rank2Form f{std::stoll(m[2]), std::stoll(b), std::stoll(m[5]), m[1].str().empty() ? 1 : -1};
    if (f.det() <= 0) throw Error(ErrorCode::NotDefinite, "binary form is not definite");
    return f;
  }
  if (std::regex_match(text, m, triple)) return Rank2Form::from_gram(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]));
  throw Error(ErrorCode::SyntaxError, "cannot parse binary form '" + text + "'");
}

std::vector<Rank2Form> rank2_enumerate(std::int64_t det, bool even_only, int sign) {
  std::vector<Rank2Form> out;
  if (det < 1) return out;
  // reduced forms satisfy 3a^2 <= 4 det
  for (std::int64_t a = 1; 3 * a * a <= 4 * det; ++a) {
    if (even_only && a % 2 != 0) continue;
    for (std::int64_t b = -((a - 1) / 2); 2 * b <= a; ++b) {
      if ((det + b * b) % a != 0) continue;
      std::int64_t c = (det + b * b) / a;
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (even_only && c % 2 != 0) continue;
      out.push_back({a, b, c, sign < 0 ? -1 : 1});
    }
  }
  return out;
}

namespace {

std::vector<std::array<std::int64_t, 2>> vectors_of_norm(const Rank2Form& f, std::int64_t n) {
  std::vector<std::array<std::int64_t, 2>> out;
  // a x^2 + 2bxy + c y^2 = n with det*y^2 <= a*n and det*x^2 <= c*n
  const std::int64_t d = f.det();
  for (std::int64_t y = 0; d * y * y <= f.a * n; ++y) {
    for (int s : {1, -1}) {
      if (y == 0 && s < 0) continue;
      std::int64_t yy = s * y;
      for (std::int64_t x = 0; d * x * x <= f.c * n; ++x) {
        for (int t : {1, -1}) {
          if (x == 0 && t < 0) continue;
          std::int64_t xx = t * x;
          if (f.a * xx * xx + 2 * f.b * xx * yy + f.c * yy * yy == n) out.push_back({xx, yy});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Matrix2> rank2_isometries(const Rank2Form& form) {
  if (form.a <= 0 || form.det() <= 0) throw Error(ErrorCode::NotDefinite, "binary form is not definite");
  std::vector<Matrix2> out;
  auto first = vectors_of_norm(form, form.a);
  auto second = vectors_of_norm(form, form.c);
  for (const auto& u : first)
    for (const auto& v : second) {
      std::int64_t ip = form.a * u[0] * v[0] + form.b * (u[0] * v[1] + u[1] * v[0]) + form.c * u[1] * v[1];
      if (ip != form.b) continue;
      if (u[0] * v[1] - u[1] * v[0] == 0) continue;
      out.push_back({u[0], v[0], u[1], v[1]});
    }
  std::sort(out.begin(), out.end());
  return out;
}

int matrix2_order(const Matrix2& m) {
  Matrix2 p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p == Matrix2{1, 0, 0, 1}) return k;
    p = {p[0] * m[0] + p[1] * m[2], p[0] * m[1] + p[1] * m[3], p[2] * m[0] + p[3] * m[2],
         p[2] * m[1] + p[3] * m[3]};
  }
  throw Error(ErrorCode::Internal, "isometry of a definite binary form has order above 12");
}

std::set<int> rank2_automorphism_orders(const Rank2Form& form) {
  std::set<int> orders;
  for (const auto& m : rank2_isometries(form)) orders.insert(matrix2_order(m));
  return orders;
}

}  // namespace latticelab
