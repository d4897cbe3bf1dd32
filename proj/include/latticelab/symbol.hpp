#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latticelab/finite_form.hpp"

namespace latticelab {

// One p-adic Jordan constituent of a finite quadratic form, scale = prime^exponent.
// For p = 2, odd_type and oddity are meaningful; even-type constituents have oddity 0.
struct JordanConstituent {
  std::int64_t prime = 2;
  int exponent = 1;
  int rank = 0;
  int sign = 1;  // +1 or -1
  bool odd_type = false;
  int oddity = 0;

  std::int64_t scale() const;
  std::string to_string() const;
  auto operator<=>(const JordanConstituent&) const = default;
};

struct GenusSymbol {
  std::vector<JordanConstituent> constituents;  // 2 first, then odd primes ascending; scales ascending

  bool is_trivial() const { return constituents.empty(); }
  std::int64_t group_order() const;
  std::vector<JordanConstituent> at_prime(std::int64_t p) const;
  std::string to_string() const;  // "1^+0" when trivial
  bool operator==(const GenusSymbol&) const = default;
};

// Canonical symbol: unique per isometry class of finite quadratic forms.
GenusSymbol to_symbol(const FiniteQuadraticForm& q, std::int64_t cap = kDefaultGroupCap);

// Grammar: space-separated constituents "q^±n" (odd p), "q_t^±n" or "q_II^±n" (p = 2).
// Braces around the exponent part are tolerated, e.g. "2_II^{-2}".
GenusSymbol parse_symbol(const std::string& text);

// A finite quadratic form with the given symbol (normalized presentation).
FiniteQuadraticForm form_from_symbol(const GenusSymbol& symbol);
FiniteQuadraticForm parse_form(const std::string& text);

GenusSymbol canonical_symbol(const GenusSymbol& symbol);
std::string symbol_string(const FiniteQuadraticForm& q);

bool is_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// Whether a 2-adic constituent of this rank, sign, type and oddity exists.
bool constituent_realizable(int rank, int sign, bool odd_type, int oddity);

int legendre(std::int64_t a, std::int64_t p);

}  // namespace latticelab
