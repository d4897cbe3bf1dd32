#include <doctest.h>

#include "latticelab/error.hpp"
#include "latticelab/nikulin.hpp"
#include "latticelab/symbol.hpp"
#include "oracles.hpp"

using namespace latticelab;

TEST_CASE("existence examples") {
  CHECK(even_lattice_exists({0, 2, parse_form("3^+1 9^+1")}).exists);
  const auto row2 = even_lattice_exists({0, 2, parse_form("2_II^-2 3^+2 7^-1")});
  CHECK_FALSE(row2.exists);
  CHECK(row2.failed_condition == 4);
  CHECK(even_lattice_exists({1, 1, FiniteQuadraticForm()}).exists);
  const auto row3 = even_lattice_exists({0, 2, parse_form("4_5^-1 8_1^+1")});
  CHECK_FALSE(row3.exists);
  CHECK(row3.failed_condition == 4);
  // signature mismatch
  const auto bad = even_lattice_exists({1, 0, FiniteQuadraticForm()});
  CHECK(bad.failed_condition == 1);
  // too many generators
  const auto crowded = even_lattice_exists({0, 2, parse_form("3^-3")});
  CHECK(crowded.failed_condition == 2);
}

TEST_CASE("existence is sound on registry lattices and their rescalings") {
  for (const char* name : {"A1", "A2", "A3", "A4", "D4", "D5", "D6", "E6", "E7", "E8", "U", "A2+A1", "E6+A1", "D7"})
    for (long n : {1L, 2L, 3L, -1L, -2L, -3L}) {
      const auto L = named_lattice(name, n);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(even_lattice_exists(invariant_of(L)).exists);
    }
  std::mt19937 rng(3);
  for (int t = 0; t < 80; ++t) {
    auto g = oracle::random_even_gram(rng, 1 + t % 5, 5);
    if (std::labs(oracle::determinant(g)) > 400) continue;
    const auto inv = invariant_of(oracle::to_lattice(g));
    CHECK(even_lattice_exists(inv).exists);
    const auto flipped = even_lattice_exists({inv.n_minus, inv.n_plus, negate_form(inv.form)});
    CHECK(flipped.exists);
  }
}

TEST_CASE("existence is symmetric under swapping signature and negating") {
  for (const char* text : {"3^+1 9^+1", "2_II^-2 3^+2 7^-1", "4_5^-1 8_1^+1", "3^+3", "2_7^+1", "5^-2", "11^+2 3^-1"})
    for (int p = 0; p <= 4; ++p)
      for (int m = 0; m <= 4; ++m) {
        const auto q = parse_form(text);
        const auto a = even_lattice_exists({p, m, q});
        const auto b = even_lattice_exists({m, p, negate_form(q)});
        CHECK(a.exists == b.exists);
        CHECK(a.failed_condition == b.failed_condition);
      }
}

TEST_CASE("primitive embeddings into even unimodular lattices") {
  const auto e6 = invariant_of(named_lattice("E6"));
  const auto into_e8 = primitive_embedding_into_even_unimodular_exists(e6, 8, 0);
  CHECK(into_e8.exists);
  CHECK(into_e8.complement.n_plus == 2);
  CHECK(into_e8.complement.n_minus == 0);
  CHECK(is_isomorphic(into_e8.complement.form, discriminant_form(named_lattice("A2"))));

  const auto l0 = invariant_of(named_lattice("Lambda0"));
  const auto into_b = primitive_embedding_into_even_unimodular_exists(l0, 26, 2);
  CHECK(into_b.exists);
  CHECK(into_b.complement.n_plus == 6);
  CHECK(into_b.complement.n_minus == 0);
  CHECK(is_isomorphic(into_b.complement.form, parse_form("3^+1")));
  CHECK_FALSE(unique_primitive_embedding(l0, 26, 2).unique);
  CHECK(unique_primitive_embedding(l0, 26, 2).note == "criterion silent");

  CHECK(primitive_embedding_into_even_unimodular_exists({0, 0, FiniteQuadraticForm()}, 26, 2).exists);
  CHECK(unique_primitive_embedding({0, 0, FiniteQuadraticForm()}, 26, 2).unique);

  // row 2: S + E6 with trivial glue
  const auto s_e6 = direct_sum_forms(negate_form(parse_form("2_II^-2 3^-1 7^-1")), parse_form("3^+1"));
  CHECK_FALSE(primitive_embedding_into_even_unimodular_exists({26, 0, s_e6}, 26, 2).exists);

  CHECK_THROWS_AS(primitive_embedding_into_even_unimodular_exists(e6, 4, 0), Error);
  CHECK_THROWS_AS(primitive_embedding_into_even_unimodular_exists(e6, 9, 0), Error);
}

TEST_CASE("complement duality on root sublattices of E8") {
  for (const char* name : {"A1", "A2", "A3", "D4", "E6", "E7", "A2+A1", "D5"}) {
    const auto inv = invariant_of(named_lattice(name));
    const auto res = primitive_embedding_into_even_unimodular_exists(inv, 8, 0);
    CAPTURE(name);
    CHECK(res.exists);
    CHECK(res.complement.n_plus + inv.n_plus == 8);
    CHECK(is_isomorphic(res.complement.form, negate_form(inv.form)));
  }
}

TEST_CASE("saturations keeping S primitive") {
  const auto qs1 = negate_form(parse_form("3^+2 9^+1"));
  const auto e6 = parse_form("3^+1");
  const auto w1 = saturations_keeping_primitive(qs1, e6);
  REQUIRE(!w1.empty());
  CHECK(w1.front().index == 1);
  bool found = false;
  for (const auto& w : w1) {
    CHECK(w.form.order() * w.index * w.index == qs1.order() * e6.order());
    if (w.index == 3 && is_isomorphic(w.form, parse_form("3^-1 9^-1"))) found = true;
  }
  CHECK(found);

  const auto w2 = saturations_keeping_primitive(negate_form(parse_form("2_II^-2 3^-1 7^-1")), e6);
  CHECK(w2.size() == 1);
  CHECK(saturations_keeping_primitive(qs1, FiniteQuadraticForm()).size() == 1);
}
