#include <doctest.h>

#include <set>

#include "latticelab/error.hpp"
#include "latticelab/finite_form.hpp"
#include "latticelab/symbol.hpp"
#include "oracles.hpp"

using namespace latticelab;

namespace {

std::vector<oracle::SmallMatrix> small_corpus(unsigned seed, int count, int max_rank) {
  std::mt19937 rng(seed);
  std::vector<oracle::SmallMatrix> out;
  while (static_cast<int>(out.size()) < count) {
    auto g = oracle::random_even_gram(rng, 1 + static_cast<int>(out.size()) % max_rank, 6);
    if (std::labs(oracle::determinant(g)) <= 256) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("discriminant forms of root lattices") {
  CHECK(discriminant_form(named_lattice("E8")).is_trivial());
  const auto e7 = discriminant_form(named_lattice("E7"));
  CHECK(e7.order() == 2);
  CHECK(symbol_string(e7) == "2_7^+1");
  CHECK(symbol_string(discriminant_form(named_lattice("E6+A1"))) == "2_1^+1 3^+1");
  const auto a2 = discriminant_form(named_lattice("A2"));
  CHECK(a2.order() == 3);
  CHECK(a2.q_value(a2.generator(0)) == Rat(2, 3));
  CHECK(symbol_string(a2) == "3^-1");
  CHECK(symbol_string(discriminant_form(named_lattice("U", 2))) == "2_II^+2");
  CHECK(signature_mod8(discriminant_form(named_lattice("A1"))) == 1);
  CHECK(signature_mod8(discriminant_form(named_lattice("E6"))) == 6);
  CHECK(signature_mod8(FiniteQuadraticForm()) == 0);
}

TEST_CASE("group order equals |det| and Milgram holds on a random corpus") {
  std::mt19937 rng(7);
  for (int t = 0; t < 120; ++t) {
    auto g = oracle::random_even_gram(rng, 1 + t % 5, 6);
    const auto L = oracle::to_lattice(g);
    const auto q = discriminant_form(L);
    const auto [p, m] = oracle::signature(g);
    CAPTURE(g);
    CHECK(q.order() == std::labs(oracle::determinant(g)));
    CHECK(signature_mod8(q) == (((p - m) % 8) + 8) % 8);
  }
}

TEST_CASE("direct sums, negation and primary lengths") {
  const auto row1 = parse_form("3^+2 9^+1");
  const auto e6 = discriminant_form(named_lattice("E6"));
  CHECK(is_isomorphic(direct_sum_forms(row1, FiniteQuadraticForm()), row1));
  CHECK(symbol_string(direct_sum_forms(negate_form(row1), e6)) == symbol_string(parse_form("3^+3 9^-1")));
  CHECK(direct_sum_forms(parse_form("2_II^-2 3^-1 7^-1"), e6).order() == 4 * 9 * 7);
  CHECK(symbol_string(negate_form(parse_form("2_1^+1"))) == "2_7^+1");
  CHECK(negate_form(FiniteQuadraticForm()).is_trivial());
  CHECK(is_isomorphic(negate_form(negate_form(row1)), row1));
  CHECK(primary_lengths(row1) == std::map<std::int64_t, int>{{3, 3}});
  CHECK(primary_lengths(parse_form("2_3^-1 4_7^+1 3^-1 5^+1")) == std::map<std::int64_t, int>{{2, 2}, {3, 1}, {5, 1}});
  CHECK(primary_lengths(FiniteQuadraticForm()).empty());

  for (const auto& g : small_corpus(5, 30, 4)) {
    const auto q = discriminant_form(oracle::to_lattice(g));
    CHECK(signature_mod8(negate_form(q)) == (8 - signature_mod8(q)) % 8);
    const auto r = discriminant_form(named_lattice("A2+A1"));
    const auto sum = primary_lengths(direct_sum_forms(q, r));
    const auto lq = primary_lengths(q), lr = primary_lengths(r);
    for (const auto& [p, l] : sum) {
      const int expect = (lq.count(p) ? lq.at(p) : 0) + (lr.count(p) ? lr.at(p) : 0);
      CHECK(l == expect);
    }
  }
}

TEST_CASE("isotropic subgroups agree with brute force") {
  const auto glue = direct_sum_forms(discriminant_form(named_lattice("A2")), discriminant_form(named_lattice("E6")));
  const auto subs = isotropic_subgroups(glue);
  CHECK(subs.size() == 3);
  for (const auto& H : subs) {
    const auto quot = complement_quotient(glue, H);
    CHECK(quot.order() * H.order() * H.order() == glue.order());
    if (H.order() == 3) CHECK(quot.is_trivial());
  }
  CHECK(isotropic_subgroups(FiniteQuadraticForm()).size() == 1);

  for (const auto& g : small_corpus(17, 40, 4)) {
    const auto q = discriminant_form(oracle::to_lattice(g));
    std::set<std::vector<std::int64_t>> lib;
    for (const auto& H : isotropic_subgroups(q)) {
      lib.insert(H.elements);
      CHECK(complement_quotient(q, H).order() * H.order() * H.order() == q.order());
    }
    // the oracle sees subgroups with at most two generators, which is all of them when l(A) <= 2
    const auto brute = oracle::isotropic_subgroups_small(q);
    const std::set<std::vector<std::int64_t>> brute_set(brute.begin(), brute.end());
    if (group_length(q) <= 2)
      CHECK(lib == brute_set);
    else
      for (const auto& h : brute) CHECK(lib.count(h) == 1);
  }
}

TEST_CASE("saturation of the row-1 form") {
  const auto q = direct_sum_forms(negate_form(parse_form("3^+2 9^+1")), parse_form("3^+1"));
  bool found = false;
  for (const auto& H : isotropic_subgroups(q))
    if (H.order() == 3 && is_isomorphic(complement_quotient(q, H), parse_form("3^-1 9^-1"))) found = true;
  CHECK(found);
  CHECK(is_isomorphic(complement_quotient(q, isotropic_subgroups(q).front()), q));
  Subgroup bad = generate_subgroup(q, {q.generator(0)});
  if (!is_isotropic(q, bad.generators)) CHECK_THROWS_AS(complement_quotient(q, bad), Error);
}

TEST_CASE("embeddings and automorphisms") {
  const auto e6 = discriminant_form(named_lattice("E6"));
  CHECK(automorphisms(e6).size() == 2);
  const auto q = parse_form("3^+2 9^+1");
  const auto auts = automorphisms(q);
  const auto orbits = form_embeddings_mod_aut(q, q, auts);
  CHECK(orbits.count == 1);
  CHECK(isometric_embeddings(parse_form("2_1^+1"), parse_form("2_7^+1")).empty());
  CHECK(is_isomorphic_bruteforce(parse_form("2_3^-1 4_7^+1 3^-1 5^+1"), parse_form("2_7^+1 4_7^+1 3^-1 5^+1")));
}

TEST_CASE("cap enforcement") {
  const auto big = discriminant_form(named_lattice("A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1"));
  CHECK_THROWS_AS(isotropic_subgroups(big), Error);
}
