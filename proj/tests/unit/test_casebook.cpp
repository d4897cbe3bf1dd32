#include <doctest.h>

#include "latticelab/casebook.hpp"
#include "latticelab/error.hpp"
#include "latticelab/symbol.hpp"

using namespace latticelab;

namespace {

std::set<int> passing(const std::vector<CaseVerdict>& vs) {
  std::set<int> out;
  for (const auto& v : vs)
    if (v.criterion_pass) out.insert(v.record.row);
  return out;
}

}  // namespace

TEST_CASE("tables load") {
  const auto hm = load_table("hm15");
  CHECK(hm.size() == 15);
  for (const auto& r : hm) {
    CHECK(r.rank_K == 4);
    CHECK(r.rank_S() == 20);
    CHECK(r.q_S().order() == r.q_K.order());
  }
  CHECK(load_table("k3max11").size() == 11);
  CHECK_THROWS_AS(load_table("nope"), Error);
  CHECK_THROWS_AS(load_table_file("hm15", "/nonexistent/file.json"), Error);
  CHECK(find_row(hm, 11).group == "L_2(11)");
}

TEST_CASE("polarization roots") {
  CHECK(symbol_string(discriminant_form(root_lattice(PolarizationRoot::E7))) == "2_7^+1");
  CHECK(symbol_string(discriminant_form(root_lattice(PolarizationRoot::E6A1))) == "2_1^+1 3^+1");
  CHECK(root_for_k3_degree(2) == PolarizationRoot::E7);
  CHECK(root_for_k3_degree(4) == PolarizationRoot::D7);
  CHECK(root_for_k3_degree(6) == PolarizationRoot::E6A1);
  CHECK(root_for_k3_degree(0) == PolarizationRoot::E8);
  CHECK_THROWS_AS(root_for_k3_degree(8), Error);
}

TEST_CASE("condition check") {
  const auto row1 = condition_check(4, parse_form("3^+2 9^+1"));
  CHECK(row1.pass);
  CHECK(row1.alpha.at(3) == 1);
  CHECK(row1.alpha.at(2) == 4);
  CHECK_FALSE(condition_check(8, parse_form("2_II^+8")).pass);
  CHECK(condition_check(16, parse_form("2_II^+8")).pass);
  CHECK_FALSE(condition_check(3, FiniteQuadraticForm()).pass);
}

TEST_CASE("cubic report structure") {
  const auto report = full_report("hm15", PolarizationRoot::E6);
  CHECK(passing(report) == std::set<int>{1, 4, 5, 10, 11, 13});
  for (const auto& v : report) {
    CHECK(v.maximal_rank);
    if (!v.criterion_pass) {
      CHECK(v.classes.empty());
      CHECK_FALSE(v.reason.empty());
      continue;
    }
    CHECK_FALSE(v.classes.empty());
    for (const auto& c : v.classes) {
      const auto& w = v.witnesses[c.witness];
      REQUIRE(w.embedding.has_value());
      CHECK(even_lattice_exists(w.embedding->complement).exists);
      CHECK(is_isomorphic(negate_form(discriminant_form(c.T.lattice())), w.witness.form));
      CHECK(phi_order_bound(v.record.rank_S()).count(*c.nonsymplectic_order) == 1);
    }
  }
}

TEST_CASE("report failure reasons") {
  const auto report = full_report("hm15", PolarizationRoot::E6);
  std::map<int, int> failed;
  for (const auto& v : report)
    if (!v.criterion_pass) failed[v.record.row] = v.failed_condition.value_or(0);
  CHECK(failed.at(2) == 4);
  CHECK(failed.at(3) == 4);
  CHECK(failed.at(14) == 3);
  CHECK(failed.at(15) == 2);
}

TEST_CASE("report is deterministic") {
  const auto a = full_report("hm15", PolarizationRoot::E6);
  const auto b = full_report("hm15", PolarizationRoot::E6);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].reason == b[i].reason);
    CHECK(a[i].classes.size() == b[i].classes.size());
  }
}

TEST_CASE("embedding counts need the surjectivity flag") {
  auto rec = find_row(load_table("hm15"), 10);
  const auto v = analyze_case(rec, PolarizationRoot::E6);
  REQUIRE(v.classes.size() == 1);
  const auto& w = v.witnesses[v.classes[0].witness];
  CHECK(embedding_class_count(rec, PolarizationRoot::E6, w, v.classes[0].T) == 2);
  rec.aut_qS_surjective = false;
  CHECK_THROWS_AS(embedding_class_count(rec, PolarizationRoot::E6, w, v.classes[0].T), Error);
  const auto k3 = analyze_case(find_row(load_table("k3max11"), 3), PolarizationRoot::E7);
  for (const auto& c : k3.classes) {
    CHECK_FALSE(c.embedding_count.has_value());
    CHECK_FALSE(c.embedding_note.empty());
  }
}

TEST_CASE("non-maximal rank is rejected") {
  const auto rec = find_row(load_table("k3max11"), 1);
  const auto v = polarized_criterion(rec, PolarizationRoot::E8);
  CHECK_FALSE(v.maximal_rank);
  CHECK_FALSE(v.criterion_pass);
  CHECK_THROWS_AS(transcendental_candidates(rec, PolarizationRoot::E8, v.witnesses.front()), Error);
}

TEST_CASE("phi order bound") {
  CHECK(phi_order_bound(20) == std::set<int>{1, 2, 3, 4, 6});
  // independent totient evaluation over n = 2^a 3^b
  auto phi = [](int n) {
    int r = n;
    for (int p : {2, 3})
      if (n % p == 0) r = r / p * (p - 1);
    return r;
  };
  std::set<int> expect;
  for (int n = 1; n <= 1000; ++n) {
    int m = n;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    if (m == 1 && phi(n) <= 22) expect.insert(n);
  }
  CHECK(phi_order_bound(0) == expect);
  CHECK_THROWS_AS(phi_order_bound(21), Error);
  CHECK_THROWS_AS(phi_order_bound(-1), Error);
}

TEST_CASE("diagonal actions") {
  CHECK(cubic_monomials().size() == 56);
  const DiagonalGenerator inv{2, {0, 0, 0, 0, 1, 1}, 0};
  CHECK(family_dimension({inv}) == 32 - 20);
  CHECK(symplectic_weight_check(inv, {{3, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 2, 0}}));
  const DiagonalGenerator triple{3, {1, 0, 0, 0, 0, 0}, 0};
  CHECK_FALSE(symplectic_weight_check(triple, {{3, 0, 0, 0, 0, 0}, {0, 3, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 3}}));
  const DiagonalGenerator nine{9, {0, 6, 3, 1, 4, 7}, 6};
  CHECK(symplectic_weight_check(nine, {{2, 1, 0, 0, 0, 0}, {0, 2, 1, 0, 0, 0}}));
  CHECK_THROWS_AS(symplectic_weight_check(inv, {{3, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 2, 1}, {0, 0, 0, 0, 1, 0}}), Error);
  CHECK_THROWS_AS(symplectic_weight_check(inv, {{3, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 1, 0}}), Error);
  CHECK(default_weight_class(nine) == 6);
  CHECK_THROWS_AS(default_weight_class(inv), Error);
  for (const auto& c : load_normal_form_cases("")) {
    CAPTURE(c.id);
    CHECK(family_dimension(c.generators) >= 0);
    CHECK(family_dimension(c.generators) == c.expected_dimension);
  }
}
