#include <doctest.h>
#include <json.hpp>

#include <string>

#include "latticelab/latticelab.h"

using nlohmann::json;

namespace {

json take(char* raw) {
  json doc = json::parse(raw);
  ll_string_free(raw);
  return doc;
}

}  // namespace

TEST_CASE("C API status codes") {
  CHECK(std::string(ll_error_name(LL_OK)) == "OK");
  CHECK(std::string(ll_error_name(LL_SYNTAX_ERROR)) == "SyntaxError");
  CHECK(std::string(ll_error_name(999)) == "Unknown");
  ll_form* f = nullptr;
  CHECK(ll_form_parse("2_3^+1", &f) == LL_REALIZABILITY_ERROR);
  CHECK(std::string(ll_last_error()).find("RealizabilityError") == 0);
  CHECK(ll_form_parse("nonsense", &f) == LL_SYNTAX_ERROR);
  ll_lattice* l = nullptr;
  const int64_t bad[] = {2, 1, 0, 2};
  CHECK(ll_lattice_from_gram(bad, 2, &l) == LL_NON_SYMMETRIC);
  CHECK(ll_lattice_from_gram(nullptr, 2, &l) == LL_INVALID_ARGUMENT);
  char* out = nullptr;
  CHECK(ll_k3_report_json(3, 0, &out) == LL_INVALID_ARGUMENT);
}

TEST_CASE("C API lattice and form round trips") {
  ll_lattice* l = nullptr;
  const int64_t a2[] = {2, -1, -1, 2};
  REQUIRE(ll_lattice_from_gram(a2, 2, &l) == LL_OK);
  char* raw = nullptr;
  REQUIRE(ll_lattice_info_json(l, &raw) == LL_OK);
  const json info = take(raw);
  CHECK(info["det"] == "3");
  CHECK(info["discriminant_form"] == "3^-1");

  ll_form* q = nullptr;
  REQUIRE(ll_lattice_discriminant_form(l, &q) == LL_OK);
  REQUIRE(ll_form_to_json(q, &raw) == LL_OK);
  const json doc = take(raw);
  CHECK(doc["gens"][0]["q"] == "2/3");
  ll_form* back = nullptr;
  REQUIRE(ll_form_parse(doc.dump().c_str(), &back) == LL_OK);
  int iso = 0;
  REQUIRE(ll_form_isomorphic(q, back, &iso) == LL_OK);
  CHECK(iso == 1);

  ll_form* neg = nullptr;
  REQUIRE(ll_form_negate(q, &neg) == LL_OK);
  REQUIRE(ll_form_symbol(neg, &raw) == LL_OK);
  CHECK(std::string(raw) == "3^+1");
  ll_string_free(raw);

  REQUIRE(ll_lattice_short_vectors_json(l, 2, &raw) == LL_OK);
  CHECK(take(raw)["count"] == 3);

  ll_form_free(neg);
  ll_form_free(back);
  ll_form_free(q);
  ll_lattice_free(l);
}

TEST_CASE("C API reports") {
  char* raw = nullptr;
  REQUIRE(ll_cubic_report_json(0, &raw) == LL_OK);
  const json doc = take(raw);
  CHECK(doc["pass_rows"] == json::array({1, 4, 5, 10, 11, 13}));
  REQUIRE(ll_k3_report_json(2, 0, &raw) == LL_OK);
  CHECK(take(raw)["pass_rows"] == json::array({3, 7, 9, 11}));
  REQUIRE(ll_rank2_enumerate_json(27, 1, -1, &raw) == LL_OK);
  const json forms = take(raw)["forms"];
  REQUIRE(forms.size() == 2);
  CHECK(forms[0]["form"] == "-(2^1 14)");
  CHECK(forms[1]["form"] == "-(6^3 6)");

  const int64_t orders[] = {2};
  const int64_t weights[] = {0, 0, 0, 0, 1, 1};
  const int64_t w0[] = {0};
  int64_t dim = -1;
  REQUIRE(ll_family_dimension(orders, weights, w0, 1, &dim) == LL_OK);
  CHECK(dim == 12);
  const int64_t monos[] = {2, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1};
  int symp = -1;
  REQUIRE(ll_symplectic_check(2, weights, monos, 2, &symp) == LL_OK);
  CHECK(symp == 1);
}
