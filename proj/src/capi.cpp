#include "latticelab/latticelab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json_io.hpp"
#include "latticelab/casebook.hpp"
#include "latticelab/error.hpp"
#include "latticelab/symbol.hpp"

struct ll_lattice {
  latticelab::GramLattice value;
};
struct ll_form {
  latticelab::FiniteQuadraticForm value;
};

namespace {

using namespace latticelab;
using json_io::json;

thread_local std::string last_error;

template <typename F>
int guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return LL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "Internal: out of memory";
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
  }
  return LL_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(const json& doc, char** out) { *out = dup_string(doc.dump()); }

json report_json(const std::string& table, PolarizationRoot root, int row) {
  const auto records = load_table(table);
  std::vector<CaseVerdict> verdicts;
  if (row == 0)
    verdicts = full_report(records, root);
  else
    verdicts.push_back(analyze_case(find_row(records, row), root));
  json rows = json::array(), passing = json::array();
  for (const auto& v : verdicts) {
    rows.push_back(json_io::verdict_json(v));
    if (v.criterion_pass) passing.push_back(v.record.row);
  }
  return {{"table", table}, {"root", root_name(root)}, {"pass_rows", passing}, {"rows", rows}};
}

std::vector<DiagonalGenerator> generators_from(const int64_t* orders, const int64_t* weights, const int64_t* w0,
                                               size_t k) {
  std::vector<DiagonalGenerator> gens;
  for (size_t i = 0; i < k; ++i) {
    require(orders[i] > 0, "orders must be positive");
    gens.push_back({orders[i], std::vector<std::int64_t>(weights + 6 * i, weights + 6 * i + 6), w0[i]});
  }
  return gens;
}

}  // namespace

extern "C" {

const char* ll_error_name(int code) {
  if (code == LL_OK) return "OK";
  if (code < LL_NON_SYMMETRIC || code > LL_INTERNAL) return "Unknown";
  return error_name(static_cast<ErrorCode>(code));
}

const char* ll_last_error(void) { return last_error.c_str(); }

void ll_string_free(char* s) { std::free(s); }

int ll_lattice_from_gram(const int64_t* gram, size_t n, ll_lattice** out) {
  return guarded([&] {
    require(out && (gram || n == 0), "null argument");
    IntMatrix g(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) g[i][j] = static_cast<long>(gram[i * n + j]);
    *out = new ll_lattice{GramLattice::build(g)};
  });
}

int ll_lattice_from_json(const char* text, ll_lattice** out) {
  return guarded([&] {
    require(text && out, "null argument");
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SyntaxError, e.what());
    }
    *out = new ll_lattice{json_io::lattice_from_json(doc)};
  });
}

int ll_lattice_named(const char* name, int64_t scale, ll_lattice** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new ll_lattice{named_lattice(name, static_cast<long>(scale))};
  });
}

void ll_lattice_free(ll_lattice* lattice) { delete lattice; }

int ll_lattice_info_json(const ll_lattice* lattice, char** out) {
  return guarded([&] {
    require(lattice && out, "null argument");
    json doc = json_io::lattice_json(lattice->value);
    if (lattice->value.is_even()) doc["discriminant_form"] = symbol_string(discriminant_form(lattice->value));
    emit(doc, out);
  });
}

int ll_lattice_short_vectors_json(const ll_lattice* lattice, int64_t norm, char** out) {
  return guarded([&] {
    require(lattice && out, "null argument");
    const auto vs = short_vectors(lattice->value, static_cast<long>(norm));
    emit({{"norm", norm}, {"count", vs.size()}, {"vectors", vs}}, out);
  });
}

int ll_lattice_discriminant_form(const ll_lattice* lattice, ll_form** out) {
  return guarded([&] {
    require(lattice && out, "null argument");
    *out = new ll_form{discriminant_form(lattice->value)};
  });
}

int ll_form_parse(const char* text, ll_form** out) {
  return guarded([&] {
    require(text && out, "null argument");
    std::string s(text);
    const auto first = s.find_first_not_of(" \t\n");
    if (first != std::string::npos && s[first] == '{') {
      json doc;
      try {
        doc = json::parse(s);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
      }
      *out = new ll_form{json_io::form_from_json(doc)};
    } else {
      *out = new ll_form{parse_form(s)};
    }
  });
}

void ll_form_free(ll_form* form) { delete form; }

int ll_form_to_json(const ll_form* form, char** out) {
  return guarded([&] {
    require(form && out, "null argument");
    emit(json_io::form_json(form->value), out);
  });
}

int ll_form_symbol(const ll_form* form, char** out) {
  return guarded([&] {
    require(form && out, "null argument");
    *out = dup_string(symbol_string(form->value));
  });
}

int ll_form_signature_mod8(const ll_form* form, int* out) {
  return guarded([&] {
    require(form && out, "null argument");
    *out = signature_mod8(form->value);
  });
}

int ll_form_isomorphic(const ll_form* a, const ll_form* b, int* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = is_isomorphic(a->value, b->value) ? 1 : 0;
  });
}

int ll_form_direct_sum(const ll_form* a, const ll_form* b, ll_form** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = new ll_form{direct_sum_forms(a->value, b->value)};
  });
}

int ll_form_negate(const ll_form* form, ll_form** out) {
  return guarded([&] {
    require(form && out, "null argument");
    *out = new ll_form{negate_form(form->value)};
  });
}

int ll_form_isotropic_subgroups_json(const ll_form* form, char** out) {
  return guarded([&] {
    require(form && out, "null argument");
    const auto& q = form->value;
    json list = json::array();
    for (const auto& H : isotropic_subgroups(q)) {
      list.push_back({{"order", H.order()},
                      {"generators", H.generators},
                      {"elements", H.elements},
                      {"quotient", symbol_string(complement_quotient(q, H))}});
    }
    emit({{"form", symbol_string(q)}, {"count", list.size()}, {"subgroups", list}}, out);
  });
}

int ll_rank2_enumerate_json(int64_t det, int even_only, int sign, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    json list = json::array();
    for (const auto& f : rank2_enumerate(det, even_only != 0, sign)) list.push_back(json_io::rank2_json(f));
    emit({{"det", det}, {"even_only", even_only != 0}, {"sign", sign}, {"forms", list}}, out);
  });
}

int ll_rank2_reduce_json(int64_t a, int64_t b, int64_t c, int sign, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(sign == 1 || sign == -1, "sign must be +1 or -1");
    Rank2Form f = Rank2Form::from_gram(sign * a, sign * b, sign * c);
    emit(json_io::rank2_json(rank2_reduce(f)), out);
  });
}

int ll_rank2_automorphism_orders_json(const char* text, char** out) {
  return guarded([&] {
    require(text && out, "null argument");
    const Rank2Form f = parse_rank2(text);
    const auto isos = rank2_isometries(f);
    emit({{"form", f.to_string()}, {"group_order", isos.size()}, {"element_orders", rank2_automorphism_orders(f)}},
         out);
  });
}

int ll_nikulin_exists_json(int n_plus, int n_minus, const ll_form* form, char** out) {
  return guarded([&] {
    require(form && out, "null argument");
    emit(json_io::existence_json(even_lattice_exists({n_plus, n_minus, form->value})), out);
  });
}

int ll_nikulin_embed_json(int n_plus, int n_minus, const ll_form* form, int l_plus, int l_minus, char** out) {
  return guarded([&] {
    require(form && out, "null argument");
    const LatticeInvariant inv{n_plus, n_minus, form->value};
    json doc = json_io::embedding_json(primitive_embedding_into_even_unimodular_exists(inv, l_plus, l_minus));
    const auto uniq = unique_primitive_embedding(inv, l_plus, l_minus);
    doc["unique"] = uniq.unique;
    doc["uniqueness_note"] = uniq.note;
    emit(doc, out);
  });
}

int ll_saturate_json(const ll_form* q_s, const ll_form* q_r, char** out) {
  return guarded([&] {
    require(q_s && q_r && out, "null argument");
    json list = json::array();
    for (const auto& w : saturations_keeping_primitive(q_s->value, q_r->value)) list.push_back(json_io::witness_json(w));
    emit({{"count", list.size()}, {"witnesses", list}}, out);
  });
}

int ll_cubic_report_json(int row, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    emit(report_json("hm15", PolarizationRoot::E6, row), out);
  });
}

int ll_k3_report_json(int degree, int row, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    json doc = report_json("k3max11", root_for_k3_degree(degree), row);
    doc["degree"] = degree;
    emit(doc, out);
  });
}

int ll_condition_check_json(int rank_k, const ll_form* q_k, char** out) {
  return guarded([&] {
    require(q_k && out, "null argument");
    const auto res = condition_check(rank_k, q_k->value);
    json alpha = json::object();
    for (const auto& [p, a] : res.alpha) alpha[std::to_string(p)] = a;
    emit({{"pass", res.pass}, {"alpha", alpha}}, out);
  });
}

int ll_family_dimension(const int64_t* orders, const int64_t* weights, const int64_t* w0, size_t k, int64_t* out) {
  return guarded([&] {
    require(orders && weights && w0 && out, "null argument");
    require(k > 0, "at least one generator is required");
    *out = family_dimension(generators_from(orders, weights, w0, k));
  });
}

int ll_symplectic_check(int64_t order, const int64_t* weights, const int64_t* monomials, size_t count, int* out) {
  return guarded([&] {
    require(weights && out && (monomials || count == 0), "null argument");
    const DiagonalGenerator g{order, std::vector<std::int64_t>(weights, weights + 6), 0};
    std::vector<Monomial> ms;
    for (size_t i = 0; i < count; ++i) ms.emplace_back(monomials + 6 * i, monomials + 6 * i + 6);
    *out = symplectic_weight_check(g, ms) ? 1 : 0;
  });
}

int ll_normal_form_cases_json(char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    json list = json::array();
    for (const auto& c : load_normal_form_cases("")) {
      json gens = json::array(), symp = json::array();
      for (const auto& g : c.generators) {
        gens.push_back({{"order", g.order}, {"weights", g.weights}, {"w0", g.w0}});
        symp.push_back(c.monomials.empty() ? json(nullptr) : json(symplectic_weight_check(g, c.monomials)));
      }
      list.push_back({{"id", c.id},
                      {"main", c.in_main_list},
                      {"generators", gens},
                      {"monomial_count", c.monomials.size()},
                      {"expected_dimension", c.expected_dimension},
                      {"dimension", family_dimension(c.generators)},
                      {"symplectic", symp}});
    }
    emit({{"cases", list}}, out);
  });
}

}  // extern "C"
