#include "json_io.hpp"

#include <numeric>

#include "latticelab/error.hpp"
#include "latticelab/symbol.hpp"

namespace latticelab::json_io {

namespace {

Rat parse_rational(const json& v) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long>());
    Rat r(v.get<std::string>());
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorCode::SyntaxError, "expected a rational, got " + v.dump());
  }
}

}  // namespace

json lattice_json(const GramLattice& lattice) {
  json gram = json::array();
  for (const auto& row : lattice.gram()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_si());
    gram.push_back(r);
  }
  return {{"gram", gram},
          {"rank", lattice.rank()},
          {"signature", {lattice.n_plus(), lattice.n_minus()}},
          {"det", lattice.det().get_str()},
          {"even", lattice.is_even()}};
}

GramLattice lattice_from_json(const json& doc) {
  const json& rows = doc.is_object() ? doc.at("gram") : doc;
  if (!rows.is_array()) throw Error(ErrorCode::SyntaxError, "gram must be a list of rows");
  IntMatrix g;
  for (const auto& row : rows) {
    if (!row.is_array()) throw Error(ErrorCode::SyntaxError, "gram must be a list of rows");
    std::vector<Int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::SyntaxError, "gram entries must be integers");
      r.emplace_back(x.get<long>());
    }
    g.push_back(std::move(r));
  }
  for (const auto& r : g)
    if (r.size() != g.size()) throw Error(ErrorCode::SyntaxError, "gram must be square");
  return GramLattice::build(g);
}

json form_json(const FiniteQuadraticForm& q) {
  const std::size_t n = q.num_generators();
  json gens = json::array();
  json b = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const Elem gi = q.generator(i);
    gens.push_back({{"order", q.orders()[i]}, {"q", rational_string(q.q_value(gi))}});
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(rational_string(q.b_value(gi, q.generator(j))));
    b.push_back(row);
  }
  return {{"gens", gens}, {"b", b}, {"order", q.order()}, {"symbol", symbol_string(q)}};
}

FiniteQuadraticForm form_from_json(const json& doc) {
  if (doc.is_string()) return parse_form(doc.get<std::string>());
  if (!doc.is_object() || !doc.contains("gens")) {
    if (doc.is_object() && doc.contains("symbol")) return parse_form(doc.at("symbol").get<std::string>());
    throw Error(ErrorCode::SyntaxError, "form must be a symbol string or an object with \"gens\"");
  }
  const json& gens = doc.at("gens");
  const std::size_t n = gens.size();
  std::vector<std::int64_t> orders;
  std::vector<std::vector<Rat>> vals(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    orders.push_back(gens[i].at("order").get<std::int64_t>());
    vals[i][i] = parse_rational(gens[i].at("q"));
  }
  if (doc.contains("b")) {
    const json& b = doc.at("b");
    if (b.size() != n) throw Error(ErrorCode::SyntaxError, "b must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
      if (b[i].size() != n) throw Error(ErrorCode::SyntaxError, "b must be n x n");
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) vals[i][j] = parse_rational(b[i][j]);
    }
  }
  std::int64_t denom = 1;
  for (const auto& row : vals)
    for (const auto& v : row) denom = std::lcm(denom, v.get_den().get_si());
  std::vector<std::vector<std::int64_t>> gram(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat scaled = vals[i][j] * denom;
      gram[i][j] = scaled.get_num().get_si();
    }
  return FiniteQuadraticForm(orders, denom, gram);
}

json rank2_json(const Rank2Form& f) {
  return {{"form", f.to_string()}, {"a", f.a}, {"b", f.b}, {"c", f.c}, {"sign", f.sign}, {"det", f.det()}};
}

json existence_json(const ExistenceResult& r) {
  json out = {{"exists", r.exists}, {"reason", r.reason}};
  out["failed_condition"] = r.failed_condition ? json(*r.failed_condition) : json(nullptr);
  return out;
}

json embedding_json(const EmbeddingResult& r) {
  return {{"exists", r.exists},
          {"complement", {{"signature", {r.complement.n_plus, r.complement.n_minus}},
                          {"form", symbol_string(r.complement.form)}}},
          {"complement_check", existence_json(r.complement_check)}};
}

json witness_json(const SaturationWitness& w) {
  return {{"index", w.index}, {"glue_elements", w.glue.elements}, {"form", symbol_string(w.form)}};
}

json verdict_json(const CaseVerdict& v) {
  json alpha = json::object();
  for (const auto& [p, a] : v.condition.alpha) alpha[std::to_string(p)] = a;
  json witnesses = json::array();
  for (const auto& w : v.witnesses) {
    json wj = witness_json(w.witness);
    wj["passes"] = w.passes;
    wj["reason"] = w.reason;
    wj["embedding"] = w.embedding ? embedding_json(*w.embedding) : json(nullptr);
    witnesses.push_back(wj);
  }
  json classes = json::array();
  for (const auto& c : v.classes) {
    classes.push_back({{"T", c.T.to_string()},
                       {"glue_index", v.witnesses[c.witness].witness.index},
                       {"embedding_count", c.embedding_count ? json(*c.embedding_count) : json(nullptr)},
                       {"embedding_note", c.embedding_note},
                       {"nonsymplectic_order", c.nonsymplectic_order ? json(*c.nonsymplectic_order) : json(nullptr)},
                       {"total_order", c.total_order ? json(*c.total_order) : json(nullptr)}});
  }
  return {{"table", v.record.table},
          {"row", v.record.row},
          {"group", v.record.group},
          {"order", v.record.order},
          {"rank_K", v.record.rank_K},
          {"qK", v.record.qK_text},
          {"root", root_name(v.root)},
          {"condition", {{"pass", v.condition.pass}, {"alpha", alpha}}},
          {"criterion_pass", v.criterion_pass},
          {"failed_condition", v.failed_condition ? json(*v.failed_condition) : json(nullptr)},
          {"reason", v.reason},
          {"maximal_rank", v.maximal_rank},
          {"witnesses", witnesses},
          {"classes", classes}};
}

}  // namespace latticelab::json_io
