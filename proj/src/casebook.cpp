#include "latticelab/casebook.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "latticelab/error.hpp"
#include "latticelab/symbol.hpp"

#ifndef LATTICELAB_DEFAULT_DATA_DIR
#define LATTICELAB_DEFAULT_DATA_DIR "data"
#endif

namespace latticelab {

namespace {

using json = nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DataFileMissing, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::DataFileMissing, "malformed JSON in " + path + ": " + e.what());
  }
}

std::int64_t isqrt_exact(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

// Automorphisms of -q_T (same presentation as q_T) induced by the isometries of T.
std::vector<FormMap> induced_automorphisms(const Rank2Form& T, const DiscriminantData& dd) {
  std::vector<FormMap> out;
  for (const auto& m : rank2_isometries(T)) {
    FormMap f;
    for (const auto& g : dd.generators) {
      std::vector<Rat> y{Rat(m[0]) * g[0] + Rat(m[1]) * g[1], Rat(m[2]) * g[0] + Rat(m[3]) * g[1]};
      f.images.push_back(dd.element_of_dual(y));
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Orbits of isometric embeddings small -> big under pre-composition by `pre` and post-composition by `post`.
int embedding_orbits(const FiniteQuadraticForm& small, const FiniteQuadraticForm& big,
                     const std::vector<FormMap>& pre, const std::vector<FormMap>& post) {
  const auto embs = isometric_embeddings(small, big);
  std::map<std::vector<std::int64_t>, std::size_t> id;
  auto key_of = [&](const std::vector<Elem>& images) {
    std::vector<std::int64_t> k;
    for (const auto& e : images) k.push_back(big.index_of(e));
    return k;
  };
  for (std::size_t i = 0; i < embs.size(); ++i) id.emplace(key_of(embs[i].images), i);
  std::vector<std::size_t> parent(embs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, const std::vector<Elem>& images) {
    auto it = id.find(key_of(images));
    if (it == id.end()) throw Error(ErrorCode::Internal, "automorphism moved an embedding outside the set");
    std::size_t x = find(a), y = find(it->second);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (std::size_t i = 0; i < embs.size(); ++i) {
    for (const auto& a : pre) {
      std::vector<Elem> imgs;
      for (const auto& src : a.images) imgs.push_back(apply_map(big, embs[i], src));
      unite(i, imgs);
    }
    for (const auto& b : post) {
      std::vector<Elem> imgs;
      for (const auto& e : embs[i].images) imgs.push_back(apply_map(big, b, e));
      unite(i, imgs);
    }
  }
  int count = 0;
  for (std::size_t i = 0; i < embs.size(); ++i)
    if (find(i) == i) ++count;
  return count;
}

std::set<std::int64_t> reporting_primes(const FiniteQuadraticForm& q) {
  std::set<std::int64_t> ps{2, 3};
  for (auto p : primes_of_order(q)) ps.insert(p);
  return ps;
}

}  // namespace

std::string data_directory() {
  if (const char* env = std::getenv("LATTICELAB_DATA"); env && *env) return env;
  return LATTICELAB_DEFAULT_DATA_DIR;
}

std::vector<LeechPairRecord> load_table_file(const std::string& table_id, const std::string& path) {
  const json doc = read_json_file(path);
  std::vector<LeechPairRecord> out;
  try {
    for (const auto& r : doc.at("rows")) {
      LeechPairRecord rec;
      rec.table = table_id;
      rec.row = r.at("row").get<int>();
      rec.group = r.at("group").get<std::string>();
      rec.order = r.at("order").get<std::int64_t>();
      rec.rank_K = r.at("rank_K").get<int>();
      rec.qK_text = r.at("qK").get<std::string>();
      rec.aut_qS_surjective = r.value("aut_qS_surjective", false);
      rec.q_K = parse_form(rec.qK_text);
      out.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::DataFileMissing, "unexpected schema in " + path + ": " + e.what());
  }
  return out;
}

std::vector<LeechPairRecord> load_table(const std::string& table_id) {
  if (table_id != "hm15" && table_id != "k3max11")
    throw Error(ErrorCode::InvalidArgument, "unknown table '" + table_id + "'");
  return load_table_file(table_id, data_directory() + "/" + table_id + ".json");
}

LeechPairRecord find_row(const std::vector<LeechPairRecord>& table, int row) {
  for (const auto& r : table)
    if (r.row == row) return r;
  throw Error(ErrorCode::InvalidArgument, "no row " + std::to_string(row));
}

std::string root_name(PolarizationRoot r) {
  switch (r) {
    case PolarizationRoot::E6: return "E6";
    case PolarizationRoot::E7: return "E7";
    case PolarizationRoot::D7: return "D7";
    case PolarizationRoot::E6A1: return "E6+A1";
    case PolarizationRoot::E8: return "E8";
  }
  return "?";
}

GramLattice root_lattice(PolarizationRoot r) { return named_lattice(root_name(r)); }

PolarizationRoot root_for_k3_degree(int degree) {
  switch (degree) {
    case 0: return PolarizationRoot::E8;
    case 2: return PolarizationRoot::E7;
    case 4: return PolarizationRoot::D7;
    case 6: return PolarizationRoot::E6A1;
    default: throw Error(ErrorCode::InvalidArgument, "degree must be one of 0, 2, 4, 6");
  }
}

ConditionResult condition_check(int rank_K, const FiniteQuadraticForm& q_K) {
  ConditionResult res;
  const auto lengths = primary_lengths(q_K);
  res.pass = rank_K >= 4;
  for (auto p : reporting_primes(q_K)) {
    auto it = lengths.find(p);
    const int a = rank_K - (it == lengths.end() ? 0 : it->second);
    res.alpha[p] = a;
    if (a < (p == 3 ? 1 : 2)) res.pass = false;
  }
  return res;
}

CaseVerdict polarized_criterion(const LeechPairRecord& rec, PolarizationRoot root) {
  CaseVerdict v;
  v.record = rec;
  v.root = root;
  v.condition = condition_check(rec.rank_K, rec.q_K);
  const GramLattice R = root_lattice(root);
  const int rank = rec.rank_S() + static_cast<int>(R.rank());
  v.maximal_rank = rank == 26;
  for (auto& w : saturations_keeping_primitive(rec.q_S(), discriminant_form(R))) {
    WitnessOutcome out;
    out.witness = std::move(w);
    try {
      out.embedding = primitive_embedding_into_even_unimodular_exists({rank, 0, out.witness.form}, 26, 2);
      out.passes = out.embedding->exists;
      if (!out.passes)
        out.reason = "condition " + std::to_string(*out.embedding->complement_check.failed_condition) + ": " +
                     out.embedding->complement_check.reason;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BadSignature) throw;
      out.reason = "rank " + std::to_string(rank) + " does not fit signature (26,2)";
    }
    v.criterion_pass = v.criterion_pass || out.passes;
    v.witnesses.push_back(std::move(out));
  }
  if (!v.criterion_pass) {
    const WitnessOutcome& top = v.witnesses.back();
    if (top.embedding) v.failed_condition = top.embedding->complement_check.failed_condition;
    std::string r;
    std::set<std::string> seen;
    for (const auto& w : v.witnesses) {
      std::string line = (w.witness.index == 1 ? std::string("trivial glue") : "glue of index " + std::to_string(w.witness.index)) +
                         " -> " + w.reason;
      if (!seen.insert(line).second) continue;
      if (!r.empty()) r += "; ";
      r += line;
    }
    if (v.witnesses.size() == 1) r += "; no nontrivial saturation";
    v.reason = r;
  }
  return v;
}

std::vector<Rank2Form> transcendental_candidates(const LeechPairRecord& rec, PolarizationRoot root,
                                                 const WitnessOutcome& witness) {
  const int rank = rec.rank_S() + static_cast<int>(root_lattice(root).rank());
  if (rank != 26) throw Error(ErrorCode::NotMaximalRank, "complement has rank " + std::to_string(28 - rank));
  const FiniteQuadraticForm target = negate_form(witness.witness.form);
  std::vector<Rank2Form> out;
  for (const auto& f : rank2_enumerate(target.order(), true, -1))
    if (is_isomorphic(discriminant_form(f.lattice()), target)) out.push_back(f);
  return out;
}

int embedding_class_count(const LeechPairRecord& rec, PolarizationRoot root, const WitnessOutcome& witness,
                          const Rank2Form& T) {
  (void)witness;
  if (!rec.aut_qS_surjective)
    throw Error(ErrorCode::AssumptionMissing, "row " + std::to_string(rec.row) + " lacks the Aut(S) -> Aut(q_S) flag");
  const FiniteQuadraticForm qS = rec.q_S();
  const DiscriminantData dd = discriminant_data(T.lattice());
  const FiniteQuadraticForm negT = negate_form(dd.form);
  const std::int64_t aR = discriminant_form(root_lattice(root)).order();
  const std::int64_t prod = qS.order() * dd.form.order();
  const std::int64_t glue = prod % aR == 0 ? isqrt_exact(prod / aR) : -1;
  const auto o_T = induced_automorphisms(T, dd);
  if (glue == qS.order()) return embedding_orbits(qS, negT, automorphisms(qS), o_T);
  if (glue == dd.form.order()) return embedding_orbits(negT, qS, o_T, automorphisms(qS));
  throw Error(ErrorCode::Internal, "glue between S and T is a proper subgroup on both sides");
}

int nonsymplectic_order(const WitnessOutcome& witness, const Rank2Form& T) {
  const auto orders = rank2_automorphism_orders(T);
  const bool has3 = orders.count(3) > 0, has4 = orders.count(4) > 0, glued = witness.witness.index > 1;
  for (int n : {6, 4, 3, 2, 1}) {
    if (n % 3 == 0 && !has3) continue;
    if (n % 4 == 0 && !has4) continue;
    if (n % 2 == 0 && !glued) continue;
    return n;
  }
  return 1;
}

std::set<int> phi_order_bound(int rank_S) {
  if (rank_S < 0 || rank_S > 20) throw Error(ErrorCode::InvalidArgument, "rank_S must lie in [0, 20]");
  const int bound = 22 - rank_S;
  std::set<int> out;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 6; ++b) {
      const int n = (1 << a) * static_cast<int>(std::pow(3, b));
      const int phi = (a ? (1 << (a - 1)) : 1) * (b ? 2 * static_cast<int>(std::pow(3, b - 1)) : 1);
      if (phi <= bound) out.insert(n);
    }
  return out;
}

CaseVerdict analyze_case(const LeechPairRecord& rec, PolarizationRoot root) {
  CaseVerdict v = polarized_criterion(rec, root);
  if (!v.maximal_rank || !v.criterion_pass) return v;
  // Witnesses related by an automorphism give the same (index, T); keep the first.
  std::set<std::pair<std::int64_t, Rank2Form>> seen;
  for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
    const auto& w = v.witnesses[i];
    if (!w.passes) continue;
    for (const auto& T : transcendental_candidates(rec, root, w)) {
      if (!seen.emplace(w.witness.index, T).second) continue;
      TranscendentalClass c;
      c.witness = i;
      c.T = T;
      try {
        c.embedding_count = embedding_class_count(rec, root, w, T);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AssumptionMissing) throw;
        c.embedding_note = "not computed: Aut(S) -> Aut(q_S) surjectivity not recorded";
      }
      if (root == PolarizationRoot::E6) {
        c.nonsymplectic_order = nonsymplectic_order(w, T);
        c.total_order = rec.order * *c.nonsymplectic_order;
      }
      v.classes.push_back(std::move(c));
    }
  }
  return v;
}

std::vector<CaseVerdict> full_report(const std::vector<LeechPairRecord>& table, PolarizationRoot root) {
  std::vector<CaseVerdict> out;
  for (const auto& rec : table) out.push_back(analyze_case(rec, root));
  return out;
}

std::vector<CaseVerdict> full_report(const std::string& table_id, PolarizationRoot root) {
  return full_report(load_table(table_id), root);
}

std::vector<Monomial> cubic_monomials() {
  std::vector<Monomial> out;
  Monomial m(6, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == 5) {
      m[5] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[pos] = e;
      self(self, pos + 1, left - e);
    }
  };
  rec(rec, 0, 3);
  return out;
}

std::int64_t monomial_weight(const DiagonalGenerator& g, const Monomial& m) {
  if (g.weights.size() != 6 || m.size() != 6) throw Error(ErrorCode::InvalidArgument, "expected 6 coordinates");
  std::int64_t s = 0;
  for (int i = 0; i < 6; ++i) s += g.weights[i] * m[i];
  return ((s % g.order) + g.order) % g.order;
}

bool symplectic_weight_check(const DiagonalGenerator& g, const std::vector<Monomial>& monomials) {
  if (g.order < 1) throw Error(ErrorCode::InvalidArgument, "order must be positive");
  if (monomials.empty()) throw Error(ErrorCode::InvalidArgument, "no monomials given");
  std::optional<std::int64_t> cls;
  for (const auto& m : monomials) {
    if (m.size() != 6 || std::accumulate(m.begin(), m.end(), 0) != 3 ||
        std::any_of(m.begin(), m.end(), [](int e) { return e < 0; }))
      throw Error(ErrorCode::InvalidArgument, "monomials must be cubic exponent vectors of length 6");
    const auto w = monomial_weight(g, m);
    if (cls && *cls != w) throw Error(ErrorCode::MixedWeightClasses, "monomials lie in different weight classes");
    cls = w;
  }
  const std::int64_t total = std::accumulate(g.weights.begin(), g.weights.end(), std::int64_t{0});
  return (((total - 2 * *cls) % g.order) + g.order) % g.order == 0;
}

int family_dimension(const std::vector<DiagonalGenerator>& gens) {
  int monomials = 0;
  for (const auto& m : cubic_monomials()) {
    bool ok = true;
    for (const auto& g : gens)
      if (monomial_weight(g, m) != ((g.w0 % g.order) + g.order) % g.order) ok = false;
    if (ok) ++monomials;
  }
  std::map<std::vector<std::int64_t>, int> characters;
  for (int i = 0; i < 6; ++i) {
    std::vector<std::int64_t> ch;
    for (const auto& g : gens) ch.push_back(((g.weights.at(i) % g.order) + g.order) % g.order);
    ++characters[ch];
  }
  int centralizer = 0;
  for (const auto& [ch, mult] : characters) centralizer += mult * mult;
  return monomials - centralizer;
}

std::int64_t default_weight_class(const DiagonalGenerator& g) {
  if (g.order % 2 == 0) throw Error(ErrorCode::InvalidArgument, "weight class is ambiguous for even order; pass w0");
  const std::int64_t total = std::accumulate(g.weights.begin(), g.weights.end(), std::int64_t{0});
  const std::int64_t half = (g.order + 1) / 2;  // inverse of 2 mod an odd order
  return ((total % g.order + g.order) % g.order) * half % g.order;
}

std::vector<NormalFormCase> load_normal_form_cases(const std::string& path) {
  const std::string file = path.empty() ? data_directory() + "/fu_cases.json" : path;
  const json doc = read_json_file(file);
  std::vector<NormalFormCase> out;
  try {
    for (const auto& c : doc.at("cases")) {
      NormalFormCase fc;
      fc.id = c.at("id").get<std::string>();
      fc.expected_dimension = c.at("dimension").get<int>();
      fc.in_main_list = c.value("main", false);
      for (const auto& g : c.at("generators"))
        fc.generators.push_back({g.at("order").get<std::int64_t>(), g.at("weights").get<std::vector<std::int64_t>>(),
                                 g.at("w0").get<std::int64_t>()});
      for (const auto& m : c.value("monomials", json::array())) fc.monomials.push_back(m.get<Monomial>());
      out.push_back(std::move(fc));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::DataFileMissing, "unexpected schema in " + file + ": " + e.what());
  }
  return out;
}

}  // namespace latticelab
