#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latticelab/nikulin.hpp"
#include "latticelab/rank2.hpp"

namespace latticelab {

struct LeechPairRecord {
  std::string table;  // "hm15" or "k3max11"
  int row = 0;
  std::string group;
  std::int64_t order = 0;
  int rank_K = 0;
  std::string qK_text;
  FiniteQuadraticForm q_K;
  bool aut_qS_surjective = false;

  int rank_S() const { return 24 - rank_K; }
  FiniteQuadraticForm q_S() const { return negate_form(q_K); }
};

// Directory holding the bundled tables: $LATTICELAB_DATA if set, else the build-time default.
std::string data_directory();
std::vector<LeechPairRecord> load_table(const std::string& table_id);
std::vector<LeechPairRecord> load_table_file(const std::string& table_id, const std::string& path);
LeechPairRecord find_row(const std::vector<LeechPairRecord>& table, int row);

enum class PolarizationRoot { E6, E7, D7, E6A1, E8 };
std::string root_name(PolarizationRoot r);
GramLattice root_lattice(PolarizationRoot r);
PolarizationRoot root_for_k3_degree(int degree);

struct ConditionResult {
  bool pass = false;
  std::map<std::int64_t, int> alpha;  // rank_K - l_p for p = 2, 3 and every prime dividing |A_K|
};

ConditionResult condition_check(int rank_K, const FiniteQuadraticForm& q_K);

struct WitnessOutcome {
  SaturationWitness witness;
  bool passes = false;
  std::optional<EmbeddingResult> embedding;  // absent when the signature does not fit
  std::string reason;                        // failure explanation, empty on pass
};

struct TranscendentalClass {
  std::size_t witness = 0;  // index into CaseVerdict::witnesses
  Rank2Form T;
  std::optional<int> embedding_count;
  std::string embedding_note;
  std::optional<int> nonsymplectic_order;
  std::optional<std::int64_t> total_order;
};

struct CaseVerdict {
  LeechPairRecord record;
  PolarizationRoot root = PolarizationRoot::E6;
  ConditionResult condition;
  bool criterion_pass = false;
  std::optional<int> failed_condition;  // tag of the most saturated failing witness
  std::string reason;
  std::vector<WitnessOutcome> witnesses;
  bool maximal_rank = false;
  std::vector<TranscendentalClass> classes;
};

CaseVerdict polarized_criterion(const LeechPairRecord& rec, PolarizationRoot root);

// Reduced negative definite rank-2 lattices realizing the witness's complement.
std::vector<Rank2Form> transcendental_candidates(const LeechPairRecord& rec, PolarizationRoot root,
                                                 const WitnessOutcome& witness);

// Orbits of primitive embeddings S -> R^perp (in the even unimodular (26,2) lattice) with complement T.
int embedding_class_count(const LeechPairRecord& rec, PolarizationRoot root, const WitnessOutcome& witness,
                          const Rank2Form& T);

// Largest non-symplectic order compatible with T and the glue of the witness.
int nonsymplectic_order(const WitnessOutcome& witness, const Rank2Form& T);
std::set<int> phi_order_bound(int rank_S);

CaseVerdict analyze_case(const LeechPairRecord& rec, PolarizationRoot root);
std::vector<CaseVerdict> full_report(const std::string& table_id, PolarizationRoot root);
std::vector<CaseVerdict> full_report(const std::vector<LeechPairRecord>& table, PolarizationRoot root);

// Diagonal actions on cubic fourfolds; exponent vectors have length 6 and total degree 3.
using Monomial = std::vector<int>;

struct DiagonalGenerator {
  std::int64_t order = 1;
  std::vector<std::int64_t> weights;  // length 6
  std::int64_t w0 = 0;
};

std::vector<Monomial> cubic_monomials();
std::int64_t monomial_weight(const DiagonalGenerator& g, const Monomial& m);
bool symplectic_weight_check(const DiagonalGenerator& g, const std::vector<Monomial>& monomials);
int family_dimension(const std::vector<DiagonalGenerator>& gens);
// w0 solving 2 w0 = |w| (mod n); only defined for odd n.
std::int64_t default_weight_class(const DiagonalGenerator& g);

struct NormalFormCase {
  std::string id;
  std::vector<DiagonalGenerator> generators;
  std::vector<Monomial> monomials;
  int expected_dimension = 0;
  bool in_main_list = false;  // one of the twelve prime-power cases
};

std::vector<NormalFormCase> load_normal_form_cases(const std::string& path = "");

}  // namespace latticelab
