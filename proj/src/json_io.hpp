#pragma once

#include <json.hpp>

#include "latticelab/casebook.hpp"
#include "latticelab/nikulin.hpp"
#include "latticelab/rank2.hpp"

namespace latticelab::json_io {

using nlohmann::json;

json lattice_json(const GramLattice& lattice);
GramLattice lattice_from_json(const json& doc);

// {"gens":[{"order":d,"q":"a/b"}],"b":[["0","1/3"],...],"order":N,"symbol":"..."}
json form_json(const FiniteQuadraticForm& q);
FiniteQuadraticForm form_from_json(const json& doc);

json rank2_json(const Rank2Form& f);
json existence_json(const ExistenceResult& r);
json embedding_json(const EmbeddingResult& r);
json witness_json(const SaturationWitness& w);
json verdict_json(const CaseVerdict& v);

}  // namespace latticelab::json_io
