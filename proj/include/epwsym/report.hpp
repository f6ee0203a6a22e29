#pragma once

#include "epwsym/cox.hpp"
#include "epwsym/io.hpp"

namespace epwsym {

// Census serialization in the golden-table schema.
Json census_to_json(const Census& census, const EpwPipeline& P);

// Structured diff against a golden table.  Point counts match on either the
// set-theoretic or the scheme-theoretic figure (the source tables mix the two
// conventions); documented printed-vs-computed deltas are reconciled through
// the errata file and reported separately from genuine mismatches.
struct GoldenDiff {
    bool clean = false;           // no unexplained mismatches
    bool exact = false;           // clean with no errata used
    int matched = 0;
    int reconciled = 0;           // matched through an errata entry
    std::vector<std::string> mismatches;
};
GoldenDiff diff_golden(const Json& computed, const Json& golden, const Json* errata = nullptr);

Json epw_to_json(const EpwPipeline& P);
Json orbits_to_json(const FixedLocusAnalyzer::OrbitReport& rep);
Json terminalisation_to_json(const TerminalisationReport& rep);

// Group element cache: magic header, version byte, prime, input digest,
// element count, raw row-major matrices.
uint64_t json_digest(const Json& j);
void write_group_cache(const std::string& path, const MatGroup& G, uint64_t input_digest);
std::optional<MatGroup> read_group_cache(const std::string& path, const Fp& F,
                                         uint64_t input_digest);

}  // namespace epwsym
