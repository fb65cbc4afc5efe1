#pragma once

#include "fcl/prover.hpp"
#include "fcl/species.hpp"

namespace fcl {

struct StepResult {
  std::string label;  // step label, or "direct" for proof = by ...
  ProverOutcome::Kind outcome = ProverOutcome::Kind::NotProved;
  long millis = 0;
};

struct TheoremReport {
  std::string species, name;
  std::vector<StepResult> steps;
  bool proved = false;
};

struct CheckReport {
  std::vector<TheoremReport> theorems;
  bool all_proved() const;
};

// Checks every proof contributed by this species (fresh `theorem`/`proof of`
// bodies), marking the statements Proved on success. Structural errors in
// proofs (unknown citations, out-of-scope steps, induction case mismatches)
// throw E-UNKNOWN-CITATION, E-SCOPE, E-CASE-MISMATCH, E-MISSING-CASE;
// prover failures are recorded in the report, never thrown.
CheckReport check_species(FlatSpecies& flat, const Env& env, const SearchBudget& budget);

// The obligation sequents of one proof in deterministic order (exposed for
// tests). Labels follow the steps; induction-closed parents are omitted.
std::vector<std::pair<std::string, Sequent>> obligations_of(
    const std::string& theorem, const FlatSpecies& flat, const Env& env);

}  // namespace fcl
