#pragma once

#include "fcl/kernel.hpp"

namespace fcl {

struct Sequent {
  std::vector<std::pair<std::string, KFormulaPtr>> facts;  // named, order stable
  KFormulaPtr goal;
};

struct SearchBudget {
  int gamma_depth = 3;          // universal-instantiation rounds per branch
  long max_branch_nodes = 10000;
  int timeout_ms = 5000;        // wall clock per obligation
};

struct ProverOutcome {
  enum class Kind { Proved, NotProved, Budget };
  Kind kind = Kind::NotProved;
  std::string detail;  // open-branch sample or exceeded limit
  long nodes = 0;
};

// Bounded tableau with iterative deepening on gamma rounds, delta rule with
// fresh constants, native lazy iff, and ground congruence closure over
// positive branch equations. Sound; complete on the propositional fragment.
// Never throws: failures are NotProved / Budget outcomes.
ProverOutcome prove(const Sequent& s, const SearchBudget& b);

// Truth-table oracle for quantifier-free formulas (test oracle only).
// Throws E-OBLIGATION if the formula has more than 20 distinct atoms.
bool propositional_taut(const KFormulaPtr& f);

}  // namespace fcl
