#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>

#include "fcl/prover.hpp"
#include "test_util.hpp"

using namespace fcl;

namespace {

const char* kAtoms[4] = {"a", "b", "c", "d"};

KFormulaPtr atom(int i) { return k_atom(k_app(kAtoms[i], "bool")); }

// Random propositional formula over at most 4 atoms.
KFormulaPtr random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  switch (pick(rng)) {
    case 0:
    case 1: {
      std::uniform_int_distribution<int> a(0, 3);
      return atom(a(rng));
    }
    case 2: return k_not(random_formula(rng, depth - 1));
    case 3: return k_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return k_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return k_implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6: return k_iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> c(0, 1);
      return c(rng) ? k_true() : k_false();
    }
  }
}

// Independent truth-table evaluation under a 4-bit valuation, written
// directly against the formula structure (no prover code involved).
bool eval_under(const KFormulaPtr& f, unsigned val) {
  switch (f->kind) {
    case KFormula::Kind::True: return true;
    case KFormula::Kind::False: return false;
    case KFormula::Kind::Atom:
      for (int i = 0; i < 4; i++)
        if (f->t->name == kAtoms[i]) return (val >> i) & 1u;
      FAIL("unexpected atom");
      return false;
    case KFormula::Kind::Not: return !eval_under(f->a, val);
    case KFormula::Kind::And: return eval_under(f->a, val) && eval_under(f->b, val);
    case KFormula::Kind::Or: return eval_under(f->a, val) || eval_under(f->b, val);
    case KFormula::Kind::Implies:
      return !eval_under(f->a, val) || eval_under(f->b, val);
    case KFormula::Kind::Iff: return eval_under(f->a, val) == eval_under(f->b, val);
    default:
      FAIL("quantifier in propositional formula");
      return false;
  }
}

// Is `facts |- goal` valid? Checked over all 16 valuations.
bool sequent_valid(const Sequent& s) {
  for (unsigned v = 0; v < 16; v++) {
    bool all_facts = true;
    for (const auto& [name, f] : s.facts) all_facts = all_facts && eval_under(f, v);
    if (all_facts && !eval_under(s.goal, v)) return false;
  }
  return true;
}

KTermPtr c(const std::string& n) { return k_app(n, "T"); }
KFormulaPtr p1(KTermPtr t) { return k_atom(k_app("p", "bool", {std::move(t)})); }

}  // namespace

TEST_CASE("truth-table oracle sanity") {
  KFormulaPtr a = atom(0), b = atom(1);
  CHECK(propositional_taut(k_or(a, k_not(a))));
  CHECK_FALSE(propositional_taut(k_implies(a, b)));
  CHECK(propositional_taut(k_iff(k_implies(a, b), k_or(k_not(a), b))));
  CHECK(propositional_taut(k_true()));
  CHECK_FALSE(propositional_taut(k_false()));
}

TEST_CASE("random propositional sequents: sound and complete") {
  std::mt19937 rng(20240817);
  SearchBudget budget;
  int tautologies = 0, falsifiable = 0;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; i++) {
    Sequent s;
    std::uniform_int_distribution<int> nfacts(0, 3);
    int k = nfacts(rng);
    for (int j = 0; j < k; j++)
      s.facts.emplace_back("F" + std::to_string(j), random_formula(rng, 4));
    s.goal = random_formula(rng, 4);

    bool valid = sequent_valid(s);
    // cross-check the in-test table against the library oracle
    {
      KFormulaPtr whole = s.goal;
      for (auto it = s.facts.rbegin(); it != s.facts.rend(); ++it)
        whole = k_implies(it->second, whole);
      CHECK(propositional_taut(whole) == valid);
    }

    ProverOutcome out = prove(s, budget);
    if (valid) {
      tautologies++;
      CHECK_MESSAGE(out.kind == ProverOutcome::Kind::Proved,
                    "missed valid sequent #" << i);
    } else {
      falsifiable++;
      CHECK_MESSAGE(out.kind != ProverOutcome::Kind::Proved,
                    "proved falsifiable sequent #" << i);
    }
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  CHECK(secs.count() < 30.0);
  // the generator exercises both sides
  CHECK(tautologies > 100);
  CHECK(falsifiable > 100);
  MESSAGE("valid=" << tautologies << " falsifiable=" << falsifiable
                   << " secs=" << secs.count());
}

TEST_CASE("equality reasoning") {
  SearchBudget budget;
  SUBCASE("substitutivity through congruence") {
    Sequent s;
    s.facts.emplace_back("H1", k_eq(c("x"), c("y")));
    s.facts.emplace_back("H2", p1(c("x")));
    s.goal = p1(c("y"));
    CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  }
  SUBCASE("symmetry and transitivity") {
    Sequent s;
    s.facts.emplace_back("H1", k_eq(c("x"), c("y")));
    s.facts.emplace_back("H2", k_eq(c("z"), c("y")));
    s.goal = k_eq(c("x"), c("z"));
    CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  }
  SUBCASE("congruence under a function symbol") {
    Sequent s;
    s.facts.emplace_back("H", k_eq(c("x"), c("y")));
    s.goal = k_eq(k_app("f", "T", {c("x")}), k_app("f", "T", {c("y")}));
    CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  }
  SUBCASE("distinct constants are not assumed unequal or equal") {
    Sequent s;
    s.goal = k_eq(c("x"), c("y"));
    CHECK(prove(s, budget).kind != ProverOutcome::Kind::Proved);
    s.goal = k_not(k_eq(c("x"), c("y")));
    CHECK(prove(s, budget).kind != ProverOutcome::Kind::Proved);
  }
}

TEST_CASE("quantifier handling") {
  SearchBudget budget;
  SUBCASE("reflexive implication under a universal") {
    Sequent s;
    s.goal = k_forall("x", "T", k_implies(p1(k_var("x", "T")), p1(k_var("x", "T"))));
    CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  }
  SUBCASE("universal fact instantiates to a ground goal") {
    Sequent s;
    s.facts.emplace_back("H", k_forall("x", "T", p1(k_var("x", "T"))));
    s.goal = p1(c("a"));
    CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  }
  SUBCASE("existential goal from a witness") {
    Sequent s;
    s.facts.emplace_back("H", p1(c("a")));
    s.goal = k_exists("x", "T", p1(k_var("x", "T")));
    CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  }
  SUBCASE("an unrelated fact proves nothing") {
    Sequent s;
    s.facts.emplace_back("H", p1(c("a")));
    s.goal = k_atom(k_app("q", "bool", {c("a")}));
    ProverOutcome out = prove(s, budget);
    CHECK(out.kind != ProverOutcome::Kind::Proved);
  }
  SUBCASE("invalid quantified goal stays unproved within budget") {
    // all x, p(x) does not follow from p(a)
    Sequent s;
    s.facts.emplace_back("H", p1(c("a")));
    s.goal = k_forall("x", "T", p1(k_var("x", "T")));
    CHECK(prove(s, budget).kind != ProverOutcome::Kind::Proved);
  }
}

TEST_CASE("monotonicity: adding facts never loses a proof") {
  SearchBudget budget;
  Sequent s;
  s.facts.emplace_back("H1", k_implies(atom(0), atom(1)));
  s.facts.emplace_back("H2", atom(0));
  s.goal = atom(1);
  REQUIRE(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  s.facts.emplace_back("X1", k_or(atom(2), atom(3)));
  s.facts.emplace_back("X2", k_forall("x", "T", p1(k_var("x", "T"))));
  s.facts.emplace_back("X3", k_eq(c("u"), c("v")));
  CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
}

TEST_CASE("determinism: identical queries give identical outcomes") {
  SearchBudget budget;
  std::mt19937 rng(7);
  for (int i = 0; i < 50; i++) {
    Sequent s;
    s.facts.emplace_back("F", random_formula(rng, 4));
    s.goal = random_formula(rng, 4);
    ProverOutcome o1 = prove(s, budget);
    ProverOutcome o2 = prove(s, budget);
    CHECK(o1.kind == o2.kind);
    CHECK(o1.nodes == o2.nodes);
  }
}

TEST_CASE("budget exhaustion is reported, not misreported") {
  // an invalid goal with rich universal facts: must come back NotProved or
  // Budget, never Proved, even with a tiny budget
  SearchBudget tiny;
  tiny.gamma_depth = 1;
  tiny.max_branch_nodes = 50;
  tiny.timeout_ms = 200;
  Sequent s;
  s.facts.emplace_back(
      "H", k_forall("x", "T",
                    k_implies(p1(k_var("x", "T")),
                              p1(k_app("f", "T", {k_var("x", "T")})))));
  s.facts.emplace_back("B", p1(c("a")));
  s.goal = k_atom(k_app("q", "bool"));
  ProverOutcome out = prove(s, tiny);
  CHECK(out.kind != ProverOutcome::Kind::Proved);
}

TEST_CASE("a step sequent from the corpus proofs") {
  // shape of the union left-uniqueness case step: from the two hypotheses
  // and the uniqueness of r1, conclude the heads equal
  SearchBudget budget;
  auto rel = [&](const char* r, const char* x, const char* y) {
    return k_atom(k_app("relation", "bool", {c(r), c(x), c(y)}));
  };
  auto eqA = [&](const char* x, const char* y) {
    return k_atom(k_app("A!equal", "bool", {c(x), c(y)}));
  };
  Sequent s;
  s.facts.emplace_back(
      "Hlu1",
      k_forall("a1", "T",
               k_forall("a2", "T",
                        k_forall("b", "T",
                                 k_implies(k_and(k_atom(k_app("relation", "bool",
                                                              {c("r1"), k_var("a1", "T"),
                                                               k_var("b", "T")})),
                                                 k_atom(k_app("relation", "bool",
                                                              {c("r1"), k_var("a2", "T"),
                                                               k_var("b", "T")}))),
                                           k_atom(k_app("A!equal", "bool",
                                                        {k_var("a1", "T"),
                                                         k_var("a2", "T")})))))));
  s.facts.emplace_back("H31", rel("r1", "a1", "b"));
  s.facts.emplace_back("H32", rel("r1", "a2", "b"));
  s.goal = eqA("a1", "a2");
  CHECK(prove(s, budget).kind == ProverOutcome::Kind::Proved);
  // and without Hlu1 the same goal is open
  Sequent weak;
  weak.facts.assign(s.facts.begin() + 1, s.facts.end());
  weak.goal = s.goal;
  CHECK(prove(weak, budget).kind != ProverOutcome::Kind::Proved);
}

TEST_CASE("oracle guards against oversized truth tables") {
  KFormulaPtr f = k_true();
  for (int i = 0; i < 25; i++)
    f = k_and(f, k_atom(k_app("v" + std::to_string(i), "bool")));
  CHECK_THROWS_AS(propositional_taut(f), FclError);
}
