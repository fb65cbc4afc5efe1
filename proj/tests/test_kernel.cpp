#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fcl/kernel.hpp"
#include "test_util.hpp"

using namespace fcl;

namespace {

KTermPtr x() { return k_var("x", "T"); }
KTermPtr y() { return k_var("y", "T"); }
KFormulaPtr p(KTermPtr t) { return k_atom(k_app("p", "bool", {std::move(t)})); }
KFormulaPtr q(KTermPtr t) { return k_atom(k_app("q", "bool", {std::move(t)})); }

}  // namespace

TEST_CASE("term substitution replaces free occurrences only") {
  KTermPtr t = k_app("f", "T", {x(), k_var("z", "T")});
  KTermPtr r = substitute(t, "x", k_app("g", "T", {y()}));
  CHECK(print_kterm(r) == "f(g(y), z)");
  // substituting a name that does not occur is the identity
  CHECK(kterm_equal(substitute(t, "w", y()), t));
}

TEST_CASE("formula substitution respects binders") {
  SUBCASE("a shadowing binder protects its body") {
    KFormulaPtr f = k_and(p(x()), k_forall("x", "T", q(x())));
    KFormulaPtr r = substitute(f, "x", k_app("c", "T"));
    CHECK(print_kformula(r) == "(p(c) /\\ (all x : T, q(x)))");
  }
  SUBCASE("capture is avoided by renaming the binder") {
    // [y/x] (all y, p(x, y)) must NOT produce all y, p(y, y)
    KFormulaPtr f =
        k_forall("y", "T", k_atom(k_app("p", "bool", {x(), y()})));
    KFormulaPtr r = substitute(f, "x", y());
    KFormulaPtr captured =
        k_forall("y", "T", k_atom(k_app("p", "bool", {y(), y()})));
    KFormulaPtr wanted =
        k_forall("w", "T", k_atom(k_app("p", "bool", {y(), k_var("w", "T")})));
    CHECK_FALSE(alpha_eq(r, captured));
    CHECK(alpha_eq(r, wanted));
  }
}

TEST_CASE("alpha equivalence") {
  KFormulaPtr f1 = k_forall("x", "T", p(x()));
  KFormulaPtr f2 = k_forall("y", "T", p(y()));
  KFormulaPtr f3 = k_forall("y", "T", q(y()));
  CHECK(alpha_eq(f1, f1));
  CHECK(alpha_eq(f1, f2));
  CHECK(alpha_eq(f2, f1));
  CHECK_FALSE(alpha_eq(f1, f3));
  // nested binder swap: all x, all y, p(x,y)  vs  all y, all x, p(y,x)
  KFormulaPtr n1 = k_forall(
      "x", "T", k_forall("y", "T", k_atom(k_app("p", "bool", {x(), y()}))));
  KFormulaPtr n2 = k_forall(
      "y", "T", k_forall("x", "T", k_atom(k_app("p", "bool", {y(), x()}))));
  KFormulaPtr n3 = k_forall(
      "y", "T", k_forall("x", "T", k_atom(k_app("p", "bool", {x(), y()}))));
  CHECK(alpha_eq(n1, n2));
  CHECK_FALSE(alpha_eq(n1, n3));
  // free variables must match by name
  CHECK_FALSE(alpha_eq(p(x()), p(y())));
}

TEST_CASE("free variables") {
  KFormulaPtr f =
      k_forall("x", "T", k_atom(k_app("p", "bool", {x(), y()})));
  std::map<std::string, std::string> fv;
  free_vars(f, fv);
  REQUIRE(fv.size() == 1);
  CHECK(fv.count("y") == 1);
  CHECK(fv["y"] == "T");
}

TEST_CASE("definitional axioms from the corpus") {
  testutil::Pipeline pl;
  pl.add_corpus();
  const FlatSpecies& fp = pl.env.species.at("Finite_parts_by_lists");

  SUBCASE("a constant unfolds to one equation") {
    auto ax = unfold_definition("empty", fp, pl.env);
    REQUIRE(ax.size() == 1);
    CHECK(print_kformula(ax[0]) == "(empty = [])");
  }

  SUBCASE("a boolean recursion unfolds to one iff per match branch") {
    auto ax = unfold_definition("belongs", fp, pl.env);
    REQUIRE(ax.size() == 2);
    // nil branch: all x, belongs(x, []) <-> false
    std::string nil = print_kformula(ax[0]);
    CHECK(nil.find("belongs") != std::string::npos);
    CHECK(nil.find("[]") != std::string::npos);
    CHECK(nil.find("<-> false") != std::string::npos);
    // cons branch: the equality test on the head, or recursion on the tail
    std::string cons = print_kformula(ax[1]);
    CHECK(cons.find("S!equal") != std::string::npos);
    CHECK(cons.find("\\/") != std::string::npos);
    CHECK(cons.find("<->") != std::string::npos);
    // axioms are closed formulas
    std::map<std::string, std::string> fv;
    for (const auto& a : ax) free_vars(a, fv);
    CHECK(fv.empty());
  }

  SUBCASE("a conditional body becomes two guarded equations") {
    auto ax = unfold_definition("release", fp, pl.env);
    REQUIRE(ax.size() >= 2);
    bool guarded = false;
    for (const auto& a : ax)
      if (print_kformula(a).find("->") != std::string::npos) guarded = true;
    CHECK(guarded);
  }

  SUBCASE("a logical definition unfolds to a single iff") {
    const FlatSpecies& br = pl.env.species.at("Binary_relations");
    auto ax = unfold_definition("is_left_unique", br, pl.env);
    REQUIRE(ax.size() == 1);
    KFormulaPtr f = ax[0];
    while (f->kind == KFormula::Kind::Forall) f = f->a;
    CHECK(f->kind == KFormula::Kind::Iff);
  }

  SUBCASE("only defined functions unfold") {
    // a statement is not a definition
    CHECK_THROWS_AS(unfold_definition("empty_spec", fp, pl.env), FclError);
    // a bare signature has no body to unfold
    const FlatSpecies& abstract_fp = pl.env.species.at("Finite_parts");
    CHECK_THROWS_WITH_AS(unfold_definition("belongs", abstract_fp, pl.env),
                         doctest::Contains("belongs"), FclError);
    CHECK_THROWS_AS(unfold_definition("no_such", fp, pl.env), FclError);
  }
}

TEST_CASE("parameter statements import with Self mapped to the parameter") {
  testutil::Pipeline pl;
  pl.add_corpus();
  const FlatSpecies& fp = pl.env.species.at("Finite_parts_by_lists");
  KFormulaPtr f = import_param_statement("S", "equal_symmetric", fp, pl.env);
  std::string s = print_kformula(f);
  CHECK(s.find("S!equal") != std::string::npos);
  CHECK(s.find(": S") != std::string::npos);
  CHECK_THROWS_AS(import_param_statement("S", "no_such", fp, pl.env), FclError);
}

TEST_CASE("list induction scheme") {
  std::string lsort = "list(int)";
  KTermPtr l = k_var("l", lsort);
  KFormulaPtr goal = k_forall("l", lsort, k_eq(l, l));
  InductionScheme s = induction_scheme(goal);

  CHECK(s.elem_sort == "int");
  CHECK(print_kformula(s.base) == "([] = [])");
  // fresh, distinct case variables
  CHECK_FALSE(s.head.empty());
  CHECK_FALSE(s.tail.empty());
  CHECK(s.head != s.tail);
  // hypothesis is P(t), step goal is P(h::t)
  CHECK(print_kformula(s.hyp) == "(" + s.tail + " = " + s.tail + ")");
  std::string cons = "::(" + s.head + ", " + s.tail + ")";
  CHECK(print_kformula(s.step_goal) == "(" + cons + " = " + cons + ")");

  SUBCASE("non-list goals have no scheme") {
    KFormulaPtr bad = k_forall("x", "int", k_eq(k_var("x", "int"), k_var("x", "int")));
    try {
      induction_scheme(bad);
      FAIL("expected E-CASE-MISMATCH");
    } catch (const FclError& e) {
      CHECK(e.diag.code == "E-CASE-MISMATCH");
    }
  }
}

TEST_CASE("induction scheme of a corpus goal") {
  // inner goal of the release theorem:
  //   all l, belongs(e1, release(l, e2)) <-> (~ S!equal(e1, e2) /\ belongs(e1, l))
  testutil::Pipeline pl;
  pl.add_corpus();
  const FlatSpecies& fp = pl.env.species.at("Finite_parts_by_lists");
  KernelCtx ctx{&fp, &pl.env, {}, {{"e1", "S"}, {"e2", "S"}}};
  FormulaPtr goal = parse_formula_text(
      "all l : Self, belongs(e1, release(l, e2)) <->"
      " (not (S!equal(e1, e2)) /\\ belongs(e1, l))");
  KFormulaPtr kg = formula_to_kernel(goal, ctx);
  InductionScheme s = induction_scheme(kg);
  CHECK(s.elem_sort == "S");
  CHECK(print_kformula(s.base).find("[]") != std::string::npos);
  CHECK(alpha_eq(s.hyp, substitute(kg->a, kg->var, k_var(s.tail, "list(S)"))));
  // the scheme's case variables do not collide with the goal's free names
  CHECK(s.head != "e1");
  CHECK(s.head != "e2");
}
