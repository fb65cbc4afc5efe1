#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fcl/species.hpp"

namespace fcl {

// Kernel terms: variables and applications. Constants are 0-ary
// applications; assumed names from proofs enter as constants, so a term
// without Var nodes is ground. Sorts are rendered type names.
struct KTerm;
using KTermPtr = std::shared_ptr<const KTerm>;

struct KTerm {
  enum class Kind { Var, App };
  Kind kind = Kind::App;
  std::string name;  // variable name or function symbol ("::", "[]", "+", "A!equal", ...)
  std::string sort;  // result sort
  std::vector<KTermPtr> args;
};

KTermPtr k_var(std::string name, std::string sort);
KTermPtr k_app(std::string name, std::string sort, std::vector<KTermPtr> args = {});

struct KFormula;
using KFormulaPtr = std::shared_ptr<const KFormula>;

struct KFormula {
  enum class Kind { True, False, Atom, Eq, Not, And, Or, Implies, Iff, Forall, Exists };
  Kind kind = Kind::True;
  KTermPtr t;        // Atom
  KTermPtr ta, tb;   // Eq
  KFormulaPtr a, b;  // connectives; Not uses a; quantifier body in a
  std::string var, vsort;
};

KFormulaPtr k_true();
KFormulaPtr k_false();
KFormulaPtr k_atom(KTermPtr t);
KFormulaPtr k_eq(KTermPtr a, KTermPtr b);
KFormulaPtr k_not(KFormulaPtr a);
KFormulaPtr k_and(KFormulaPtr a, KFormulaPtr b);
KFormulaPtr k_or(KFormulaPtr a, KFormulaPtr b);
KFormulaPtr k_implies(KFormulaPtr a, KFormulaPtr b);
KFormulaPtr k_iff(KFormulaPtr a, KFormulaPtr b);
KFormulaPtr k_forall(std::string v, std::string sort, KFormulaPtr body);
KFormulaPtr k_exists(std::string v, std::string sort, KFormulaPtr body);

std::string print_kterm(const KTermPtr& t);
std::string print_kformula(const KFormulaPtr& f);

bool kterm_equal(const KTermPtr& a, const KTermPtr& b);

// Capture-avoiding substitution of free occurrences of `var`.
KTermPtr substitute(const KTermPtr& t, const std::string& var, const KTermPtr& repl);
KFormulaPtr substitute(const KFormulaPtr& f, const std::string& var, const KTermPtr& repl);

bool alpha_eq(const KFormulaPtr& a, const KFormulaPtr& b);

void free_vars(const KTermPtr& t, std::map<std::string, std::string>& out);
void free_vars(const KFormulaPtr& f, std::map<std::string, std::string>& out);

// ---------------------------------------------------------------------------
// Translation from the typed surface AST.

// Maps names to sorts for bound/assumed variables; `as_constants` renders
// those names as 0-ary applications (proof assumptions) instead of Vars.
struct KernelCtx {
  const FlatSpecies* flat = nullptr;
  const Env* env = nullptr;
  std::map<std::string, std::string> vars;  // name -> sort (Var)
  std::map<std::string, std::string> consts;  // name -> sort (assumed constants)
};

// Translate an elaborated expression of non-bool use into a term, or a
// formula when boolean structure (connectives, =, if) should become logic.
KTermPtr expr_to_kterm(const ExprPtr& e, const KernelCtx& ctx);
KFormulaPtr expr_to_kformula(const ExprPtr& e, const KernelCtx& ctx);
KFormulaPtr formula_to_kernel(const FormulaPtr& f, KernelCtx ctx);

std::string sort_of(const TypePtr& t);

// Definitional axioms of a defined method: an iff axiom for logical lets and
// boolean functions (one per match branch), per-branch equations otherwise,
// with `if` lifted to two guarded equations. Throws E-UNKNOWN-CITATION when
// `name` is not a defined function/logical definition.
std::vector<KFormulaPtr> unfold_definition(const std::string& name,
                                           const FlatSpecies& flat, const Env& env);

// Statement of `X!m` for species parameter X: the interface statement with
// Self mapped to X's sort and methods qualified by X. Throws
// E-UNKNOWN-CITATION if absent.
KFormulaPtr import_param_statement(const std::string& param, const std::string& method,
                                   const FlatSpecies& flat, const Env& env);

// Induction over list goals.
struct InductionScheme {
  KFormulaPtr base;          // P([])
  std::string head, tail;    // fresh h : T, t : list(T)
  KFormulaPtr hyp;           // P(t)
  KFormulaPtr step_goal;     // P(h::t)
  std::string elem_sort;
};

// Requires goal = all l : list(T), P(l); throws E-CASE-MISMATCH otherwise.
InductionScheme induction_scheme(const KFormulaPtr& goal);

}  // namespace fcl
