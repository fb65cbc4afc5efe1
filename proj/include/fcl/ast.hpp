#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcl/diag.hpp"

namespace fcl {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Types

struct TypeExpr;
using TypeExprPtr = std::shared_ptr<TypeExpr>;

struct TypeExpr {
  enum class Kind { SelfT, Bool, Int, Param, List, Arrow };
  Kind kind = Kind::SelfT;
  Span span;
  std::string name;               // Param: species parameter or collection name
  std::vector<TypeExprPtr> args;  // List: [elem]; Arrow: params..., result
};

TypeExprPtr mk_type(TypeExpr::Kind k, Span sp = {});

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Pattern {
  enum class Kind { Wildcard, Var, Nil, Cons };
  Kind kind = Kind::Wildcard;
  Span span;
  std::string name;        // Var
  std::string head, tail;  // Cons; empty string means wildcard sub-pattern
};

struct MatchBranch {
  Pattern pat;
  ExprPtr body;
};

struct Expr {
  enum class Kind {
    Var,
    BoolLit,
    IntLit,
    App,            // callee name + args; also builtin "+" and "="
    QualifiedCall,  // X!m(args)
    If,             // args = {cond, then, else}
    Match,
    LocalLet,  // args = {bound, body}
    And,       // &&, short-circuit
    Or,        // ||
    Not,
    Nil,
    Cons,  // args = {head, tail}
  };
  Kind kind = Kind::Var;
  Span span;
  std::string name;    // Var / App callee / QualifiedCall target / LocalLet binder
  std::string method;  // QualifiedCall method
  bool bval = false;
  BigInt ival;
  std::vector<ExprPtr> args;
  std::vector<MatchBranch> branches;  // Match; args[0] is the scrutinee
};

ExprPtr mk_expr(Expr::Kind k, Span sp = {});

// ---------------------------------------------------------------------------
// Formulas

struct Formula;
using FormulaPtr = std::shared_ptr<Formula>;

struct Formula {
  enum class Kind { All, Ex, And, Or, Implies, Iff, Not, Atom, Eq };
  Kind kind = Kind::Atom;
  Span span;
  std::vector<std::string> vars;  // All/Ex binder group
  TypeExprPtr vtype;
  FormulaPtr a, b;  // connective operands; Not uses a
  ExprPtr ea, eb;   // Atom: ea; Eq: ea, eb
};

FormulaPtr mk_formula(Formula::Kind k, Span sp = {});

// ---------------------------------------------------------------------------
// Proofs

struct Justification {
  bool is_conclude = false;
  std::vector<std::string> definitions;
  std::vector<std::string> properties;
  std::vector<std::string> hypotheses;
  std::vector<std::string> steps;  // labels like <3>1
  std::vector<std::string> theorems;

  bool empty_by() const {
    return definitions.empty() && properties.empty() && hypotheses.empty() &&
           steps.empty() && theorems.empty();
  }
};

struct Assume {
  std::vector<std::string> names;
  TypeExprPtr type;
  Span span;
};

struct Hypothesis {
  std::string name;
  FormulaPtr formula;
  Span span;
};

struct ProofStep {
  int level = 0;
  std::string id;  // single alphanumeric as written: 1, b, f, ...
  Span span;
  std::vector<Assume> assumes;
  std::vector<Hypothesis> hyps;
  FormulaPtr goal;  // null for qed/conclude steps
  bool is_qed = false;
  bool is_conclude = false;
  std::optional<Justification> just;
  std::vector<ProofStep> subs;

  std::string label() const {
    return "<" + std::to_string(level) + ">" + id;
  }
};

struct Proof {
  bool is_direct = false;       // proof = by ... ;   or   proof = conclude;
  Justification direct;         // valid when is_direct
  std::vector<ProofStep> steps; // valid otherwise
  Span span;
};

// ---------------------------------------------------------------------------
// Species-level declarations

struct MethodDecl {
  enum class Kind {
    Signature,
    Representation,
    LetDef,
    LogicalLet,
    Property,
    Theorem,
    ProofOf,
  };
  Kind kind = Kind::Signature;
  Span span;
  std::string name;
  TypeExprPtr type;  // Signature / Representation / LetDef return annotation
  std::vector<std::pair<std::string, TypeExprPtr>> params;  // annotation may be null
  bool has_params = false;  // distinguishes `let empty = []` from `let f() = ..`
  ExprPtr body;             // LetDef
  FormulaPtr formula;       // LogicalLet / Property / Theorem
  bool is_recursive = false;
  bool is_final = false;
  std::optional<std::string> termination_var;  // structural <param>
  std::optional<Proof> proof;  // Theorem / ProofOf
};

struct SpeciesExprRef {
  std::string name;
  std::vector<std::string> args;  // parameter or collection names
  Span span;
};

struct SpeciesDecl {
  std::string name;
  Span span;
  std::vector<std::pair<std::string, SpeciesExprRef>> params;  // name is iface
  std::vector<SpeciesExprRef> inherits;
  std::vector<MethodDecl> methods;
};

struct CollectionDecl {
  std::string name;
  Span span;
  SpeciesExprRef implements;
};

struct Phrase {
  enum class Kind { Species, Collection };
  Kind kind = Kind::Species;
  SpeciesDecl species;
  CollectionDecl collection;

  const std::string& name() const {
    return kind == Kind::Species ? species.name : collection.name;
  }
  Span span() const {
    return kind == Kind::Species ? species.span : collection.span;
  }
};

struct SourceUnit {
  std::string file;
  std::vector<Phrase> phrases;
};

// Structural equality over ASTs, used by the round-trip tests. Binder and
// parameter names are compared verbatim (printing preserves names, so
// structural equality implies alpha-equality).
bool equal_ast(const TypeExprPtr& x, const TypeExprPtr& y);
bool equal_ast(const ExprPtr& x, const ExprPtr& y);
bool equal_ast(const FormulaPtr& x, const FormulaPtr& y);
bool equal_ast(const Proof& x, const Proof& y);
bool equal_ast(const SourceUnit& x, const SourceUnit& y);

}  // namespace fcl
