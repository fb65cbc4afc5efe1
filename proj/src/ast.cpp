#include "fcl/ast.hpp"

namespace fcl {

namespace {

bool equal_pattern(const Pattern& x, const Pattern& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Pattern::Kind::Var: return x.name == y.name;
    case Pattern::Kind::Cons: return x.head == y.head && x.tail == y.tail;
    default: return true;
  }
}

bool equal_just(const Justification& x, const Justification& y) {
  return x.is_conclude == y.is_conclude && x.definitions == y.definitions &&
         x.properties == y.properties && x.hypotheses == y.hypotheses &&
         x.steps == y.steps && x.theorems == y.theorems;
}

bool equal_step(const ProofStep& x, const ProofStep& y) {
  if (x.level != y.level || x.id != y.id || x.is_qed != y.is_qed ||
      x.is_conclude != y.is_conclude)
    return false;
  if (x.assumes.size() != y.assumes.size() || x.hyps.size() != y.hyps.size() ||
      x.subs.size() != y.subs.size())
    return false;
  for (size_t i = 0; i < x.assumes.size(); i++) {
    if (x.assumes[i].names != y.assumes[i].names ||
        !equal_ast(x.assumes[i].type, y.assumes[i].type))
      return false;
  }
  for (size_t i = 0; i < x.hyps.size(); i++) {
    if (x.hyps[i].name != y.hyps[i].name ||
        !equal_ast(x.hyps[i].formula, y.hyps[i].formula))
      return false;
  }
  if (!equal_ast(x.goal, y.goal)) return false;
  if (x.just.has_value() != y.just.has_value()) return false;
  if (x.just && !equal_just(*x.just, *y.just)) return false;
  for (size_t i = 0; i < x.subs.size(); i++)
    if (!equal_step(x.subs[i], y.subs[i])) return false;
  return true;
}

bool equal_method(const MethodDecl& x, const MethodDecl& y) {
  if (x.kind != y.kind || x.name != y.name || x.has_params != y.has_params ||
      x.is_recursive != y.is_recursive || x.is_final != y.is_final ||
      x.termination_var != y.termination_var)
    return false;
  if (!equal_ast(x.type, y.type)) return false;
  if (x.params.size() != y.params.size()) return false;
  for (size_t i = 0; i < x.params.size(); i++) {
    if (x.params[i].first != y.params[i].first ||
        !equal_ast(x.params[i].second, y.params[i].second))
      return false;
  }
  if (!equal_ast(x.body, y.body)) return false;
  if (!equal_ast(x.formula, y.formula)) return false;
  if (x.proof.has_value() != y.proof.has_value()) return false;
  if (x.proof && !equal_ast(*x.proof, *y.proof)) return false;
  return true;
}

bool equal_ref(const SpeciesExprRef& x, const SpeciesExprRef& y) {
  return x.name == y.name && x.args == y.args;
}

}  // namespace

bool equal_ast(const TypeExprPtr& x, const TypeExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind || x->name != y->name) return false;
  if (x->args.size() != y->args.size()) return false;
  for (size_t i = 0; i < x->args.size(); i++)
    if (!equal_ast(x->args[i], y->args[i])) return false;
  return true;
}

bool equal_ast(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind || x->name != y->name || x->method != y->method ||
      x->bval != y->bval || x->ival != y->ival)
    return false;
  if (x->args.size() != y->args.size() ||
      x->branches.size() != y->branches.size())
    return false;
  for (size_t i = 0; i < x->args.size(); i++)
    if (!equal_ast(x->args[i], y->args[i])) return false;
  for (size_t i = 0; i < x->branches.size(); i++) {
    if (!equal_pattern(x->branches[i].pat, y->branches[i].pat) ||
        !equal_ast(x->branches[i].body, y->branches[i].body))
      return false;
  }
  return true;
}

bool equal_ast(const FormulaPtr& x, const FormulaPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind || x->vars != y->vars) return false;
  return equal_ast(x->vtype, y->vtype) && equal_ast(x->a, y->a) &&
         equal_ast(x->b, y->b) && equal_ast(x->ea, y->ea) &&
         equal_ast(x->eb, y->eb);
}

bool equal_ast(const Proof& x, const Proof& y) {
  if (x.is_direct != y.is_direct) return false;
  if (x.is_direct) return equal_just(x.direct, y.direct);
  if (x.steps.size() != y.steps.size()) return false;
  for (size_t i = 0; i < x.steps.size(); i++)
    if (!equal_step(x.steps[i], y.steps[i])) return false;
  return true;
}

bool equal_ast(const SourceUnit& x, const SourceUnit& y) {
  if (x.phrases.size() != y.phrases.size()) return false;
  for (size_t i = 0; i < x.phrases.size(); i++) {
    const Phrase& p = x.phrases[i];
    const Phrase& q = y.phrases[i];
    if (p.kind != q.kind) return false;
    if (p.kind == Phrase::Kind::Collection) {
      if (p.collection.name != q.collection.name ||
          !equal_ref(p.collection.implements, q.collection.implements))
        return false;
      continue;
    }
    const SpeciesDecl& a = p.species;
    const SpeciesDecl& b = q.species;
    if (a.name != b.name || a.params.size() != b.params.size() ||
        a.inherits.size() != b.inherits.size() ||
        a.methods.size() != b.methods.size())
      return false;
    for (size_t j = 0; j < a.params.size(); j++) {
      if (a.params[j].first != b.params[j].first ||
          !equal_ref(a.params[j].second, b.params[j].second))
        return false;
    }
    for (size_t j = 0; j < a.inherits.size(); j++)
      if (!equal_ref(a.inherits[j], b.inherits[j])) return false;
    for (size_t j = 0; j < a.methods.size(); j++)
      if (!equal_method(a.methods[j], b.methods[j])) return false;
  }
  return true;
}

}  // namespace fcl
