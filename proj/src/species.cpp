#include "fcl/species.hpp"

#include <algorithm>

namespace fcl {

MethodEntry* FlatSpecies::find(const std::string& n) {
  for (auto& m : methods)
    if (m.name == n) return &m;
  return nullptr;
}

const MethodEntry* FlatSpecies::find(const std::string& n) const {
  for (const auto& m : methods)
    if (m.name == n) return &m;
  return nullptr;
}

bool FlatSpecies::is_param(const std::string& n) const {
  for (const auto& p : params)
    if (p.first == n) return true;
  return false;
}

std::string FlatSpecies::param_interface(const std::string& n) const {
  for (const auto& p : params)
    if (p.first == n) return p.second;
  return {};
}

const FlatSpecies* Env::find_species(const std::string& n) const {
  auto it = species.find(n);
  return it == species.end() ? nullptr : &it->second;
}

const CollectionInfo* Env::find_collection(const std::string& n) const {
  auto it = collections.find(n);
  return it == collections.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Parameter renaming (simultaneous). Parameters only occur as type names and
// as the target of qualified calls/citations, never as value variables.

namespace {

using Renaming = std::map<std::string, std::string>;

std::string ren(const Renaming& r, const std::string& n) {
  auto it = r.find(n);
  return it == r.end() ? n : it->second;
}

std::string ren_citation(const Renaming& r, const std::string& n) {
  auto bang = n.find('!');
  if (bang == std::string::npos) return n;
  return ren(r, n.substr(0, bang)) + n.substr(bang);
}

TypePtr ren_sem_type(const Renaming& r, const TypePtr& t) {
  if (!t) return t;
  auto c = std::make_shared<Type>(*t);
  if (c->kind == Type::Kind::Param) c->name = ren(r, c->name);
  for (auto& a : c->args) a = ren_sem_type(r, a);
  return c;
}

TypeExprPtr ren_type(const Renaming& r, const TypeExprPtr& t) {
  if (!t) return t;
  auto c = std::make_shared<TypeExpr>(*t);
  if (c->kind == TypeExpr::Kind::Param) c->name = ren(r, c->name);
  for (auto& a : c->args) a = ren_type(r, a);
  return c;
}

ExprPtr ren_expr(const Renaming& r, const ExprPtr& e) {
  if (!e) return e;
  auto c = std::make_shared<Expr>(*e);
  if (c->kind == Expr::Kind::QualifiedCall) c->name = ren(r, c->name);
  for (auto& a : c->args) a = ren_expr(r, a);
  for (auto& br : c->branches) br.body = ren_expr(r, br.body);
  return c;
}

FormulaPtr ren_formula(const Renaming& r, const FormulaPtr& f) {
  if (!f) return f;
  auto c = std::make_shared<Formula>(*f);
  c->vtype = ren_type(r, c->vtype);
  c->a = ren_formula(r, c->a);
  c->b = ren_formula(r, c->b);
  c->ea = ren_expr(r, c->ea);
  c->eb = ren_expr(r, c->eb);
  return c;
}

void ren_just(const Renaming& r, Justification& j) {
  for (auto& n : j.definitions) n = ren_citation(r, n);
  for (auto& n : j.properties) n = ren_citation(r, n);
  for (auto& n : j.theorems) n = ren_citation(r, n);
}

void ren_step(const Renaming& r, ProofStep& st) {
  for (auto& a : st.assumes) a.type = ren_type(r, a.type);
  for (auto& h : st.hyps) h.formula = ren_formula(r, h.formula);
  st.goal = ren_formula(r, st.goal);
  if (st.just) ren_just(r, *st.just);
  for (auto& sub : st.subs) ren_step(r, sub);
}

void ren_proof(const Renaming& r, Proof& p) {
  if (p.is_direct) {
    ren_just(r, p.direct);
  } else {
    for (auto& st : p.steps) ren_step(r, st);
  }
}

MethodEntry ren_entry(const Renaming& r, MethodEntry m) {
  m.type = ren_sem_type(r, m.type);
  for (auto& p : m.params) p.second = ren_sem_type(r, p.second);
  for (auto& p : m.surface_params) p.second = ren_type(r, p.second);
  m.surface_type = ren_type(r, m.surface_type);
  m.body = ren_expr(r, m.body);
  m.formula = ren_formula(r, m.formula);
  if (m.proof) ren_proof(r, *m.proof);
  std::set<std::string> dd, cd;
  for (const auto& n : m.def_deps) dd.insert(ren_citation(r, n));
  for (const auto& n : m.decl_deps) cd.insert(ren_citation(r, n));
  m.def_deps = std::move(dd);
  m.decl_deps = std::move(cd);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dependency analysis

namespace {

void scan_just(const Justification& j, std::set<std::string>& def_deps,
               std::set<std::string>& decl_deps) {
  for (const auto& n : j.definitions) def_deps.insert(n);
  for (const auto& n : j.properties) decl_deps.insert(n);
  for (const auto& n : j.theorems) decl_deps.insert(n);
}

void scan_step(const ProofStep& st, std::set<std::string>& def_deps,
               std::set<std::string>& decl_deps) {
  if (st.just) scan_just(*st.just, def_deps, decl_deps);
  for (const auto& sub : st.subs) scan_step(sub, def_deps, decl_deps);
}

}  // namespace

void analyze_dependencies(const Proof& proof, std::set<std::string>& def_deps,
                          std::set<std::string>& decl_deps) {
  if (proof.is_direct) {
    scan_just(proof.direct, def_deps, decl_deps);
  } else {
    for (const auto& st : proof.steps) scan_step(st, def_deps, decl_deps);
  }
}

// ---------------------------------------------------------------------------
// Flattening

namespace {

bool same_surface_type(const TypeExprPtr& a, const TypeExprPtr& b) {
  return equal_ast(a, b);
}

// Erases proofs that def-depend on `name` after its redefinition.
void erase_dependents(FlatSpecies& flat, const std::string& name) {
  for (auto& m : flat.methods) {
    if (m.kind == MethodEntry::Kind::Statement && m.proved &&
        m.def_deps.count(name)) {
      m.proved = false;
      m.defined = false;
      m.erased = true;
      m.proof.reset();
      m.proof_origin.clear();
      m.def_deps.clear();
      m.decl_deps.clear();
    }
  }
}

// Merges one incoming entry (from a parent copy or the species body).
void merge_entry(FlatSpecies& flat, MethodEntry incoming) {
  MethodEntry* old = flat.find(incoming.name);
  if (!old) {
    flat.methods.push_back(std::move(incoming));
    return;
  }
  if (old->kind != incoming.kind)
    fail("E-TYPECLASH", incoming.span,
         "method '" + incoming.name + "' clashes with an inherited method of a different kind");
  if (old->origin == incoming.origin && old->proof_origin == incoming.proof_origin)
    return;  // same entry reaching us along two inheritance paths

  if (incoming.kind == MethodEntry::Kind::Statement) {
    if (incoming.formula && old->formula &&
        !equal_ast(incoming.formula, old->formula))
      fail("E-TYPECLASH", incoming.span,
           "statement '" + incoming.name + "' restated with a different formula");
    if (incoming.proof) {
      if (old->proved && !old->erased)
        fail("E-PROOF-OF", incoming.span,
             "statement '" + incoming.name + "' is already proved and was not redefined away");
      old->proof = incoming.proof;
      old->proof_origin = incoming.proof_origin;
      old->def_deps = incoming.def_deps;
      old->decl_deps = incoming.decl_deps;
      old->proved = incoming.proved;
      old->defined = incoming.proved;
      old->erased = false;
    } else if (incoming.proved) {
      // parent carries the proof; rightmost parent wins
      *old = std::move(incoming);
    }
    return;
  }

  // Function / LogicalDef. Whole declared types are only comparable when
  // both sides state one (a definition with a parameter list carries just a
  // return annotation; the inference pass reconciles it with a kept
  // signature and reports mismatches there).
  if (incoming.surface_type && old->surface_type &&
      incoming.has_params == old->has_params &&
      !same_surface_type(incoming.surface_type, old->surface_type))
    fail("E-TYPECLASH", incoming.span,
         "redeclaration of '" + incoming.name + "' changes its type");
  bool incoming_defines = incoming.defined;
  if (!incoming_defines) {
    // a plain signature over an existing entry adds nothing new
    return;
  }
  bool redefinition = old->defined;
  if (redefinition && old->is_final)
    fail("E-FINAL", incoming.span,
         "method '" + incoming.name + "' is final and cannot be redefined");
  TypeExprPtr sig = old->surface_type ? old->surface_type : incoming.surface_type;
  std::string name = incoming.name;
  *old = std::move(incoming);
  old->surface_type = sig;
  if (redefinition) erase_dependents(flat, name);
}

MethodEntry entry_of_decl(const MethodDecl& m, const std::string& origin) {
  MethodEntry e;
  e.name = m.name;
  e.span = m.span;
  e.origin = origin;
  switch (m.kind) {
    case MethodDecl::Kind::Signature:
      e.kind = MethodEntry::Kind::Function;
      e.surface_type = m.type;
      break;
    case MethodDecl::Kind::LetDef:
      e.kind = MethodEntry::Kind::Function;
      e.surface_type = m.type;
      e.surface_params = m.params;
      e.has_params = m.has_params;
      e.body = m.body;
      e.defined = true;
      e.is_final = m.is_final;
      e.is_recursive = m.is_recursive;
      e.termination_var = m.termination_var;
      break;
    case MethodDecl::Kind::LogicalLet:
      e.kind = MethodEntry::Kind::LogicalDef;
      e.surface_params = m.params;
      e.has_params = m.has_params;
      e.formula = m.formula;
      e.defined = true;
      e.is_final = m.is_final;
      break;
    case MethodDecl::Kind::Property:
      e.kind = MethodEntry::Kind::Statement;
      e.formula = m.formula;
      break;
    case MethodDecl::Kind::Theorem:
      e.kind = MethodEntry::Kind::Statement;
      e.formula = m.formula;
      e.proof = m.proof;
      e.proof_origin = origin;
      analyze_dependencies(*m.proof, e.def_deps, e.decl_deps);
      break;
    default:
      fail("E-PARSE", m.span, "unexpected method kind");
  }
  return e;
}

void check_arg_interface(const std::string& arg, const std::string& required,
                         const FlatSpecies& child, const Env& env, Span sp) {
  const FlatSpecies* req = env.find_species(required);
  if (!req)
    fail("E-UNKNOWN-SPECIES", sp, "unknown interface species '" + required + "'");
  const FlatSpecies* got = nullptr;
  if (child.is_param(arg)) {
    got = env.find_species(child.param_interface(arg));
  } else if (const CollectionInfo* c = env.find_collection(arg)) {
    got = &c->flat;
  }
  if (!got)
    fail("E-UNKNOWN-SPECIES", sp,
         "argument '" + arg + "' is neither a species parameter nor a collection");
  for (const auto& m : req->methods) {
    const MethodEntry* have = got->find(m.name);
    if (!have || have->kind != m.kind)
      fail("E-INTERFACE", sp,
           "argument '" + arg + "' lacks method '" + m.name + "' required by '" +
               required + "'");
    if (m.type && have->type && !type_equal(m.type, have->type))
      fail("E-INTERFACE", sp,
           "argument '" + arg + "' gives method '" + m.name + "' the type " +
               type_name(have->type) + " but '" + required + "' requires " +
               type_name(m.type));
  }
}

}  // namespace

FlatSpecies flatten(const SpeciesDecl& decl, const Env& env) {
  FlatSpecies flat;
  flat.name = decl.name;
  flat.span = decl.span;
  for (const auto& p : decl.params) {
    if (!p.second.args.empty())
      fail("E-UNSUPPORTED", p.second.span,
           "parameterized interface species are not supported");
    if (env.find_collection(p.second.name))
      fail("E-INTERFACE", p.second.span,
           "'" + p.second.name + "' is a collection, not an interface species");
    if (!env.find_species(p.second.name))
      fail("E-UNKNOWN-SPECIES", p.second.span,
           "unknown interface species '" + p.second.name + "'");
    if (flat.is_param(p.first))
      fail("E-PARSE", p.second.span, "duplicate parameter '" + p.first + "'");
    flat.params.emplace_back(p.first, p.second.name);
  }

  for (const auto& parent_ref : decl.inherits) {
    if (env.find_collection(parent_ref.name))
      fail("E-INHERIT-COLLECTION", parent_ref.span,
           "cannot inherit from collection '" + parent_ref.name + "'");
    const FlatSpecies* parent = env.find_species(parent_ref.name);
    if (!parent)
      fail("E-UNKNOWN-SPECIES", parent_ref.span,
           "unknown species '" + parent_ref.name + "'");
    if (parent->params.size() != parent_ref.args.size())
      fail("E-ARITY", parent_ref.span,
           "'" + parent_ref.name + "' expects " +
               std::to_string(parent->params.size()) + " argument(s), got " +
               std::to_string(parent_ref.args.size()));
    Renaming renaming;
    for (size_t i = 0; i < parent_ref.args.size(); i++) {
      const std::string& arg = parent_ref.args[i];
      check_arg_interface(arg, parent->params[i].second, flat, env, parent_ref.span);
      renaming[parent->params[i].first] = arg;
    }
    if (parent->carrier) {
      TypePtr c = parent->carrier;
      for (const auto& [from, to] : renaming) c = rename_param(c, from, to);
      if (flat.carrier && !type_equal(flat.carrier, c))
        fail("E-CARRIER", parent_ref.span,
             "conflicting carrier definitions inherited for '" + decl.name + "'");
      flat.carrier = c;
      flat.carrier_origin = parent->carrier_origin;
    }
    for (const auto& m : parent->methods) merge_entry(flat, ren_entry(renaming, m));
  }

  for (const auto& m : decl.methods) {
    if (m.kind == MethodDecl::Kind::Representation) {
      TypePtr c = resolve_type(m.type, [&] {
        std::vector<std::string> ps;
        for (const auto& p : flat.params) ps.push_back(p.first);
        return ps;
      }());
      if (flat.carrier && !type_equal(flat.carrier, c))
        fail("E-CARRIER", m.span,
             "carrier of '" + decl.name + "' is already defined as " +
                 type_name(flat.carrier));
      flat.carrier = c;
      flat.carrier_origin = decl.name;
      continue;
    }
    if (m.kind == MethodDecl::Kind::ProofOf) {
      MethodEntry* target = flat.find(m.name);
      if (!target || target->kind != MethodEntry::Kind::Statement)
        fail("E-PROOF-OF", m.span,
             "'proof of' names no inherited statement '" + m.name + "'");
      if (target->proved && !target->erased)
        fail("E-PROOF-OF", m.span,
             "statement '" + m.name + "' is already proved and was not redefined away");
      target->proof = m.proof;
      target->proof_origin = decl.name;
      target->proved = false;
      target->erased = false;
      target->def_deps.clear();
      target->decl_deps.clear();
      analyze_dependencies(*m.proof, target->def_deps, target->decl_deps);
      continue;
    }
    merge_entry(flat, entry_of_decl(m, decl.name));
  }
  return flat;
}

// ---------------------------------------------------------------------------
// Structural termination

namespace {

// `tracked` = the termination parameter and anything bound as a sub-pattern
// of it (matching those yields further sub-patterns); `smaller` = the strict
// sub-patterns, the only names valid at the recursive position.
void walk_termination(const ExprPtr& e, const std::string& fname, size_t pos,
                      const std::set<std::string>& tracked,
                      const std::set<std::string>& smaller) {
  if (!e) return;
  if (e->kind == Expr::Kind::Match) {
    const ExprPtr& scrut = e->args[0];
    bool on_tracked = scrut->kind == Expr::Kind::Var && tracked.count(scrut->name);
    walk_termination(scrut, fname, pos, tracked, smaller);
    for (const auto& br : e->branches) {
      std::set<std::string> t = tracked, s = smaller;
      if (on_tracked && br.pat.kind == Pattern::Kind::Cons && !br.pat.tail.empty()) {
        t.insert(br.pat.tail);
        s.insert(br.pat.tail);
      }
      walk_termination(br.body, fname, pos, t, s);
    }
    return;
  }
  if (e->kind == Expr::Kind::App && e->name == fname) {
    const ExprPtr& arg = pos < e->args.size() ? e->args[pos] : nullptr;
    if (!(arg && arg->kind == Expr::Kind::Var && smaller.count(arg->name)))
      fail("E-NONSTRUCTURAL", e->span,
           "recursive call to '" + fname +
               "' does not descend on a strict sub-pattern of its termination parameter");
  }
  for (const auto& a : e->args) walk_termination(a, fname, pos, tracked, smaller);
  for (const auto& br : e->branches)
    walk_termination(br.body, fname, pos, tracked, smaller);
}

}  // namespace

void check_termination(const FlatSpecies& flat) {
  for (const auto& m : flat.methods) {
    if (m.kind != MethodEntry::Kind::Function || !m.is_recursive || !m.body)
      continue;
    const std::string& tv = *m.termination_var;
    size_t pos = m.surface_params.size();
    for (size_t i = 0; i < m.surface_params.size(); i++)
      if (m.surface_params[i].first == tv) pos = i;
    if (pos == m.surface_params.size())
      fail("E-NONSTRUCTURAL", m.span,
           "termination parameter '" + tv + "' is not a parameter of '" + m.name + "'");
    walk_termination(m.body, m.name, pos, {tv}, {});
  }
}

// ---------------------------------------------------------------------------
// Collections and interfaces

CollectionInfo make_collection(const CollectionDecl& decl, const Env& env) {
  if (env.find_collection(decl.implements.name))
    fail("E-UNKNOWN-SPECIES", decl.span,
         "'" + decl.implements.name + "' is a collection; collections implement species");
  const FlatSpecies* sp = env.find_species(decl.implements.name);
  if (!sp)
    fail("E-UNKNOWN-SPECIES", decl.span,
         "unknown species '" + decl.implements.name + "'");
  if (sp->params.size() != decl.implements.args.size())
    fail("E-ARITY", decl.span,
         "'" + decl.implements.name + "' expects " +
             std::to_string(sp->params.size()) + " argument(s), got " +
             std::to_string(decl.implements.args.size()));

  CollectionInfo coll;
  coll.name = decl.name;
  coll.span = decl.span;
  coll.species = decl.implements.name;
  Renaming renaming;
  for (size_t i = 0; i < decl.implements.args.size(); i++) {
    const std::string& arg = decl.implements.args[i];
    const CollectionInfo* argc = env.find_collection(arg);
    if (!argc)
      fail("E-UNKNOWN-SPECIES", decl.span,
           "collection argument '" + arg + "' is not a known collection");
    const FlatSpecies* req = env.find_species(sp->params[i].second);
    for (const auto& m : req->methods) {
      const MethodEntry* have = argc->flat.find(m.name);
      // statements of a formed collection are always proved; only the
      // presence, kind, and function types need checking here
      if (!have || have->kind != m.kind ||
          (m.kind != MethodEntry::Kind::Statement && !have->defined))
        fail("E-INTERFACE", decl.span,
             "collection '" + arg + "' lacks method '" + m.name +
                 "' required by interface '" + sp->params[i].second + "'");
      // inside the formed collection, Self is its carrier
      TypePtr want = unfold_self(m.type, argc->flat.carrier);
      TypePtr give = unfold_self(have->type, argc->flat.carrier);
      if (want && give && !type_equal(want, give))
        fail("E-INTERFACE", decl.span,
             "collection '" + arg + "' gives '" + m.name + "' type " +
                 type_name(have->type) + " but interface '" + sp->params[i].second +
                 "' requires " + type_name(m.type));
    }
    coll.bindings.emplace_back(sp->params[i].first, arg);
    renaming[sp->params[i].first] = arg;
  }

  std::vector<std::string> missing;
  for (const auto& m : sp->methods) {
    if (m.kind == MethodEntry::Kind::Statement) {
      if (!m.proved) missing.push_back(m.name);
    } else if (!m.defined) {
      missing.push_back(m.name);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& n : missing) list += (list.empty() ? "" : ", ") + n;
    fail("E-INCOMPLETE", decl.span,
         "species '" + sp->name + "' is incomplete; undefined or unproved: " + list);
  }
  if (!sp->carrier)
    fail("E-CARRIER", decl.span,
         "species '" + sp->name + "' has no representation; its carrier is undefined");

  coll.flat = *sp;
  coll.flat.name = decl.name;
  if (!renaming.empty()) {
    std::vector<MethodEntry> renamed;
    renamed.reserve(coll.flat.methods.size());
    for (const auto& m : coll.flat.methods) renamed.push_back(ren_entry(renaming, m));
    coll.flat.methods = std::move(renamed);
    for (const auto& [from, to] : renaming)
      coll.flat.carrier = rename_param(coll.flat.carrier, from, to);
  }
  coll.flat.params.clear();
  return coll;
}

std::vector<InterfaceEntry> interface_of(const FlatSpecies& flat) {
  std::vector<InterfaceEntry> out;
  for (const auto& m : flat.methods) {
    InterfaceEntry e;
    e.name = m.name;
    e.kind = m.kind;
    if (m.kind == MethodEntry::Kind::Function)
      e.type = m.type;
    else
      e.formula = m.formula;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> dependency_edges(const FlatSpecies& flat) {
  std::set<std::string> edges;
  for (const auto& m : flat.methods) {
    if (m.kind != MethodEntry::Kind::Statement || !m.proof) continue;
    for (const auto& d : m.def_deps) edges.insert(m.name + " -> def:" + d);
    for (const auto& d : m.decl_deps) edges.insert(m.name + " -> decl:" + d);
  }
  return {edges.begin(), edges.end()};
}

}  // namespace fcl
