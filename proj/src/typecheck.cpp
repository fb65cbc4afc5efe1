#include "fcl/typecheck.hpp"

namespace fcl {

namespace {

struct Checker {
  FlatSpecies& flat;
  const Env& env;
  std::vector<std::string> param_names;
  std::vector<TypePtr> bindings;  // unification variables
  // ground expressions typed against a formed collection may use carrier
  // values where a parameter collection type is expected
  bool through_collections = false;

  TypePtr fresh() {
    auto t = std::make_shared<Type>();
    t->kind = Type::Kind::Var;
    t->var_id = static_cast<int>(bindings.size());
    bindings.push_back(nullptr);
    return t;
  }

  TypePtr walk(TypePtr t) {
    while (t) {
      if (t->kind == Type::Kind::Var && bindings[t->var_id]) {
        t = bindings[t->var_id];
      } else if (t->kind == Type::Kind::SelfT && flat.carrier) {
        t = flat.carrier;
      } else if (through_collections && t->kind == Type::Kind::Param &&
                 env.find_collection(t->name)) {
        t = env.find_collection(t->name)->flat.carrier;
      } else {
        return t;
      }
    }
    return t;
  }

  bool occurs(int id, const TypePtr& t0) {
    TypePtr t = walk(t0);
    if (t->kind == Type::Kind::Var) return t->var_id == id;
    for (const auto& a : t->args)
      if (occurs(id, a)) return true;
    return false;
  }

  void unify(TypePtr a, TypePtr b, Span sp) {
    a = walk(a);
    b = walk(b);
    if (a->kind == Type::Kind::Var) {
      if (b->kind == Type::Kind::Var && b->var_id == a->var_id) return;
      if (occurs(a->var_id, b))
        fail("E-TYPE", sp, "cannot construct an infinite type");
      bindings[a->var_id] = b;
      return;
    }
    if (b->kind == Type::Kind::Var) {
      unify(b, a, sp);
      return;
    }
    if (a->kind != b->kind || a->name != b->name ||
        a->args.size() != b->args.size())
      fail("E-TYPE", sp,
           "type mismatch: expected " + type_name(deep(a)) + ", found " +
               type_name(deep(b)));
    for (size_t i = 0; i < a->args.size(); i++) unify(a->args[i], b->args[i], sp);
  }

  TypePtr deep(TypePtr t) {
    t = walk(t);
    if (t->args.empty()) return t;
    auto c = std::make_shared<Type>(*t);
    for (auto& a : c->args) a = deep(a);
    return c;
  }

  bool has_var(const TypePtr& t0) {
    TypePtr t = walk(t0);
    if (t->kind == Type::Kind::Var) return true;
    for (const auto& a : t->args)
      if (has_var(a)) return true;
    return false;
  }

  // -------------------------------------------------------------------------

  using VarEnv = std::map<std::string, TypePtr>;

  TypePtr method_use_type(const MethodEntry& m) { return m.type; }

  TypePtr check_call(const std::string& what, const TypePtr& fn,
                     const std::vector<ExprPtr>& args, const VarEnv& vars, Span sp) {
    TypePtr f = walk(fn);
    if (f->kind != Type::Kind::Arrow)
      fail("E-TYPE", sp, "'" + what + "' is not a function but is applied");
    if (f->args.size() != args.size() + 1)
      fail("E-TYPE", sp,
           "'" + what + "' expects " + std::to_string(f->args.size() - 1) +
               " argument(s), got " + std::to_string(args.size()));
    for (size_t i = 0; i < args.size(); i++)
      unify(f->args[i], check_expr(args[i], vars), args[i]->span);
    return f->args.back();
  }

  TypePtr check_expr(const ExprPtr& e, const VarEnv& vars) {
    switch (e->kind) {
      case Expr::Kind::Var: {
        auto it = vars.find(e->name);
        if (it != vars.end()) return it->second;
        if (const MethodEntry* m = flat.find(e->name)) {
          if (m->kind == MethodEntry::Kind::Statement)
            fail("E-TYPE", e->span, "'" + e->name + "' is a statement, not a value");
          if (!m->type) fail("E-UNBOUND", e->span, "'" + e->name + "' used before its type is known");
          return m->type;
        }
        fail("E-UNBOUND", e->span, "unbound name '" + e->name + "'");
      }
      case Expr::Kind::BoolLit: return t_bool();
      case Expr::Kind::IntLit: return t_int();
      case Expr::Kind::App: {
        if (e->name == "+") {
          for (const auto& a : e->args) unify(t_int(), check_expr(a, vars), a->span);
          return t_int();
        }
        if (e->name == "=") {
          unify(check_expr(e->args[0], vars), check_expr(e->args[1], vars), e->span);
          return t_bool();
        }
        auto it = vars.find(e->name);
        if (it != vars.end())
          return check_call(e->name, it->second, e->args, vars, e->span);
        const MethodEntry* m = flat.find(e->name);
        if (!m || m->kind == MethodEntry::Kind::Statement)
          fail("E-UNBOUND", e->span, "unbound function '" + e->name + "'");
        return check_call(e->name, m->type, e->args, vars, e->span);
      }
      case Expr::Kind::QualifiedCall: {
        if (!flat.is_param(e->name))
          fail("E-UNBOUND", e->span,
               "'" + e->name + "' is not a parameter of species '" + flat.name + "'");
        const FlatSpecies* iface = env.find_species(flat.param_interface(e->name));
        const MethodEntry* m = iface ? iface->find(e->method) : nullptr;
        if (!m || m->kind == MethodEntry::Kind::Statement || !m->type)
          fail("E-UNBOUND", e->span,
               "interface '" + flat.param_interface(e->name) + "' has no method '" +
                   e->method + "'");
        TypePtr t = unfold_self(m->type, t_param(e->name));
        if (e->args.empty() && t->kind != Type::Kind::Arrow) return t;
        return check_call(e->name + "!" + e->method, t, e->args, vars, e->span);
      }
      case Expr::Kind::If: {
        unify(t_bool(), check_expr(e->args[0], vars), e->args[0]->span);
        TypePtr t = check_expr(e->args[1], vars);
        unify(t, check_expr(e->args[2], vars), e->args[2]->span);
        return t;
      }
      case Expr::Kind::Match: {
        TypePtr scrut = check_expr(e->args[0], vars);
        TypePtr result = fresh();
        for (const auto& br : e->branches) {
          VarEnv bound = vars;
          switch (br.pat.kind) {
            case Pattern::Kind::Wildcard: break;
            case Pattern::Kind::Var: bound[br.pat.name] = scrut; break;
            case Pattern::Kind::Nil:
              unify(scrut, t_list(fresh()), br.pat.span);
              break;
            case Pattern::Kind::Cons: {
              TypePtr elem = fresh();
              unify(scrut, t_list(elem), br.pat.span);
              if (!br.pat.head.empty()) bound[br.pat.head] = elem;
              if (!br.pat.tail.empty()) bound[br.pat.tail] = t_list(elem);
              break;
            }
          }
          unify(result, check_expr(br.body, bound), br.body->span);
        }
        return result;
      }
      case Expr::Kind::LocalLet: {
        TypePtr bound = check_expr(e->args[0], vars);
        VarEnv inner = vars;
        inner[e->name] = bound;
        return check_expr(e->args[1], inner);
      }
      case Expr::Kind::And:
      case Expr::Kind::Or:
        unify(t_bool(), check_expr(e->args[0], vars), e->args[0]->span);
        unify(t_bool(), check_expr(e->args[1], vars), e->args[1]->span);
        return t_bool();
      case Expr::Kind::Not:
        unify(t_bool(), check_expr(e->args[0], vars), e->args[0]->span);
        return t_bool();
      case Expr::Kind::Nil: return t_list(fresh());
      case Expr::Kind::Cons: {
        TypePtr elem = check_expr(e->args[0], vars);
        unify(t_list(elem), check_expr(e->args[1], vars), e->span);
        return t_list(elem);
      }
    }
    fail("E-TYPE", e->span, "malformed expression");
  }

  void check_formula(const FormulaPtr& f, const VarEnv& vars) {
    switch (f->kind) {
      case Formula::Kind::All:
      case Formula::Kind::Ex: {
        TypePtr vt = resolve_type(f->vtype, param_names);
        VarEnv inner = vars;
        for (const auto& v : f->vars) inner[v] = vt;
        check_formula(f->a, inner);
        return;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
      case Formula::Kind::Iff:
        check_formula(f->a, vars);
        check_formula(f->b, vars);
        return;
      case Formula::Kind::Not:
        check_formula(f->a, vars);
        return;
      case Formula::Kind::Atom:
        unify(t_bool(), check_expr(f->ea, vars), f->ea->span);
        return;
      case Formula::Kind::Eq:
        unify(check_expr(f->ea, vars), check_expr(f->eb, vars), f->span);
        return;
    }
  }

  void check_step(const ProofStep& st, VarEnv vars) {
    for (const auto& a : st.assumes) {
      TypePtr t = resolve_type(a.type, param_names);
      for (const auto& n : a.names) vars[n] = t;
    }
    for (const auto& h : st.hyps) check_formula(h.formula, vars);
    if (st.goal) check_formula(st.goal, vars);
    for (const auto& sub : st.subs) check_step(sub, vars);
  }

  void run() {
    for (const auto& p : flat.params) param_names.push_back(p.first);

    // Phase A: assign every function / logical definition a use type.
    for (auto& m : flat.methods) {
      if (m.kind == MethodEntry::Kind::Statement) continue;
      std::vector<TypePtr> parts;
      m.params.clear();
      for (const auto& [pn, pt] : m.surface_params) {
        TypePtr t = pt ? resolve_type(pt, param_names) : fresh();
        m.params.emplace_back(pn, t);
        parts.push_back(t);
      }
      TypePtr result;
      if (m.kind == MethodEntry::Kind::LogicalDef) {
        result = t_bool();
      } else if (m.surface_type && !m.has_params) {
        result = resolve_type(m.surface_type, param_names);
      } else if (m.surface_type && m.has_params) {
        // either a kept signature (arrow constraining params and result
        // together) or the definition's own return annotation
        TypePtr sig = resolve_type(m.surface_type, param_names);
        if (sig->kind == Type::Kind::Arrow && sig->args.size() == parts.size() + 1) {
          for (size_t i = 0; i < parts.size(); i++)
            unify(parts[i], sig->args[i], m.span);
          result = sig->args.back();
        } else {
          result = sig;
        }
      } else {
        result = fresh();
      }
      if (m.has_params || m.kind == MethodEntry::Kind::LogicalDef) {
        parts.push_back(result);
        m.type = parts.size() == 1 ? result : t_arrow(parts);
      } else {
        m.type = result;
      }
    }

    // Phase B: bodies, formulas, and proof statements.
    for (auto& m : flat.methods) {
      VarEnv vars;
      for (const auto& [pn, pt] : m.params) vars[pn] = pt;
      switch (m.kind) {
        case MethodEntry::Kind::Function:
          if (m.body) {
            TypePtr result = walk(m.type);
            if (m.has_params) {
              // result slot of the arrow assembled in phase A
              result = walk(m.type)->kind == Type::Kind::Arrow
                           ? walk(m.type)->args.back()
                           : m.type;
            }
            unify(result, check_expr(m.body, vars), m.span);
          }
          break;
        case MethodEntry::Kind::LogicalDef:
          check_formula(m.formula, vars);
          break;
        case MethodEntry::Kind::Statement:
          check_formula(m.formula, {});
          if (m.proof && !m.proof->is_direct)
            for (const auto& st : m.proof->steps) check_step(st, {});
          break;
      }
    }

    // Phase C: everything must be ground.
    for (auto& m : flat.methods) {
      if (m.kind == MethodEntry::Kind::Statement) continue;
      if (has_var(m.type))
        fail("E-TYPE", m.span,
             "cannot infer the full type of '" + m.name + "' (got " +
                 type_name(deep(m.type)) + ")");
      m.type = deep(m.type);
      for (auto& [pn, pt] : m.params) pt = deep(pt);
    }
  }
};

}  // namespace

void typecheck(FlatSpecies& flat, const Env& env) {
  Checker c{flat, env};
  c.run();
}

TypePtr type_of_ground_expr(const ExprPtr& e, const FlatSpecies& flat, const Env& env) {
  Checker c{const_cast<FlatSpecies&>(flat), env};  // read-only use
  c.through_collections = true;
  for (const auto& p : flat.params) c.param_names.push_back(p.first);
  TypePtr t = c.check_expr(e, {});
  if (c.has_var(t)) fail("E-TYPE", e->span, "expression type is ambiguous");
  return c.deep(t);
}

}  // namespace fcl
