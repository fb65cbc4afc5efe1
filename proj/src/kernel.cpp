#include "fcl/kernel.hpp"

#include <set>

namespace fcl {

// ---------------------------------------------------------------------------
// Constructors

KTermPtr k_var(std::string name, std::string sort) {
  auto t = std::make_shared<KTerm>();
  t->kind = KTerm::Kind::Var;
  t->name = std::move(name);
  t->sort = std::move(sort);
  return t;
}

KTermPtr k_app(std::string name, std::string sort, std::vector<KTermPtr> args) {
  auto t = std::make_shared<KTerm>();
  t->kind = KTerm::Kind::App;
  t->name = std::move(name);
  t->sort = std::move(sort);
  t->args = std::move(args);
  return t;
}

namespace {
std::shared_ptr<KFormula> mkf(KFormula::Kind k) {
  auto f = std::make_shared<KFormula>();
  f->kind = k;
  return f;
}
}  // namespace

KFormulaPtr k_true() { return mkf(KFormula::Kind::True); }
KFormulaPtr k_false() { return mkf(KFormula::Kind::False); }

KFormulaPtr k_atom(KTermPtr t) {
  auto f = mkf(KFormula::Kind::Atom);
  f->t = std::move(t);
  return f;
}

KFormulaPtr k_eq(KTermPtr a, KTermPtr b) {
  auto f = mkf(KFormula::Kind::Eq);
  f->ta = std::move(a);
  f->tb = std::move(b);
  return f;
}

KFormulaPtr k_not(KFormulaPtr a) {
  auto f = mkf(KFormula::Kind::Not);
  f->a = std::move(a);
  return f;
}

namespace {
std::shared_ptr<KFormula> binf(KFormula::Kind k, KFormulaPtr a, KFormulaPtr b) {
  auto f = mkf(k);
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
}  // namespace

KFormulaPtr k_and(KFormulaPtr a, KFormulaPtr b) { return binf(KFormula::Kind::And, std::move(a), std::move(b)); }
KFormulaPtr k_or(KFormulaPtr a, KFormulaPtr b) { return binf(KFormula::Kind::Or, std::move(a), std::move(b)); }
KFormulaPtr k_implies(KFormulaPtr a, KFormulaPtr b) { return binf(KFormula::Kind::Implies, std::move(a), std::move(b)); }
KFormulaPtr k_iff(KFormulaPtr a, KFormulaPtr b) { return binf(KFormula::Kind::Iff, std::move(a), std::move(b)); }

KFormulaPtr k_forall(std::string v, std::string sort, KFormulaPtr body) {
  auto f = mkf(KFormula::Kind::Forall);
  f->var = std::move(v);
  f->vsort = std::move(sort);
  f->a = std::move(body);
  return f;
}

KFormulaPtr k_exists(std::string v, std::string sort, KFormulaPtr body) {
  auto f = mkf(KFormula::Kind::Exists);
  f->var = std::move(v);
  f->vsort = std::move(sort);
  f->a = std::move(body);
  return f;
}

// ---------------------------------------------------------------------------
// Printing (for diagnostics and tests)

std::string print_kterm(const KTermPtr& t) {
  if (!t) return "?";
  if (t->kind == KTerm::Kind::Var) return t->name;
  if (t->args.empty()) return t->name;
  std::string s = t->name + "(";
  for (size_t i = 0; i < t->args.size(); i++) {
    if (i) s += ", ";
    s += print_kterm(t->args[i]);
  }
  return s + ")";
}

std::string print_kformula(const KFormulaPtr& f) {
  if (!f) return "?";
  switch (f->kind) {
    case KFormula::Kind::True: return "true";
    case KFormula::Kind::False: return "false";
    case KFormula::Kind::Atom: return print_kterm(f->t);
    case KFormula::Kind::Eq:
      return "(" + print_kterm(f->ta) + " = " + print_kterm(f->tb) + ")";
    case KFormula::Kind::Not: return "~" + print_kformula(f->a);
    case KFormula::Kind::And:
      return "(" + print_kformula(f->a) + " /\\ " + print_kformula(f->b) + ")";
    case KFormula::Kind::Or:
      return "(" + print_kformula(f->a) + " \\/ " + print_kformula(f->b) + ")";
    case KFormula::Kind::Implies:
      return "(" + print_kformula(f->a) + " -> " + print_kformula(f->b) + ")";
    case KFormula::Kind::Iff:
      return "(" + print_kformula(f->a) + " <-> " + print_kformula(f->b) + ")";
    case KFormula::Kind::Forall:
      return "(all " + f->var + " : " + f->vsort + ", " + print_kformula(f->a) + ")";
    case KFormula::Kind::Exists:
      return "(ex " + f->var + " : " + f->vsort + ", " + print_kformula(f->a) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Equality / substitution / alpha

bool kterm_equal(const KTermPtr& a, const KTermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!kterm_equal(a->args[i], b->args[i])) return false;
  return true;
}

void free_vars(const KTermPtr& t, std::map<std::string, std::string>& out) {
  if (!t) return;
  if (t->kind == KTerm::Kind::Var) out[t->name] = t->sort;
  for (const auto& a : t->args) free_vars(a, out);
}

void free_vars(const KFormulaPtr& f, std::map<std::string, std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case KFormula::Kind::True:
    case KFormula::Kind::False: return;
    case KFormula::Kind::Atom: free_vars(f->t, out); return;
    case KFormula::Kind::Eq:
      free_vars(f->ta, out);
      free_vars(f->tb, out);
      return;
    case KFormula::Kind::Not: free_vars(f->a, out); return;
    case KFormula::Kind::And:
    case KFormula::Kind::Or:
    case KFormula::Kind::Implies:
    case KFormula::Kind::Iff:
      free_vars(f->a, out);
      free_vars(f->b, out);
      return;
    case KFormula::Kind::Forall:
    case KFormula::Kind::Exists: {
      std::map<std::string, std::string> inner;
      free_vars(f->a, inner);
      inner.erase(f->var);
      for (auto& [k, v] : inner) out[k] = v;
      return;
    }
  }
}

KTermPtr substitute(const KTermPtr& t, const std::string& var, const KTermPtr& repl) {
  if (!t) return t;
  if (t->kind == KTerm::Kind::Var) return t->name == var ? repl : t;
  bool changed = false;
  std::vector<KTermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    KTermPtr s = substitute(a, var, repl);
    changed |= (s != a);
    args.push_back(std::move(s));
  }
  if (!changed) return t;
  return k_app(t->name, t->sort, std::move(args));
}

namespace {
std::string fresh_name(const std::string& base, const std::map<std::string, std::string>& avoid) {
  std::string n = base + "'";
  while (avoid.count(n)) n += "'";
  return n;
}
}  // namespace

KFormulaPtr substitute(const KFormulaPtr& f, const std::string& var, const KTermPtr& repl) {
  if (!f) return f;
  switch (f->kind) {
    case KFormula::Kind::True:
    case KFormula::Kind::False: return f;
    case KFormula::Kind::Atom: return k_atom(substitute(f->t, var, repl));
    case KFormula::Kind::Eq:
      return k_eq(substitute(f->ta, var, repl), substitute(f->tb, var, repl));
    case KFormula::Kind::Not: return k_not(substitute(f->a, var, repl));
    case KFormula::Kind::And:
      return k_and(substitute(f->a, var, repl), substitute(f->b, var, repl));
    case KFormula::Kind::Or:
      return k_or(substitute(f->a, var, repl), substitute(f->b, var, repl));
    case KFormula::Kind::Implies:
      return k_implies(substitute(f->a, var, repl), substitute(f->b, var, repl));
    case KFormula::Kind::Iff:
      return k_iff(substitute(f->a, var, repl), substitute(f->b, var, repl));
    case KFormula::Kind::Forall:
    case KFormula::Kind::Exists: {
      if (f->var == var) return f;
      std::map<std::string, std::string> rfv;
      free_vars(repl, rfv);
      std::string v = f->var;
      KFormulaPtr body = f->a;
      if (rfv.count(v)) {
        std::map<std::string, std::string> avoid = rfv;
        free_vars(body, avoid);
        avoid[var] = "";
        std::string nv = fresh_name(v, avoid);
        body = substitute(body, v, k_var(nv, f->vsort));
        v = nv;
      }
      body = substitute(body, var, repl);
      return f->kind == KFormula::Kind::Forall ? k_forall(v, f->vsort, body)
                                               : k_exists(v, f->vsort, body);
    }
  }
  return f;
}

namespace {
bool alpha_term(const KTermPtr& a, const KTermPtr& b,
                const std::map<std::string, std::string>& m1,
                const std::map<std::string, std::string>& m2) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  if (a->kind == KTerm::Kind::Var) {
    auto i1 = m1.find(a->name);
    auto i2 = m2.find(b->name);
    if (i1 != m1.end() || i2 != m2.end())
      return i1 != m1.end() && i2 != m2.end() && i1->second == i2->second;
    return a->name == b->name;
  }
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!alpha_term(a->args[i], b->args[i], m1, m2)) return false;
  return true;
}

bool alpha_form(const KFormulaPtr& a, const KFormulaPtr& b,
                std::map<std::string, std::string> m1,
                std::map<std::string, std::string> m2, int depth) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case KFormula::Kind::True:
    case KFormula::Kind::False: return true;
    case KFormula::Kind::Atom: return alpha_term(a->t, b->t, m1, m2);
    case KFormula::Kind::Eq:
      return alpha_term(a->ta, b->ta, m1, m2) && alpha_term(a->tb, b->tb, m1, m2);
    case KFormula::Kind::Not: return alpha_form(a->a, b->a, m1, m2, depth);
    case KFormula::Kind::And:
    case KFormula::Kind::Or:
    case KFormula::Kind::Implies:
    case KFormula::Kind::Iff:
      return alpha_form(a->a, b->a, m1, m2, depth) &&
             alpha_form(a->b, b->b, m1, m2, depth);
    case KFormula::Kind::Forall:
    case KFormula::Kind::Exists: {
      if (a->vsort != b->vsort) return false;
      std::string canon = "#" + std::to_string(depth);
      m1[a->var] = canon;
      m2[b->var] = canon;
      return alpha_form(a->a, b->a, m1, m2, depth + 1);
    }
  }
  return false;
}
}  // namespace

bool alpha_eq(const KFormulaPtr& a, const KFormulaPtr& b) {
  return alpha_form(a, b, {}, {}, 0);
}

// ---------------------------------------------------------------------------
// Sorts

std::string sort_of(const TypePtr& t) { return type_name(t); }

namespace {

// Sort of a type as seen inside `flat`: Self unfolds to the carrier when one
// is defined, so all sorts for the same values coincide.
std::string sort_in(const FlatSpecies& flat, const TypePtr& t) {
  return sort_of(flat.carrier ? unfold_self(t, flat.carrier) : t);
}

std::string elem_sort_of_list(const std::string& s) {
  if (s.rfind("list(", 0) == 0 && s.back() == ')')
    return s.substr(5, s.size() - 6);
  return "?";
}

struct Translator {
  const FlatSpecies& flat;
  const Env& env;
  KernelCtx ctx;  // working copy; quantifiers bind into it temporarily

  [[noreturn]] void bad(const ExprPtr& e, const std::string& msg) {
    fail("E-UNSUPPORTED", e->span, msg);
  }

  // result sort of a method type (arrow -> final component)
  std::string result_sort(const FlatSpecies& in, const TypePtr& t) {
    TypePtr r = t;
    if (r && r->kind == Type::Kind::Arrow) r = r->args.back();
    return sort_in(in, r);
  }

  KTermPtr term(const ExprPtr& e, const std::string& expected) {
    switch (e->kind) {
      case Expr::Kind::Var: {
        auto iv = ctx.vars.find(e->name);
        if (iv != ctx.vars.end()) return k_var(e->name, iv->second);
        auto ic = ctx.consts.find(e->name);
        if (ic != ctx.consts.end()) return k_app(e->name, ic->second);
        if (const MethodEntry* m = flat.find(e->name);
            m && m->kind != MethodEntry::Kind::Statement)
          return k_app(e->name, sort_in(flat, m->type));
        fail("E-UNKNOWN-CITATION", e->span, "unknown name '" + e->name + "'");
      }
      case Expr::Kind::IntLit: return k_app(e->ival.str(), "int");
      case Expr::Kind::BoolLit: return k_app(e->bval ? "true" : "false", "bool");
      case Expr::Kind::App: {
        if (e->name == "+")
          return k_app("+", "int", {term(e->args[0], "int"), term(e->args[1], "int")});
        if (e->name == "=") bad(e, "'=' used in value position");
        const MethodEntry* m = flat.find(e->name);
        if (!m || m->kind == MethodEntry::Kind::Statement)
          fail("E-UNKNOWN-CITATION", e->span, "unknown function '" + e->name + "'");
        std::vector<KTermPtr> args;
        for (size_t i = 0; i < e->args.size(); i++) {
          std::string ps = i < m->params.size() ? sort_in(flat, m->params[i].second) : "";
          args.push_back(term(e->args[i], ps));
        }
        return k_app(e->name, result_sort(flat, m->type), std::move(args));
      }
      case Expr::Kind::QualifiedCall: {
        // qualifier: a species parameter, or a collection once formed
        const FlatSpecies* iface = env.find_species(flat.param_interface(e->name));
        if (!iface)
          if (const CollectionInfo* ci = env.find_collection(e->name))
            iface = &ci->flat;
        const MethodEntry* m = iface ? iface->find(e->method) : nullptr;
        if (!m) fail("E-UNKNOWN-CITATION", e->span,
                     "unknown method '" + e->name + "!" + e->method + "'");
        TypePtr t = unfold_self(m->type, t_param(e->name));
        std::vector<KTermPtr> args;
        for (size_t i = 0; i < e->args.size(); i++) {
          std::string ps = t->kind == Type::Kind::Arrow && i < t->args.size() - 1
                               ? sort_in(flat, t->args[i])
                               : "";
          args.push_back(term(e->args[i], ps));
        }
        std::string rs = t->kind == Type::Kind::Arrow ? sort_in(flat, t->args.back())
                                                      : sort_in(flat, t);
        return k_app(e->name + "!" + e->method, rs, std::move(args));
      }
      case Expr::Kind::Nil:
        return k_app("[]", expected.empty() ? "list(?)" : expected);
      case Expr::Kind::Cons: {
        KTermPtr tl = term(e->args[1], expected);
        std::string ls = tl->sort != "?" && !tl->sort.empty() ? tl->sort : expected;
        KTermPtr hd = term(e->args[0], elem_sort_of_list(ls));
        if (ls.empty() || ls == "list(?)") ls = "list(" + hd->sort + ")";
        return k_app("::", ls, {std::move(hd), std::move(tl)});
      }
      default:
        bad(e, "expression form not available in logical statements");
    }
  }

  KFormulaPtr formula_of_expr(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::BoolLit: return e->bval ? k_true() : k_false();
      case Expr::Kind::And:
        return k_and(formula_of_expr(e->args[0]), formula_of_expr(e->args[1]));
      case Expr::Kind::Or:
        return k_or(formula_of_expr(e->args[0]), formula_of_expr(e->args[1]));
      case Expr::Kind::Not: return k_not(formula_of_expr(e->args[0]));
      case Expr::Kind::If:
        return k_and(k_implies(formula_of_expr(e->args[0]), formula_of_expr(e->args[1])),
                     k_implies(k_not(formula_of_expr(e->args[0])),
                               formula_of_expr(e->args[2])));
      case Expr::Kind::App:
        if (e->name == "=") {
          KTermPtr a = term(e->args[0], "");
          KTermPtr b = term(e->args[1], a->sort);
          if (a->sort == "list(?)" || a->sort == "?") a = term(e->args[0], b->sort);
          return k_eq(std::move(a), std::move(b));
        }
        return k_atom(term(e, "bool"));
      default:
        return k_atom(term(e, "bool"));
    }
  }

  KFormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::All:
      case Formula::Kind::Ex: {
        std::vector<std::string> pn;
        for (const auto& p : flat.params) pn.push_back(p.first);
        std::string s = sort_in(flat, resolve_type(f->vtype, pn));
        std::map<std::string, std::string> saved_vars = ctx.vars;
        for (const auto& v : f->vars) ctx.vars[v] = s;
        KFormulaPtr body = formula(f->a);
        ctx.vars = std::move(saved_vars);
        for (auto it = f->vars.rbegin(); it != f->vars.rend(); ++it)
          body = f->kind == Formula::Kind::All ? k_forall(*it, s, body)
                                               : k_exists(*it, s, body);
        return body;
      }
      case Formula::Kind::And: return k_and(formula(f->a), formula(f->b));
      case Formula::Kind::Or: return k_or(formula(f->a), formula(f->b));
      case Formula::Kind::Implies: return k_implies(formula(f->a), formula(f->b));
      case Formula::Kind::Iff: return k_iff(formula(f->a), formula(f->b));
      case Formula::Kind::Not: return k_not(formula(f->a));
      case Formula::Kind::Atom: return formula_of_expr(f->ea);
      case Formula::Kind::Eq: {
        KTermPtr a = term(f->ea, "");
        KTermPtr b = term(f->eb, a->sort);
        if (a->sort == "list(?)" || a->sort == "?") a = term(f->ea, b->sort);
        return k_eq(std::move(a), std::move(b));
      }
    }
    fail("E-UNSUPPORTED", f->span, "malformed formula");
  }
};

}  // namespace

KTermPtr expr_to_kterm(const ExprPtr& e, const KernelCtx& ctx) {
  Translator tr{*ctx.flat, *ctx.env, ctx};
  return tr.term(e, "");
}

KFormulaPtr expr_to_kformula(const ExprPtr& e, const KernelCtx& ctx) {
  Translator tr{*ctx.flat, *ctx.env, ctx};
  return tr.formula_of_expr(e);
}

KFormulaPtr formula_to_kernel(const FormulaPtr& f, KernelCtx ctx) {
  Translator tr{*ctx.flat, *ctx.env, ctx};
  return tr.formula(f);
}

// ---------------------------------------------------------------------------
// Definitional axioms

namespace {

// One definitional case: extra bound variables (pattern vars), boolean
// guards, the argument list of the head, and the branch body.
struct DefCase {
  std::vector<std::pair<std::string, std::string>> extra_vars;  // name, sort
  std::vector<ExprPtr> guards;      // positive conditions
  std::vector<ExprPtr> neg_guards;  // negated conditions
  std::vector<ExprPtr> head_args;
  ExprPtr body;
};

ExprPtr var_expr(const std::string& n, Span sp) {
  auto e = mk_expr(Expr::Kind::Var, sp);
  e->name = n;
  return e;
}

// Splits nested `if` into guarded cases (used for non-boolean bodies).
void split_ifs(DefCase cur, const ExprPtr& body, std::vector<DefCase>& out) {
  if (body->kind == Expr::Kind::If) {
    DefCase thn = cur, els = cur;
    thn.guards.push_back(body->args[0]);
    split_ifs(std::move(thn), body->args[1], out);
    els.neg_guards.push_back(body->args[0]);
    split_ifs(std::move(els), body->args[2], out);
    return;
  }
  cur.body = body;
  out.push_back(std::move(cur));
}

}  // namespace

std::vector<KFormulaPtr> unfold_definition(const std::string& name,
                                           const FlatSpecies& flat, const Env& env) {
  const MethodEntry* m = flat.find(name);
  if (!m || m->kind == MethodEntry::Kind::Statement || !m->defined)
    fail("E-UNKNOWN-CITATION", Span{},
         "'" + name + "' is not a defined function or logical definition");

  KernelCtx ctx;
  ctx.flat = &flat;
  ctx.env = &env;

  std::vector<std::pair<std::string, std::string>> pvars;  // name, sort
  for (const auto& [pn, pt] : m->params) pvars.emplace_back(pn, sort_in(flat, pt));
  for (const auto& [pn, ps] : pvars) ctx.vars[pn] = ps;

  auto close = [&](const std::vector<std::pair<std::string, std::string>>& extra,
                   KFormulaPtr body) {
    for (auto it = extra.rbegin(); it != extra.rend(); ++it)
      body = k_forall(it->first, it->second, body);
    for (auto it = pvars.rbegin(); it != pvars.rend(); ++it)
      body = k_forall(it->first, it->second, body);
    return body;
  };

  if (m->kind == MethodEntry::Kind::LogicalDef) {
    std::vector<KTermPtr> args;
    for (const auto& [pn, ps] : pvars) args.push_back(k_var(pn, ps));
    KFormulaPtr head = k_atom(k_app(name, "bool", std::move(args)));
    Translator tr{flat, env, ctx};
    KFormulaPtr rhs = tr.formula(m->formula);
    return {close({}, k_iff(std::move(head), std::move(rhs)))};
  }

  // Function definition. Work out the result sort and the per-case bodies.
  TypePtr rty = m->type;
  if (m->has_params && rty->kind == Type::Kind::Arrow) rty = rty->args.back();
  std::string rsort = sort_in(flat, rty);
  bool boolean = rty->kind == Type::Kind::Bool;

  std::vector<DefCase> cases;
  DefCase root;
  for (const auto& [pn, ps] : pvars) root.head_args.push_back(var_expr(pn, m->span));

  const ExprPtr& b = m->body;
  if (b->kind == Expr::Kind::Match && b->args[0]->kind == Expr::Kind::Var &&
      ctx.vars.count(b->args[0]->name)) {
    const std::string& scrut = b->args[0]->name;
    std::string ssort = ctx.vars[scrut];
    std::string esort = elem_sort_of_list(ssort);
    int wild = 0;
    for (const auto& br : b->branches) {
      DefCase c = root;
      ExprPtr pat_repl;
      switch (br.pat.kind) {
        case Pattern::Kind::Nil:
          pat_repl = mk_expr(Expr::Kind::Nil, br.pat.span);
          break;
        case Pattern::Kind::Cons: {
          std::string h = br.pat.head.empty() ? "_w" + std::to_string(wild++) : br.pat.head;
          std::string t = br.pat.tail.empty() ? "_w" + std::to_string(wild++) : br.pat.tail;
          c.extra_vars.emplace_back(h, esort);
          c.extra_vars.emplace_back(t, ssort);
          auto cons = mk_expr(Expr::Kind::Cons, br.pat.span);
          cons->args = {var_expr(h, br.pat.span), var_expr(t, br.pat.span)};
          pat_repl = cons;
          break;
        }
        case Pattern::Kind::Var:
          pat_repl = var_expr(br.pat.name, br.pat.span);
          c.extra_vars.emplace_back(br.pat.name, ssort);
          break;
        case Pattern::Kind::Wildcard: {
          std::string w = "_w" + std::to_string(wild++);
          pat_repl = var_expr(w, br.pat.span);
          c.extra_vars.emplace_back(w, ssort);
          break;
        }
      }
      for (auto& a : c.head_args)
        if (a->kind == Expr::Kind::Var && a->name == scrut) a = pat_repl;
      if (boolean) {
        c.body = br.body;
        cases.push_back(std::move(c));
      } else {
        split_ifs(std::move(c), br.body, cases);
      }
    }
  } else if (boolean) {
    root.body = b;
    cases.push_back(std::move(root));
  } else {
    split_ifs(std::move(root), b, cases);
  }

  std::vector<KFormulaPtr> out;
  for (const auto& c : cases) {
    KernelCtx inner = ctx;
    for (const auto& [vn, vs] : c.extra_vars) inner.vars[vn] = vs;
    Translator itr{flat, env, inner};

    std::vector<KTermPtr> head_args;
    size_t i = 0;
    for (const auto& a : c.head_args) {
      std::string ps = i < pvars.size() ? pvars[i].second : "";
      head_args.push_back(itr.term(a, ps));
      i++;
    }
    KTermPtr head = m->has_params ? k_app(name, rsort, std::move(head_args))
                                  : k_app(name, rsort);

    KFormulaPtr core;
    if (boolean) {
      core = k_iff(k_atom(head), itr.formula_of_expr(c.body));
    } else {
      core = k_eq(head, itr.term(c.body, rsort));
    }
    for (auto it = c.neg_guards.rbegin(); it != c.neg_guards.rend(); ++it)
      core = k_implies(k_not(itr.formula_of_expr(*it)), core);
    for (auto it = c.guards.rbegin(); it != c.guards.rend(); ++it)
      core = k_implies(itr.formula_of_expr(*it), core);
    out.push_back(close(c.extra_vars, std::move(core)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameter statements

namespace {

KTermPtr qualify_term(const KTermPtr& t, const std::string& param,
                      const FlatSpecies& iface) {
  auto fix_sort = [&](const std::string& s) {
    return s == "Self" ? param : s;
  };
  std::vector<KTermPtr> args;
  for (const auto& a : t->args) args.push_back(qualify_term(a, param, iface));
  if (t->kind == KTerm::Kind::Var) return k_var(t->name, fix_sort(t->sort));
  std::string n = t->name;
  if (const MethodEntry* m = iface.find(n); m && m->kind != MethodEntry::Kind::Statement)
    n = param + "!" + n;
  return k_app(n, fix_sort(t->sort), std::move(args));
}

KFormulaPtr qualify_form(const KFormulaPtr& f, const std::string& param,
                         const FlatSpecies& iface) {
  if (!f) return f;
  auto fix_sort = [&](const std::string& s) {
    return s == "Self" ? param : s;
  };
  switch (f->kind) {
    case KFormula::Kind::True:
    case KFormula::Kind::False: return f;
    case KFormula::Kind::Atom: return k_atom(qualify_term(f->t, param, iface));
    case KFormula::Kind::Eq:
      return k_eq(qualify_term(f->ta, param, iface), qualify_term(f->tb, param, iface));
    case KFormula::Kind::Not: return k_not(qualify_form(f->a, param, iface));
    case KFormula::Kind::And:
      return k_and(qualify_form(f->a, param, iface), qualify_form(f->b, param, iface));
    case KFormula::Kind::Or:
      return k_or(qualify_form(f->a, param, iface), qualify_form(f->b, param, iface));
    case KFormula::Kind::Implies:
      return k_implies(qualify_form(f->a, param, iface), qualify_form(f->b, param, iface));
    case KFormula::Kind::Iff:
      return k_iff(qualify_form(f->a, param, iface), qualify_form(f->b, param, iface));
    case KFormula::Kind::Forall:
      return k_forall(f->var, fix_sort(f->vsort), qualify_form(f->a, param, iface));
    case KFormula::Kind::Exists:
      return k_exists(f->var, fix_sort(f->vsort), qualify_form(f->a, param, iface));
  }
  return f;
}

}  // namespace

KFormulaPtr import_param_statement(const std::string& param, const std::string& method,
                                   const FlatSpecies& flat, const Env& env) {
  if (!flat.is_param(param))
    fail("E-UNKNOWN-CITATION", Span{},
         "'" + param + "' is not a parameter of species '" + flat.name + "'");
  const FlatSpecies* iface = env.find_species(flat.param_interface(param));
  const MethodEntry* m = iface ? iface->find(method) : nullptr;
  if (!m || m->kind != MethodEntry::Kind::Statement)
    fail("E-UNKNOWN-CITATION", Span{},
         "no statement '" + method + "' in interface of '" + param + "'");
  KernelCtx ctx;
  ctx.flat = iface;
  ctx.env = &env;
  KFormulaPtr f = formula_to_kernel(m->formula, ctx);
  return qualify_form(f, param, *iface);
}

// ---------------------------------------------------------------------------
// Induction

InductionScheme induction_scheme(const KFormulaPtr& goal) {
  if (!goal || goal->kind != KFormula::Kind::Forall ||
      goal->vsort.rfind("list(", 0) != 0)
    fail("E-CASE-MISMATCH", Span{},
         "induction requires a goal of the form `all l : list(T), P(l)`");
  InductionScheme s;
  s.elem_sort = elem_sort_of_list(goal->vsort);
  std::string lsort = goal->vsort;
  s.head = "%h";
  s.tail = "%t";
  s.base = substitute(goal->a, goal->var, k_app("[]", lsort));
  s.hyp = substitute(goal->a, goal->var, k_var(s.tail, lsort));
  s.step_goal = substitute(
      goal->a, goal->var,
      k_app("::", lsort, {k_var(s.head, s.elem_sort), k_var(s.tail, lsort)}));
  return s;
}

}  // namespace fcl
