#include "fcl/parser.hpp"

#include <set>

namespace fcl {

namespace {

ExprPtr formula_to_expr(const FormulaPtr& f);

// Formula-or-expression: the surface grammar shares one precedence tower, so
// sub-parses carry whichever they turned out to be and the context converts.
struct FOrE {
  FormulaPtr f;
  ExprPtr e;
};

FormulaPtr expr_to_formula(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::And: {
      auto f = mk_formula(Formula::Kind::And, e->span);
      f->a = expr_to_formula(e->args[0]);
      f->b = expr_to_formula(e->args[1]);
      return f;
    }
    case Expr::Kind::Or: {
      auto f = mk_formula(Formula::Kind::Or, e->span);
      f->a = expr_to_formula(e->args[0]);
      f->b = expr_to_formula(e->args[1]);
      return f;
    }
    case Expr::Kind::Not: {
      auto f = mk_formula(Formula::Kind::Not, e->span);
      f->a = expr_to_formula(e->args[0]);
      return f;
    }
    case Expr::Kind::App:
      if (e->name == "=") {
        auto f = mk_formula(Formula::Kind::Eq, e->span);
        f->ea = e->args[0];
        f->eb = e->args[1];
        return f;
      }
      break;
    default:
      break;
  }
  auto f = mk_formula(Formula::Kind::Atom, e->span);
  f->ea = e;
  return f;
}

ExprPtr formula_to_expr(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      return f->ea;
    case Formula::Kind::Eq: {
      auto e = mk_expr(Expr::Kind::App, f->span);
      e->name = "=";
      e->args = {f->ea, f->eb};
      return e;
    }
    case Formula::Kind::Not: {
      auto e = mk_expr(Expr::Kind::Not, f->span);
      e->args = {formula_to_expr(f->a)};
      return e;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      auto e = mk_expr(f->kind == Formula::Kind::And ? Expr::Kind::And
                                                     : Expr::Kind::Or,
                       f->span);
      e->args = {formula_to_expr(f->a), formula_to_expr(f->b)};
      return e;
    }
    default:
      fail("E-PARSE", f->span, "logical connective in expression context");
  }
}

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  std::string file;

  const Token& peek(size_t off = 0) const {
    size_t i = pos + off;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& cur() const { return peek(0); }
  bool at(Tok k) const { return cur().kind == k; }

  Token advance() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

  [[noreturn]] void error(const std::string& expected) {
    fail("E-PARSE", cur().span,
         "expected " + expected + ", found " + token_name(cur().kind) +
             (cur().text.empty() ? "" : " '" + cur().text + "'"));
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) error(what);
    return advance();
  }

  bool accept(Tok k) {
    if (at(k)) { advance(); return true; }
    return false;
  }

  std::string ident() { return expect(Tok::Ident, "identifier").text; }

  // ---- types ----------------------------------------------------------

  TypeExprPtr parse_type_atom() {
    Span sp = cur().span;
    switch (cur().kind) {
      case Tok::KwSelf: advance(); return mk_type(TypeExpr::Kind::SelfT, sp);
      case Tok::KwBool: advance(); return mk_type(TypeExpr::Kind::Bool, sp);
      case Tok::KwInt: advance(); return mk_type(TypeExpr::Kind::Int, sp);
      case Tok::KwList: {
        advance();
        expect(Tok::LParen, "'('");
        auto t = mk_type(TypeExpr::Kind::List, sp);
        t->args.push_back(parse_type());
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Ident: {
        auto t = mk_type(TypeExpr::Kind::Param, sp);
        t->name = advance().text;
        return t;
      }
      case Tok::LParen: {
        advance();
        auto t = parse_type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        error("a type");
    }
  }

  TypeExprPtr parse_type() {
    Span sp = cur().span;
    auto first = parse_type_atom();
    if (!at(Tok::Arrow)) return first;
    auto arrow = mk_type(TypeExpr::Kind::Arrow, sp);
    arrow->args.push_back(first);
    while (accept(Tok::Arrow)) arrow->args.push_back(parse_type_atom());
    // `a -> b -> c` reads as a function of two arguments returning c.
    return arrow;
  }

  // ---- formula / expression tower -------------------------------------

  FormulaPtr to_formula(FOrE x) { return x.f ? x.f : expr_to_formula(x.e); }
  ExprPtr to_expr(FOrE x) { return x.e ? x.e : formula_to_expr(x.f); }

  FormulaPtr parse_formula() { return to_formula(parse_iff()); }
  ExprPtr parse_expr() { return to_expr(parse_iff()); }

  FOrE parse_iff() {
    FOrE lhs = parse_implies();
    while (at(Tok::Iff)) {
      Span sp = advance().span;
      FOrE rhs = parse_implies();
      auto f = mk_formula(Formula::Kind::Iff, sp);
      f->a = to_formula(lhs);
      f->b = to_formula(rhs);
      lhs = FOrE{f, nullptr};
    }
    return lhs;
  }

  FOrE parse_implies() {
    FOrE lhs = parse_or_f();
    if (at(Tok::Arrow)) {
      Span sp = advance().span;
      FOrE rhs = parse_implies();  // right-associative
      auto f = mk_formula(Formula::Kind::Implies, sp);
      f->a = to_formula(lhs);
      f->b = to_formula(rhs);
      return FOrE{f, nullptr};
    }
    return lhs;
  }

  FOrE parse_or_f() {
    FOrE lhs = parse_and_f();
    while (at(Tok::OrF)) {
      Span sp = advance().span;
      FOrE rhs = parse_and_f();
      auto f = mk_formula(Formula::Kind::Or, sp);
      f->a = to_formula(lhs);
      f->b = to_formula(rhs);
      lhs = FOrE{f, nullptr};
    }
    return lhs;
  }

  FOrE parse_and_f() {
    FOrE lhs = parse_not_f();
    while (at(Tok::AndF)) {
      Span sp = advance().span;
      FOrE rhs = parse_not_f();
      auto f = mk_formula(Formula::Kind::And, sp);
      f->a = to_formula(lhs);
      f->b = to_formula(rhs);
      lhs = FOrE{f, nullptr};
    }
    return lhs;
  }

  FOrE parse_not_f() {
    Span sp = cur().span;
    if (at(Tok::KwNot)) {
      advance();
      FOrE inner = parse_not_f();
      auto f = mk_formula(Formula::Kind::Not, sp);
      f->a = to_formula(inner);
      return FOrE{f, nullptr};
    }
    if (at(Tok::KwAll) || at(Tok::KwEx)) {
      bool universal = at(Tok::KwAll);
      advance();
      auto f = mk_formula(
          universal ? Formula::Kind::All : Formula::Kind::Ex, sp);
      f->vars.push_back(ident());
      while (at(Tok::Ident)) f->vars.push_back(advance().text);
      expect(Tok::Colon, "':'");
      f->vtype = parse_type();
      expect(Tok::Comma, "','");
      // quantifier scope extends maximally to the right
      f->a = parse_formula();
      return FOrE{f, nullptr};
    }
    return parse_cmp();
  }

  FOrE parse_cmp() {
    FOrE lhs = parse_or_e();
    if (at(Tok::Eq)) {
      Span sp = advance().span;
      FOrE rhs = parse_or_e();
      auto f = mk_formula(Formula::Kind::Eq, sp);
      f->ea = to_expr(lhs);
      f->eb = to_expr(rhs);
      return FOrE{f, nullptr};
    }
    return lhs;
  }

  FOrE parse_or_e() {
    FOrE lhs = parse_and_e();
    while (at(Tok::OrE)) {
      Span sp = advance().span;
      FOrE rhs = parse_and_e();
      auto e = mk_expr(Expr::Kind::Or, sp);
      e->args = {to_expr(lhs), to_expr(rhs)};
      lhs = FOrE{nullptr, e};
    }
    return lhs;
  }

  FOrE parse_and_e() {
    FOrE lhs = parse_cons();
    while (at(Tok::AndE)) {
      Span sp = advance().span;
      FOrE rhs = parse_cons();
      auto e = mk_expr(Expr::Kind::And, sp);
      e->args = {to_expr(lhs), to_expr(rhs)};
      lhs = FOrE{nullptr, e};
    }
    return lhs;
  }

  FOrE parse_cons() {
    FOrE lhs = parse_plus();
    if (at(Tok::ColonColon)) {
      Span sp = advance().span;
      FOrE rhs = parse_cons();  // right-associative
      auto e = mk_expr(Expr::Kind::Cons, sp);
      e->args = {to_expr(lhs), to_expr(rhs)};
      return FOrE{nullptr, e};
    }
    return lhs;
  }

  FOrE parse_plus() {
    FOrE lhs = parse_primary();
    while (at(Tok::Plus)) {
      Span sp = advance().span;
      FOrE rhs = parse_primary();
      auto e = mk_expr(Expr::Kind::App, sp);
      e->name = "+";
      e->args = {to_expr(lhs), to_expr(rhs)};
      lhs = FOrE{nullptr, e};
    }
    return lhs;
  }

  FOrE parse_primary() {
    Span sp = cur().span;
    switch (cur().kind) {
      case Tok::KwTrue:
      case Tok::KwFalse: {
        auto e = mk_expr(Expr::Kind::BoolLit, sp);
        e->bval = at(Tok::KwTrue);
        advance();
        return FOrE{nullptr, e};
      }
      case Tok::Int: {
        auto e = mk_expr(Expr::Kind::IntLit, sp);
        e->ival = BigInt(advance().text);
        return FOrE{nullptr, e};
      }
      case Tok::LParen: {
        advance();
        FOrE inner = parse_iff();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::LBracket: {
        advance();
        std::vector<ExprPtr> items;
        if (!at(Tok::RBracket)) {
          items.push_back(parse_expr());
          while (accept(Tok::Semi)) items.push_back(parse_expr());
        }
        expect(Tok::RBracket, "']'");
        ExprPtr list = mk_expr(Expr::Kind::Nil, sp);
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
          auto cons = mk_expr(Expr::Kind::Cons, (*it)->span);
          cons->args = {*it, list};
          list = cons;
        }
        return FOrE{nullptr, list};
      }
      case Tok::KwIf: {
        advance();
        auto e = mk_expr(Expr::Kind::If, sp);
        ExprPtr c = parse_expr();
        expect(Tok::KwThen, "'then'");
        ExprPtr t = parse_expr();
        expect(Tok::KwElse, "'else'");
        ExprPtr f = parse_expr();
        e->args = {c, t, f};
        return FOrE{nullptr, e};
      }
      case Tok::KwMatch: {
        advance();
        auto e = mk_expr(Expr::Kind::Match, sp);
        e->args.push_back(parse_expr());
        expect(Tok::KwWith, "'with'");
        while (accept(Tok::Bar)) {
          MatchBranch br;
          br.pat = parse_pattern();
          expect(Tok::Arrow, "'->'");
          br.body = parse_expr();
          e->branches.push_back(std::move(br));
        }
        if (e->branches.empty()) error("at least one match branch");
        return FOrE{nullptr, e};
      }
      case Tok::KwLet: {
        advance();
        auto e = mk_expr(Expr::Kind::LocalLet, sp);
        e->name = ident();
        expect(Tok::Eq, "'='");
        ExprPtr bound = parse_expr();
        expect(Tok::KwIn, "'in'");
        ExprPtr body = parse_expr();
        e->args = {bound, body};
        return FOrE{nullptr, e};
      }
      case Tok::Ident: {
        std::string name = advance().text;
        if (accept(Tok::Bang)) {
          auto e = mk_expr(Expr::Kind::QualifiedCall, sp);
          e->name = name;
          e->method = ident();
          if (accept(Tok::LParen)) {
            if (!at(Tok::RParen)) {
              e->args.push_back(parse_expr());
              while (accept(Tok::Comma)) e->args.push_back(parse_expr());
            }
            expect(Tok::RParen, "')'");
          }
          return FOrE{nullptr, e};
        }
        if (at(Tok::LParen)) {
          advance();
          auto e = mk_expr(Expr::Kind::App, sp);
          e->name = name;
          if (!at(Tok::RParen)) {
            e->args.push_back(parse_expr());
            while (accept(Tok::Comma)) e->args.push_back(parse_expr());
          }
          expect(Tok::RParen, "')'");
          return FOrE{nullptr, e};
        }
        auto e = mk_expr(Expr::Kind::Var, sp);
        e->name = name;
        return FOrE{nullptr, e};
      }
      default:
        error("an expression");
    }
  }

  Pattern parse_pattern() {
    Pattern p;
    p.span = cur().span;
    auto sub = [&](std::string& out) {
      if (accept(Tok::Underscore)) { out.clear(); return; }
      out = ident();
    };
    if (accept(Tok::LBracket)) {
      expect(Tok::RBracket, "']'");
      p.kind = Pattern::Kind::Nil;
      return p;
    }
    std::string first;
    bool first_wild = at(Tok::Underscore);
    sub(first);
    if (at(Tok::ColonColon)) {
      advance();
      p.kind = Pattern::Kind::Cons;
      p.head = first;
      sub(p.tail);
      return p;
    }
    if (first_wild) {
      p.kind = Pattern::Kind::Wildcard;
    } else {
      p.kind = Pattern::Kind::Var;
      p.name = first;
    }
    return p;
  }

  // ---- proofs ---------------------------------------------------------

  std::string cited_name() {
    std::string n = ident();
    if (accept(Tok::Bang)) n += "!" + ident();
    return n;
  }

  bool at_just_keyword() const {
    switch (cur().kind) {
      case Tok::KwStep:
      case Tok::KwDefinition:
      case Tok::KwProperty:
      case Tok::KwHypothesis:
      case Tok::KwTheorem:
        return true;
      default:
        return false;
    }
  }

  Justification parse_justification() {
    Justification j;
    if (accept(Tok::KwConclude)) {
      j.is_conclude = true;
      return j;
    }
    expect(Tok::KwBy, "'by' or 'conclude'");
    if (!at_just_keyword()) error("a citation category after 'by'");
    while (at_just_keyword()) {
      Tok cat = advance().kind;
      if (cat == Tok::KwDefinition) expect(Tok::KwOf, "'of'");
      do {
        if (cat == Tok::KwStep) {
          j.steps.push_back(expect(Tok::StepLabel, "step label").text);
        } else {
          std::string n = cited_name();
          switch (cat) {
            case Tok::KwDefinition: j.definitions.push_back(n); break;
            case Tok::KwProperty: j.properties.push_back(n); break;
            case Tok::KwHypothesis: j.hypotheses.push_back(n); break;
            case Tok::KwTheorem: j.theorems.push_back(n); break;
            default: break;
          }
        }
      } while (accept(Tok::Comma));
    }
    return j;
  }

  // Parses the label "<3>f" into (level, id).
  static std::pair<int, std::string> split_label(const std::string& text) {
    size_t gt = text.find('>');
    int level = std::stoi(text.substr(1, gt - 1));
    return {level, text.substr(gt + 1)};
  }

  ProofStep parse_step_header() {
    ProofStep st;
    st.span = cur().span;
    auto [level, id] = split_label(expect(Tok::StepLabel, "step label").text);
    st.level = level;
    st.id = id;
    for (;;) {
      if (at(Tok::KwAssume)) {
        advance();
        Assume a;
        a.span = cur().span;
        a.names.push_back(ident());
        while (at(Tok::Ident)) a.names.push_back(advance().text);
        expect(Tok::Colon, "':'");
        a.type = parse_type();
        expect(Tok::Comma, "','");
        st.assumes.push_back(std::move(a));
      } else if (at(Tok::KwHypothesis)) {
        advance();
        Hypothesis h;
        h.span = cur().span;
        h.name = ident();
        expect(Tok::Colon, "':'");
        h.formula = parse_formula();
        expect(Tok::Comma, "','");
        st.hyps.push_back(std::move(h));
      } else {
        break;
      }
    }
    if (accept(Tok::KwProve)) {
      st.goal = parse_formula();
      if (at(Tok::KwBy) || at(Tok::KwConclude)) st.just = parse_justification();
    } else if (accept(Tok::KwQed)) {
      st.is_qed = true;
      st.just = parse_justification();
    } else if (accept(Tok::KwConclude)) {
      st.is_conclude = true;
    } else {
      error("'prove', 'qed' or 'conclude'");
    }
    return st;
  }

  std::vector<ProofStep> build_tree(std::vector<ProofStep>& flat, size_t& i,
                                    int level) {
    std::vector<ProofStep> out;
    while (i < flat.size() && flat[i].level >= level) {
      if (flat[i].level > level)
        fail("E-PARSE", flat[i].span,
             "proof step level jumps from " + std::to_string(level) + " to " +
                 std::to_string(flat[i].level));
      ProofStep st = std::move(flat[i]);
      i++;
      if (!st.is_qed && !st.is_conclude && !st.just && st.goal) {
        st.subs = build_tree(flat, i, level + 1);
      } else if (i < flat.size() && flat[i].level > level) {
        fail("E-PARSE", flat[i].span,
             "unexpected nested step under a closed step");
      }
      out.push_back(std::move(st));
    }
    return out;
  }

  Proof parse_proof() {
    Proof p;
    p.span = cur().span;
    if (at(Tok::KwBy) || at(Tok::KwConclude)) {
      p.is_direct = true;
      p.direct = parse_justification();
      return p;
    }
    std::vector<ProofStep> flat;
    while (at(Tok::StepLabel)) flat.push_back(parse_step_header());
    if (flat.empty()) error("a proof ('by', 'conclude' or proof steps)");
    size_t i = 0;
    p.steps = build_tree(flat, i, flat[0].level);
    if (i != flat.size())
      fail("E-PARSE", flat[i].span, "ill-nested proof step");
    return p;
  }

  // ---- species --------------------------------------------------------

  SpeciesExprRef parse_species_expr() {
    SpeciesExprRef ref;
    ref.span = cur().span;
    ref.name = ident();
    if (accept(Tok::LParen)) {
      if (!at(Tok::RParen)) {
        ref.args.push_back(ident());
        while (accept(Tok::Comma)) ref.args.push_back(ident());
      }
      expect(Tok::RParen, "')'");
    }
    return ref;
  }

  MethodDecl parse_let(bool is_logical, bool is_final) {
    MethodDecl m;
    m.span = cur().span;
    m.kind = is_logical ? MethodDecl::Kind::LogicalLet : MethodDecl::Kind::LetDef;
    m.is_final = is_final;
    expect(Tok::KwLet, "'let'");
    m.is_recursive = accept(Tok::KwRec);
    m.name = ident();
    if (accept(Tok::LParen)) {
      m.has_params = true;
      if (!at(Tok::RParen)) {
        do {
          std::string pn = ident();
          TypeExprPtr pt;
          if (accept(Tok::Colon)) pt = parse_type();
          m.params.emplace_back(std::move(pn), std::move(pt));
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen, "')'");
    }
    if (accept(Tok::Colon)) m.type = parse_type();
    expect(Tok::Eq, "'='");
    if (is_logical) {
      m.formula = parse_formula();
    } else {
      m.body = parse_expr();
    }
    if (at(Tok::KwTermination)) {
      advance();
      expect(Tok::KwProof, "'proof'");
      expect(Tok::Eq, "'='");
      expect(Tok::KwStructural, "'structural'");
      m.termination_var = ident();
    }
    if (m.is_recursive && !m.termination_var)
      fail("E-PARSE", m.span,
           "recursive definition '" + m.name + "' needs a termination proof");
    if (!m.is_recursive && m.termination_var)
      fail("E-PARSE", m.span,
           "termination proof on non-recursive definition '" + m.name + "'");
    expect(Tok::Semi, "';'");
    return m;
  }

  SpeciesDecl parse_species() {
    SpeciesDecl sp;
    sp.span = cur().span;
    expect(Tok::KwSpecies, "'species'");
    sp.name = ident();
    if (accept(Tok::LParen)) {
      do {
        std::string pname = ident();
        expect(Tok::KwIs, "'is'");
        sp.params.emplace_back(pname, parse_species_expr());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Eq, "'='");
    while (!at(Tok::KwEnd)) {
      if (at(Tok::Eof))
        fail("E-UNTERMINATED", sp.span,
             "species '" + sp.name + "' is missing 'end;;'");
      switch (cur().kind) {
        case Tok::KwInherit: {
          advance();
          do sp.inherits.push_back(parse_species_expr());
          while (accept(Tok::Comma));
          expect(Tok::Semi, "';'");
          break;
        }
        case Tok::KwSignature: {
          MethodDecl m;
          m.span = cur().span;
          m.kind = MethodDecl::Kind::Signature;
          advance();
          m.name = ident();
          expect(Tok::Colon, "':'");
          m.type = parse_type();
          expect(Tok::Semi, "';'");
          sp.methods.push_back(std::move(m));
          break;
        }
        case Tok::KwRepresentation: {
          MethodDecl m;
          m.span = cur().span;
          m.kind = MethodDecl::Kind::Representation;
          advance();
          expect(Tok::Eq, "'='");
          m.type = parse_type();
          expect(Tok::Semi, "';'");
          sp.methods.push_back(std::move(m));
          break;
        }
        case Tok::KwLet:
          sp.methods.push_back(parse_let(false, false));
          break;
        case Tok::KwLogical: {
          advance();
          bool fin = accept(Tok::KwFinal);
          sp.methods.push_back(parse_let(true, fin));
          break;
        }
        case Tok::KwFinal: {
          advance();
          bool logical = accept(Tok::KwLogical);
          sp.methods.push_back(parse_let(logical, true));
          break;
        }
        case Tok::KwProperty: {
          MethodDecl m;
          m.span = cur().span;
          m.kind = MethodDecl::Kind::Property;
          advance();
          m.name = ident();
          expect(Tok::Colon, "':'");
          m.formula = parse_formula();
          expect(Tok::Semi, "';'");
          sp.methods.push_back(std::move(m));
          break;
        }
        case Tok::KwTheorem: {
          MethodDecl m;
          m.span = cur().span;
          m.kind = MethodDecl::Kind::Theorem;
          advance();
          m.name = ident();
          expect(Tok::Colon, "':'");
          m.formula = parse_formula();
          expect(Tok::KwProof, "'proof'");
          expect(Tok::Eq, "'='");
          m.proof = parse_proof();
          expect(Tok::Semi, "';'");
          sp.methods.push_back(std::move(m));
          break;
        }
        case Tok::KwProof: {
          MethodDecl m;
          m.span = cur().span;
          m.kind = MethodDecl::Kind::ProofOf;
          advance();
          expect(Tok::KwOf, "'of'");
          m.name = ident();
          expect(Tok::Eq, "'='");
          m.proof = parse_proof();
          expect(Tok::Semi, "';'");
          sp.methods.push_back(std::move(m));
          break;
        }
        default:
          error("a method declaration or 'end'");
      }
    }
    advance();  // end
    expect(Tok::SemiSemi, "';;'");
    check_method_names(sp);
    return sp;
  }

  void check_method_names(const SpeciesDecl& sp) {
    std::set<std::string> defs, proofs;
    bool have_rep = false;
    for (const auto& m : sp.methods) {
      if (m.kind == MethodDecl::Kind::Representation) {
        if (have_rep)
          fail("E-PARSE", m.span, "duplicate representation clause");
        have_rep = true;
        continue;
      }
      auto& pool = m.kind == MethodDecl::Kind::ProofOf ? proofs : defs;
      if (!pool.insert(m.name).second)
        fail("E-PARSE", m.span,
             "duplicate method '" + m.name + "' in species '" + sp.name + "'");
    }
    std::set<std::string> pnames;
    for (const auto& [pn, _] : sp.params)
      if (!pnames.insert(pn).second)
        fail("E-PARSE", sp.span, "duplicate parameter '" + pn + "'");
  }

  CollectionDecl parse_collection() {
    CollectionDecl c;
    c.span = cur().span;
    expect(Tok::KwCollection, "'collection'");
    c.name = ident();
    expect(Tok::Eq, "'='");
    expect(Tok::KwImplement, "'implement'");
    c.implements = parse_species_expr();
    expect(Tok::Semi, "';'");
    expect(Tok::KwEnd, "'end'");
    expect(Tok::SemiSemi, "';;'");
    return c;
  }

  SourceUnit parse_unit() {
    SourceUnit u;
    u.file = file;
    std::set<std::string> names;
    while (!at(Tok::Eof)) {
      Phrase ph;
      if (at(Tok::KwSpecies)) {
        ph.kind = Phrase::Kind::Species;
        ph.species = parse_species();
      } else if (at(Tok::KwCollection)) {
        ph.kind = Phrase::Kind::Collection;
        ph.collection = parse_collection();
      } else {
        error("'species' or 'collection'");
      }
      if (!names.insert(ph.name()).second)
        fail("E-PARSE", ph.span(), "duplicate top-level name '" + ph.name() + "'");
      u.phrases.push_back(std::move(ph));
    }
    return u;
  }
};

}  // namespace

TypeExprPtr mk_type(TypeExpr::Kind k, Span sp) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = k;
  t->span = sp;
  return t;
}

ExprPtr mk_expr(Expr::Kind k, Span sp) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = sp;
  return e;
}

FormulaPtr mk_formula(Formula::Kind k, Span sp) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->span = sp;
  return f;
}

SourceUnit parse_unit(const std::vector<Token>& tokens, std::string file) {
  Parser p{tokens, 0, std::move(file)};
  return p.parse_unit();
}

SourceUnit parse_source(std::string_view source, std::string file) {
  return parse_unit(tokenize(source), std::move(file));
}

ExprPtr parse_expression(std::string_view source) {
  auto toks = tokenize(source);
  Parser p{toks, 0, {}};
  ExprPtr e = p.parse_expr();
  if (!p.at(Tok::Eof)) p.error("end of expression");
  return e;
}

FormulaPtr parse_formula_text(std::string_view source) {
  auto toks = tokenize(source);
  Parser p{toks, 0, {}};
  FormulaPtr f = p.parse_formula();
  if (!p.at(Tok::Eof)) p.error("end of formula");
  return f;
}

}  // namespace fcl
