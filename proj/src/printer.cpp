#include "fcl/printer.hpp"

#include <sstream>

namespace fcl {

namespace {

// Precedence levels mirror the parser tower: 1 <->, 2 ->, 3 \/, 4 /\,
// 5 not, 6 =, 7 ||, 8 &&, 9 ::, 10 +, 11 atoms. Quantifiers and the
// greedy expression forms (if/match/let) rank 0 and get parenthesized
// whenever they are embedded.
int expr_level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or: return 7;
    case Expr::Kind::And: return 8;
    case Expr::Kind::Not: return 5;
    case Expr::Kind::Cons: return 9;
    case Expr::Kind::App: return e.name == "+" ? 10 : e.name == "=" ? 6 : 11;
    case Expr::Kind::If:
    case Expr::Kind::Match:
    case Expr::Kind::LocalLet: return 0;
    default: return 11;
  }
}

int formula_level(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    case Formula::Kind::Eq: return 6;
    case Formula::Kind::All:
    case Formula::Kind::Ex: return 0;
    case Formula::Kind::Atom: return 11;
  }
  return 11;
}

struct Printer {
  std::ostringstream out;

  void expr(const ExprPtr& e, int min_level) {
    bool paren = expr_level(*e) < min_level;
    if (paren) out << "(";
    switch (e->kind) {
      case Expr::Kind::Var: out << e->name; break;
      case Expr::Kind::BoolLit: out << (e->bval ? "true" : "false"); break;
      case Expr::Kind::IntLit: out << e->ival; break;
      case Expr::Kind::App:
        if (e->name == "+" || e->name == "=") {
          expr(e->args[0], e->name == "+" ? 10 : 7);
          out << " " << e->name << " ";
          expr(e->args[1], e->name == "+" ? 11 : 7);
        } else {
          out << e->name << "(";
          args(e->args);
          out << ")";
        }
        break;
      case Expr::Kind::QualifiedCall:
        out << e->name << "!" << e->method;
        if (!e->args.empty()) {
          out << "(";
          args(e->args);
          out << ")";
        }
        break;
      case Expr::Kind::If:
        out << "if ";
        expr(e->args[0], 0);
        out << " then ";
        expr(e->args[1], 0);
        out << " else ";
        expr(e->args[2], 0);
        break;
      case Expr::Kind::Match:
        out << "match ";
        expr(e->args[0], 1);
        out << " with";
        for (const auto& br : e->branches) {
          out << " | ";
          pattern(br.pat);
          out << " -> ";
          expr(br.body, 1);
        }
        break;
      case Expr::Kind::LocalLet:
        out << "let " << e->name << " = ";
        expr(e->args[0], 1);
        out << " in ";
        expr(e->args[1], 0);
        break;
      case Expr::Kind::And:
        expr(e->args[0], 8);
        out << " && ";
        expr(e->args[1], 9);
        break;
      case Expr::Kind::Or:
        expr(e->args[0], 7);
        out << " || ";
        expr(e->args[1], 8);
        break;
      case Expr::Kind::Not:
        out << "not ";
        expr(e->args[0], 5);
        break;
      case Expr::Kind::Nil: out << "[]"; break;
      case Expr::Kind::Cons:
        expr(e->args[0], 10);
        out << " :: ";
        expr(e->args[1], 9);
        break;
    }
    if (paren) out << ")";
  }

  void args(const std::vector<ExprPtr>& as) {
    for (size_t i = 0; i < as.size(); i++) {
      if (i) out << ", ";
      expr(as[i], 1);
    }
  }

  void pattern(const Pattern& p) {
    switch (p.kind) {
      case Pattern::Kind::Wildcard: out << "_"; break;
      case Pattern::Kind::Var: out << p.name; break;
      case Pattern::Kind::Nil: out << "[]"; break;
      case Pattern::Kind::Cons:
        out << (p.head.empty() ? "_" : p.head) << " :: "
            << (p.tail.empty() ? "_" : p.tail);
        break;
    }
  }

  void type(const TypeExprPtr& t, bool atom_pos = false) {
    switch (t->kind) {
      case TypeExpr::Kind::SelfT: out << "Self"; break;
      case TypeExpr::Kind::Bool: out << "bool"; break;
      case TypeExpr::Kind::Int: out << "int"; break;
      case TypeExpr::Kind::Param: out << t->name; break;
      case TypeExpr::Kind::List:
        out << "list(";
        type(t->args[0]);
        out << ")";
        break;
      case TypeExpr::Kind::Arrow:
        if (atom_pos) out << "(";
        for (size_t i = 0; i < t->args.size(); i++) {
          if (i) out << " -> ";
          type(t->args[i], true);
        }
        if (atom_pos) out << ")";
        break;
    }
  }

  void formula(const FormulaPtr& f, int min_level) {
    bool paren = formula_level(*f) < min_level;
    if (paren) out << "(";
    switch (f->kind) {
      case Formula::Kind::All:
      case Formula::Kind::Ex: {
        out << (f->kind == Formula::Kind::All ? "all" : "ex");
        for (const auto& v : f->vars) out << " " << v;
        out << " : ";
        type(f->vtype);
        out << ", ";
        formula(f->a, 0);
        break;
      }
      case Formula::Kind::Iff:
        formula(f->a, 1);
        out << " <-> ";
        formula(f->b, 2);
        break;
      case Formula::Kind::Implies:
        formula(f->a, 3);
        out << " -> ";
        formula(f->b, 2);
        break;
      case Formula::Kind::Or:
        formula(f->a, 3);
        out << " \\/ ";
        formula(f->b, 4);
        break;
      case Formula::Kind::And:
        formula(f->a, 4);
        out << " /\\ ";
        formula(f->b, 5);
        break;
      case Formula::Kind::Not:
        out << "not ";
        formula(f->a, 5);
        break;
      case Formula::Kind::Eq:
        expr(f->ea, 7);
        out << " = ";
        expr(f->eb, 7);
        break;
      case Formula::Kind::Atom:
        expr(f->ea, min_level > 6 ? min_level : 7);
        break;
    }
    if (paren) out << ")";
  }

  void justification(const Justification& j) {
    if (j.is_conclude) {
      out << "conclude";
      return;
    }
    out << "by";
    auto cat = [&](const char* kw, const std::vector<std::string>& names) {
      if (names.empty()) return;
      out << " " << kw;
      for (size_t i = 0; i < names.size(); i++)
        out << (i ? ", " : " ") << names[i];
    };
    cat("step", j.steps);
    cat("hypothesis", j.hypotheses);
    cat("definition of", j.definitions);
    cat("property", j.properties);
    cat("theorem", j.theorems);
  }

  void step(const ProofStep& st, int indent) {
    std::string pad(static_cast<size_t>(indent), ' ');
    out << pad << st.label() << " ";
    for (const auto& a : st.assumes) {
      out << "assume";
      for (const auto& n : a.names) out << " " << n;
      out << " : ";
      type(a.type);
      out << ",\n" << pad << "     ";
    }
    for (const auto& h : st.hyps) {
      out << "hypothesis " << h.name << " : ";
      formula(h.formula, 0);
      out << ",\n" << pad << "     ";
    }
    if (st.goal) {
      out << "prove ";
      formula(st.goal, 0);
      if (st.just) {
        out << "\n" << pad << "  ";
        justification(*st.just);
      }
    } else if (st.is_qed) {
      out << "qed ";
      justification(*st.just);
    } else {
      out << "conclude";
    }
    out << "\n";
    for (const auto& sub : st.subs) step(sub, indent + 2);
  }

  void proof(const Proof& p) {
    if (p.is_direct) {
      out << " ";
      justification(p.direct);
    } else {
      out << "\n";
      for (const auto& st : p.steps) step(st, 2);
      out << " ";
    }
  }

  void method(const MethodDecl& m) {
    out << " ";
    switch (m.kind) {
      case MethodDecl::Kind::Signature:
        out << "signature " << m.name << " : ";
        type(m.type);
        break;
      case MethodDecl::Kind::Representation:
        out << "representation = ";
        type(m.type);
        break;
      case MethodDecl::Kind::LetDef:
      case MethodDecl::Kind::LogicalLet: {
        if (m.kind == MethodDecl::Kind::LogicalLet) out << "logical ";
        if (m.is_final) out << "final ";
        out << "let ";
        if (m.is_recursive) out << "rec ";
        out << m.name;
        if (m.has_params) {
          out << "(";
          for (size_t i = 0; i < m.params.size(); i++) {
            if (i) out << ", ";
            out << m.params[i].first;
            if (m.params[i].second) {
              out << " : ";
              type(m.params[i].second);
            }
          }
          out << ")";
        }
        if (m.type) {
          out << " : ";
          type(m.type);
        }
        out << " = ";
        if (m.kind == MethodDecl::Kind::LogicalLet) {
          formula(m.formula, 0);
        } else {
          expr(m.body, 0);
        }
        if (m.termination_var)
          out << "\n  termination proof = structural " << *m.termination_var;
        break;
      }
      case MethodDecl::Kind::Property:
        out << "property " << m.name << " : ";
        formula(m.formula, 0);
        break;
      case MethodDecl::Kind::Theorem:
        out << "theorem " << m.name << " : ";
        formula(m.formula, 0);
        out << "\n  proof =";
        proof(*m.proof);
        break;
      case MethodDecl::Kind::ProofOf:
        out << "proof of " << m.name << " =";
        proof(*m.proof);
        break;
    }
    out << ";\n";
  }

  void unit(const SourceUnit& u) {
    bool first = true;
    for (const auto& ph : u.phrases) {
      if (!first) out << "\n";
      first = false;
      if (ph.kind == Phrase::Kind::Species) {
        const auto& sp = ph.species;
        out << "species " << sp.name;
        if (!sp.params.empty()) {
          out << " (";
          for (size_t i = 0; i < sp.params.size(); i++) {
            if (i) out << ", ";
            out << sp.params[i].first << " is ";
            species_expr(sp.params[i].second);
          }
          out << ")";
        }
        out << " =\n";
        if (!sp.inherits.empty()) {
          out << " inherit ";
          for (size_t i = 0; i < sp.inherits.size(); i++) {
            if (i) out << ", ";
            species_expr(sp.inherits[i]);
          }
          out << ";\n";
        }
        for (const auto& m : sp.methods) method(m);
        out << "end;;\n";
      } else {
        out << "collection " << ph.collection.name << " = implement ";
        species_expr(ph.collection.implements);
        out << "; end;;\n";
      }
    }
  }

  void species_expr(const SpeciesExprRef& ref) {
    out << ref.name;
    if (!ref.args.empty()) {
      out << "(";
      for (size_t i = 0; i < ref.args.size(); i++) {
        if (i) out << ", ";
        out << ref.args[i];
      }
      out << ")";
    }
  }
};

}  // namespace

std::string pretty_print(const SourceUnit& unit) {
  Printer p;
  p.unit(unit);
  return p.out.str();
}

std::string print_type(const TypeExprPtr& t) {
  Printer p;
  p.type(t);
  return p.out.str();
}

std::string print_expr(const ExprPtr& e) {
  Printer p;
  p.expr(e, 0);
  return p.out.str();
}

std::string print_formula(const FormulaPtr& f) {
  Printer p;
  p.formula(f, 0);
  return p.out.str();
}

}  // namespace fcl
