#include "fcl/types.hpp"

namespace fcl {

namespace {
TypePtr mk(Type::Kind k) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  return t;
}
}  // namespace

TypePtr t_bool() { return mk(Type::Kind::Bool); }
TypePtr t_int() { return mk(Type::Kind::Int); }
TypePtr t_self() { return mk(Type::Kind::SelfT); }

TypePtr t_param(std::string name) {
  auto t = mk(Type::Kind::Param);
  t->name = std::move(name);
  return t;
}

TypePtr t_list(TypePtr elem) {
  auto t = mk(Type::Kind::List);
  t->args.push_back(std::move(elem));
  return t;
}

TypePtr t_arrow(std::vector<TypePtr> parts) {
  if (parts.size() == 1) return parts[0];
  auto t = mk(Type::Kind::Arrow);
  t->args = std::move(parts);
  return t;
}

std::string type_name(const TypePtr& t) {
  if (!t) return "?";
  switch (t->kind) {
    case Type::Kind::Bool: return "bool";
    case Type::Kind::Int: return "int";
    case Type::Kind::SelfT: return "Self";
    case Type::Kind::Param: return t->name;
    case Type::Kind::List: return "list(" + type_name(t->args[0]) + ")";
    case Type::Kind::Var: return "?" + std::to_string(t->var_id);
    case Type::Kind::Arrow: {
      std::string s;
      for (size_t i = 0; i < t->args.size(); i++) {
        if (i) s += " -> ";
        bool paren = t->args[i]->kind == Type::Kind::Arrow;
        if (paren) s += "(";
        s += type_name(t->args[i]);
        if (paren) s += ")";
      }
      return s;
    }
  }
  return "?";
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->var_id != b->var_id)
    return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!type_equal(a->args[i], b->args[i])) return false;
  return true;
}

TypePtr resolve_type(const TypeExprPtr& t, const std::vector<std::string>& params) {
  switch (t->kind) {
    case TypeExpr::Kind::SelfT: return t_self();
    case TypeExpr::Kind::Bool: return t_bool();
    case TypeExpr::Kind::Int: return t_int();
    case TypeExpr::Kind::Param: {
      for (const auto& p : params)
        if (p == t->name) return t_param(t->name);
      fail("E-TYPE", t->span, "unknown type name '" + t->name + "'");
    }
    case TypeExpr::Kind::List:
      return t_list(resolve_type(t->args[0], params));
    case TypeExpr::Kind::Arrow: {
      std::vector<TypePtr> parts;
      for (const auto& a : t->args) parts.push_back(resolve_type(a, params));
      return t_arrow(std::move(parts));
    }
  }
  fail("E-TYPE", t->span, "malformed type");
}

TypePtr unfold_self(const TypePtr& t, const TypePtr& carrier) {
  if (!t || !carrier) return t;
  if (t->kind == Type::Kind::SelfT) return carrier;
  if (t->args.empty()) return t;
  auto r = std::make_shared<Type>(*t);
  for (auto& a : r->args) a = unfold_self(a, carrier);
  return r;
}

TypePtr rename_param(const TypePtr& t, const std::string& from, const std::string& to) {
  if (!t) return t;
  if (t->kind == Type::Kind::Param && t->name == from) return t_param(to);
  if (t->args.empty()) return t;
  auto r = std::make_shared<Type>(*t);
  for (auto& a : r->args) a = rename_param(a, from, to);
  return r;
}

}  // namespace fcl
