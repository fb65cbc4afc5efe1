#include "fcl/eval.hpp"

namespace fcl {

namespace {
std::shared_ptr<Value> mkv(Value::Kind k) {
  auto v = std::make_shared<Value>();
  v->kind = k;
  return v;
}
}  // namespace

ValuePtr v_bool(bool b) {
  auto v = mkv(Value::Kind::Bool);
  v->b = b;
  return v;
}

ValuePtr v_int(BigInt i) {
  auto v = mkv(Value::Kind::Int);
  v->i = std::move(i);
  return v;
}

ValuePtr v_list(std::vector<ValuePtr> items) {
  auto v = mkv(Value::Kind::List);
  v->list = std::move(items);
  return v;
}

ValuePtr v_opaque(std::string owner, ValuePtr inner) {
  auto v = mkv(Value::Kind::Opaque);
  v->owner = std::move(owner);
  v->inner = std::move(inner);
  return v;
}

std::string print_value(const ValuePtr& v) {
  if (!v) return "?";
  switch (v->kind) {
    case Value::Kind::Bool: return v->b ? "true" : "false";
    case Value::Kind::Int: return v->i.str();
    case Value::Kind::List: {
      std::string s = "[";
      for (size_t i = 0; i < v->list.size(); i++) {
        if (i) s += "; ";
        s += print_value(v->list[i]);
      }
      return s + "]";
    }
    case Value::Kind::Closure: return "<" + v->owner + "!" + v->method + ">";
    case Value::Kind::Opaque: return print_value(v->inner);
  }
  return "?";
}

bool value_equal(const ValuePtr& a0, const ValuePtr& b0) {
  const Value* a = a0.get();
  const Value* b = b0.get();
  while (a && a->kind == Value::Kind::Opaque) a = a->inner.get();
  while (b && b->kind == Value::Kind::Opaque) b = b->inner.get();
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Value::Kind::Bool: return a->b == b->b;
    case Value::Kind::Int: return a->i == b->i;
    case Value::Kind::List: {
      if (a->list.size() != b->list.size()) return false;
      for (size_t i = 0; i < a->list.size(); i++)
        if (!value_equal(a->list[i], b->list[i])) return false;
      return true;
    }
    case Value::Kind::Closure: return a->owner == b->owner && a->method == b->method;
    case Value::Kind::Opaque: return false;  // unreachable after unwrapping
  }
  return false;
}

namespace {

struct Interp {
  const Env& env;
  long fuel;
  std::map<std::string, long>* counts;

  using Locals = std::map<std::string, ValuePtr>;

  [[noreturn]] void err(Span sp, const std::string& msg) { fail("E-EVAL", sp, msg); }

  ValuePtr call(const CollectionInfo& coll, const std::string& method,
                std::vector<ValuePtr> args, Span sp) {
    const MethodEntry* m = coll.flat.find(method);
    if (!m || m->kind != MethodEntry::Kind::Function)
      err(sp, "collection '" + coll.name + "' has no function '" + method + "'");
    if (!m->defined || !m->body)
      err(sp, "function '" + coll.name + "!" + method + "' has no definition");
    if (args.size() != m->params.size())
      err(sp, "'" + coll.name + "!" + method + "' expects " +
                  std::to_string(m->params.size()) + " argument(s)");
    if (--fuel < 0) fail("E-FUEL", sp, "evaluation fuel exhausted");
    if (counts) ++(*counts)[method];
    Locals locals;
    for (size_t i = 0; i < args.size(); i++)
      locals[m->params[i].first] = std::move(args[i]);
    return eval(coll, m->body, locals);
  }

  ValuePtr eval(const CollectionInfo& coll, const ExprPtr& e, Locals& locals) {
    switch (e->kind) {
      case Expr::Kind::Var: {
        auto it = locals.find(e->name);
        if (it != locals.end()) return it->second;
        const MethodEntry* m = coll.flat.find(e->name);
        if (m && m->kind == MethodEntry::Kind::Function) {
          if (m->has_params) {
            auto v = mkv(Value::Kind::Closure);
            v->owner = coll.name;
            v->method = e->name;
            return v;
          }
          return call(coll, e->name, {}, e->span);
        }
        err(e->span, "unbound name '" + e->name + "'");
      }
      case Expr::Kind::BoolLit: return v_bool(e->bval);
      case Expr::Kind::IntLit: return v_int(e->ival);
      case Expr::Kind::App: {
        if (e->name == "+") {
          ValuePtr a = eval(coll, e->args[0], locals);
          ValuePtr b = eval(coll, e->args[1], locals);
          if (a->kind != Value::Kind::Int || b->kind != Value::Kind::Int)
            err(e->span, "'+' needs integer operands");
          return v_int(a->i + b->i);
        }
        if (e->name == "=") {
          ValuePtr a = eval(coll, e->args[0], locals);
          ValuePtr b = eval(coll, e->args[1], locals);
          return v_bool(value_equal(a, b));
        }
        std::vector<ValuePtr> args;
        for (const auto& a : e->args) args.push_back(eval(coll, a, locals));
        auto it = locals.find(e->name);
        if (it != locals.end()) {
          ValuePtr f = it->second;
          while (f && f->kind == Value::Kind::Opaque) f = f->inner;
          if (!f || f->kind != Value::Kind::Closure)
            err(e->span, "'" + e->name + "' is not callable");
          const CollectionInfo* target = env.find_collection(f->owner);
          if (!target) err(e->span, "unknown collection '" + f->owner + "'");
          return call(*target, f->method, std::move(args), e->span);
        }
        return call(coll, e->name, std::move(args), e->span);
      }
      case Expr::Kind::QualifiedCall: {
        const CollectionInfo* target = env.find_collection(e->name);
        if (!target)
          err(e->span, "'" + e->name + "' is not a known collection");
        std::vector<ValuePtr> args;
        for (const auto& a : e->args) args.push_back(eval(coll, a, locals));
        if (e->args.empty()) {
          const MethodEntry* m = target->flat.find(e->method);
          if (m && m->kind == MethodEntry::Kind::Function && m->has_params) {
            auto v = mkv(Value::Kind::Closure);
            v->owner = target->name;
            v->method = e->method;
            return v;
          }
        }
        return call(*target, e->method, std::move(args), e->span);
      }
      case Expr::Kind::If: {
        ValuePtr c = eval(coll, e->args[0], locals);
        if (c->kind != Value::Kind::Bool) err(e->span, "condition is not a boolean");
        return eval(coll, c->b ? e->args[1] : e->args[2], locals);
      }
      case Expr::Kind::Match: {
        ValuePtr s = eval(coll, e->args[0], locals);
        const Value* sv = s.get();
        while (sv && sv->kind == Value::Kind::Opaque) sv = sv->inner.get();
        for (const auto& br : e->branches) {
          switch (br.pat.kind) {
            case Pattern::Kind::Wildcard:
              return eval(coll, br.body, locals);
            case Pattern::Kind::Var: {
              Locals inner = locals;
              inner[br.pat.name] = s;
              return eval(coll, br.body, inner);
            }
            case Pattern::Kind::Nil:
              if (sv->kind == Value::Kind::List && sv->list.empty())
                return eval(coll, br.body, locals);
              break;
            case Pattern::Kind::Cons:
              if (sv->kind == Value::Kind::List && !sv->list.empty()) {
                Locals inner = locals;
                if (!br.pat.head.empty()) inner[br.pat.head] = sv->list.front();
                if (!br.pat.tail.empty())
                  inner[br.pat.tail] = v_list(std::vector<ValuePtr>(
                      sv->list.begin() + 1, sv->list.end()));
                return eval(coll, br.body, inner);
              }
              break;
          }
        }
        fail("E-MATCH", e->span, "no pattern matches " + print_value(s));
      }
      case Expr::Kind::LocalLet: {
        ValuePtr bound = eval(coll, e->args[0], locals);
        Locals inner = locals;
        inner[e->name] = std::move(bound);
        return eval(coll, e->args[1], inner);
      }
      case Expr::Kind::And: {
        ValuePtr a = eval(coll, e->args[0], locals);
        if (a->kind != Value::Kind::Bool) err(e->span, "'&&' needs booleans");
        if (!a->b) return v_bool(false);
        return eval(coll, e->args[1], locals);
      }
      case Expr::Kind::Or: {
        ValuePtr a = eval(coll, e->args[0], locals);
        if (a->kind != Value::Kind::Bool) err(e->span, "'||' needs booleans");
        if (a->b) return v_bool(true);
        return eval(coll, e->args[1], locals);
      }
      case Expr::Kind::Not: {
        ValuePtr a = eval(coll, e->args[0], locals);
        if (a->kind != Value::Kind::Bool) err(e->span, "'not' needs a boolean");
        return v_bool(!a->b);
      }
      case Expr::Kind::Nil: return v_list({});
      case Expr::Kind::Cons: {
        ValuePtr h = eval(coll, e->args[0], locals);
        ValuePtr t = eval(coll, e->args[1], locals);
        const Value* tv = t.get();
        while (tv && tv->kind == Value::Kind::Opaque) tv = tv->inner.get();
        if (tv->kind != Value::Kind::List) err(e->span, "'::' needs a list tail");
        std::vector<ValuePtr> items;
        items.reserve(tv->list.size() + 1);
        items.push_back(std::move(h));
        items.insert(items.end(), tv->list.begin(), tv->list.end());
        return v_list(std::move(items));
      }
    }
    err(e->span, "malformed expression");
  }
};

}  // namespace

ValuePtr eval_method(const CollectionInfo& coll, const Env& env,
                     const std::string& method, std::vector<ValuePtr> args,
                     const EvalBudget& budget, std::map<std::string, long>* call_counts) {
  Interp in{env, budget.fuel, call_counts};
  return in.call(coll, method, std::move(args), Span{});
}

ValuePtr eval_ground(const CollectionInfo& coll, const Env& env, const ExprPtr& e,
                     const EvalBudget& budget, std::map<std::string, long>* call_counts) {
  Interp in{env, budget.fuel, call_counts};
  Interp::Locals locals;
  return in.eval(coll, e, locals);
}

}  // namespace fcl
