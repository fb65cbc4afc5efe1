#pragma once

#include "fcl/species.hpp"

namespace fcl {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Value {
  enum class Kind { Bool, Int, List, Closure, Opaque };
  Kind kind = Kind::Bool;
  bool b = false;
  BigInt i;
  std::vector<ValuePtr> list;
  std::string owner, method;  // Closure: collection+method; Opaque: owner
  ValuePtr inner;             // Opaque payload
};

ValuePtr v_bool(bool b);
ValuePtr v_int(BigInt i);
ValuePtr v_list(std::vector<ValuePtr> items);
ValuePtr v_opaque(std::string owner, ValuePtr inner);

// Surface literal syntax: true, 42, [1; 2]. Opaque values print their
// payload (the carrier stays abstract to programs, not to the console).
std::string print_value(const ValuePtr& v);
bool value_equal(const ValuePtr& a, const ValuePtr& b);  // structural

struct EvalBudget {
  long fuel = 1000000;  // max call steps
};

// Call-by-value interpreter over a collection's defined methods. `X!m`
// dispatches to the collection bound to parameter X. Optionally counts
// calls per method name (short-circuit instrumentation).
// Throws E-MATCH (no branch), E-FUEL, E-EVAL.
ValuePtr eval_method(const CollectionInfo& coll, const Env& env,
                     const std::string& method, std::vector<ValuePtr> args,
                     const EvalBudget& budget,
                     std::map<std::string, long>* call_counts = nullptr);

// Evaluates a ground surface expression against a collection (eval CLI).
ValuePtr eval_ground(const CollectionInfo& coll, const Env& env, const ExprPtr& e,
                     const EvalBudget& budget,
                     std::map<std::string, long>* call_counts = nullptr);

}  // namespace fcl
