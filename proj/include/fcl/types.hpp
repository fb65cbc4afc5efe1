#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fcl/ast.hpp"

namespace fcl {

// Semantic types shared by the typechecker (which also uses unification
// variables) and the kernel (whose sorts are ground types).
struct Type;
using TypePtr = std::shared_ptr<Type>;

struct Type {
  enum class Kind { Bool, Int, SelfT, Param, List, Arrow, Var };
  Kind kind = Kind::Bool;
  std::string name;           // Param: parameter/collection name
  std::vector<TypePtr> args;  // List: [elem]; Arrow: params..., result
  int var_id = -1;            // Var
};

TypePtr t_bool();
TypePtr t_int();
TypePtr t_self();
TypePtr t_param(std::string name);
TypePtr t_list(TypePtr elem);
TypePtr t_arrow(std::vector<TypePtr> parts);  // params..., result

std::string type_name(const TypePtr& t);
bool type_equal(const TypePtr& a, const TypePtr& b);

// Resolves a surface TypeExpr. `params` lists the species parameter names
// legal as ParamRef. Throws E-TYPE on an unknown name.
TypePtr resolve_type(const TypeExprPtr& t, const std::vector<std::string>& params);

// Replaces SelfT by `carrier` (used once a representation is known).
TypePtr unfold_self(const TypePtr& t, const TypePtr& carrier);

// Renames Param(`from`) to Param(`to`) (parameter instantiation).
TypePtr rename_param(const TypePtr& t, const std::string& from, const std::string& to);

}  // namespace fcl
