#pragma once

#include <string>

#include "fcl/ast.hpp"

namespace fcl {

// Renders an AST back to surface syntax. The output reparses to a
// structurally equal AST (round-trip property behind the fmt subcommand).
std::string pretty_print(const SourceUnit& unit);
std::string print_type(const TypeExprPtr& t);
std::string print_expr(const ExprPtr& e);
std::string print_formula(const FormulaPtr& f);

}  // namespace fcl
