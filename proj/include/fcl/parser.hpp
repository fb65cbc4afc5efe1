#pragma once

#include <vector>

#include "fcl/ast.hpp"
#include "fcl/lexer.hpp"

namespace fcl {

// Parses a whole source unit. Throws FclError (E-PARSE, E-UNTERMINATED) on
// the first error; there is no recovery.
SourceUnit parse_unit(const std::vector<Token>& tokens, std::string file = {});
SourceUnit parse_source(std::string_view source, std::string file = {});

// Entry point for the eval subcommand: a single ground expression.
ExprPtr parse_expression(std::string_view source);

// Exposed for tests.
FormulaPtr parse_formula_text(std::string_view source);

}  // namespace fcl
