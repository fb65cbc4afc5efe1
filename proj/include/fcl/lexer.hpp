#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fcl/diag.hpp"

namespace fcl {

enum class Tok {
  Ident,
  Int,
  StepLabel,  // <3>f
  // keywords
  KwSpecies, KwInherit, KwSignature, KwLet, KwRec, KwLogical, KwFinal,
  KwProperty, KwTheorem, KwProof, KwOf, KwRepresentation, KwCollection,
  KwImplement, KwAssume, KwHypothesis, KwProve, KwQed, KwBy, KwStep,
  KwDefinition, KwConclude, KwTermination, KwStructural, KwAll, KwEx, KwNot,
  KwMatch, KwWith, KwIf, KwThen, KwElse, KwEnd, KwIs, KwIn, KwTrue, KwFalse,
  KwBool, KwInt, KwSelf, KwList,
  // punctuation / operators
  LParen, RParen, LBracket, RBracket, Comma, Semi, SemiSemi, Colon, ColonColon,
  Eq, Arrow, Iff, AndF, OrF, AndE, OrE, Bang, Plus, Bar, Underscore,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  Span span;
  std::string text;  // identifier / integer / step label as written
};

// Lexes the whole input. Throws FclError (E-LEX) on an illegal character or
// unterminated comment. Comments (* ... *) nest and are skipped.
std::vector<Token> tokenize(std::string_view source);

const char* token_name(Tok k);

}  // namespace fcl
