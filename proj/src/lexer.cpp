#include "fcl/lexer.hpp"

#include <cctype>
#include <map>

namespace fcl {

namespace {

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"species", Tok::KwSpecies},       {"inherit", Tok::KwInherit},
    {"signature", Tok::KwSignature},   {"let", Tok::KwLet},
    {"rec", Tok::KwRec},               {"logical", Tok::KwLogical},
    {"final", Tok::KwFinal},           {"property", Tok::KwProperty},
    {"theorem", Tok::KwTheorem},       {"proof", Tok::KwProof},
    {"of", Tok::KwOf},                 {"representation", Tok::KwRepresentation},
    {"collection", Tok::KwCollection}, {"implement", Tok::KwImplement},
    {"assume", Tok::KwAssume},         {"hypothesis", Tok::KwHypothesis},
    {"prove", Tok::KwProve},           {"qed", Tok::KwQed},
    {"by", Tok::KwBy},                 {"step", Tok::KwStep},
    {"definition", Tok::KwDefinition}, {"conclude", Tok::KwConclude},
    {"termination", Tok::KwTermination}, {"structural", Tok::KwStructural},
    {"all", Tok::KwAll},               {"ex", Tok::KwEx},
    {"not", Tok::KwNot},               {"match", Tok::KwMatch},
    {"with", Tok::KwWith},             {"if", Tok::KwIf},
    {"then", Tok::KwThen},             {"else", Tok::KwElse},
    {"end", Tok::KwEnd},               {"is", Tok::KwIs},
    {"in", Tok::KwIn},
    {"true", Tok::KwTrue},             {"false", Tok::KwFalse},
    {"bool", Tok::KwBool},             {"int", Tok::KwInt},
    {"Self", Tok::KwSelf},             {"list", Tok::KwList},
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  uint32_t line = 1, col = 1;

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') { line++; col = 1; } else { col++; }
      pos++;
    }
  }

  Span here() const {
    return Span{static_cast<uint32_t>(pos), static_cast<uint32_t>(pos), line, col};
  }

  [[noreturn]] void error(Span sp, const std::string& msg) {
    fail("E-LEX", sp, msg);
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '(' && peek(1) == '*') {
        Span start = here();
        advance(); advance();
        int depth = 1;
        while (depth > 0) {
          if (pos >= src.size()) error(start, "unterminated comment");
          if (peek() == '(' && peek(1) == '*') { advance(); advance(); depth++; }
          else if (peek() == '*' && peek(1) == ')') { advance(); advance(); depth--; }
          else advance();
        }
      } else {
        return;
      }
    }
  }

  Token make(Tok k, Span start, std::string text = {}) {
    Token t;
    t.kind = k;
    t.span = start;
    t.span.end = static_cast<uint32_t>(pos);
    t.text = std::move(text);
    return t;
  }

  Token next() {
    skip_trivia();
    Span start = here();
    char c = peek();
    if (c == '\0') return make(Tok::Eof, start);

    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        word.push_back(peek());
        advance();
      }
      auto it = kKeywords.find(word);
      if (it != kKeywords.end()) return make(it->second, start, word);
      return make(Tok::Ident, start, word);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        num.push_back(peek());
        advance();
      }
      return make(Tok::Int, start, num);
    }

    switch (c) {
      case '(': advance(); return make(Tok::LParen, start);
      case ')': advance(); return make(Tok::RParen, start);
      case '[': advance(); return make(Tok::LBracket, start);
      case ']': advance(); return make(Tok::RBracket, start);
      case ',': advance(); return make(Tok::Comma, start);
      case '+': advance(); return make(Tok::Plus, start);
      case '!': advance(); return make(Tok::Bang, start);
      case '|':
        advance();
        if (peek() == '|') { advance(); return make(Tok::OrE, start); }
        return make(Tok::Bar, start);
      case '&':
        advance();
        if (peek() == '&') { advance(); return make(Tok::AndE, start); }
        error(start, "stray '&'");
      case ';':
        advance();
        if (peek() == ';') { advance(); return make(Tok::SemiSemi, start); }
        return make(Tok::Semi, start);
      case ':':
        advance();
        if (peek() == ':') { advance(); return make(Tok::ColonColon, start); }
        return make(Tok::Colon, start);
      case '=': advance(); return make(Tok::Eq, start);
      case '-':
        advance();
        if (peek() == '>') { advance(); return make(Tok::Arrow, start); }
        error(start, "stray '-'");
      case '/':
        advance();
        if (peek() == '\\') { advance(); return make(Tok::AndF, start); }
        error(start, "stray '/'");
      case '\\':
        advance();
        if (peek() == '/') { advance(); return make(Tok::OrF, start); }
        error(start, "stray '\\'");
      case '_':
        advance();
        if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
          // identifiers may not start with '_'; reserve bare '_' for wildcard
          error(start, "identifier may not start with '_'");
        }
        return make(Tok::Underscore, start);
      case '<': {
        // <-> or a step label <n>k
        if (peek(1) == '-' && peek(2) == '>') {
          advance(); advance(); advance();
          return make(Tok::Iff, start);
        }
        std::string text;
        text.push_back('<');
        advance();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
          error(start, "expected step label digits after '<'");
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          text.push_back(peek());
          advance();
        }
        if (peek() != '>') error(start, "unterminated step label");
        text.push_back('>');
        advance();
        if (!std::isalnum(static_cast<unsigned char>(peek())))
          error(start, "step label needs a single alphanumeric id");
        text.push_back(peek());
        advance();
        return make(Tok::StepLabel, start, text);
      }
      default:
        error(start, std::string("illegal character '") + c + "'");
    }
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  Lexer lx{source};
  std::vector<Token> out;
  for (;;) {
    Token t = lx.next();
    bool done = t.kind == Tok::Eof;
    out.push_back(std::move(t));
    if (done) break;
  }
  return out;
}

const char* token_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::StepLabel: return "step label";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::SemiSemi: return "';;'";
    case Tok::Colon: return "':'";
    case Tok::ColonColon: return "'::'";
    case Tok::Eq: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::AndF: return "'/\\'";
    case Tok::OrF: return "'\\/'";
    case Tok::AndE: return "'&&'";
    case Tok::OrE: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::Plus: return "'+'";
    case Tok::Bar: return "'|'";
    case Tok::Underscore: return "'_'";
    case Tok::Eof: return "end of input";
    default: return "keyword";
  }
}

}  // namespace fcl
