#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace fcl {

// Half-open byte range into the source text, plus 1-based line/column of
// the start for human-readable output.
struct Span {
  uint32_t begin = 0;
  uint32_t end = 0;
  uint32_t line = 1;
  uint32_t col = 1;

  bool operator==(const Span&) const = default;
};

enum class Severity { Error, Warning, Info };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;     // stable identifier, e.g. E-TYPECLASH
  std::string file;
  Span span;
  std::string message;
  std::string step;     // proof step label, when applicable
};

// Fatal first-error reporting: phases throw, the driver catches and renders.
class FclError : public std::runtime_error {
public:
  explicit FclError(Diagnostic d)
      : std::runtime_error(d.code + ": " + d.message), diag(std::move(d)) {}

  Diagnostic diag;
};

[[noreturn]] inline void fail(std::string code, Span span, std::string msg) {
  throw FclError(Diagnostic{Severity::Error, std::move(code), "", span,
                            std::move(msg), ""});
}

}  // namespace fcl
