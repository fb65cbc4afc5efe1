#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fcl/prover.hpp"

namespace fcl {

struct DriverOptions {
  SearchBudget budget;
  long fuel = 1000000;
  bool json = false;
  int jobs = 1;  // accepted for interface stability; checking is sequential
};

// Exit codes: 0 clean, 1 check/eval failures, 2 usage or I/O errors.
// Reports go to `out`, diagnostics to `err`.
int cmd_check(const std::vector<std::string>& paths, const DriverOptions& opt,
              std::ostream& out, std::ostream& err);
int cmd_eval(const std::string& path, const std::string& collection,
             const std::string& expr_text, const DriverOptions& opt,
             std::ostream& out, std::ostream& err);
int cmd_deps(const std::string& path, const DriverOptions& opt,
             std::ostream& out, std::ostream& err);
int cmd_fmt(const std::string& path, const DriverOptions& opt,
            std::ostream& out, std::ostream& err);

// Expands a directory path via its manifest.txt (first token of each
// non-comment line, deduplicated in order); files are returned as given.
std::vector<std::string> expand_paths(const std::vector<std::string>& paths);

}  // namespace fcl
