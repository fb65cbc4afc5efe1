#include "fcl/driver.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fcl/checker.hpp"
#include "fcl/eval.hpp"
#include "fcl/parser.hpp"
#include "fcl/printer.hpp"
#include "fcl/typecheck.hpp"

namespace fcl {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void render_diag(const Diagnostic& d, bool json, std::ostream& err) {
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    j.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                 {"code", d.code},
                 {"file", d.file},
                 {"line", d.span.line},
                 {"col", d.span.col},
                 {"message", d.message},
                 {"step", d.step}});
    err << j.dump() << "\n";
  } else {
    err << "error[" << d.code << "] " << d.file << ":" << d.span.line << ":"
        << d.span.col << ": " << d.message << "\n";
  }
}

const char* outcome_str(ProverOutcome::Kind k) {
  switch (k) {
    case ProverOutcome::Kind::Proved: return "PROVED";
    case ProverOutcome::Kind::Budget: return "BUDGET";
    default: return "FAILED";
  }
}

// Runs the full pipeline over already-expanded files, accumulating `env`.
// Reports go to `out` when non-null. Returns false when any theorem ends
// FAILED/BUDGET or a proof was erased and left unproved.
bool run_pipeline(const std::vector<std::string>& files, const DriverOptions& opt,
                  Env& env, std::ostream* out) {
  bool clean = true;
  for (const auto& file : files) {
    SourceUnit unit;
    try {
      unit = parse_source(read_file(file), file);
    } catch (FclError& e) {
      e.diag.file = file;
      throw;
    }
    for (const auto& ph : unit.phrases) {
      try {
        if (ph.kind == Phrase::Kind::Species) {
          FlatSpecies flat = flatten(ph.species, env);
          typecheck(flat, env);
          check_termination(flat);
          CheckReport report = check_species(flat, env, opt.budget);
          if (out) {
            for (const auto& m : flat.methods) {
              if (m.kind != MethodEntry::Kind::Statement) continue;
              const TheoremReport* tr = nullptr;
              for (const auto& t : report.theorems)
                if (t.name == m.name) tr = &t;
              if (tr) {
                for (const auto& s : tr->steps)
                  *out << "THEOREM " << flat.name << "." << m.name << " " << s.label
                       << " " << outcome_str(s.outcome) << " " << s.millis << "\n";
                *out << "THEOREM " << flat.name << "." << m.name << " - "
                     << (tr->proved ? "PROVED" : "FAILED") << "\n";
              } else if (m.erased) {
                *out << "THEOREM " << flat.name << "." << m.name << " - UNPROVED\n";
              }
            }
          }
          for (const auto& t : report.theorems)
            if (!t.proved) clean = false;
          for (const auto& m : flat.methods)
            if (m.kind == MethodEntry::Kind::Statement && m.erased && !m.proved)
              clean = false;
          env.order.push_back(flat.name);
          env.species[flat.name] = std::move(flat);
        } else {
          CollectionInfo ci = make_collection(ph.collection, env);
          env.collections[ci.name] = std::move(ci);
        }
      } catch (FclError& e) {
        if (e.diag.file.empty()) e.diag.file = file;
        throw;
      }
    }
  }
  return clean;
}

}  // namespace

std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  auto add = [&](const std::string& f) {
    for (const auto& x : files)
      if (x == f) return;
    files.push_back(f);
  };
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::string manifest = (fs::path(p) / "manifest.txt").string();
      std::istringstream in(read_file(manifest));
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        add((fs::path(p) / tok).string());
      }
    } else {
      add(p);
    }
  }
  return files;
}

int cmd_check(const std::vector<std::string>& paths, const DriverOptions& opt,
              std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> files = expand_paths(paths);
    Env env;
    bool clean = run_pipeline(files, opt, env, &out);
    return clean ? 0 : 1;
  } catch (const FclError& e) {
    render_diag(e.diag, opt.json, err);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_eval(const std::string& path, const std::string& collection,
             const std::string& expr_text, const DriverOptions& opt,
             std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> files = expand_paths({path});
    Env env;
    run_pipeline(files, opt, env, nullptr);
    const CollectionInfo* coll = env.find_collection(collection);
    if (!coll) {
      err << "error: unknown collection '" << collection << "'\n";
      return 1;
    }
    ExprPtr e = parse_expression(expr_text);
    type_of_ground_expr(e, coll->flat, env);
    EvalBudget budget;
    budget.fuel = opt.fuel;
    ValuePtr v = eval_ground(*coll, env, e, budget);
    out << print_value(v) << "\n";
    return 0;
  } catch (const FclError& e) {
    render_diag(e.diag, opt.json, err);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_deps(const std::string& path, const DriverOptions& opt,
             std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> files = expand_paths({path});
    Env env;
    for (const auto& file : files) {
      SourceUnit unit = parse_source(read_file(file), file);
      for (const auto& ph : unit.phrases) {
        if (ph.kind != Phrase::Kind::Species) continue;
        FlatSpecies flat = flatten(ph.species, env);
        for (const auto& edge : dependency_edges(flat)) out << edge << "\n";
        env.order.push_back(flat.name);
        env.species[flat.name] = std::move(flat);
      }
    }
    return 0;
  } catch (const FclError& e) {
    render_diag(e.diag, opt.json, err);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_fmt(const std::string& path, const DriverOptions& opt,
            std::ostream& out, std::ostream& err) {
  try {
    SourceUnit unit = parse_source(read_file(path), path);
    out << pretty_print(unit);
    return 0;
  } catch (const FclError& e) {
    render_diag(e.diag, opt.json, err);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fcl
