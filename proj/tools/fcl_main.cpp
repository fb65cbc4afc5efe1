#include <CLI11.hpp>
#include <iostream>

#include "fcl/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"species checker, prover and interpreter"};
  app.require_subcommand(1);

  fcl::DriverOptions opt;
  app.add_option("--gamma-depth", opt.budget.gamma_depth,
                 "universal-instantiation rounds per branch");
  app.add_option("--timeout-ms", opt.budget.timeout_ms, "prover timeout per obligation");
  app.add_option("--max-nodes", opt.budget.max_branch_nodes, "prover node limit");
  app.add_option("--fuel", opt.fuel, "evaluation step limit");
  app.add_flag("--json", opt.json, "machine-readable diagnostics");
  app.add_option("--jobs", opt.jobs, "worker count (checking runs sequentially)");

  std::vector<std::string> check_paths;
  CLI::App* check = app.add_subcommand("check", "check files or a corpus directory");
  check->add_option("paths", check_paths, "source files or a directory with manifest.txt")
      ->required();

  std::string eval_path, eval_coll, eval_expr;
  CLI::App* ev = app.add_subcommand("eval", "evaluate an expression in a collection");
  ev->add_option("path", eval_path, "source file or directory")->required();
  ev->add_option("collection", eval_coll, "collection name")->required();
  ev->add_option("expr", eval_expr, "ground expression")->required();

  std::string deps_path;
  CLI::App* deps = app.add_subcommand("deps", "print proof dependency edges");
  deps->add_option("path", deps_path, "source file or directory")->required();

  std::string fmt_path;
  CLI::App* fmt = app.add_subcommand("fmt", "reprint a source file");
  fmt->add_option("path", fmt_path, "source file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (check->parsed())
    return fcl::cmd_check(check_paths, opt, std::cout, std::cerr);
  if (ev->parsed())
    return fcl::cmd_eval(eval_path, eval_coll, eval_expr, opt, std::cout, std::cerr);
  if (deps->parsed()) return fcl::cmd_deps(deps_path, opt, std::cout, std::cerr);
  if (fmt->parsed()) return fcl::cmd_fmt(fmt_path, opt, std::cout, std::cerr);
  return 2;
}
