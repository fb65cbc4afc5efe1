#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fcl/driver.hpp"
#include "fcl/parser.hpp"
#include "test_util.hpp"

using namespace fcl;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr interleaved
};

RunResult run_binary(const std::string& args) {
  std::string cmd = testutil::fcl_binary() + " " + args + " 2>&1";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

int count_lines_with(const std::string& text, const std::string& needle) {
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) n++;
  return n;
}

}  // namespace

TEST_CASE("check over the corpus directory is clean") {
  std::ostringstream out, err;
  DriverOptions opt;
  int rc = cmd_check({std::string(FCL_CORPUS_DIR)}, opt, out, err);
  CHECK(rc == 0);
  CHECK(err.str().empty());
  // one summary line per theorem, all proved
  CHECK(count_lines_with(out.str(), " - PROVED") == 18);
  CHECK(count_lines_with(out.str(), "FAILED") == 0);
  CHECK(count_lines_with(out.str(), "UNPROVED") == 0);
  // per-step lines carry labels
  CHECK(out.str().find("union_is_left_unique <3>1 PROVED") != std::string::npos);
  CHECK(out.str().find("same_is_not_different direct PROVED") != std::string::npos);
}

TEST_CASE("directory expansion follows the manifest") {
  auto files = expand_paths({std::string(FCL_CORPUS_DIR)});
  auto expected = testutil::corpus_files();
  REQUIRE(files.size() == expected.size());
  for (size_t i = 0; i < files.size(); i++)
    CHECK(fs::path(files[i]).filename() == fs::path(expected[i]).filename());
  // plain files pass through untouched, duplicates collapse
  auto two = expand_paths({"a.fcl", "b.fcl", "a.fcl"});
  CHECK(two == std::vector<std::string>{"a.fcl", "b.fcl"});
}

TEST_CASE("an empty file checks clean with no theorems") {
  std::string p = write_temp("fclcli_empty.fcl", "");
  std::ostringstream out, err;
  int rc = cmd_check({p}, DriverOptions{}, out, err);
  CHECK(rc == 0);
  CHECK(out.str().empty());
}

TEST_CASE("a redefinition that erases a proof exits nonzero") {
  std::string p = write_temp(
      "fclcli_redef.fcl",
      "species Swapped_relations (A is Setoid, B is Setoid) =\n"
      " inherit Binary_relations(A, B);\n"
      " let equal(x, y) = is_contained(y, x) && is_contained(x, y);\n"
      "end;;\n");
  std::vector<std::string> paths = testutil::corpus_files();
  paths.push_back(p);
  std::ostringstream out, err;
  int rc = cmd_check(paths, DriverOptions{}, out, err);
  CHECK(rc == 1);
  CHECK(out.str().find("Swapped_relations.equal_spec - UNPROVED") != std::string::npos);
  // the decl-dependent laws are reported proved for the parent and not
  // invalidated in the child
  CHECK(count_lines_with(out.str(), "UNPROVED") == 1);
}

TEST_CASE("missing input is a usage error") {
  std::ostringstream out, err;
  CHECK(cmd_check({"/no/such/file.fcl"}, DriverOptions{}, out, err) == 2);
  CHECK_FALSE(err.str().empty());
}

TEST_CASE("eval prints surface values") {
  DriverOptions opt;
  std::string corpus(FCL_CORPUS_DIR);
  auto eval = [&](const std::string& coll, const std::string& e) {
    std::ostringstream out, err;
    int rc = cmd_eval(corpus, coll, e, opt, out, err);
    CHECK_MESSAGE(rc == 0, err.str());
    return out.str();
  };
  CHECK(eval("IntFiniteParts", "cardinal(from_list([]))") == "0\n");
  CHECK(eval("IntFiniteParts", "belongs(1, from_list([]))") == "false\n");
  CHECK(eval("IntFiniteParts", "release(from_list([1;2;1]), 1)") == "[2]\n");
  CHECK(eval("IntSetoid", "equal(2, 2)") == "true\n");

  SUBCASE("unknown collections fail") {
    std::ostringstream out, err;
    CHECK(cmd_eval(corpus, "NoSuch", "1", opt, out, err) == 1);
    CHECK(err.str().find("NoSuch") != std::string::npos);
  }
  SUBCASE("ill-typed expressions fail with a diagnostic") {
    std::ostringstream out, err;
    CHECK(cmd_eval(corpus, "IntFiniteParts", "cardinal(true)", opt, out, err) == 1);
    CHECK(err.str().find("E-TYPE") != std::string::npos);
  }
}

TEST_CASE("deps lists def and decl edges over the corpus") {
  std::ostringstream out, err;
  int rc = cmd_deps(std::string(FCL_CORPUS_DIR), DriverOptions{}, out, err);
  CHECK(rc == 0);
  const std::string& s = out.str();
  for (const char* edge :
       {"equal_spec -> def:equal", "equal_reflexive -> decl:equal_spec",
        "union_is_left_unique -> def:is_union_r",
        "union_is_left_unique -> def:is_left_unique",
        "union_is_left_unique -> decl:A!equal_symmetric",
        "release_spec -> def:release", "release_spec -> decl:belongs_spec"})
    CHECK_MESSAGE(s.find(edge) != std::string::npos, edge);
}

TEST_CASE("fmt output reparses equal for every corpus file") {
  for (const auto& path : testutil::corpus_files()) {
    CAPTURE(path);
    std::ostringstream out, err;
    REQUIRE(cmd_fmt(path, DriverOptions{}, out, err) == 0);
    SourceUnit original = parse_source(testutil::read_file(path), path);
    SourceUnit reparsed = parse_source(out.str(), path);
    CHECK(equal_ast(original, reparsed));
  }
}

TEST_CASE("json diagnostics are machine readable") {
  std::string p = write_temp("fclcli_bad.fcl", "species Broken =\n signature x\nend;;");
  DriverOptions opt;
  opt.json = true;
  std::ostringstream out, err;
  int rc = cmd_check({p}, opt, out, err);
  CHECK(rc == 1);
  nlohmann::json j = nlohmann::json::parse(err.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["severity"] == "error");
  CHECK(j[0]["code"].get<std::string>().rfind("E-", 0) == 0);
  CHECK(j[0]["file"] == p);
  CHECK(j[0]["line"].is_number());
  CHECK(j[0]["col"].is_number());
  CHECK_FALSE(j[0]["message"].get<std::string>().empty());
  CHECK(j[0].contains("step"));
}

TEST_CASE("the installed binary honors the exit-code contract") {
  CHECK(run_binary("check " + std::string(FCL_CORPUS_DIR)).exit_code == 0);
  CHECK(run_binary("frobnicate").exit_code == 2);
  CHECK(run_binary("").exit_code == 2);
  CHECK(run_binary("check /no/such/file.fcl").exit_code == 2);

  RunResult r = run_binary("eval " + std::string(FCL_CORPUS_DIR) +
                           " IntFiniteParts 'release(from_list([1;2;1]), 1)'");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "[2]\n");

  // a failed proof exits 1
  std::string bad = write_temp(
      "fclcli_unprovable.fcl",
      "species S =\n"
      " signature p : Self -> bool;\n"
      " theorem wrong : all x : Self, p(x)\n"
      "  proof = <0>f conclude;\n"
      "end;;\n");
  RunResult f = run_binary("check " + bad);
  CHECK(f.exit_code == 1);
  CHECK(f.output.find("FAILED") != std::string::npos);
}

TEST_CASE("prover budget flags reach the checker") {
  // without universal instantiation the relation proofs cannot close;
  // the run reports failures rather than erroring out
  RunResult r = run_binary("--gamma-depth 0 check " +
                           testutil::corpus_path("basics.fcl") + " " +
                           testutil::corpus_path("binary_relations.fcl"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAILED") != std::string::npos);
  CHECK(r.output.find("union_is_left_unique") != std::string::npos);
}
