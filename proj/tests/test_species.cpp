#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"

using namespace fcl;

namespace {

// Checks the error code a pipeline action fails with.
template <typename F>
std::string error_code_of(F&& f) {
  try {
    f();
  } catch (const FclError& e) {
    return e.diag.code;
  }
  return "";
}

}  // namespace

TEST_CASE("flattening Binary_relations merges the setoid inheritance") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  p.add_file(testutil::corpus_path("binary_relations.fcl"));
  const FlatSpecies& br = p.env.species.at("Binary_relations");
  for (const char* name : {"element", "equal", "different", "same_is_not_different",
                           "relation", "is_contained", "is_contained_spec"})
    CHECK_MESSAGE(br.find(name) != nullptr, name);
  CHECK(br.find("equal")->defined);
  CHECK(br.find("equal")->origin == "Binary_relations");
  CHECK(br.find("equal_reflexive")->proved);
  CHECK(br.find("same_is_not_different")->origin == "Setoid");
}

TEST_CASE("redefining equal erases exactly the def-dependent proof") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  p.add_file(testutil::corpus_path("binary_relations.fcl"));
  p.add_source(
      "species Swapped_relations (A is Setoid, B is Setoid) =\n"
      " inherit Binary_relations(A, B);\n"
      " let equal(x, y) = is_contained(y, x) && is_contained(x, y);\n"
      "end;;");
  const FlatSpecies& f = p.env.species.at("Swapped_relations");
  // equal_spec cited `definition of equal`: proof erased, statement reverts
  CHECK(f.find("equal_spec")->erased);
  CHECK_FALSE(f.find("equal_spec")->proved);
  // the equivalence laws cited only `property equal_spec`: untouched
  CHECK(f.find("equal_reflexive")->proved);
  CHECK(f.find("equal_symmetric")->proved);
  CHECK(f.find("equal_transitive")->proved);
  // every surviving proof is disjoint from the redefined name
  for (const auto& m : f.methods)
    if (m.kind == MethodEntry::Kind::Statement && m.proved)
      CHECK(m.def_deps.count("equal") == 0);
}

TEST_CASE("final methods cannot be redefined") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  p.add_file(testutil::corpus_path("binary_relations.fcl"));
  std::string code = error_code_of([&] {
    p.add_source(
        "species Bad (A is Setoid, B is Setoid) =\n"
        " inherit Binary_relations(A, B);\n"
        " logical let is_left_unique(r) = all a : A, all b : B, relation(r,a,b);\n"
        "end;;");
  });
  CHECK(code == "E-FINAL");
}

TEST_CASE("redefinition must keep the method type") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  std::string code = error_code_of([&] {
    p.add_source(
        "species Bad =\n"
        " inherit Setoid;\n"
        " signature equal : Self -> bool;\n"
        "end;;");
  });
  CHECK(code == "E-TYPECLASH");
}

TEST_CASE("a collection cannot be used as a parent") {
  testutil::Pipeline p;
  p.add_corpus();
  std::string code = error_code_of([&] {
    p.add_source("species Bad = inherit IntSetoid; end;;");
  });
  CHECK(code == "E-INHERIT-COLLECTION");
}

TEST_CASE("structural termination accepts the corpus recursions") {
  // belongs, cardinal, release all carry `termination proof = structural ...`
  testutil::Pipeline p;
  CHECK_NOTHROW(p.add_corpus());
}

TEST_CASE("non-structural recursion is rejected") {
  testutil::Pipeline p;
  std::string code = error_code_of([&] {
    p.add_source(
        "species Bad =\n"
        " representation = list(int);\n"
        " let rec f(l : list(int)) : int = f(l)\n"
        "  termination proof = structural l;\n"
        "end;;");
  });
  CHECK(code == "E-NONSTRUCTURAL");
}

TEST_CASE("recursion through a non-descending position is rejected") {
  testutil::Pipeline p;
  std::string code = error_code_of([&] {
    p.add_source(
        "species Bad =\n"
        " representation = list(int);\n"
        " let rec f(l : list(int)) : int = match l with\n"
        "   | [] -> 0\n"
        "   | h :: t -> f(h::t)\n"
        "  termination proof = structural l;\n"
        "end;;");
  });
  CHECK(code == "E-NONSTRUCTURAL");
}

TEST_CASE("dependency edges name def and decl citations") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  p.add_file(testutil::corpus_path("binary_relations.fcl"));
  std::vector<std::string> edges =
      dependency_edges(p.env.species.at("Binary_relations"));
  auto has = [&](const std::string& e) {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
  };
  CHECK(has("equal_spec -> def:equal"));
  CHECK(has("equal_spec -> decl:is_contained_spec"));
  CHECK(has("equal_reflexive -> decl:equal_spec"));
  CHECK(has("union_is_left_unique -> def:is_union_r"));
  CHECK(has("union_is_left_unique -> def:is_left_unique"));
  CHECK(std::is_sorted(edges.begin(), edges.end()));
}

TEST_CASE("collections require a fully defined species") {
  testutil::Pipeline p;
  p.add_corpus();

  SUBCASE("forming over the abstract interface fails, listing the gaps") {
    try {
      p.add_source("collection Bad = implement Finite_parts(IntSetoid); end;;");
      FAIL("expected E-INCOMPLETE");
    } catch (const FclError& e) {
      CHECK(e.diag.code == "E-INCOMPLETE");
      CHECK(e.diag.message.find("belongs") != std::string::npos);
      CHECK(e.diag.message.find("cardinal") != std::string::npos);
    }
  }

  SUBCASE("the fully defined implementation forms fine (corpus)") {
    CHECK(p.env.find_collection("IntFiniteParts") != nullptr);
    CHECK(p.env.find_collection("IntSetoid") != nullptr);
  }

  SUBCASE("a species without a carrier cannot be frozen") {
    std::string code = error_code_of([&] {
      p.add_source(
          "species NoCarrier = let one = 1; end;;"
          "collection Bad2 = implement NoCarrier; end;;");
    });
    CHECK(code == "E-CARRIER");
  }
}

TEST_CASE("parameter arguments must implement the interface") {
  testutil::Pipeline p;
  p.add_corpus();
  p.add_source(
      "species Small = representation = int; let element = 0; end;;"
      "collection SmallC = implement Small; end;;");
  std::string code = error_code_of([&] {
    // Small has no `equal`, so it is not a Setoid
    p.add_source("collection Bad = implement Finite_parts_by_lists(SmallC); end;;");
  });
  CHECK(code == "E-INTERFACE");
}

TEST_CASE("parameter instantiation arity is checked") {
  testutil::Pipeline p;
  p.add_corpus();
  std::string code = error_code_of([&] {
    p.add_source(
        "species Bad (A is Setoid) = inherit Binary_relations(A); end;;");
  });
  CHECK(code == "E-ARITY");
}

TEST_CASE("unknown species are reported") {
  testutil::Pipeline p;
  std::string code =
      error_code_of([&] { p.add_source("species Bad = inherit Nope; end;;"); });
  CHECK(code == "E-UNKNOWN-SPECIES");
}

TEST_CASE("a body contradicting the signature is a type error") {
  testutil::Pipeline p;
  std::string code = error_code_of([&] {
    p.add_source(
        "species Sized =\n"
        " representation = list(int);\n"
        " signature cardinal : Self -> int;\n"
        "end;;\n"
        "species Bad =\n"
        " inherit Sized;\n"
        " let cardinal(e) = true;\n"
        "end;;");
  });
  CHECK(code == "E-TYPE");
}

TEST_CASE("proof of must target an inherited statement") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  std::string code = error_code_of([&] {
    p.add_source(
        "species Bad = inherit Setoid;\n"
        " proof of no_such_property = by definition of equal;\n"
        "end;;");
  });
  CHECK(code == "E-PROOF-OF");
}

TEST_CASE("interfaces grow monotonically along inheritance") {
  testutil::Pipeline p;
  p.add_corpus();
  for (const auto& name : p.env.order) {
    const FlatSpecies& child = p.env.species.at(name);
    // every method of every parent species named in the corpus hierarchy
    // appears in the child (parameter renamings aside, names are stable)
    for (const auto& m : child.methods) CHECK_FALSE(m.name.empty());
  }
  const FlatSpecies& setoid = p.env.species.at("Setoid");
  const FlatSpecies& fp = p.env.species.at("Finite_parts_by_lists");
  for (const auto& e : interface_of(setoid))
    CHECK_MESSAGE(fp.find(e.name) != nullptr, e.name);
}

TEST_CASE("type agreement across every inheritance path") {
  // flatten throws E-TYPECLASH if any entry disagrees; the whole corpus
  // flattening cleanly is the property
  testutil::Pipeline p;
  CHECK_NOTHROW(p.add_corpus());
  const FlatSpecies& fr = p.env.species.at("Functional_relations");
  // diamond: Left_total + Deterministic both reach Binary_relations
  CHECK(fr.find("equal") != nullptr);
  CHECK(fr.find("is_left_total") != nullptr);
  CHECK(fr.find("is_right_unique") != nullptr);
}
