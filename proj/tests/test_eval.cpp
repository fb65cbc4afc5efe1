#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <random>

#include "fcl/eval.hpp"
#include "fcl/kernel.hpp"
#include "fcl/parser.hpp"
#include "test_util.hpp"

using namespace fcl;

namespace {

// ---------------------------------------------------------------------------
// A small independent interpreter for ground definitional-axiom instances:
// terms evaluate through the library evaluator, connectives and = are
// evaluated here. Used to cross-check every definition against its axioms.

struct AxiomEval {
  const CollectionInfo* coll = nullptr;
  const Env* env = nullptr;
  std::map<std::string, ValuePtr> assign;
  EvalBudget budget;

  ValuePtr term(const KTermPtr& t) {
    if (t->kind == KTerm::Kind::Var) {
      auto it = assign.find(t->name);
      REQUIRE(it != assign.end());
      return it->second;
    }
    const std::string& n = t->name;
    if (n == "true") return v_bool(true);
    if (n == "false") return v_bool(false);
    if (n == "[]") return v_list({});
    if (std::isdigit((unsigned char)n[0]) || n[0] == '-') return v_int(BigInt(n));
    if (n == "::") {
      ValuePtr tl = term(t->args[1]);
      std::vector<ValuePtr> items{term(t->args[0])};
      items.insert(items.end(), tl->list.begin(), tl->list.end());
      return v_list(std::move(items));
    }
    if (n == "+") {
      return v_int(term(t->args[0])->i + term(t->args[1])->i);
    }
    std::vector<ValuePtr> args;
    for (const auto& a : t->args) args.push_back(term(a));
    size_t bang = n.find('!');
    if (bang != std::string::npos) {
      const CollectionInfo* target = env->find_collection(n.substr(0, bang));
      REQUIRE(target != nullptr);
      return eval_method(*target, *env, n.substr(bang + 1), std::move(args), budget);
    }
    return eval_method(*coll, *env, n, std::move(args), budget);
  }

  bool truth(const KFormulaPtr& f) {
    switch (f->kind) {
      case KFormula::Kind::True: return true;
      case KFormula::Kind::False: return false;
      case KFormula::Kind::Atom: {
        ValuePtr v = term(f->t);
        REQUIRE(v->kind == Value::Kind::Bool);
        return v->b;
      }
      case KFormula::Kind::Eq: return value_equal(term(f->ta), term(f->tb));
      case KFormula::Kind::Not: return !truth(f->a);
      case KFormula::Kind::And: return truth(f->a) && truth(f->b);
      case KFormula::Kind::Or: return truth(f->a) || truth(f->b);
      case KFormula::Kind::Implies: return !truth(f->a) || truth(f->b);
      case KFormula::Kind::Iff: return truth(f->a) == truth(f->b);
      default:
        FAIL("unexpected quantifier in instantiated axiom");
        return false;
    }
  }
};

// Random ground value of a rendered sort, over a three-element carrier.
ValuePtr random_of_sort(const std::string& sort, std::mt19937& rng) {
  if (sort.rfind("list(", 0) == 0) {
    std::uniform_int_distribution<int> len(0, 5);
    std::string elem = sort.substr(5, sort.size() - 6);
    std::vector<ValuePtr> items;
    int n = len(rng);
    for (int i = 0; i < n; i++) items.push_back(random_of_sort(elem, rng));
    return v_list(std::move(items));
  }
  if (sort == "bool") {
    std::uniform_int_distribution<int> b(0, 1);
    return v_bool(b(rng) != 0);
  }
  // int and every abstract setoid sort: three distinguishable elements
  std::uniform_int_distribution<int> e(0, 2);
  return v_int(e(rng));
}

ValuePtr int_list(std::initializer_list<long> xs) {
  std::vector<ValuePtr> items;
  for (long x : xs) items.push_back(v_int(x));
  return v_list(std::move(items));
}

}  // namespace

TEST_CASE("value printing and structural equality") {
  CHECK(print_value(v_bool(true)) == "true");
  CHECK(print_value(v_bool(false)) == "false");
  CHECK(print_value(v_int(42)) == "42");
  CHECK(print_value(v_list({})) == "[]");
  CHECK(print_value(int_list({1, 2})) == "[1; 2]");
  CHECK(print_value(v_int(BigInt("123456789012345678901234567890"))) ==
        "123456789012345678901234567890");
  CHECK(value_equal(int_list({1, 2}), int_list({1, 2})));
  CHECK_FALSE(value_equal(int_list({1, 2}), int_list({2, 1})));
  CHECK_FALSE(value_equal(v_int(1), v_bool(true)));
}

TEST_CASE("ground expressions over the set collection") {
  testutil::Pipeline p;
  p.add_corpus();
  const CollectionInfo& fp = *p.env.find_collection("IntFiniteParts");
  EvalBudget budget;
  auto run = [&](const std::string& src) {
    return print_value(eval_ground(fp, p.env, parse_expression(src), budget));
  };
  CHECK(run("cardinal(from_list([]))") == "0");
  CHECK(run("belongs(1, from_list([]))") == "false");
  CHECK(run("release(from_list([1;2;1]), 1)") == "[2]");
  CHECK(run("equal(release(from_list([1;2;1]), 1), from_list([2]))") == "true");
  CHECK(run("cardinal(from_list([7;7;7;7]))") == "4");
  CHECK(run("belongs(2, release(from_list([1;2;1]), 1))") == "true");
}

TEST_CASE("every definition agrees with its axioms on random instances") {
  testutil::Pipeline p;
  p.add_corpus();
  std::mt19937 rng(424242);
  long checked = 0;
  for (const char* cname : {"IntSetoid", "IntFiniteParts"}) {
    const CollectionInfo& coll = *p.env.find_collection(cname);
    for (const auto& m : coll.flat.methods) {
      if (m.kind == MethodEntry::Kind::Statement || !m.defined) continue;
      auto axioms = unfold_definition(m.name, coll.flat, p.env);
      CAPTURE(m.name);
      for (int i = 0; i < 200; i++) {
        for (const auto& ax : axioms) {
          AxiomEval ev{&coll, &p.env, {}, {}};
          KFormulaPtr body = ax;
          while (body->kind == KFormula::Kind::Forall) {
            ev.assign[body->var] = random_of_sort(body->vsort, rng);
            body = body->a;
          }
          bool ok = ev.truth(body);
          if (!ok) CAPTURE(print_kformula(ax));
          REQUIRE(ok);
          checked++;
        }
      }
    }
  }
  // boolean definitions covered: equal/different on both collections, belongs
  CHECK(checked >= 2 * 200 * 5);
  MESSAGE("axiom instances checked: " << checked);
}

TEST_CASE("release behaves as set difference on singletons") {
  testutil::Pipeline p;
  p.add_corpus();
  const CollectionInfo& fp = *p.env.find_collection("IntFiniteParts");
  EvalBudget budget;
  std::mt19937 rng(991);
  std::uniform_int_distribution<int> len(0, 10), elem(0, 3);
  int counterexamples = 0;
  for (int i = 0; i < 500; i++) {
    std::vector<ValuePtr> items;
    int n = len(rng);
    for (int j = 0; j < n; j++) items.push_back(v_int(elem(rng)));
    ValuePtr l = v_list(std::move(items));
    ValuePtr e1 = v_int(elem(rng)), e2 = v_int(elem(rng));

    ValuePtr released = eval_method(fp, p.env, "release", {l, e2}, budget);
    ValuePtr lhs = eval_method(fp, p.env, "belongs", {e1, released}, budget);
    bool rhs = !value_equal(e1, e2) &&
               eval_method(fp, p.env, "belongs", {e1, l}, budget)->b;
    if (lhs->b != rhs) counterexamples++;
  }
  CHECK(counterexamples == 0);
}

TEST_CASE("boolean operators short-circuit") {
  testutil::Pipeline p;
  p.add_file(testutil::corpus_path("basics.fcl"));
  p.add_source(
      "species Gate = inherit Setoid;\n"
      " representation = int;\n"
      " let element = 0;\n"
      " let equal(x, y) = x = y;\n"
      " proof of equal_reflexive = by definition of equal;\n"
      " proof of equal_symmetric = by definition of equal;\n"
      " proof of equal_transitive = by definition of equal;\n"
      " let spin(x) = equal(x, x);\n"
      " let guard_and(x) = false && spin(x);\n"
      " let guard_or(x) = true || spin(x);\n"
      " let both(x) = spin(x) && spin(x);\n"
      "end;;\n"
      "collection GateC = implement Gate; end;;");
  const CollectionInfo& g = *p.env.find_collection("GateC");
  EvalBudget budget;

  std::map<std::string, long> counts;
  ValuePtr r = eval_method(g, p.env, "guard_and", {v_int(1)}, budget, &counts);
  CHECK(r->b == false);
  CHECK(counts["spin"] == 0);

  counts.clear();
  r = eval_method(g, p.env, "guard_or", {v_int(1)}, budget, &counts);
  CHECK(r->b == true);
  CHECK(counts["spin"] == 0);

  counts.clear();
  r = eval_method(g, p.env, "both", {v_int(1)}, budget, &counts);
  CHECK(r->b == true);
  CHECK(counts["spin"] == 2);
}

TEST_CASE("fuel exhaustion is reported") {
  testutil::Pipeline p;
  p.add_corpus();
  const CollectionInfo& fp = *p.env.find_collection("IntFiniteParts");
  EvalBudget tiny;
  tiny.fuel = 3;
  std::vector<ValuePtr> items;
  for (int i = 0; i < 10; i++) items.push_back(v_int(i));
  try {
    eval_method(fp, p.env, "cardinal", {v_list(items)}, tiny);
    FAIL("expected E-FUEL");
  } catch (const FclError& e) {
    CHECK(e.diag.code == "E-FUEL");
  }
}

TEST_CASE("a value matching no branch is an error") {
  testutil::Pipeline p;
  p.add_source(
      "species Heads =\n"
      " representation = int;\n"
      " let head_of(l : list(int)) : int = match l with | h :: t -> h;\n"
      "end;;\n"
      "collection HeadsC = implement Heads; end;;");
  const CollectionInfo& h = *p.env.find_collection("HeadsC");
  EvalBudget budget;
  CHECK(print_value(eval_method(h, p.env, "head_of", {int_list({5, 6})}, budget)) ==
        "5");
  try {
    eval_method(h, p.env, "head_of", {v_list({})}, budget);
    FAIL("expected E-MATCH");
  } catch (const FclError& e) {
    CHECK(e.diag.code == "E-MATCH");
  }
}

TEST_CASE("qualified calls dispatch to the bound collection") {
  testutil::Pipeline p;
  p.add_corpus();
  const CollectionInfo& fp = *p.env.find_collection("IntFiniteParts");
  EvalBudget budget;
  // belongs compares heads with the element setoid's equality
  std::map<std::string, long> counts;
  ValuePtr r = eval_method(fp, p.env, "belongs", {v_int(2), int_list({1, 2, 3})},
                           budget, &counts);
  CHECK(r->b == true);
  CHECK(counts["IntSetoid!equal"] + counts["equal"] >= 1);
}
