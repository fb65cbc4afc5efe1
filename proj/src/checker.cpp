#include "fcl/checker.hpp"

#include <chrono>

#include "fcl/kernel.hpp"

namespace fcl {

bool CheckReport::all_proved() const {
  for (const auto& t : theorems)
    if (!t.proved) return false;
  return true;
}

namespace {

// One scope frame: the owning step's assumed constants and hypotheses plus
// the closed statements of the earlier siblings of the sequence it guards.
struct Level {
  std::vector<std::pair<std::string, std::string>> assumes;  // name, sort
  std::vector<std::pair<std::string, KFormulaPtr>> hyps;
  std::vector<std::pair<std::string, KFormulaPtr>> siblings;  // label, closed
};

struct ProofWalk {
  const FlatSpecies& flat;
  const Env& env;
  const MethodEntry& thm;
  std::vector<Level> levels;
  std::vector<std::pair<std::string, Sequent>> out;
  std::map<std::string, KFormulaPtr> stmt_cache;

  std::string sort_of_surface(const TypeExprPtr& t) {
    std::vector<std::string> pn;
    for (const auto& p : flat.params) pn.push_back(p.first);
    TypePtr r = resolve_type(t, pn);
    if (flat.carrier) r = unfold_self(r, flat.carrier);
    return sort_of(r);
  }

  KernelCtx inside_ctx() {
    KernelCtx c;
    c.flat = &flat;
    c.env = &env;
    for (const auto& L : levels)
      for (const auto& [n, s] : L.assumes) c.consts[n] = s;
    return c;
  }

  KFormulaPtr statement_of(const std::string& name) {
    auto it = stmt_cache.find(name);
    if (it != stmt_cache.end()) return it->second;
    const MethodEntry* m = flat.find(name);
    if (!m || m->kind != MethodEntry::Kind::Statement) return nullptr;
    KernelCtx c;
    c.flat = &flat;
    c.env = &env;
    KFormulaPtr f = formula_to_kernel(m->formula, c);
    stmt_cache[name] = f;
    return f;
  }

  // Universal closure of a step: forall assumes, hyps -> goal, with the
  // step's own assumed names as variables and ancestors' as constants.
  KFormulaPtr closed_of(const ProofStep& st) {
    KernelCtx c = inside_ctx();  // ancestors only: called after pop
    std::vector<std::pair<std::string, std::string>> avars;
    for (const auto& a : st.assumes) {
      std::string s = sort_of_surface(a.type);
      for (const auto& n : a.names) {
        avars.emplace_back(n, s);
        c.vars[n] = s;
      }
    }
    KFormulaPtr body = formula_to_kernel(st.goal, c);
    for (auto it = st.hyps.rbegin(); it != st.hyps.rend(); ++it)
      body = k_implies(formula_to_kernel(it->formula, c), body);
    for (auto it = avars.rbegin(); it != avars.rend(); ++it)
      body = k_forall(it->first, it->second, body);
    return body;
  }

  KFormulaPtr find_hypothesis(const std::string& name, Span sp) {
    for (auto it = levels.rbegin(); it != levels.rend(); ++it)
      for (const auto& [n, f] : it->hyps)
        if (n == name) return f;
    fail("E-SCOPE", sp, "hypothesis '" + name + "' is not in scope");
  }

  KFormulaPtr find_step(const std::string& label, Span sp) {
    for (auto it = levels.rbegin(); it != levels.rend(); ++it)
      for (const auto& [l, f] : it->siblings)
        if (l == label) return f;
    fail("E-SCOPE", sp, "step " + label + " is not in scope here");
  }

  KFormulaPtr cited_statement(const std::string& name, Span sp) {
    auto bang = name.find('!');
    if (bang != std::string::npos)
      return import_param_statement(name.substr(0, bang), name.substr(bang + 1),
                                    flat, env);
    KFormulaPtr f = statement_of(name);
    if (!f)
      fail("E-UNKNOWN-CITATION", sp, "no property or theorem named '" + name + "'");
    return f;
  }

  std::vector<std::pair<std::string, KFormulaPtr>> facts_of(const Justification& j,
                                                            Span sp) {
    std::vector<std::pair<std::string, KFormulaPtr>> facts;
    if (j.is_conclude) {
      for (const auto& L : levels) {
        for (const auto& [n, f] : L.hyps) facts.emplace_back(n, f);
        for (const auto& [l, f] : L.siblings) facts.emplace_back(l, f);
      }
      for (const auto& m : flat.methods) {
        if (m.kind != MethodEntry::Kind::Statement || m.name == thm.name) continue;
        facts.emplace_back(m.name, statement_of(m.name));
      }
      return facts;
    }
    for (const auto& d : j.definitions) {
      auto axioms = unfold_definition(d, flat, env);
      int i = 0;
      for (auto& a : axioms)
        facts.emplace_back("def:" + d + "#" + std::to_string(i++), a);
    }
    for (const auto& p : j.properties) facts.emplace_back(p, cited_statement(p, sp));
    for (const auto& t : j.theorems) facts.emplace_back(t, cited_statement(t, sp));
    for (const auto& h : j.hypotheses) facts.emplace_back(h, find_hypothesis(h, sp));
    for (const auto& s : j.steps) facts.emplace_back(s, find_step(s, sp));
    return facts;
  }

  void push_level(const ProofStep& st) {
    Level L;
    KernelCtx pre = inside_ctx();
    for (const auto& a : st.assumes) {
      std::string s = sort_of_surface(a.type);
      for (const auto& n : a.names) {
        L.assumes.emplace_back(n, s);
        pre.consts[n] = s;
      }
    }
    for (const auto& h : st.hyps)
      L.hyps.emplace_back(h.name, formula_to_kernel(h.formula, pre));
    levels.push_back(std::move(L));
  }

  // A non-terminal step: prove its goal via sub-steps or a leaf
  // justification, then record its closed statement for later siblings.
  void one_step(const ProofStep& st) {
    if (!st.goal)
      fail("E-OBLIGATION", st.span, "step " + st.label() + " states no goal");
    push_level(st);
    KFormulaPtr inside_goal = formula_to_kernel(st.goal, inside_ctx());
    if (!st.subs.empty()) {
      sequence(st.subs, inside_goal);
    } else {
      if (!st.just)
        fail("E-OBLIGATION", st.span, "step " + st.label() + " has no justification");
      out.emplace_back(st.label(), Sequent{facts_of(*st.just, st.span), inside_goal});
    }
    levels.pop_back();
    levels.back().siblings.emplace_back(st.label(), closed_of(st));
  }

  void sequence(const std::vector<ProofStep>& steps, const KFormulaPtr& parent_goal) {
    if (steps.empty())
      fail("E-OBLIGATION", thm.span, "empty proof sequence");
    bool induction = false;
    for (const auto& st : steps)
      if (!st.is_qed && !st.is_conclude && (st.id == "b" || st.id == "i"))
        induction = true;
    if (induction) {
      inductive_sequence(steps, parent_goal);
      return;
    }
    for (size_t i = 0; i < steps.size(); i++) {
      const ProofStep& st = steps[i];
      if (st.is_qed || st.is_conclude) {
        if (i + 1 != steps.size())
          fail("E-OBLIGATION", st.span,
               "terminal step " + st.label() + " is not last in its sequence");
        Justification j = st.just ? *st.just : Justification{};
        if (st.is_conclude) j.is_conclude = true;
        out.emplace_back(st.label(), Sequent{facts_of(j, st.span), parent_goal});
        return;
      }
      one_step(st);
    }
    fail("E-OBLIGATION", steps.back().span,
         "proof sequence lacks a terminal qed or conclude step");
  }

  void inductive_sequence(const std::vector<ProofStep>& steps,
                          const KFormulaPtr& parent_goal) {
    InductionScheme scheme = induction_scheme(parent_goal);
    std::string lsort = "list(" + scheme.elem_sort + ")";
    bool saw_b = false, saw_i = false, saw_terminal = false;
    for (size_t i = 0; i < steps.size(); i++) {
      const ProofStep& st = steps[i];
      if (st.is_qed || st.is_conclude) {
        if (i + 1 != steps.size())
          fail("E-OBLIGATION", st.span,
               "terminal step " + st.label() + " is not last in its sequence");
        saw_terminal = true;  // the induction principle closes the parent goal
        break;
      }
      if (st.id == "b") {
        saw_b = true;
        if (!st.goal)
          fail("E-CASE-MISMATCH", st.span, "base case states no goal");
        push_level(st);
        KFormulaPtr g = formula_to_kernel(st.goal, inside_ctx());
        if (!st.assumes.empty() || !st.hyps.empty() || !alpha_eq(g, scheme.base))
          fail("E-CASE-MISMATCH", st.span,
               "base case does not match the empty-list instance of the goal");
        check_interior(st, g);
        levels.pop_back();
        levels.back().siblings.emplace_back(st.label(), closed_of(st));
        continue;
      }
      if (st.id == "i") {
        saw_i = true;
        if (!st.goal)
          fail("E-CASE-MISMATCH", st.span, "step case states no goal");
        push_level(st);
        const Level& L = levels.back();
        const std::string* head_name = nullptr;
        const std::string* tail_name = nullptr;
        if (L.assumes.size() == 2 && L.hyps.size() == 1)
          for (const auto& [n, sort] : L.assumes) {
            if (sort == scheme.elem_sort && !head_name) head_name = &n;
            else if (sort == lsort && !tail_name) tail_name = &n;
          }
        if (!head_name || !tail_name)
          fail("E-CASE-MISMATCH", st.span,
               "step case must assume a head, a tail and one induction hypothesis");
        KTermPtr hc = k_app(*head_name, scheme.elem_sort);
        KTermPtr tc = k_app(*tail_name, lsort);
        KFormulaPtr want_hyp = substitute(scheme.hyp, scheme.tail, tc);
        KFormulaPtr want_goal =
            substitute(substitute(scheme.step_goal, scheme.head, hc), scheme.tail, tc);
        KFormulaPtr g = formula_to_kernel(st.goal, inside_ctx());
        if (!alpha_eq(L.hyps[0].second, want_hyp) || !alpha_eq(g, want_goal))
          fail("E-CASE-MISMATCH", st.span,
               "step case does not match the cons instance of the goal");
        check_interior(st, g);
        levels.pop_back();
        levels.back().siblings.emplace_back(st.label(), closed_of(st));
        continue;
      }
      one_step(st);
    }
    if (!saw_b) fail("E-MISSING-CASE", steps.front().span, "missing base case <n>b");
    if (!saw_i) fail("E-MISSING-CASE", steps.front().span, "missing step case <n>i");
    if (!saw_terminal)
      fail("E-OBLIGATION", steps.back().span,
           "induction sequence lacks a terminal qed or conclude step");
  }

  // Interior of a case step (already pushed): sub-steps or leaf citation.
  void check_interior(const ProofStep& st, const KFormulaPtr& inside_goal) {
    if (!st.subs.empty()) {
      sequence(st.subs, inside_goal);
    } else {
      if (!st.just)
        fail("E-OBLIGATION", st.span, "step " + st.label() + " has no justification");
      out.emplace_back(st.label(), Sequent{facts_of(*st.just, st.span), inside_goal});
    }
  }

  void run() {
    KernelCtx c;
    c.flat = &flat;
    c.env = &env;
    KFormulaPtr goal = formula_to_kernel(thm.formula, c);
    levels.push_back(Level{});
    const Proof& p = *thm.proof;
    if (p.is_direct) {
      out.emplace_back("direct", Sequent{facts_of(p.direct, p.span), goal});
    } else {
      sequence(p.steps, goal);
    }
  }
};

}  // namespace

std::vector<std::pair<std::string, Sequent>> obligations_of(
    const std::string& theorem, const FlatSpecies& flat, const Env& env) {
  const MethodEntry* m = flat.find(theorem);
  if (!m || m->kind != MethodEntry::Kind::Statement || !m->proof)
    fail("E-UNKNOWN-CITATION", Span{}, "no proof for '" + theorem + "'");
  ProofWalk w{flat, env, *m};
  w.run();
  return std::move(w.out);
}

CheckReport check_species(FlatSpecies& flat, const Env& env, const SearchBudget& budget) {
  CheckReport report;
  for (auto& m : flat.methods) {
    if (m.kind != MethodEntry::Kind::Statement) continue;
    if (!m.proof || m.proved) continue;
    if (m.proof_origin != flat.name) continue;  // inherited proofs stay settled
    ProofWalk w{flat, env, m};
    w.run();
    TheoremReport tr;
    tr.species = flat.name;
    tr.name = m.name;
    tr.proved = true;
    for (const auto& [label, seq] : w.out) {
      auto t0 = std::chrono::steady_clock::now();
      ProverOutcome o = prove(seq, budget);
      auto t1 = std::chrono::steady_clock::now();
      StepResult r;
      r.label = label;
      r.outcome = o.kind;
      r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
      if (o.kind != ProverOutcome::Kind::Proved) tr.proved = false;
      tr.steps.push_back(std::move(r));
    }
    if (tr.proved) {
      m.proved = true;
      m.defined = true;
      m.erased = false;
    }
    report.theorems.push_back(std::move(tr));
  }
  return report;
}

}  // namespace fcl
