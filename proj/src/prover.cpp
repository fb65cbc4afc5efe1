#include "fcl/prover.hpp"

#include <chrono>
#include <optional>
#include <set>

namespace fcl {

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetHit {
  std::string what;
};

struct Signed {
  KFormulaPtr f;
  bool sign = true;  // true: asserted, false: refuted
};

std::string skey(const Signed& s) {
  return (s.sign ? "+" : "-") + print_kformula(s.f);
}

std::string tkey(const KTermPtr& t) { return print_kterm(t); }

void collect_subterms(const KTermPtr& t, std::map<std::string, KTermPtr>& out) {
  if (!t || t->kind == KTerm::Kind::Var) return;  // pools hold ground terms only
  bool ground = true;
  for (const auto& a : t->args) {
    collect_subterms(a, out);
    if (a->kind == KTerm::Kind::Var) ground = false;
  }
  std::map<std::string, std::string> fv;
  free_vars(t, fv);
  if (ground && fv.empty()) out[tkey(t)] = t;
}

// ---------------------------------------------------------------------------
// Ground congruence closure over the positive equations of a branch.

struct Congruence {
  std::vector<KTermPtr> terms;
  std::map<std::string, int> index;
  std::vector<int> parent;

  int id_of(const KTermPtr& t) {
    std::string k = tkey(t);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    for (const auto& a : t->args) id_of(a);
    int id = static_cast<int>(terms.size());
    index[k] = id;
    terms.push_back(t);
    parent.push_back(id);
    return id;
  }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }

  bool congruent_args(const KTermPtr& a, const KTermPtr& b) {
    if (a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); i++)
      if (find(id_of(a->args[i])) != find(id_of(b->args[i]))) return false;
    return true;
  }

  void fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < terms.size(); i++)
        for (size_t j = i + 1; j < terms.size(); j++) {
          int ri = find((int)i), rj = find((int)j);
          if (ri == rj) continue;
          if (congruent_args(terms[i], terms[j])) {
            unite(ri, rj);
            changed = true;
          }
        }
    }
  }

  bool same(const KTermPtr& a, const KTermPtr& b) {
    return find(id_of(a)) == find(id_of(b));
  }
};

// ---------------------------------------------------------------------------

struct Branch {
  std::vector<Signed> linear;  // unexpanded non-branching formulas
  std::vector<Signed> betas;   // unexpanded branching formulas
  std::vector<Signed> gammas;  // universal-strength formulas (Forall+, Exists-)
  // literals
  std::vector<std::pair<KTermPtr, bool>> atoms;       // signed predicates
  std::vector<std::pair<std::pair<KTermPtr, KTermPtr>, bool>> eqs;
  std::vector<Signed> lazy;         // undecided iffs, deferred
  std::set<std::string> seen;       // dedup of pushed formulas
  std::map<std::string, bool> lit;  // literal print -> sign (fast complement)
  std::map<std::string, KTermPtr> fresh_of_sort;  // per-sort invented constant
  std::map<std::string, KTermPtr> ground;      // ground subterms seen anywhere
  std::map<std::string, KTermPtr> lit_ground;  // ground subterms of literals
  long nodes = 0;                   // rule applications along this branch
};

void collect_form_terms(const KFormulaPtr& f, std::map<std::string, KTermPtr>& out) {
  if (!f) return;
  switch (f->kind) {
    case KFormula::Kind::Atom: collect_subterms(f->t, out); return;
    case KFormula::Kind::Eq:
      collect_subterms(f->ta, out);
      collect_subterms(f->tb, out);
      return;
    default:
      collect_form_terms(f->a, out);
      collect_form_terms(f->b, out);
      return;
  }
}

struct Prover {
  const SearchBudget& budget;
  Clock::time_point deadline;
  long nodes = 0;
  long fresh = 0;
  bool wide_pools = false;
  std::string open_detail;

  void tick(Branch& br) {
    if (++br.nodes > budget.max_branch_nodes)
      throw BudgetHit{"node limit exceeded"};
    if ((++nodes & 63) == 0 && Clock::now() > deadline)
      throw BudgetHit{"timeout"};
  }

  KTermPtr mk_fresh(const std::string& sort) {
    return k_app("%c" + std::to_string(fresh++), sort);
  }

  // Pushes a signed formula onto the branch; returns false if the branch
  // closes immediately.
  bool push(Branch& br, Signed s) {
    std::string key = skey(s);
    if (!br.seen.insert(key).second) return true;
    // complementary formula already on the branch closes it outright
    std::string mirror = (s.sign ? "-" : "+") + key.substr(1);
    if (br.seen.count(mirror)) return false;
    tick(br);
    collect_form_terms(s.f, br.ground);
    switch (s.f->kind) {
      case KFormula::Kind::True:
        if (!s.sign) return false;
        return true;
      case KFormula::Kind::False:
        if (s.sign) return false;
        return true;
      case KFormula::Kind::Atom: {
        std::string lk = print_kformula(s.f);
        auto it = br.lit.find(lk);
        if (it != br.lit.end() && it->second != s.sign) return false;
        br.lit[lk] = s.sign;
        br.atoms.emplace_back(s.f->t, s.sign);
        collect_subterms(s.f->t, br.lit_ground);
        return true;
      }
      case KFormula::Kind::Eq: {
        if (!s.sign && kterm_equal(s.f->ta, s.f->tb)) return false;
        std::string lk = print_kformula(s.f);
        auto it = br.lit.find(lk);
        if (it != br.lit.end() && it->second != s.sign) return false;
        br.lit[lk] = s.sign;
        br.eqs.push_back({{s.f->ta, s.f->tb}, s.sign});
        collect_subterms(s.f->ta, br.lit_ground);
        collect_subterms(s.f->tb, br.lit_ground);
        return true;
      }
      case KFormula::Kind::Not:
        return push(br, {s.f->a, !s.sign});
      case KFormula::Kind::And:
      case KFormula::Kind::Or:
      case KFormula::Kind::Implies:
      case KFormula::Kind::Iff: {
        bool branching;
        switch (s.f->kind) {
          case KFormula::Kind::And: branching = !s.sign; break;
          case KFormula::Kind::Or: branching = s.sign; break;
          case KFormula::Kind::Implies: branching = s.sign; break;
          default: branching = true; break;  // iff always splits
        }
        (branching ? br.betas : br.linear).push_back(std::move(s));
        return true;
      }
      case KFormula::Kind::Forall:
        if (s.sign) br.gammas.push_back(std::move(s));
        else br.linear.push_back(std::move(s));  // delta
        return true;
      case KFormula::Kind::Exists:
        if (!s.sign) br.gammas.push_back(std::move(s));
        else br.linear.push_back(std::move(s));  // delta
        return true;
    }
    return true;
  }

  enum class Sat { Closed, Progress, Stuck };

  Congruence build_cc(Branch& br) {
    Congruence cc;
    for (const auto& [pr, sign] : br.eqs) {
      cc.id_of(pr.first);
      cc.id_of(pr.second);
      if (sign) cc.unite(cc.id_of(pr.first), cc.id_of(pr.second));
    }
    for (const auto& [t, sign] : br.atoms) cc.id_of(t);
    cc.fixpoint();
    return cc;
  }

  // Closure check with congruence over positive equations.
  bool closed_by_congruence(Branch& br, Congruence& cc) {
    for (const auto& [pr, sign] : br.eqs)
      if (!sign && cc.same(pr.first, pr.second)) return true;
    for (size_t i = 0; i < br.atoms.size(); i++)
      for (size_t j = i + 1; j < br.atoms.size(); j++) {
        if (br.atoms[i].second == br.atoms[j].second) continue;
        const KTermPtr& a = br.atoms[i].first;
        const KTermPtr& b = br.atoms[j].first;
        if (a->name != b->name || a->args.size() != b->args.size()) continue;
        bool all = true;
        for (size_t k = 0; k < a->args.size(); k++)
          if (!cc.same(a->args[k], b->args[k])) { all = false; break; }
        if (all) return true;
      }
    return false;
  }

  // Truth of a ground atom or equation up to the branch congruence.
  int decide_leaf_cc(Branch& br, Congruence& cc, const KFormulaPtr& f) {
    if (f->kind == KFormula::Kind::Eq) {
      if (cc.same(f->ta, f->tb)) return 1;
      for (const auto& [pr, sign] : br.eqs) {
        if (sign) continue;
        if ((cc.same(pr.first, f->ta) && cc.same(pr.second, f->tb)) ||
            (cc.same(pr.first, f->tb) && cc.same(pr.second, f->ta)))
          return -1;
      }
      return 0;
    }
    // atom: congruent to a branch literal of either sign
    for (const auto& [t, sign] : br.atoms) {
      if (t->name != f->t->name || t->args.size() != f->t->args.size()) continue;
      bool all = true;
      for (size_t k = 0; k < t->args.size(); k++)
        if (!cc.same(t->args[k], f->t->args[k])) { all = false; break; }
      if (all) return sign ? 1 : -1;
    }
    return 0;
  }

  // `decides` extended with equality reasoning at the leaves.
  int decides_cc(Branch& br, Congruence& cc, const KFormulaPtr& f) {
    switch (f->kind) {
      case KFormula::Kind::True: return 1;
      case KFormula::Kind::False: return -1;
      case KFormula::Kind::Not: return -decides_cc(br, cc, f->a);
      case KFormula::Kind::And: {
        int va = decides_cc(br, cc, f->a), vb = decides_cc(br, cc, f->b);
        if (va == -1 || vb == -1) return -1;
        return (va == 1 && vb == 1) ? 1 : 0;
      }
      case KFormula::Kind::Or: {
        int va = decides_cc(br, cc, f->a), vb = decides_cc(br, cc, f->b);
        if (va == 1 || vb == 1) return 1;
        return (va == -1 && vb == -1) ? -1 : 0;
      }
      case KFormula::Kind::Implies: {
        int va = decides_cc(br, cc, f->a), vb = decides_cc(br, cc, f->b);
        if (va == -1 || vb == 1) return 1;
        return (va == 1 && vb == -1) ? -1 : 0;
      }
      case KFormula::Kind::Iff: {
        int va = decides_cc(br, cc, f->a), vb = decides_cc(br, cc, f->b);
        if (va == 0 || vb == 0) return 0;
        return va == vb ? 1 : -1;
      }
      case KFormula::Kind::Eq:
        if (kterm_equal(f->ta, f->tb)) return 1;
        [[fallthrough]];
      case KFormula::Kind::Atom: {
        auto it = br.lit.find(print_kformula(f));
        if (it != br.lit.end()) return it->second ? 1 : -1;
        return decide_leaf_cc(br, cc, f);
      }
      default: return 0;
    }
  }

  // One round of unit propagation over the deferred formulas using
  // congruence-aware truth values. Returns Closed, Progress, or Stuck.
  Sat cc_propagate(Branch& br, Congruence& cc) {
    bool acted = false;
    std::vector<Signed> still;
    std::vector<Signed> pend;
    pend.swap(br.lazy);
    for (auto& s : pend) {
      int va = decides_cc(br, cc, s.f->a);
      int vb = decides_cc(br, cc, s.f->b);
      if (va == 0 && vb == 0) {
        still.push_back(s);
        continue;
      }
      acted = true;
      if (s.f->kind == KFormula::Kind::Implies) {  // always positive here
        if (va == -1 || vb == 1) continue;  // satisfied
        if (va == 1 && !push(br, {s.f->b, true})) return Sat::Closed;
        if (vb == -1 && !push(br, {s.f->a, false})) return Sat::Closed;
        continue;
      }
      if (va != 0 && !push(br, {s.f->b, s.sign ? va == 1 : va != 1}))
        return Sat::Closed;
      if (vb != 0 && !push(br, {s.f->a, s.sign ? vb == 1 : vb != 1}))
        return Sat::Closed;
    }
    for (auto& s : still) br.lazy.push_back(std::move(s));
    return acted ? Sat::Progress : Sat::Stuck;
  }

  // Instantiates the leading universal prefix of `g` with every combination
  // of pool terms (a fresh constant stands in for an empty sort).
  void gamma_instances(Branch& br, const Signed& g,
                       std::map<std::string, std::vector<KTermPtr>>& pools,
                       std::vector<Signed>& out) {
    // peel prefix: Forall+ keeps sign; Exists- keeps sign (refuted existential)
    std::vector<std::pair<std::string, std::string>> prefix;  // var, sort
    KFormulaPtr body = g.f;
    bool sign = g.sign;
    while (body && ((sign && body->kind == KFormula::Kind::Forall) ||
                    (!sign && body->kind == KFormula::Kind::Exists))) {
      prefix.emplace_back(body->var, body->vsort);
      body = body->a;
    }
    std::vector<KTermPtr> choice(prefix.size());
    std::vector<const std::vector<KTermPtr>*> opts;
    for (auto& [v, s] : prefix) {
      auto& pool = pools[s];
      if (pool.empty()) {
        auto& f = br.fresh_of_sort[s];
        if (!f) f = mk_fresh(s);
        pool.push_back(f);
      }
      opts.push_back(&pool);
    }
    std::vector<size_t> idx(prefix.size(), 0);
    while (true) {
      KFormulaPtr inst = body;
      for (size_t i = prefix.size(); i-- > 0;)
        inst = substitute(inst, prefix[i].first, (*opts[i])[idx[i]]);
      out.push_back({inst, sign});
      size_t i = 0;
      for (; i < idx.size(); i++) {
        if (++idx[i] < opts[i]->size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }

  std::map<std::string, std::vector<KTermPtr>> build_pools(
      const std::map<std::string, KTermPtr>& from) {
    std::map<std::string, std::vector<KTermPtr>> pools;
    for (const auto& [k, t] : from) pools[t->sort].push_back(t);
    return pools;
  }

  static bool literal_like(const KFormulaPtr& f) {
    switch (f->kind) {
      case KFormula::Kind::True:
      case KFormula::Kind::False:
      case KFormula::Kind::Atom:
      case KFormula::Kind::Eq: return true;
      case KFormula::Kind::Not: return literal_like(f->a);
      default: return false;
    }
  }

  // Three-valued truth of `f` under the branch literals:
  // +1 known true, -1 known false, 0 undecided.
  int decides(const Branch& br, const KFormulaPtr& f) {
    switch (f->kind) {
      case KFormula::Kind::True: return 1;
      case KFormula::Kind::False: return -1;
      case KFormula::Kind::Not: return -decides(br, f->a);
      case KFormula::Kind::And: {
        int va = decides(br, f->a), vb = decides(br, f->b);
        if (va == -1 || vb == -1) return -1;
        return (va == 1 && vb == 1) ? 1 : 0;
      }
      case KFormula::Kind::Or: {
        int va = decides(br, f->a), vb = decides(br, f->b);
        if (va == 1 || vb == 1) return 1;
        return (va == -1 && vb == -1) ? -1 : 0;
      }
      case KFormula::Kind::Implies: {
        int va = decides(br, f->a), vb = decides(br, f->b);
        if (va == -1 || vb == 1) return 1;
        return (va == 1 && vb == -1) ? -1 : 0;
      }
      case KFormula::Kind::Iff: {
        int va = decides(br, f->a), vb = decides(br, f->b);
        if (va == 0 || vb == 0) return 0;
        return va == vb ? 1 : -1;
      }
      case KFormula::Kind::Eq:
        if (kterm_equal(f->ta, f->tb)) return 1;
        [[fallthrough]];
      case KFormula::Kind::Atom: {
        auto it = br.lit.find(print_kformula(f));
        if (it == br.lit.end()) return 0;
        return it->second ? 1 : -1;
      }
      default: return 0;
    }
  }

  // Drains the linear queue and applies every unit-decidable beta/iff.
  // Undecided iffs move to the lazy list.
  Sat saturate(Branch& br) {
    bool progress = false;
    while (true) {
      if (!br.linear.empty()) {
        Signed s = br.linear.back();
        br.linear.pop_back();
        progress = true;
        tick(br);
        switch (s.f->kind) {
          case KFormula::Kind::And:  // sign +
            if (!push(br, {s.f->a, true}) || !push(br, {s.f->b, true}))
              return Sat::Closed;
            break;
          case KFormula::Kind::Or:  // sign -
            if (!push(br, {s.f->a, false}) || !push(br, {s.f->b, false}))
              return Sat::Closed;
            break;
          case KFormula::Kind::Implies:  // sign -
            if (!push(br, {s.f->a, true}) || !push(br, {s.f->b, false}))
              return Sat::Closed;
            break;
          case KFormula::Kind::Forall: {  // sign -, delta
            KTermPtr c = mk_fresh(s.f->vsort);
            if (!push(br, {substitute(s.f->a, s.f->var, c), false}))
              return Sat::Closed;
            break;
          }
          case KFormula::Kind::Exists: {  // sign +, delta
            KTermPtr c = mk_fresh(s.f->vsort);
            if (!push(br, {substitute(s.f->a, s.f->var, c), true}))
              return Sat::Closed;
            break;
          }
          default: break;
        }
        continue;
      }
      // unit scan over pending betas and deferred iffs
      bool acted = false;
      std::vector<Signed> keep;
      std::vector<Signed> pending;
      pending.swap(br.betas);  // push() may append new betas while we scan
      for (auto& s : pending) {
        // two-sided disjunction view: sides (a, sa) | (b, sb)
        KFormulaPtr fa = s.f->a, fb = s.f->b;
        bool sa, sb;
        switch (s.f->kind) {
          case KFormula::Kind::And: sa = false; sb = false; break;  // sign -
          case KFormula::Kind::Or: sa = true; sb = true; break;     // sign +
          case KFormula::Kind::Implies: sa = false; sb = true; break;
          case KFormula::Kind::Iff: {
            int va = decides(br, fa);
            int vb = decides(br, fb);
            if (va == 0 && vb == 0) {
              // positive iffs with an atomic side are definitional axiom
              // instances: defer until a side is decided
              if (s.sign && (literal_like(fa) || literal_like(fb))) {
                br.lazy.push_back(s);
                acted = true;
              } else {
                keep.push_back(s);  // complex iff: branch eagerly later
              }
              continue;
            }
            acted = true;
            if (va != 0 &&
                !push(br, {fb, s.sign ? va == 1 : va != 1}))
              return Sat::Closed;
            if (vb != 0 &&
                !push(br, {fa, s.sign ? vb == 1 : vb != 1}))
              return Sat::Closed;
            continue;
          }
          default: continue;
        }
        int va = decides(br, fa);
        if (!sa) va = -va;  // truth of the side, not of the formula
        int vb = decides(br, fb);
        if (!sb) vb = -vb;
        if (va == 1 || vb == 1) {  // side already holds: beta is satisfied
          acted = true;
          continue;
        }
        if (va == -1) {
          acted = true;
          if (!push(br, {fb, sb})) return Sat::Closed;
          continue;
        }
        if (vb == -1) {
          acted = true;
          if (!push(br, {fa, sa})) return Sat::Closed;
          continue;
        }
        // guarded axiom instances (implications with an atomic antecedent)
        // wait until a side is decided instead of splitting eagerly
        if (s.f->kind == KFormula::Kind::Implies && literal_like(fa)) {
          br.lazy.push_back(s);
          acted = true;
          continue;
        }
        keep.push_back(s);
      }
      for (auto& s : keep) br.betas.push_back(std::move(s));
      // re-examine deferred iffs against the current literals
      std::vector<Signed> still;
      std::vector<Signed> lazy_pending;
      lazy_pending.swap(br.lazy);
      for (auto& s : lazy_pending) {
        int va = decides(br, s.f->a);
        int vb = decides(br, s.f->b);
        if (va == 0 && vb == 0) {
          still.push_back(s);
          continue;
        }
        acted = true;
        if (s.f->kind == KFormula::Kind::Implies) {  // always positive here
          if (va == -1 || vb == 1) continue;  // satisfied
          if (va == 1 && !push(br, {s.f->b, true})) return Sat::Closed;
          if (vb == -1 && !push(br, {s.f->a, false})) return Sat::Closed;
          continue;
        }
        if (va != 0 && !push(br, {s.f->b, s.sign ? va == 1 : va != 1}))
          return Sat::Closed;
        if (vb != 0 && !push(br, {s.f->a, s.sign ? vb == 1 : vb != 1}))
          return Sat::Closed;
      }
      for (auto& s : still) br.lazy.push_back(std::move(s));
      if (acted) {
        progress = true;
        continue;
      }
      return progress ? Sat::Progress : Sat::Stuck;
    }
  }

  // Fully expands a branch. Returns true when every sub-branch closes.
  bool expand(Branch br, int gamma_left) {
    while (true) {
      if (saturate(br) == Sat::Closed) return true;
      if (!br.betas.empty()) break;  // split below
      // propositionally saturated: reason modulo the branch equations
      Congruence cc = build_cc(br);
      if (closed_by_congruence(br, cc)) return true;
      Sat r = cc_propagate(br, cc);
      if (r == Sat::Closed) return true;
      if (r == Sat::Stuck) break;
    }

    if (!br.betas.empty()) {
      Signed s = br.betas.back();
      br.betas.pop_back();
      tick(br);
      auto with = [&](KFormulaPtr f1, bool s1, KFormulaPtr f2, bool s2) {
        Branch child = br;
        if (!push(child, {std::move(f1), s1})) return true;
        if (f2 && !push(child, {std::move(f2), s2})) return true;
        return expand(std::move(child), gamma_left);
      };
      switch (s.f->kind) {
        case KFormula::Kind::And:  // sign -
          return with(s.f->a, false, nullptr, false) && with(s.f->b, false, nullptr, false);
        case KFormula::Kind::Or:  // sign +
          return with(s.f->a, true, nullptr, false) && with(s.f->b, true, nullptr, false);
        case KFormula::Kind::Implies:  // sign +
          return with(s.f->a, false, nullptr, false) && with(s.f->b, true, nullptr, false);
        case KFormula::Kind::Iff:
          if (s.sign)
            return with(s.f->a, true, s.f->b, true) && with(s.f->a, false, s.f->b, false);
          return with(s.f->a, true, s.f->b, false) && with(s.f->a, false, s.f->b, true);
        default: return true;
      }
    }

    if (gamma_left > 0 && !br.gammas.empty()) {
      // narrow strategy: instantiate with subterms of branch literals only;
      // wide strategy: with every ground subterm seen on the branch
      auto pools = build_pools(wide_pools ? br.ground : br.lit_ground);
      std::vector<Signed> inst;
      for (const auto& g : br.gammas) gamma_instances(br, g, pools, inst);
      bool progress = false;
      for (auto& s : inst) {
        if (br.seen.count(skey(s))) continue;
        progress = true;
        if (!push(br, std::move(s))) return true;
      }
      if (progress) return expand(std::move(br), gamma_left - 1);
    }

    // last resort: split one deferred iff or implication (restores
    // propositional completeness when unit propagation never decided it)
    if (!br.lazy.empty()) {
      Signed s = br.lazy.back();
      br.lazy.pop_back();
      tick(br);
      auto with = [&](std::optional<bool> s1, std::optional<bool> s2) {
        Branch child = br;
        if (s1 && !push(child, {s.f->a, *s1})) return true;
        if (s2 && !push(child, {s.f->b, *s2})) return true;
        return expand(std::move(child), gamma_left);
      };
      if (s.f->kind == KFormula::Kind::Implies)
        return with(false, std::nullopt) && with(std::nullopt, true);
      if (s.sign) return with(true, true) && with(false, false);
      return with(true, false) && with(false, true);
    }

    if (open_detail.empty()) {
      open_detail = "open branch:";
      int shown = 0;
      for (const auto& [k, sign] : br.lit) {
        if (shown++ == 6) { open_detail += " ..."; break; }
        open_detail += std::string(" ") + (sign ? "" : "~") + k;
      }
      if (!br.gammas.empty()) open_detail += " (gamma depth exhausted)";
    }
    return false;
  }
};

}  // namespace

ProverOutcome prove(const Sequent& s, const SearchBudget& b) {
  ProverOutcome out;
  Prover p{b};
  p.deadline = Clock::now() + std::chrono::milliseconds(b.timeout_ms);
  try {
    for (bool wide : {false, true}) {
      p.wide_pools = wide;
      bool gamma_limited = false;
      for (int depth = 0; depth <= b.gamma_depth; depth++) {
        Branch root;
        bool closed_early = false;
        for (const auto& [n, f] : s.facts)
          if (!p.push(root, {f, true})) { closed_early = true; break; }
        if (!closed_early && s.goal && !p.push(root, {s.goal, false}))
          closed_early = true;
        p.open_detail.clear();
        if (closed_early || p.expand(std::move(root), depth)) {
          out.kind = ProverOutcome::Kind::Proved;
          out.nodes = p.nodes;
          return out;
        }
        // no gamma formulas at all: deeper rounds cannot help
        gamma_limited =
            p.open_detail.find("gamma depth exhausted") != std::string::npos;
        if (!gamma_limited) break;
      }
      // wider pools only matter when instantiation ran out of terms
      if (!gamma_limited) break;
    }
    out.kind = ProverOutcome::Kind::NotProved;
    out.detail = p.open_detail;
  } catch (const BudgetHit& hit) {
    out.kind = ProverOutcome::Kind::Budget;
    out.detail = hit.what;
  }
  out.nodes = p.nodes;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void collect_prop_atoms(const KFormulaPtr& f, std::vector<std::string>& names,
                        std::map<std::string, int>& index) {
  switch (f->kind) {
    case KFormula::Kind::True:
    case KFormula::Kind::False: return;
    case KFormula::Kind::Atom:
    case KFormula::Kind::Eq: {
      std::string k = print_kformula(f);
      if (index.emplace(k, (int)names.size()).second) names.push_back(k);
      return;
    }
    case KFormula::Kind::Not: collect_prop_atoms(f->a, names, index); return;
    case KFormula::Kind::And:
    case KFormula::Kind::Or:
    case KFormula::Kind::Implies:
    case KFormula::Kind::Iff:
      collect_prop_atoms(f->a, names, index);
      collect_prop_atoms(f->b, names, index);
      return;
    default:
      fail("E-OBLIGATION", Span{}, "truth-table oracle requires a quantifier-free formula");
  }
}

bool eval_prop(const KFormulaPtr& f, const std::map<std::string, int>& index,
               unsigned mask) {
  switch (f->kind) {
    case KFormula::Kind::True: return true;
    case KFormula::Kind::False: return false;
    case KFormula::Kind::Atom:
    case KFormula::Kind::Eq:
      return (mask >> index.at(print_kformula(f))) & 1u;
    case KFormula::Kind::Not: return !eval_prop(f->a, index, mask);
    case KFormula::Kind::And:
      return eval_prop(f->a, index, mask) && eval_prop(f->b, index, mask);
    case KFormula::Kind::Or:
      return eval_prop(f->a, index, mask) || eval_prop(f->b, index, mask);
    case KFormula::Kind::Implies:
      return !eval_prop(f->a, index, mask) || eval_prop(f->b, index, mask);
    case KFormula::Kind::Iff:
      return eval_prop(f->a, index, mask) == eval_prop(f->b, index, mask);
    default: return false;
  }
}

}  // namespace

bool propositional_taut(const KFormulaPtr& f) {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  collect_prop_atoms(f, names, index);
  if (names.size() > 20)
    fail("E-OBLIGATION", Span{}, "too many distinct atoms for the truth-table oracle");
  unsigned long total = 1ul << names.size();
  for (unsigned long m = 0; m < total; m++)
    if (!eval_prop(f, index, (unsigned)m)) return false;
  return true;
}

}  // namespace fcl
