#pragma once
// Type unification over a variable's accumulated constraints.
//
// A single pair (s • t) resolves by subsumption (the lower category wins,
// actual existence wins over abstract), by a bridging relation when the
// categories are incomparable but a registered relation connects them (a
// fresh object is introduced and some predicate slots move onto it), or not
// at all (⊥). unify_all drives this across a whole form: identity merging
// first, then each variable's constraints folded to a fixpoint, fresh
// bridge-introduced variables last.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ontosem/errors.hpp"
#include "ontosem/logform.hpp"
#include "ontosem/ontology.hpp"

namespace ontosem {

struct Won {
  TypeTerm term;
  std::string rule;  // sub_left, sub_right or mode
};

// Neither category subsumes the other but a relation connects them. The
// original keeps its category with the mode the relation's slot1 dictates;
// the fresh object takes slot0's category, actual unless the selecting
// constraint itself was abstract.
struct BridgeOutcome {
  RelationSig rel;
  TypeTerm original_becomes;
  TypeTerm fresh;
  bool original_is_s = true;  // false when the roles matched reversed
  bool ambiguous = false;
  std::vector<std::string> candidates;  // equally specific relation names
};

struct BottomOutcome {
  TypeTerm s, t;
};

using UnifyOutcome = std::variant<Won, BridgeOutcome, BottomOutcome>;

inline UnifyOutcome unify_pair(const Ontology& o, const TypeTerm& s, const TypeTerm& t) {
  o.require_category(s.category);
  o.require_category(t.category);
  Mode joint = (s.mode == Mode::Actual || t.mode == Mode::Actual) ? Mode::Actual
                                                                  : Mode::Abstract;
  if (o.subsumes(s.category, t.category)) {
    std::string rule = "sub_left";
    if (s.category == t.category && s.mode != t.mode) rule = "mode";
    return Won{TypeTerm{s.category, joint}, rule};
  }
  if (o.subsumes(t.category, s.category))
    return Won{TypeTerm{t.category, joint}, "sub_right"};

  auto bridge = [&](const std::vector<RelationSig>& cands, const TypeTerm& original,
                    const TypeTerm& selected, bool original_is_s) -> UnifyOutcome {
    const RelationSig& r = cands.front();
    BridgeOutcome b;
    b.rel = r;
    b.original_becomes = TypeTerm{original.category, r.slot1.mode};
    b.fresh = TypeTerm{r.slot0.category, selected.mode};
    b.original_is_s = original_is_s;
    if (cands.size() > 1) {
      auto dist = [&](const RelationSig& rr) {
        return *o.up_distance(selected.category, rr.slot0.category) +
               *o.up_distance(original.category, rr.slot1.category);
      };
      int best = dist(r);
      for (const auto& rr : cands)
        if (dist(rr) == best) b.candidates.push_back(rr.name);
      b.ambiguous = b.candidates.size() > 1;
    }
    return b;
  };
  if (auto fwd = o.find_bridges(s.category, t.category); !fwd.empty())
    return bridge(fwd, s, t, true);
  if (auto rev = o.find_bridges(t.category, s.category); !rev.empty())
    return bridge(rev, t, s, false);
  return BottomOutcome{s, t};
}

struct TraceStep {
  std::string var;
  std::string lhs, rhs;
  std::string result;
  std::string rule;

  std::string str() const {
    return var + ": (" + lhs + " • " + rhs + ") => " + result + " [" + rule + "]";
  }
};
using Trace = std::vector<TraceStep>;

struct UnifyResult {
  LogicalForm form;
  Trace trace;
  std::vector<std::string> warnings;
};

// Unifies one variable's constraints: its quantifier type, the selectional
// type of every predicate slot it fills, and any assumed extras. Comparable
// constraints fold first; each remaining one either attaches to a fresh
// variable this call already introduced, triggers a bridge of its own, or
// bottoms out. A bridge whose signature abstracts the original (slot1 mode
// ^a) pins the variable to abstract existence for the rest of the fold,
// which is how a painted elephant stays abstract while staying Large.
inline UnifyResult unify_var(const Ontology& o, LogicalForm f, int v) {
  UnifyResult res;
  const Quantifier* q0 = f.find_var(v);
  if (!q0) throw Error("unify_var: variable id " + std::to_string(v) + " is not bound");
  const std::string display = q0->display;
  TypeTerm acc = q0->type;
  if (acc.category == kBottom) {
    res.form = std::move(f);
    return res;
  }

  struct Pending {
    TypeTerm type;
    int atom = -1;  // body index; -1 for an assumed constraint
    int arg = -1;
  };
  std::vector<Pending> pending;
  for (std::size_t ai = 0; ai < f.body.size(); ++ai) {
    const Atom& a = f.body[ai];
    for (std::size_t j = 0; j < a.args.size(); ++j)
      if (a.args[j].kind == Term::Kind::Var && a.args[j].var == v && a.slot_types[j])
        pending.push_back({*a.slot_types[j], static_cast<int>(ai), static_cast<int>(j)});
  }
  if (auto it = f.assumed.find(v); it != f.assumed.end())
    for (const auto& t : it->second) pending.push_back({t, -1, -1});

  auto drop_assumed = [&](const TypeTerm& t) {
    auto it = f.assumed.find(v);
    if (it == f.assumed.end()) return;
    auto pos = std::find(it->second.begin(), it->second.end(), t);
    if (pos != it->second.end()) it->second.erase(pos);
    if (it->second.empty()) f.assumed.erase(it);
  };

  bool pinned = false;
  std::vector<int> fresh_ids;

  for (;;) {
    // fold everything comparable with the accumulated type
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (!o.comparable(acc.category, pending[i].type.category)) continue;
        Won w = std::get<Won>(unify_pair(o, acc, pending[i].type));
        res.trace.push_back({display, acc.str(), pending[i].type.str(), w.term.str(), w.rule});
        acc = w.term;
        if (pending[i].atom < 0) drop_assumed(pending[i].type);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
        again = true;
        break;
      }
    }
    if (pending.empty()) break;

    Pending c = pending.front();

    // a fresh variable introduced by an earlier bridge may absorb it
    bool attached = false;
    for (int fid : fresh_ids) {
      const Quantifier* fq = f.find_var(fid);
      if (!o.comparable(fq->type.category, c.type.category)) continue;
      if (c.atom >= 0) {
        f.body[c.atom].args[c.arg] = Term::variable(fid);
      } else {
        drop_assumed(c.type);
        f.assumed[fid].push_back(c.type);
      }
      pending.erase(pending.begin());
      attached = true;
      break;
    }
    if (attached) continue;

    UnifyOutcome out = unify_pair(o, acc, c.type);
    if (std::holds_alternative<BottomOutcome>(out)) {
      res.trace.push_back({display, acc.str(), c.type.str(), std::string(kBottom), "bottom"});
      if (!f.anomaly) f.anomaly = {c.type.category, acc.category};
      f.find_var(v)->type = TypeTerm{std::string(kBottom), Mode::Actual};
      f.status = FormStatus::Anomalous;
      res.form = std::move(f);
      return res;
    }

    const BridgeOutcome& br = std::get<BridgeOutcome>(out);
    if (br.ambiguous) {
      std::string w = "AmbiguousBridge (" + acc.str() + " • " + c.type.str() + "):";
      for (std::size_t i = 0; i < br.candidates.size(); ++i)
        w += (i ? ", " : " ") + br.candidates[i];
      w += "; picked " + br.rel.name;
      res.warnings.push_back(w);
    }

    std::string lhs = acc.str();
    if (br.original_is_s && br.original_becomes.mode == Mode::Abstract) {
      acc.mode = Mode::Abstract;
      pinned = true;
    }
    TypeTerm fresh_type = br.original_is_s ? br.fresh : br.original_becomes;
    std::string fdisp = f.unique_display(fresh_type.category.substr(0, 1));
    int fid = f.insert_var_after(v, QuantKind::Exists, fdisp, fresh_type);
    fresh_ids.push_back(fid);

    Atom rel = br.original_is_s
                   ? Atom::rel(br.rel.name, Term::variable(fid), Term::variable(v),
                               br.rel.slot0, br.rel.slot1)
                   : Atom::rel(br.rel.name, Term::variable(v), Term::variable(fid),
                               br.rel.slot0, br.rel.slot1);
    int ins = c.atom >= 0 ? c.atom + 1 : static_cast<int>(f.body.size());
    f.body.insert(f.body.begin() + ins, std::move(rel));
    for (auto& p : pending)
      if (p.atom >= ins) ++p.atom;

    if (c.atom < 0) {
      drop_assumed(c.type);
      f.assumed[fid].push_back(c.type);
      pending.erase(pending.begin());
    }

    // move every slot that demands the fresh object's kind and cannot be
    // satisfied by the original any more
    for (auto& a : f.body) {
      for (std::size_t j = 0; j < a.args.size(); ++j) {
        if (a.args[j].kind != Term::Kind::Var || a.args[j].var != v || !a.slot_types[j])
          continue;
        const TypeTerm& st = *a.slot_types[j];
        if (o.comparable(st.category, fresh_type.category) &&
            !o.comparable(st.category, acc.category))
          a.args[j] = Term::variable(fid);
      }
    }
    std::erase_if(pending, [&](const Pending& p) {
      if (p.atom < 0) return false;
      const Term& t = f.body[static_cast<std::size_t>(p.atom)].args[static_cast<std::size_t>(p.arg)];
      return !(t.kind == Term::Kind::Var && t.var == v);
    });

    res.trace.push_back({display, lhs, c.type.str(), acc.str(), "bridge " + br.rel.name});
  }

  f.find_var(v)->type = TypeTerm{acc.category, pinned ? Mode::Abstract : acc.mode};
  res.form = std::move(f);
  return res;
}

// Runs identity merging, then unify_var over every variable: those whose
// constraints are all comparable with their initial category first, the
// bridging candidates second, variables introduced by bridges last, to a
// fixpoint. Keeps a snapshot of the input so the result can be re-unified
// under extra assumptions later. A ⊥ on one variable does not stop the
// others from resolving.
inline UnifyResult unify_all(const Ontology& o, LogicalForm lf) {
  lf.pre.reset();
  auto snapshot = std::make_shared<const LogicalForm>(lf);

  UnifyResult res;
  LogicalForm f = simplify_is(std::move(lf));

  auto all_comparable = [&](const Quantifier& q) {
    for (const auto& a : f.body)
      for (std::size_t j = 0; j < a.args.size(); ++j)
        if (a.args[j].kind == Term::Kind::Var && a.args[j].var == q.var &&
            a.slot_types[j] &&
            !o.comparable(a.slot_types[j]->category, q.type.category))
          return false;
    if (auto it = f.assumed.find(q.var); it != f.assumed.end())
      for (const auto& t : it->second)
        if (!o.comparable(t.category, q.type.category)) return false;
    return true;
  };

  std::vector<int> order, bridging;
  for (const auto& q : f.prefix)
    (all_comparable(q) ? order : bridging).push_back(q.var);
  order.insert(order.end(), bridging.begin(), bridging.end());

  std::set<int> done;
  auto step = [&](int v) {
    UnifyResult r = unify_var(o, f, v);
    f = std::move(r.form);
    res.trace.insert(res.trace.end(), r.trace.begin(), r.trace.end());
    res.warnings.insert(res.warnings.end(), r.warnings.begin(), r.warnings.end());
    done.insert(v);
  };
  for (int v : order) step(v);
  for (;;) {
    int next = -1;
    for (const auto& q : f.prefix)
      if (!done.count(q.var)) {
        next = q.var;
        break;
      }
    if (next < 0) break;
    step(next);
  }

  if (f.status != FormStatus::Anomalous) f.status = FormStatus::Final;
  for (auto& a : f.body)
    for (auto& s : a.slot_types) s.reset();
  f.pre = snapshot;
  res.form = std::move(f);
  return res;
}

// Retraction-and-redo: appends `extra` to the variable's original
// (pre-unification) constraints and unifies again from the snapshot. The
// variable is looked up by display name in that snapshot, so bridge-fresh
// variables cannot be constrained this way.
inline UnifyResult reunify_with_constraint(const Ontology& o, const LogicalForm& lf,
                                           const std::string& display,
                                           const TypeTerm& extra) {
  o.require_category(extra.category);
  const LogicalForm& base = lf.pre ? *lf.pre : lf;
  const Quantifier* q = base.find_display(display);
  if (!q) throw UnknownVariable(display);
  LogicalForm copy = base;
  copy.pre.reset();
  copy.status = FormStatus::PreUnification;
  copy.anomaly.reset();
  copy.assumed[q->var].push_back(extra);
  return unify_all(o, std::move(copy));
}

inline std::vector<std::string> render_trace(const Trace& tr) {
  std::vector<std::string> out;
  out.reserve(tr.size());
  for (const auto& s : tr) out.push_back(s.str());
  return out;
}

}  // namespace ontosem
