#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcn/axioms.hpp"
#include "alcn/lowering.hpp"
#include "alcn/printer.hpp"
#include "alcn/tableau.hpp"

namespace alcn {

// A caller violated an operation's stated precondition (missing rank, bad
// candidate, restricted rule on the wrong kind of KB, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

enum class PriorityMode { Specificity, ExplicitRank };

// Strict partial order over the DIs of one KB, identified by their index in
// the defeasible part (so duplicate DIs stay distinguishable).
class PriorityRelation {
 public:
  PriorityRelation(PriorityMode mode, std::set<std::pair<int, int>> pairs, int di_count)
      : mode_(mode), pairs_(std::move(pairs)), di_count_(di_count) {
    validate();
  }

  PriorityMode mode() const { return mode_; }
  int di_count() const { return di_count_; }
  const std::set<std::pair<int, int>>& pairs() const { return pairs_; }

  // true iff DI i has strictly higher priority than DI j.
  bool precedes(int i, int j) const { return pairs_.count({i, j}) != 0; }

 private:
  void validate() const {
    for (const auto& [i, j] : pairs_) {
      if (i == j) throw std::logic_error("priority relation is not irreflexive");
      if (pairs_.count({j, i})) throw std::logic_error("priority relation is not asymmetric");
    }
    for (const auto& [i, j] : pairs_) {
      for (const auto& [k, l] : pairs_) {
        if (j == k && !pairs_.count({i, l})) {
          throw std::logic_error("priority relation is not transitive");
        }
      }
    }
  }

  PriorityMode mode_;
  std::set<std::pair<int, int>> pairs_;
  int di_count_;
};

// Memo for the subsumption queries behind specificity, keyed by the premise
// pair. Shared across the pairwise computation of one priority relation.
struct SpecificityCache {
  std::map<std::pair<Concept, Concept>, bool> entailed;
};

namespace detail {

inline bool cached_strong_subsumption(const ClassicalKb& strong, const Concept& lhs,
                                      const Concept& rhs, const Reasoner& reasoner,
                                      SpecificityCache* cache) {
  if (cache) {
    auto it = cache->entailed.find({lhs, rhs});
    if (it != cache->entailed.end()) return it->second;
  }
  const bool result = reasoner.entails_subsumption(strong, lhs, rhs);
  if (cache) cache->entailed.emplace(std::make_pair(lhs, rhs), result);
  return result;
}

}  // namespace detail

// d1 has higher priority than d2 iff d1's premise is strictly more specific:
// S entails pre(d1) <= pre(d2) but not the converse. Lowered normality atoms
// are treated as plain concept names in both checks.
inline bool specificity(const std::vector<Axiom>& strong, const DefeasibleCi& d1,
                        const DefeasibleCi& d2, const Reasoner& reasoner,
                        SpecificityCache* cache = nullptr) {
  const ClassicalKb lowered = lower_strong(strong);
  const Concept p1 = lower_concept(d1.premise());
  const Concept p2 = lower_concept(d2.premise());
  return detail::cached_strong_subsumption(lowered, p1, p2, reasoner, cache) &&
         !detail::cached_strong_subsumption(lowered, p2, p1, reasoner, cache);
}

inline PriorityRelation priority_relation(const KnowledgeBase& kb, PriorityMode mode,
                                          const Reasoner& reasoner) {
  const int n = static_cast<int>(kb.defeasible.size());
  std::set<std::pair<int, int>> pairs;
  if (mode == PriorityMode::ExplicitRank) {
    for (int i = 0; i < n; ++i) {
      if (!kb.defeasible[i].rank) {
        throw PreconditionError("explicit-rank priority requires a rank on every defeasible "
                                "inclusion; missing on: " +
                                print_axiom(Axiom(kb.defeasible[i])));
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (*kb.defeasible[i].rank < *kb.defeasible[j].rank) pairs.insert({i, j});
      }
    }
  } else {
    const ClassicalKb lowered = lower_strong(kb.strong);
    SpecificityCache cache;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const Concept pi = lower_concept(kb.defeasible[i].premise());
        const Concept pj = lower_concept(kb.defeasible[j].premise());
        if (detail::cached_strong_subsumption(lowered, pi, pj, reasoner, &cache) &&
            !detail::cached_strong_subsumption(lowered, pj, pi, reasoner, &cache)) {
          pairs.insert({i, j});
        }
      }
    }
  }
  return PriorityRelation(mode, std::move(pairs), n);
}

// Total order compatible with the priority relation: higher-priority DIs
// first, ties broken by KB input order.
inline std::vector<int> linearize(const KnowledgeBase& kb, const PriorityRelation& prio) {
  const int n = static_cast<int>(kb.defeasible.size());
  std::vector<int> order;
  order.reserve(n);
  std::vector<bool> placed(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int i = 0; i < n && pick == -1; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (int j = 0; j < n; ++j) {
        if (!placed[j] && j != i && prio.precedes(j, i)) {
          ready = false;
          break;
        }
      }
      if (ready) pick = i;
    }
    if (pick == -1) throw std::logic_error("linearize: priority relation admits no linearization");
    placed[pick] = true;
    order.push_back(pick);
  }
  return order;
}

// The translated form of a DI for one normality concept:
// N C  and  pre(di)  <=  con(di), with normality concepts lowered.
struct TranslatedDi {
  int di_index;
  DefeasibleCi di;
  Concept normality;  // the N(...) concept itself
  LoweredCi lowered;
};

inline TranslatedDi translate_di(const DefeasibleCi& di, const Concept& normality,
                                 int di_index = -1) {
  if (normality.kind() != ConceptKind::Normal) {
    throw std::invalid_argument("translate_di: expected an N(...) concept");
  }
  const Concept atom = normality_atom(normality);
  return TranslatedDi{
      di_index, di, normality,
      LoweredCi{Concept::conjunction(atom, lower_concept(di.premise())),
                lower_concept(di.conclusion())}};
}

// An intermediate stage of the inductive construction: the lowered strong part
// plus the bridge axioms, and the translated DIs selected so far.
struct SigmaState {
  ClassicalKb base;
  std::vector<TranslatedDi> selected;
};

inline ClassicalKb materialize(const SigmaState& state) {
  ClassicalKb kb = state.base;
  for (const auto& t : state.selected) kb.tbox.push_back(t.lowered);
  return kb;
}

// Drops every previously selected translated DI whose source does not have
// strictly higher priority than DI di_index. The base axioms always survive.
inline ClassicalKb filter_higher_priority(const SigmaState& state, const PriorityRelation& prio,
                                          int di_index) {
  ClassicalKb kb = state.base;
  for (const auto& t : state.selected) {
    if (prio.precedes(t.di_index, di_index)) kb.tbox.push_back(t.lowered);
  }
  return kb;
}

// Why a translated DI was discarded: the exact axiom set of the failed
// consistency check (candidate included) and the conclusion it forced.
struct OverrideReason {
  ClassicalKb checked;
  LoweredCi conclusion;
};

struct ReductionResult {
  ClassicalKb kb_sigma;
  std::vector<Concept> sigma;  // normality concepts, in canonical order
  std::vector<DefeasibleCi> defeasible;  // the KB's defeasible part, input order
  std::vector<int> linearization;        // indices into `defeasible`, processing order
  std::vector<TranslatedDi> selected;
  std::vector<std::pair<TranslatedDi, OverrideReason>> overridden;
};

// The inductive construction over an explicit linearization. Issues exactly
// |D| * |sigma| satisfiability checks; the verdicts at one step never see each
// other's additions.
inline ReductionResult build_kb_sigma_with_linearization(const KnowledgeBase& kb,
                                                         const std::vector<Concept>& sigma,
                                                         const PriorityRelation& prio,
                                                         const std::vector<int>& linearization,
                                                         const Reasoner& reasoner) {
  const int n = static_cast<int>(kb.defeasible.size());
  if (static_cast<int>(linearization.size()) != n) {
    throw std::invalid_argument("linearization must cover every defeasible inclusion");
  }
  for (std::size_t a = 0; a < linearization.size(); ++a) {
    for (std::size_t b = a + 1; b < linearization.size(); ++b) {
      if (prio.precedes(linearization[b], linearization[a])) {
        throw std::invalid_argument("linearization is not compatible with the priority relation");
      }
    }
  }

  ReductionResult result;
  result.sigma = sigma;
  result.defeasible = kb.defeasible;
  result.linearization = linearization;

  SigmaState state;
  state.base = lower_strong(kb.strong);
  for (const auto& nc : sigma) {
    // Normal instances of C are a fortiori instances of C.
    state.base.add_ci(normality_atom(nc), lower_concept(nc.child()));
  }

  for (const int idx : linearization) {
    std::vector<TranslatedDi> keep;
    for (const auto& nc : sigma) {
      TranslatedDi t = translate_di(kb.defeasible[idx], nc, idx);
      ClassicalKb checked = filter_higher_priority(state, prio, idx);
      checked.tbox.push_back(t.lowered);
      const Concept atom = normality_atom(nc);
      if (reasoner.is_satisfiable(checked, atom)) {
        keep.push_back(std::move(t));
      } else {
        result.overridden.emplace_back(
            std::move(t), OverrideReason{std::move(checked), LoweredCi{atom, Concept::bottom()}});
      }
    }
    state.selected.insert(state.selected.end(), keep.begin(), keep.end());
  }

  result.selected = state.selected;
  result.kb_sigma = materialize(state);
  return result;
}

inline ReductionResult build_kb_sigma(const KnowledgeBase& kb, const std::vector<Concept>& sigma,
                                      const PriorityRelation& prio, const Reasoner& reasoner) {
  return build_kb_sigma_with_linearization(kb, sigma, prio, linearize(kb, prio), reasoner);
}

struct InferenceOptions {
  PriorityMode priority_mode = PriorityMode::Specificity;
};

struct EntailmentResult {
  bool entailed;
  ReductionResult reduction;
};

inline bool entails_lowered_query(const Reasoner& reasoner, const ClassicalKb& kb,
                                  const Axiom& query) {
  if (const auto* ci = std::get_if<StrictCi>(&query)) {
    return reasoner.entails_subsumption(kb, lower_concept(ci->lhs), lower_concept(ci->rhs));
  }
  if (const auto* ca = std::get_if<ConceptAssertion>(&query)) {
    return reasoner.entails_assertion(kb, LoweredConceptAssertion{ca->individual,
                                                                  lower_concept(ca->expr)});
  }
  if (const auto* ra = std::get_if<RoleAssertion>(&query)) {
    return reasoner.entails_assertion(kb, LoweredRoleAssertion{ra->subject, ra->role, ra->object});
  }
  throw PreconditionError("defeasible inclusions cannot be queried");
}

// Defeasible entailment: build the classical reduction for the query's
// normality concepts and answer classically from it.
inline EntailmentResult n_entails(const KnowledgeBase& kb, const Axiom& query,
                                  const InferenceOptions& options, const Reasoner& reasoner) {
  if (std::holds_alternative<DefeasibleCi>(query)) {
    throw PreconditionError("defeasible inclusions cannot be queried");
  }
  const std::vector<Concept> sigma = normality_concepts(kb, query);
  const PriorityRelation prio = priority_relation(kb, options.priority_mode, reasoner);
  ReductionResult reduction = build_kb_sigma(kb, sigma, prio, reasoner);
  const bool entailed = entails_lowered_query(reasoner, reduction.kb_sigma, query);
  return EntailmentResult{entailed, std::move(reduction)};
}

struct PrototypeReport {
  std::vector<Concept> inconsistent;  // N(C) with KB |~ N C <= Bot
  std::vector<Concept> consistent;
};

// Default candidate set: every concept name plus every argument of a
// normality concept occurring in the KB.
inline std::vector<Concept> default_prototype_candidates(const KnowledgeBase& kb) {
  std::set<Concept> candidates;
  const Signature sig = signature(kb);
  for (const auto& name : sig.concepts) candidates.insert(Concept::atomic(name));
  std::set<Concept> normals;
  for (const auto& a : kb.strong) detail::collect_normal_subterms(a, normals);
  for (const auto& d : kb.defeasible) detail::collect_normal_subterms(Axiom(d), normals);
  for (const auto& nc : normals) candidates.insert(nc.child());
  return std::vector<Concept>(candidates.begin(), candidates.end());
}

inline PrototypeReport inconsistent_prototypes(const KnowledgeBase& kb,
                                               const std::vector<Concept>& candidates,
                                               const InferenceOptions& options,
                                               const Reasoner& reasoner) {
  std::set<Concept> unique(candidates.begin(), candidates.end());
  PrototypeReport report;
  for (const auto& c : unique) {
    const Axiom query(StrictCi{Concept::normal(c), Concept::bottom()});
    if (n_entails(kb, query, options, reasoner).entailed) {
      report.inconsistent.push_back(Concept::normal(c));
    } else {
      report.consistent.push_back(Concept::normal(c));
    }
  }
  return report;
}

// Deterministic, reserved witness individual for "the prototype of C is
// nonempty". User identifiers may not contain the characters printed by
// compound concepts, and the aux_ prefix is documented as reserved.
inline IndividualName prototype_witness_name(const Concept& c) {
  return IndividualName("aux_" + print_concept(c));
}

// Adds, for each concept, a fresh witness individual asserted to be a normal
// instance. This is the ALC-expressible way of assuming prototypes nonempty.
inline KnowledgeBase assume_nonempty_prototypes(const KnowledgeBase& kb,
                                                const std::vector<Concept>& concepts,
                                                const Reasoner& reasoner) {
  const ClassicalKb strong = lower_strong(kb.strong);
  std::set<Concept> unique(concepts.begin(), concepts.end());
  KnowledgeBase out = kb;
  for (const auto& c : unique) {
    if (!reasoner.is_satisfiable(strong, lower_concept(c))) {
      throw PreconditionError("cannot assume a nonempty prototype for " + print_concept(c) +
                              ": the concept is inconsistent with the strong part");
    }
    out.strong.push_back(Axiom(ConceptAssertion{prototype_witness_name(c), Concept::normal(c)}));
  }
  return out;
}

}  // namespace alcn
