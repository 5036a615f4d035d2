#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "alcn/defeasible.hpp"
#include "alcn/parser.hpp"
#include "alcn/printer.hpp"

namespace alcn {

// Meta-level closure rules for the defeasible consequence relation.
enum class MetaRule { Ref, Ct, Cm, Lle, Rw };

// Internalized rules over normality concepts.
enum class InternalRule { RefN, CtN, CmN, LleN, RwN, OrN, RmN };

inline const char* to_string(MetaRule r) {
  switch (r) {
    case MetaRule::Ref: return "REF";
    case MetaRule::Ct: return "CT";
    case MetaRule::Cm: return "CM";
    case MetaRule::Lle: return "LLE";
    case MetaRule::Rw: return "RW";
  }
  return "";
}

inline const char* to_string(InternalRule r) {
  switch (r) {
    case InternalRule::RefN: return "REF_N";
    case InternalRule::CtN: return "CT_N";
    case InternalRule::CmN: return "CM_N";
    case InternalRule::LleN: return "LLE_N";
    case InternalRule::RwN: return "RW_N";
    case InternalRule::OrN: return "OR_N";
    case InternalRule::RmN: return "RM_N";
  }
  return "";
}

inline std::optional<std::variant<MetaRule, InternalRule>> parse_rule_name(const std::string& s) {
  for (MetaRule r : {MetaRule::Ref, MetaRule::Ct, MetaRule::Cm, MetaRule::Lle, MetaRule::Rw}) {
    if (s == to_string(r)) return std::variant<MetaRule, InternalRule>(r);
  }
  for (InternalRule r : {InternalRule::RefN, InternalRule::CtN, InternalRule::CmN,
                         InternalRule::LleN, InternalRule::RwN, InternalRule::OrN,
                         InternalRule::RmN}) {
    if (s == to_string(r)) return std::variant<MetaRule, InternalRule>(r);
  }
  return std::nullopt;
}

// One instantiation of a meta rule. alpha and beta must be classical, N-free
// axioms; gamma may mention normality concepts. beta is used by LLE only;
// gamma is ignored by REF.
struct MetaInstance {
  Axiom alpha;
  std::optional<Axiom> beta;
  Axiom gamma;
};

struct MetaCounterexample {
  KnowledgeBase kb;
  MetaRule rule;
  MetaInstance instance;
};

struct InternalCounterexample {
  KnowledgeBase kb;
  InternalRule rule;
  Concept c;
  Concept d;
  Concept e;
};

using Counterexample = std::variant<std::monostate, MetaCounterexample, InternalCounterexample>;

struct PostulateVerdict {
  bool holds = true;
  Counterexample counterexample;  // non-empty exactly when holds is false
};

namespace detail {

// Memoizing defeasible-entailment evaluator for one fixed KB. The priority
// relation is computed once and reused across queries.
class KbEvaluator {
 public:
  KbEvaluator(KnowledgeBase kb, PriorityMode mode, const Reasoner& reasoner)
      : kb_(std::move(kb)),
        prio_(priority_relation(kb_, mode, reasoner)),
        reasoner_(reasoner) {}

  bool entails(const Axiom& query) {
    std::string key = print_axiom(query);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const auto sigma = normality_concepts(kb_, query);
    const auto reduction = build_kb_sigma(kb_, sigma, prio_, reasoner_);
    const bool result = entails_lowered_query(reasoner_, reduction.kb_sigma, query);
    memo_.emplace(std::move(key), result);
    return result;
  }

  const KnowledgeBase& kb() const { return kb_; }

 private:
  KnowledgeBase kb_;
  PriorityRelation prio_;
  const Reasoner& reasoner_;
  std::map<std::string, bool> memo_;
};

inline KnowledgeBase extend(const KnowledgeBase& kb, const Axiom& axiom) {
  KnowledgeBase out = kb;
  out.add(axiom);
  return out;
}

inline bool classical_axiom(const Axiom& a) {
  if (std::holds_alternative<DefeasibleCi>(a)) return false;
  if (const auto* ci = std::get_if<StrictCi>(&a)) {
    return !contains_normal(ci->lhs) && !contains_normal(ci->rhs);
  }
  if (const auto* ca = std::get_if<ConceptAssertion>(&a)) return !contains_normal(ca->expr);
  return true;
}

}  // namespace detail

// Sound check for logical equivalence of two classical axioms: two concept
// inclusions are compared through their violation concepts under the empty
// KB, assertions about the same individual through their concepts, and role
// assertions syntactically. Conservative: may answer false for exotic
// equivalences, never true for inequivalent axioms.
inline bool axiom_equivalent(const Axiom& a, const Axiom& b, const Reasoner& reasoner) {
  const ClassicalKb empty;
  if (const auto* ca = std::get_if<StrictCi>(&a)) {
    const auto* cb = std::get_if<StrictCi>(&b);
    if (!cb) return false;
    const Concept va = lower_concept(Concept::conjunction(ca->lhs, Concept::negation(ca->rhs)));
    const Concept vb = lower_concept(Concept::conjunction(cb->lhs, Concept::negation(cb->rhs)));
    return reasoner.entails_subsumption(empty, va, vb) &&
           reasoner.entails_subsumption(empty, vb, va);
  }
  if (const auto* aa = std::get_if<ConceptAssertion>(&a)) {
    const auto* ab = std::get_if<ConceptAssertion>(&b);
    if (!ab || !(aa->individual == ab->individual)) return false;
    const Concept ea = lower_concept(aa->expr);
    const Concept eb = lower_concept(ab->expr);
    return reasoner.entails_subsumption(empty, ea, eb) &&
           reasoner.entails_subsumption(empty, eb, ea);
  }
  return a == b;
}

// Classical entailment of gamma from the single-axiom KB {alpha}.
inline bool classical_axiom_entails(const Axiom& alpha, const Axiom& gamma,
                                    const Reasoner& reasoner) {
  ClassicalKb kb;
  add_lowered(kb, alpha);
  return entails_lowered_query(reasoner, kb, gamma);
}

// Evaluates one meta-rule instance. No preconditions are enforced here; the
// soundness guarantees only cover canonical, conflict-free KBs.
inline PostulateVerdict evaluate_meta(const KnowledgeBase& kb, MetaRule rule,
                                      const MetaInstance& instance, PriorityMode mode,
                                      const Reasoner& reasoner) {
  if (!detail::classical_axiom(instance.alpha) ||
      (instance.beta && !detail::classical_axiom(*instance.beta))) {
    throw std::invalid_argument("meta-rule premises alpha/beta must be classical, N-free axioms");
  }
  if (std::holds_alternative<DefeasibleCi>(instance.gamma)) {
    throw std::invalid_argument("meta-rule conclusion gamma must be a CI or an assertion");
  }

  const auto fail = [&]() {
    PostulateVerdict v;
    v.holds = false;
    v.counterexample = MetaCounterexample{kb, rule, instance};
    return v;
  };

  detail::KbEvaluator base(kb, mode, reasoner);
  switch (rule) {
    case MetaRule::Ref: {
      const bool member =
          std::find(kb.strong.begin(), kb.strong.end(), instance.alpha) != kb.strong.end();
      if (!member) return {};
      return base.entails(instance.alpha) ? PostulateVerdict{} : fail();
    }
    case MetaRule::Ct: {
      if (!base.entails(instance.alpha)) return {};
      detail::KbEvaluator extended(detail::extend(kb, instance.alpha), mode, reasoner);
      if (!extended.entails(instance.gamma)) return {};
      return base.entails(instance.gamma) ? PostulateVerdict{} : fail();
    }
    case MetaRule::Cm: {
      if (!base.entails(instance.alpha) || !base.entails(instance.gamma)) return {};
      detail::KbEvaluator extended(detail::extend(kb, instance.alpha), mode, reasoner);
      return extended.entails(instance.gamma) ? PostulateVerdict{} : fail();
    }
    case MetaRule::Lle: {
      if (!instance.beta) throw std::invalid_argument("LLE needs a beta axiom");
      if (!axiom_equivalent(instance.alpha, *instance.beta, reasoner)) return {};
      detail::KbEvaluator with_alpha(detail::extend(kb, instance.alpha), mode, reasoner);
      if (!with_alpha.entails(instance.gamma)) return {};
      detail::KbEvaluator with_beta(detail::extend(kb, *instance.beta), mode, reasoner);
      return with_beta.entails(instance.gamma) ? PostulateVerdict{} : fail();
    }
    case MetaRule::Rw: {
      if (!base.entails(instance.alpha)) return {};
      if (!classical_axiom_entails(instance.alpha, instance.gamma, reasoner)) return {};
      return base.entails(instance.gamma) ? PostulateVerdict{} : fail();
    }
  }
  throw std::logic_error("evaluate_meta: unknown rule");
}

namespace detail {

// Premises-imply-conclusion for one internalized-rule instance, evaluated
// through a (possibly shared) memoizing evaluator.
inline bool internalized_holds(KbEvaluator& eval, InternalRule rule, const Concept& c,
                               const Concept& d, const Concept& e) {
  const auto n_ci = [](const Concept& lhs, const Concept& rhs) {
    return Axiom(StrictCi{Concept::normal(lhs), rhs});
  };
  const auto ci = [](const Concept& lhs, const Concept& rhs) {
    return Axiom(StrictCi{lhs, rhs});
  };
  switch (rule) {
    case InternalRule::RefN:
      return eval.entails(n_ci(c, c));
    case InternalRule::CtN: {
      if (!eval.entails(n_ci(c, d))) return true;
      if (!eval.entails(n_ci(Concept::conjunction(c, d), e))) return true;
      return eval.entails(n_ci(c, e));
    }
    case InternalRule::CmN: {
      if (!eval.entails(n_ci(c, d)) || !eval.entails(n_ci(c, e))) return true;
      return eval.entails(n_ci(Concept::conjunction(c, d), e));
    }
    case InternalRule::LleN: {
      if (!eval.entails(n_ci(c, e))) return true;
      if (!eval.entails(ci(c, d)) || !eval.entails(ci(d, c))) return true;
      return eval.entails(n_ci(d, e));
    }
    case InternalRule::RwN: {
      if (!eval.entails(n_ci(c, d))) return true;
      if (!eval.entails(ci(d, e))) return true;
      return eval.entails(n_ci(c, e));
    }
    case InternalRule::OrN: {
      if (!eval.entails(n_ci(c, e)) || !eval.entails(n_ci(d, e))) return true;
      return eval.entails(n_ci(Concept::disjunction(c, d), e));
    }
    case InternalRule::RmN: {
      if (!eval.entails(n_ci(c, e))) return true;
      if (eval.entails(n_ci(c, Concept::negation(d)))) return true;  // negative premise
      return eval.entails(n_ci(Concept::conjunction(c, d), e));
    }
  }
  throw std::logic_error("internalized_holds: unknown rule");
}

}  // namespace detail

// Evaluates one internalized-rule instance over concepts c, d, e.
inline PostulateVerdict evaluate_internalized(const KnowledgeBase& kb, InternalRule rule,
                                              const Concept& c, const Concept& d, const Concept& e,
                                              PriorityMode mode, const Reasoner& reasoner) {
  detail::KbEvaluator eval(kb, mode, reasoner);
  if (detail::internalized_holds(eval, rule, c, d, e)) return {};
  PostulateVerdict v;
  v.holds = false;
  v.counterexample = InternalCounterexample{kb, rule, c, d, e};
  return v;
}

inline bool conflict_free(const KnowledgeBase& kb, PriorityMode mode, const Reasoner& reasoner) {
  return inconsistent_prototypes(kb, default_prototype_candidates(kb), InferenceOptions{mode},
                                 reasoner)
      .inconsistent.empty();
}

// Single-instance checker with the preconditions under which the meta rules
// are guaranteed: canonical KB, no inconsistent prototypes.
inline PostulateVerdict check_meta(const KnowledgeBase& kb, MetaRule rule,
                                   const MetaInstance& instance, PriorityMode mode,
                                   const Reasoner& reasoner) {
  if (!is_canonical(kb)) {
    throw PreconditionError("meta rules require a canonical KB");
  }
  if (!conflict_free(kb, mode, reasoner)) {
    throw PreconditionError("meta rules require a KB without inconsistent prototypes");
  }
  return evaluate_meta(kb, rule, instance, mode, reasoner);
}

inline bool internal_rule_is_restricted(InternalRule rule) {
  return rule != InternalRule::RefN && rule != InternalRule::RwN;
}

// Single-instance checker for the internalized rules. The restricted rules
// are only guaranteed when normality concepts do not occur in the KB.
inline PostulateVerdict check_internalized(const KnowledgeBase& kb, InternalRule rule,
                                           const Concept& c, const Concept& d, const Concept& e,
                                           PriorityMode mode, const Reasoner& reasoner) {
  if (internal_rule_is_restricted(rule) && kb_mentions_normal(kb)) {
    throw PreconditionError(std::string(to_string(rule)) +
                            " is only guaranteed on KBs with no normality concepts");
  }
  return evaluate_internalized(kb, rule, c, d, e, mode, reasoner);
}

inline PostulateVerdict replay(const MetaCounterexample& ce, PriorityMode mode,
                               const Reasoner& reasoner) {
  return evaluate_meta(ce.kb, ce.rule, ce.instance, mode, reasoner);
}

inline PostulateVerdict replay(const InternalCounterexample& ce, PriorityMode mode,
                               const Reasoner& reasoner) {
  return evaluate_internalized(ce.kb, ce.rule, ce.c, ce.d, ce.e, mode, reasoner);
}

// ---------------------------------------------------------------------------
// Random KB generation

struct GeneratorProfile {
  int concept_names = 4;      // at most 6
  int roles = 1;              // at most 2
  int strong_axioms = 3;
  int defeasible_axioms = 3;  // at most 6
  int max_depth = 2;          // at most 3
  bool allow_normal_in_kb = false;  // N(...) in defeasible conclusions
  bool with_individuals = false;
};

namespace detail {

// splitmix64: tiny, fully deterministic across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return pick(100) < percent; }

 private:
  std::uint64_t state_;
};

inline Concept random_concept(Rng& rng, int depth, const std::vector<ConceptName>& names,
                              const std::vector<RoleName>& roles, bool allow_normal) {
  const auto leaf = [&]() {
    const int w = rng.pick(10);
    if (w < 8) return Concept::atomic(names[rng.pick(static_cast<int>(names.size()))]);
    if (w == 8) return Concept::top();
    return Concept::bottom();
  };
  if (depth <= 0) return leaf();
  const int has_roles = roles.empty() ? 0 : 3;
  const int has_normal = allow_normal ? 1 : 0;
  const int w = rng.pick(10 + has_roles + has_normal);
  if (w < 4) return leaf();
  if (w < 6) {
    return Concept::negation(random_concept(rng, depth - 1, names, roles, allow_normal));
  }
  if (w < 8) {
    return Concept::conjunction(random_concept(rng, depth - 1, names, roles, allow_normal),
                                random_concept(rng, depth - 1, names, roles, allow_normal));
  }
  if (w < 10) {
    return Concept::disjunction(random_concept(rng, depth - 1, names, roles, allow_normal),
                                random_concept(rng, depth - 1, names, roles, allow_normal));
  }
  if (has_roles && w < 10 + has_roles) {
    const RoleName role = roles[rng.pick(static_cast<int>(roles.size()))];
    const Concept filler = random_concept(rng, depth - 1, names, roles, allow_normal);
    return w == 10 + has_roles - 1 ? Concept::forall(role, filler) : Concept::exists(role, filler);
  }
  return Concept::normal(random_concept(rng, depth - 1, names, roles, false));
}

}  // namespace detail

// Deterministic in the seed; always canonical (defeasible premises stay
// N-free). Concept/role/individual pools are fixed, so generated KBs never
// mix namespaces.
inline KnowledgeBase generate_random_kb(std::uint64_t seed, const GeneratorProfile& profile) {
  if (profile.concept_names < 1 || profile.concept_names > 6 || profile.roles < 0 ||
      profile.roles > 2 || profile.defeasible_axioms < 0 || profile.defeasible_axioms > 6 ||
      profile.max_depth < 0 || profile.max_depth > 3) {
    throw std::invalid_argument("generator profile out of bounds");
  }
  static const char* kNames[] = {"A", "B", "C", "D", "E", "F"};
  static const char* kRoles[] = {"r", "s"};
  static const char* kIndividuals[] = {"a", "b", "c"};

  std::vector<ConceptName> names;
  for (int i = 0; i < profile.concept_names; ++i) names.emplace_back(kNames[i]);
  std::vector<RoleName> roles;
  for (int i = 0; i < profile.roles; ++i) roles.emplace_back(kRoles[i]);

  detail::Rng rng(seed);
  KnowledgeBase kb;
  for (int i = 0; i < profile.strong_axioms; ++i) {
    if (profile.with_individuals && rng.chance(30)) {
      const IndividualName ind(kIndividuals[rng.pick(3)]);
      if (!roles.empty() && rng.chance(35)) {
        const IndividualName obj(kIndividuals[rng.pick(3)]);
        kb.add(Axiom(RoleAssertion{ind, roles[rng.pick(static_cast<int>(roles.size()))], obj}));
      } else {
        kb.add(Axiom(ConceptAssertion{
            ind, detail::random_concept(rng, 1, names, roles, false)}));
      }
      continue;
    }
    const Concept lhs = detail::random_concept(rng, 1, names, roles, false);
    const Concept rhs = detail::random_concept(rng, profile.max_depth, names, roles, false);
    kb.add(Axiom(StrictCi{lhs, rhs}));
  }
  for (int i = 0; i < profile.defeasible_axioms; ++i) {
    Concept premise = rng.chance(60)
                          ? Concept::atomic(names[rng.pick(static_cast<int>(names.size()))])
                          : detail::random_concept(rng, 1, names, roles, false);
    if (contains_normal(premise)) premise = Concept::atomic(names[0]);
    const Concept conclusion =
        detail::random_concept(rng, profile.max_depth, names, roles, profile.allow_normal_in_kb);
    kb.add(Axiom(DefeasibleCi{premise, conclusion, std::nullopt}));
  }
  return kb;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSummary {
  int kbs_tested = 0;
  // Generated KBs that failed the rule's preconditions or exceeded the
  // reasoner's resource budget (the answer there is "unknown", never wrong).
  int kbs_skipped = 0;
  long long instances = 0;
  long long failures = 0;
  Counterexample first_counterexample;
};

namespace detail {

inline std::vector<ConceptName> leading_concept_names(const KnowledgeBase& kb, int limit) {
  const Signature sig = signature(kb);
  std::vector<ConceptName> out;
  for (const auto& name : sig.concepts) {
    if (static_cast<int>(out.size()) >= limit) break;
    out.push_back(name);
  }
  return out;
}

struct MetaPools {
  std::vector<Axiom> alphas;  // classical, N-free
  std::vector<Axiom> gammas;  // may mention N
};

inline MetaPools build_meta_pools(const KnowledgeBase& kb) {
  MetaPools pools;
  for (const auto& a : kb.strong) {
    if (pools.alphas.size() >= 4) break;
    if (classical_axiom(a)) pools.alphas.push_back(a);
  }
  const auto names = leading_concept_names(kb, 3);
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (i == j || pools.alphas.size() >= 6) continue;
      pools.alphas.push_back(
          Axiom(StrictCi{Concept::atomic(names[i]), Concept::atomic(names[j])}));
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (i == j) continue;
      if (pools.gammas.size() < 4) {
        pools.gammas.push_back(
            Axiom(StrictCi{Concept::atomic(names[i]), Concept::atomic(names[j])}));
      }
      pools.gammas.push_back(Axiom(
          StrictCi{Concept::normal(Concept::atomic(names[i])), Concept::atomic(names[j])}));
      if (pools.gammas.size() >= 8) break;
    }
    if (pools.gammas.size() >= 8) break;
  }
  for (const auto& name : names) {
    pools.gammas.push_back(
        Axiom(StrictCi{Concept::normal(Concept::atomic(name)), Concept::bottom()}));
  }
  return pools;
}

// Logically equivalent rewrites of a classical axiom, for LLE instances.
inline std::vector<Axiom> equivalent_variants(const Axiom& alpha) {
  std::vector<Axiom> out;
  if (const auto* ci = std::get_if<StrictCi>(&alpha)) {
    out.push_back(Axiom(StrictCi{Concept::negation(ci->rhs), Concept::negation(ci->lhs)}));
    out.push_back(Axiom(StrictCi{Concept::negation(Concept::negation(ci->lhs)), ci->rhs}));
  } else if (const auto* ca = std::get_if<ConceptAssertion>(&alpha)) {
    out.push_back(Axiom(ConceptAssertion{
        ca->individual, Concept::negation(Concept::negation(ca->expr))}));
  }
  return out;
}

// Classical weakenings of alpha, for RW instances.
inline std::vector<Axiom> weakenings(const Axiom& alpha, const std::vector<ConceptName>& names) {
  std::vector<Axiom> out;
  if (names.empty()) return out;
  const Concept extra = Concept::atomic(names[0]);
  if (const auto* ci = std::get_if<StrictCi>(&alpha)) {
    out.push_back(Axiom(StrictCi{ci->lhs, Concept::disjunction(ci->rhs, extra)}));
    out.push_back(Axiom(StrictCi{Concept::conjunction(ci->lhs, extra), ci->rhs}));
  } else if (const auto* ca = std::get_if<ConceptAssertion>(&alpha)) {
    out.push_back(Axiom(ConceptAssertion{ca->individual,
                                         Concept::disjunction(ca->expr, extra)}));
  }
  return out;
}

}  // namespace detail

// Evaluates one meta rule over every enumerated instance on one KB.
namespace detail {

inline void run_meta_rule_on_kb(const KnowledgeBase& kb, MetaRule rule, PriorityMode mode,
                                const Reasoner& reasoner, SweepSummary& summary) {
  const auto pools = build_meta_pools(kb);
  const auto names = leading_concept_names(kb, 3);
  KbEvaluator base(kb, mode, reasoner);
  std::map<std::string, KbEvaluator> extended;
  auto extended_eval = [&](const Axiom& a) -> KbEvaluator& {
    const std::string key = print_axiom(a);
    auto it = extended.find(key);
    if (it == extended.end()) {
      it = extended.emplace(key, KbEvaluator(extend(kb, a), mode, reasoner)).first;
    }
    return it->second;
  };
  const auto record_failure = [&](const MetaInstance& instance) {
    ++summary.failures;
    if (std::holds_alternative<std::monostate>(summary.first_counterexample)) {
      summary.first_counterexample = MetaCounterexample{kb, rule, instance};
    }
  };

  switch (rule) {
    case MetaRule::Ref:
      for (const auto& alpha : kb.strong) {
        ++summary.instances;
        if (!base.entails(alpha)) record_failure({alpha, std::nullopt, alpha});
      }
      break;
    case MetaRule::Ct:
    case MetaRule::Cm:
      for (const auto& alpha : pools.alphas) {
        const bool p_alpha = base.entails(alpha);
        if (!p_alpha) {
          summary.instances += static_cast<long long>(pools.gammas.size());
          continue;  // both rules need KB |~ alpha
        }
        auto& ext = extended_eval(alpha);
        for (const auto& gamma : pools.gammas) {
          ++summary.instances;
          if (rule == MetaRule::Ct) {
            if (ext.entails(gamma) && !base.entails(gamma)) {
              record_failure({alpha, std::nullopt, gamma});
            }
          } else {
            if (base.entails(gamma) && !ext.entails(gamma)) {
              record_failure({alpha, std::nullopt, gamma});
            }
          }
        }
      }
      break;
    case MetaRule::Lle:
      for (const auto& alpha : pools.alphas) {
        for (const auto& beta : equivalent_variants(alpha)) {
          if (!axiom_equivalent(alpha, beta, reasoner)) continue;
          auto& with_alpha = extended_eval(alpha);
          auto& with_beta = extended_eval(beta);
          for (const auto& gamma : pools.gammas) {
            ++summary.instances;
            if (with_alpha.entails(gamma) && !with_beta.entails(gamma)) {
              record_failure({alpha, beta, gamma});
            }
          }
        }
      }
      break;
    case MetaRule::Rw:
      for (const auto& alpha : pools.alphas) {
        if (!base.entails(alpha)) continue;
        for (const auto& gamma : weakenings(alpha, names)) {
          ++summary.instances;
          if (!classical_axiom_entails(alpha, gamma, reasoner)) continue;
          if (!base.entails(gamma)) record_failure({alpha, std::nullopt, gamma});
        }
      }
      break;
  }
}

inline void run_internalized_rule_on_kb(const KnowledgeBase& kb, InternalRule rule,
                                        PriorityMode mode, const Reasoner& reasoner,
                                        SweepSummary& summary) {
  const auto names = leading_concept_names(kb, 3);
  std::vector<Concept> atoms;
  for (const auto& n : names) atoms.push_back(Concept::atomic(n));
  if (atoms.empty()) atoms.push_back(Concept::top());

  KbEvaluator eval(kb, mode, reasoner);
  const auto run_instance = [&](const Concept& c, const Concept& d, const Concept& e) {
    ++summary.instances;
    if (!internalized_holds(eval, rule, c, d, e)) {
      ++summary.failures;
      if (std::holds_alternative<std::monostate>(summary.first_counterexample)) {
        summary.first_counterexample = InternalCounterexample{kb, rule, c, d, e};
      }
    }
  };

  if (rule == InternalRule::RefN) {
    for (const auto& c : atoms) run_instance(c, c, c);
  } else {
    for (const auto& c : atoms) {
      for (const auto& d : atoms) {
        for (const auto& e : atoms) {
          run_instance(c, d, e);
        }
      }
    }
  }
}

}  // namespace detail

// Runs a meta rule over generated KBs until kb_count KBs satisfying the
// preconditions have been tested (or the seed budget runs out). Seeds start
// at first_seed and advance by one per generated KB. KBs that exhaust the
// reasoner's resource budget are skipped: their answers would be unknown.
inline SweepSummary sweep_meta(MetaRule rule, std::uint64_t first_seed, int kb_count,
                               const GeneratorProfile& profile, PriorityMode mode,
                               const Reasoner& reasoner) {
  SweepSummary summary;
  std::uint64_t seed = first_seed;
  const std::uint64_t seed_budget = first_seed + static_cast<std::uint64_t>(kb_count) * 100 + 100;
  while (summary.kbs_tested < kb_count && seed < seed_budget) {
    const KnowledgeBase kb = generate_random_kb(seed++, profile);
    try {
      if (!is_canonical(kb) || !conflict_free(kb, mode, reasoner)) {
        ++summary.kbs_skipped;
        continue;
      }
      detail::run_meta_rule_on_kb(kb, rule, mode, reasoner, summary);
      ++summary.kbs_tested;
    } catch (const ResourceLimitError&) {
      ++summary.kbs_skipped;
    }
  }
  return summary;
}

// Runs an internalized rule over generated KBs; instances range over all
// triples of leading concept names. The restricted rules require N-free KBs,
// and every rule assumes unresolved conflicts have been repaired, so
// conflicted KBs are skipped (and counted), as are KBs that exhaust the
// resource budget.
inline SweepSummary sweep_internalized(InternalRule rule, std::uint64_t first_seed, int kb_count,
                                       const GeneratorProfile& profile, PriorityMode mode,
                                       const Reasoner& reasoner) {
  if (internal_rule_is_restricted(rule) && profile.allow_normal_in_kb) {
    throw PreconditionError(std::string(to_string(rule)) +
                            " is only guaranteed on KBs with no normality concepts");
  }
  SweepSummary summary;
  std::uint64_t seed = first_seed;
  const std::uint64_t seed_budget = first_seed + static_cast<std::uint64_t>(kb_count) * 100 + 100;
  while (summary.kbs_tested < kb_count && seed < seed_budget) {
    const KnowledgeBase kb = generate_random_kb(seed++, profile);
    try {
      if (internal_rule_is_restricted(rule) && kb_mentions_normal(kb)) {
        ++summary.kbs_skipped;
        continue;
      }
      if (!conflict_free(kb, mode, reasoner)) {
        ++summary.kbs_skipped;
        continue;
      }
      detail::run_internalized_rule_on_kb(kb, rule, mode, reasoner, summary);
      ++summary.kbs_tested;
    } catch (const ResourceLimitError&) {
      ++summary.kbs_skipped;
    }
  }
  return summary;
}

}  // namespace alcn
