#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "alcn/concepts.hpp"

namespace alcn {

struct StrictCi {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const StrictCi& a, const StrictCi& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct DefeasibleCi {
  Concept lhs;
  Concept rhs;
  std::optional<int> rank;  // absent in specificity mode

  const Concept& premise() const { return lhs; }
  const Concept& conclusion() const { return rhs; }

  friend bool operator==(const DefeasibleCi& a, const DefeasibleCi& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs && a.rank == b.rank;
  }
};

struct ConceptAssertion {
  IndividualName individual;
  Concept expr;
  friend bool operator==(const ConceptAssertion& a, const ConceptAssertion& b) {
    return a.individual == b.individual && a.expr == b.expr;
  }
};

struct RoleAssertion {
  IndividualName subject;
  RoleName role;
  IndividualName object;
  friend bool operator==(const RoleAssertion& a, const RoleAssertion& b) {
    return a.subject == b.subject && a.role == b.role && a.object == b.object;
  }
};

using Axiom = std::variant<StrictCi, DefeasibleCi, ConceptAssertion, RoleAssertion>;

// KB = S (strong axioms) plus D (defeasible inclusions), kept disjoint by
// construction. Input order of D is preserved; it is used only as the
// deterministic tie-break when linearizing priorities.
struct KnowledgeBase {
  std::vector<Axiom> strong;
  std::vector<DefeasibleCi> defeasible;

  void add(Axiom a) {
    if (auto* di = std::get_if<DefeasibleCi>(&a)) {
      defeasible.push_back(*di);
    } else {
      strong.push_back(std::move(a));
    }
  }
};

struct Signature {
  std::set<ConceptName> concepts;
  std::set<RoleName> roles;
  std::set<IndividualName> individuals;
};

namespace detail {

inline void collect_concept_names(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
      return;
    case ConceptKind::Atomic:
      sig.concepts.insert(c.name());
      return;
    case ConceptKind::Negation:
    case ConceptKind::Normal:
      collect_concept_names(c.child(), sig);
      return;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      sig.roles.insert(c.role());
      collect_concept_names(c.child(), sig);
      return;
    case ConceptKind::Conjunction:
    case ConceptKind::Disjunction:
      collect_concept_names(c.left(), sig);
      collect_concept_names(c.right(), sig);
      return;
  }
}

inline void collect_signature(const Axiom& a, Signature& sig) {
  if (const auto* ci = std::get_if<StrictCi>(&a)) {
    collect_concept_names(ci->lhs, sig);
    collect_concept_names(ci->rhs, sig);
  } else if (const auto* di = std::get_if<DefeasibleCi>(&a)) {
    collect_concept_names(di->lhs, sig);
    collect_concept_names(di->rhs, sig);
  } else if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
    sig.individuals.insert(ca->individual);
    collect_concept_names(ca->expr, sig);
  } else if (const auto* ra = std::get_if<RoleAssertion>(&a)) {
    sig.individuals.insert(ra->subject);
    sig.individuals.insert(ra->object);
    sig.roles.insert(ra->role);
  }
}

inline void collect_normal_subterms(const Concept& c, std::set<Concept>& out) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
      return;
    case ConceptKind::Normal:
      out.insert(c);
      collect_normal_subterms(c.child(), out);
      return;
    case ConceptKind::Negation:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      collect_normal_subterms(c.child(), out);
      return;
    case ConceptKind::Conjunction:
    case ConceptKind::Disjunction:
      collect_normal_subterms(c.left(), out);
      collect_normal_subterms(c.right(), out);
      return;
  }
}

inline void collect_normal_subterms(const Axiom& a, std::set<Concept>& out) {
  if (const auto* ci = std::get_if<StrictCi>(&a)) {
    collect_normal_subterms(ci->lhs, out);
    collect_normal_subterms(ci->rhs, out);
  } else if (const auto* di = std::get_if<DefeasibleCi>(&a)) {
    collect_normal_subterms(di->lhs, out);
    collect_normal_subterms(di->rhs, out);
  } else if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
    collect_normal_subterms(ca->expr, out);
  }
}

}  // namespace detail

inline Signature signature(const KnowledgeBase& kb) {
  Signature sig;
  for (const auto& a : kb.strong) detail::collect_signature(a, sig);
  for (const auto& d : kb.defeasible) detail::collect_signature(Axiom(d), sig);
  return sig;
}

// The set of normality concepts relevant to a query: every N(...) subterm of
// the KB or of the query itself (union reading). Sorted, duplicate-free.
inline std::vector<Concept> normality_concepts(const KnowledgeBase& kb, const Axiom& query) {
  std::set<Concept> out;
  for (const auto& a : kb.strong) detail::collect_normal_subterms(a, out);
  for (const auto& d : kb.defeasible) detail::collect_normal_subterms(Axiom(d), out);
  detail::collect_normal_subterms(query, out);
  return std::vector<Concept>(out.begin(), out.end());
}

// Canonical KB: no defeasible premise mentions a normality concept.
inline bool is_canonical(const KnowledgeBase& kb) {
  return std::none_of(kb.defeasible.begin(), kb.defeasible.end(),
                      [](const DefeasibleCi& d) { return contains_normal(d.premise()); });
}

inline bool kb_mentions_normal(const KnowledgeBase& kb) {
  std::set<Concept> out;
  for (const auto& a : kb.strong) detail::collect_normal_subterms(a, out);
  for (const auto& d : kb.defeasible) detail::collect_normal_subterms(Axiom(d), out);
  return !out.empty();
}

namespace detail {
inline bool has_nested_normal(const Concept& c, bool under_normal) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
      return false;
    case ConceptKind::Normal:
      return under_normal || has_nested_normal(c.child(), true);
    case ConceptKind::Negation:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return has_nested_normal(c.child(), under_normal);
    case ConceptKind::Conjunction:
    case ConceptKind::Disjunction:
      return has_nested_normal(c.left(), under_normal) ||
             has_nested_normal(c.right(), under_normal);
  }
  return false;
}
}  // namespace detail

// Non-fatal diagnostics: non-canonical KBs and nested normality concepts are
// legal but usually unintended.
inline std::vector<std::string> validate_kb(const KnowledgeBase& kb) {
  std::vector<std::string> warnings;
  std::size_t di_index = 0;
  for (const auto& d : kb.defeasible) {
    ++di_index;
    if (contains_normal(d.premise())) {
      warnings.push_back("defeasible inclusion #" + std::to_string(di_index) +
                         " has a normality concept in its premise (KB is not canonical)");
    }
  }
  auto check_nested = [&warnings](const Concept& c, const std::string& where) {
    if (detail::has_nested_normal(c, false)) {
      warnings.push_back("nested normality concept in " + where);
    }
  };
  std::size_t i = 0;
  for (const auto& a : kb.strong) {
    ++i;
    const std::string where = "strong axiom #" + std::to_string(i);
    if (const auto* ci = std::get_if<StrictCi>(&a)) {
      check_nested(ci->lhs, where);
      check_nested(ci->rhs, where);
    } else if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      check_nested(ca->expr, where);
    }
  }
  i = 0;
  for (const auto& d : kb.defeasible) {
    ++i;
    const std::string where = "defeasible inclusion #" + std::to_string(i);
    check_nested(d.lhs, where);
    check_nested(d.rhs, where);
  }
  return warnings;
}

}  // namespace alcn
