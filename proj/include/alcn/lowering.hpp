#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "alcn/axioms.hpp"
#include "alcn/concepts.hpp"
#include "alcn/printer.hpp"

namespace alcn {

// N(C) is lowered to a reserved atomic concept whose name is derived from the
// printed form of C. The printed form contains characters that are illegal in
// user identifiers, so reserved atoms can never collide with parsed names, and
// syntactically equal arguments always map to the same atom.
inline ConceptName normality_atom_name(const Concept& argument) {
  return ConceptName("N(" + print_concept(argument) + ")");
}

inline Concept normality_atom(const Concept& normal_concept) {
  if (normal_concept.kind() != ConceptKind::Normal) {
    throw std::invalid_argument("normality_atom: expected an N(...) concept");
  }
  return Concept::atomic(normality_atom_name(normal_concept.child()));
}

// Replaces every N(...) node by its reserved atom. The argument's own
// structure survives only inside the atom's name.
inline Concept lower_concept(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
      return c;
    case ConceptKind::Normal:
      return normality_atom(c);
    case ConceptKind::Negation:
      return Concept::negation(lower_concept(c.child()));
    case ConceptKind::Exists:
      return Concept::exists(c.role(), lower_concept(c.child()));
    case ConceptKind::Forall:
      return Concept::forall(c.role(), lower_concept(c.child()));
    case ConceptKind::Conjunction:
      return Concept::conjunction(lower_concept(c.left()), lower_concept(c.right()));
    case ConceptKind::Disjunction:
      return Concept::disjunction(lower_concept(c.left()), lower_concept(c.right()));
  }
  throw std::logic_error("lower_concept: unknown concept kind");
}

struct LoweredCi {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const LoweredCi& a, const LoweredCi& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct LoweredConceptAssertion {
  IndividualName individual;
  Concept expr;
  friend bool operator==(const LoweredConceptAssertion& a, const LoweredConceptAssertion& b) {
    return a.individual == b.individual && a.expr == b.expr;
  }
};

struct LoweredRoleAssertion {
  IndividualName subject;
  RoleName role;
  IndividualName object;
  friend bool operator==(const LoweredRoleAssertion& a, const LoweredRoleAssertion& b) {
    return a.subject == b.subject && a.role == b.role && a.object == b.object;
  }
};

// A purely classical KB: no defeasible inclusions, no N(...) constructors.
struct ClassicalKb {
  std::vector<LoweredCi> tbox;
  std::vector<LoweredConceptAssertion> concept_assertions;
  std::vector<LoweredRoleAssertion> role_assertions;

  void add_ci(Concept lhs, Concept rhs) { tbox.push_back({std::move(lhs), std::move(rhs)}); }
};

inline void add_lowered(ClassicalKb& kb, const Axiom& axiom) {
  if (const auto* ci = std::get_if<StrictCi>(&axiom)) {
    kb.tbox.push_back({lower_concept(ci->lhs), lower_concept(ci->rhs)});
  } else if (const auto* ca = std::get_if<ConceptAssertion>(&axiom)) {
    kb.concept_assertions.push_back({ca->individual, lower_concept(ca->expr)});
  } else if (const auto* ra = std::get_if<RoleAssertion>(&axiom)) {
    kb.role_assertions.push_back({ra->subject, ra->role, ra->object});
  } else {
    throw std::invalid_argument("defeasible inclusions cannot be lowered directly");
  }
}

inline ClassicalKb lower_strong(const std::vector<Axiom>& strong) {
  ClassicalKb kb;
  for (const auto& a : strong) add_lowered(kb, a);
  return kb;
}

// Reserved atoms print as their name, which is already the user-facing N(...)
// syntax; regular axioms print via the normal printer.
inline std::string print_lowered(const LoweredCi& ci) {
  return print_concept(ci.lhs) + " <= " + print_concept(ci.rhs);
}

inline std::string print_lowered(const LoweredConceptAssertion& ca) {
  return ca.individual.text() + " : " + print_concept(ca.expr);
}

inline std::string print_lowered(const LoweredRoleAssertion& ra) {
  return "(" + ra.subject.text() + ", " + ra.object.text() + ") : " + ra.role.text();
}

inline std::vector<std::string> print_classical_kb(const ClassicalKb& kb) {
  std::vector<std::string> out;
  out.reserve(kb.tbox.size() + kb.concept_assertions.size() + kb.role_assertions.size());
  for (const auto& ci : kb.tbox) out.push_back(print_lowered(ci));
  for (const auto& ca : kb.concept_assertions) out.push_back(print_lowered(ca));
  for (const auto& ra : kb.role_assertions) out.push_back(print_lowered(ra));
  return out;
}

}  // namespace alcn
