#pragma once

#include <string>
#include <variant>

#include "alcn/axioms.hpp"
#include "alcn/concepts.hpp"

namespace alcn {

namespace detail {

inline bool is_binary(const Concept& c) {
  return c.kind() == ConceptKind::Conjunction || c.kind() == ConceptKind::Disjunction;
}

inline void print_concept_to(const Concept& c, std::string& out);

// Operands of 'and'/'or' and quantifier bodies are parenthesized whenever they
// are themselves binary, so the printed form re-parses to the same tree.
inline void print_grouped(const Concept& c, std::string& out) {
  if (is_binary(c)) {
    out += '(';
    print_concept_to(c, out);
    out += ')';
  } else {
    print_concept_to(c, out);
  }
}

inline void print_concept_to(const Concept& c, std::string& out) {
  switch (c.kind()) {
    case ConceptKind::Top:
      out += "Top";
      return;
    case ConceptKind::Bottom:
      out += "Bot";
      return;
    case ConceptKind::Atomic:
      out += c.name().text();
      return;
    case ConceptKind::Negation:
      out += "not ";
      print_grouped(c.child(), out);
      return;
    case ConceptKind::Conjunction:
      print_grouped(c.left(), out);
      out += " and ";
      print_grouped(c.right(), out);
      return;
    case ConceptKind::Disjunction:
      print_grouped(c.left(), out);
      out += " or ";
      print_grouped(c.right(), out);
      return;
    case ConceptKind::Exists:
      out += "some ";
      out += c.role().text();
      out += '.';
      print_grouped(c.child(), out);
      return;
    case ConceptKind::Forall:
      out += "only ";
      out += c.role().text();
      out += '.';
      print_grouped(c.child(), out);
      return;
    case ConceptKind::Normal:
      out += "N(";
      print_concept_to(c.child(), out);
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string print_concept(const Concept& c) {
  std::string out;
  detail::print_concept_to(c, out);
  return out;
}

inline std::string print_axiom(const Axiom& a) {
  if (const auto* ci = std::get_if<StrictCi>(&a)) {
    return print_concept(ci->lhs) + " <= " + print_concept(ci->rhs);
  }
  if (const auto* di = std::get_if<DefeasibleCi>(&a)) {
    std::string arrow = di->rank ? "<~[" + std::to_string(*di->rank) + "]" : "<~";
    return print_concept(di->lhs) + " " + arrow + " " + print_concept(di->rhs);
  }
  if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
    return ca->individual.text() + " : " + print_concept(ca->expr);
  }
  const auto& ra = std::get<RoleAssertion>(a);
  return "(" + ra.subject.text() + ", " + ra.object.text() + ") : " + ra.role.text();
}

}  // namespace alcn
