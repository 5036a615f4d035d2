#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alcn/lowering.hpp"

namespace alcn {

// A finite interpretation over domain {0, .., domain_size-1}. Concept
// extensions are bitmasks over elements; role extensions are bitmasks over
// pairs, bit (d * domain_size + e) meaning (d, e) is in the relation.
struct FiniteInterpretation {
  int domain_size = 1;
  std::map<ConceptName, std::uint32_t> concepts;
  std::map<RoleName, std::uint32_t> roles;
  std::map<IndividualName, int> individuals;

  std::uint32_t all_elements() const { return (1u << domain_size) - 1; }

  // Extension of a compound concept, computed by the semantics of each
  // constructor. The concept must be lowered (no N constructor).
  std::uint32_t eval(const Concept& c) const {
    switch (c.kind()) {
      case ConceptKind::Top:
        return all_elements();
      case ConceptKind::Bottom:
        return 0;
      case ConceptKind::Atomic: {
        auto it = concepts.find(c.name());
        if (it == concepts.end()) {
          throw std::invalid_argument("interpretation does not cover concept name " +
                                      c.name().text());
        }
        return it->second;
      }
      case ConceptKind::Negation:
        return all_elements() & ~eval(c.child());
      case ConceptKind::Conjunction:
        return eval(c.left()) & eval(c.right());
      case ConceptKind::Disjunction:
        return eval(c.left()) | eval(c.right());
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        auto it = roles.find(c.role());
        if (it == roles.end()) {
          throw std::invalid_argument("interpretation does not cover role name " +
                                      c.role().text());
        }
        const std::uint32_t filler = eval(c.child());
        std::uint32_t result = 0;
        for (int d = 0; d < domain_size; ++d) {
          const std::uint32_t row = (it->second >> (d * domain_size)) & all_elements();
          const bool in = c.kind() == ConceptKind::Exists ? (row & filler) != 0
                                                          : (row & ~filler) == 0;
          if (in) result |= 1u << d;
        }
        return result;
      }
      case ConceptKind::Normal:
        throw std::invalid_argument("eval: normality concepts must be lowered first");
    }
    throw std::logic_error("eval: unknown concept kind");
  }

  int element_of(const IndividualName& name) const {
    auto it = individuals.find(name);
    if (it == individuals.end()) {
      throw std::invalid_argument("interpretation does not cover individual " + name.text());
    }
    return it->second;
  }
};

inline bool check_model(const FiniteInterpretation& interp, const ClassicalKb& kb) {
  for (const auto& ci : kb.tbox) {
    if ((interp.eval(ci.lhs) & ~interp.eval(ci.rhs) & interp.all_elements()) != 0) return false;
  }
  for (const auto& ca : kb.concept_assertions) {
    if ((interp.eval(ca.expr) & (1u << interp.element_of(ca.individual))) == 0) return false;
  }
  for (const auto& ra : kb.role_assertions) {
    auto it = interp.roles.find(ra.role);
    if (it == interp.roles.end()) {
      throw std::invalid_argument("interpretation does not cover role name " + ra.role.text());
    }
    const int d = interp.element_of(ra.subject);
    const int e = interp.element_of(ra.object);
    if ((it->second & (1u << (d * interp.domain_size + e))) == 0) return false;
  }
  return true;
}

namespace detail {

struct ClassicalSignature {
  std::vector<ConceptName> concepts;
  std::vector<RoleName> roles;
  std::vector<IndividualName> individuals;
};

inline void collect_names(const Concept& c, std::set<ConceptName>& cn, std::set<RoleName>& rn) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
      return;
    case ConceptKind::Atomic:
      cn.insert(c.name());
      return;
    case ConceptKind::Negation:
    case ConceptKind::Normal:
      collect_names(c.child(), cn, rn);
      return;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      rn.insert(c.role());
      collect_names(c.child(), cn, rn);
      return;
    case ConceptKind::Conjunction:
    case ConceptKind::Disjunction:
      collect_names(c.left(), cn, rn);
      collect_names(c.right(), cn, rn);
      return;
  }
}

inline ClassicalSignature classical_signature(const ClassicalKb& kb) {
  std::set<ConceptName> cn;
  std::set<RoleName> rn;
  std::set<IndividualName> in;
  for (const auto& ci : kb.tbox) {
    collect_names(ci.lhs, cn, rn);
    collect_names(ci.rhs, cn, rn);
  }
  for (const auto& ca : kb.concept_assertions) {
    in.insert(ca.individual);
    collect_names(ca.expr, cn, rn);
  }
  for (const auto& ra : kb.role_assertions) {
    in.insert(ra.subject);
    in.insert(ra.object);
    rn.insert(ra.role);
  }
  return {std::vector(cn.begin(), cn.end()), std::vector(rn.begin(), rn.end()),
          std::vector(in.begin(), in.end())};
}

// Concepts compiled against name indices so that candidate checking inside the
// enumeration loop touches plain arrays only.
struct CompiledConcept {
  ConceptKind kind;
  int name = -1;  // concept index (Atomic) or role index (Exists/Forall)
  int a = -1;
  int b = -1;
};

class CompiledKb {
 public:
  CompiledKb(const ClassicalKb& kb, const ClassicalSignature& sig) : sig_(sig) {
    for (std::size_t i = 0; i < sig.concepts.size(); ++i) concept_index_[sig.concepts[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < sig.roles.size(); ++i) role_index_[sig.roles[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < sig.individuals.size(); ++i) individual_index_[sig.individuals[i]] = static_cast<int>(i);
    for (const auto& ci : kb.tbox) cis_.emplace_back(compile(ci.lhs), compile(ci.rhs));
    for (const auto& ca : kb.concept_assertions) {
      concept_assertions_.emplace_back(individual_index_.at(ca.individual), compile(ca.expr));
    }
    for (const auto& ra : kb.role_assertions) {
      role_assertions_.push_back({individual_index_.at(ra.subject), role_index_.at(ra.role),
                                  individual_index_.at(ra.object)});
    }
  }

  // Role assertions depend only on the role masks and the individual map, so
  // they are prechecked once per (roles, individuals) choice.
  bool role_assertions_hold(int k, const std::vector<std::uint32_t>& rmask,
                            const std::vector<int>& imap) const {
    for (const auto& ra : role_assertions_) {
      if ((rmask[ra.role] & (1u << (imap[ra.subject] * k + imap[ra.object]))) == 0) return false;
    }
    return true;
  }

  bool satisfied(int k, const std::vector<std::uint32_t>& cmask,
                 const std::vector<std::uint32_t>& rmask, const std::vector<int>& imap) const {
    const std::uint32_t full = (1u << k) - 1;
    for (const auto& [ind, expr] : concept_assertions_) {
      if ((eval(expr, k, full, cmask, rmask) & (1u << imap[ind])) == 0) return false;
    }
    for (const auto& [lhs, rhs] : cis_) {
      if ((eval(lhs, k, full, cmask, rmask) & ~eval(rhs, k, full, cmask, rmask) & full) != 0) {
        return false;
      }
    }
    return true;
  }

 private:
  struct CompiledRoleAssertion {
    int subject;
    int role;
    int object;
  };

  int compile(const Concept& c) {
    CompiledConcept out;
    out.kind = c.kind();
    switch (c.kind()) {
      case ConceptKind::Top:
      case ConceptKind::Bottom:
        break;
      case ConceptKind::Atomic:
        out.name = concept_index_.at(c.name());
        break;
      case ConceptKind::Negation:
        out.a = compile(c.child());
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall:
        out.name = role_index_.at(c.role());
        out.a = compile(c.child());
        break;
      case ConceptKind::Conjunction:
      case ConceptKind::Disjunction:
        out.a = compile(c.left());
        out.b = compile(c.right());
        break;
      case ConceptKind::Normal:
        throw std::invalid_argument("bounded_model_search: normality concepts must be lowered");
    }
    pool_.push_back(out);
    return static_cast<int>(pool_.size() - 1);
  }

  std::uint32_t eval(int idx, int k, std::uint32_t full, const std::vector<std::uint32_t>& cmask,
                     const std::vector<std::uint32_t>& rmask) const {
    const CompiledConcept& c = pool_[idx];
    switch (c.kind) {
      case ConceptKind::Top:
        return full;
      case ConceptKind::Bottom:
        return 0;
      case ConceptKind::Atomic:
        return cmask[c.name];
      case ConceptKind::Negation:
        return full & ~eval(c.a, k, full, cmask, rmask);
      case ConceptKind::Conjunction:
        return eval(c.a, k, full, cmask, rmask) & eval(c.b, k, full, cmask, rmask);
      case ConceptKind::Disjunction:
        return eval(c.a, k, full, cmask, rmask) | eval(c.b, k, full, cmask, rmask);
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        const std::uint32_t filler = eval(c.a, k, full, cmask, rmask);
        const std::uint32_t rel = rmask[c.name];
        std::uint32_t result = 0;
        for (int d = 0; d < k; ++d) {
          const std::uint32_t row = (rel >> (d * k)) & full;
          const bool in = c.kind == ConceptKind::Exists ? (row & filler) != 0
                                                        : (row & ~filler) == 0;
          if (in) result |= 1u << d;
        }
        return result;
      }
      case ConceptKind::Normal:
        break;
    }
    throw std::logic_error("compiled eval: unknown kind");
  }

  const ClassicalSignature& sig_;
  std::map<ConceptName, int> concept_index_;
  std::map<RoleName, int> role_index_;
  std::map<IndividualName, int> individual_index_;
  std::vector<CompiledConcept> pool_;
  std::vector<std::pair<int, int>> cis_;
  std::vector<std::pair<int, int>> concept_assertions_;
  std::vector<CompiledRoleAssertion> role_assertions_;
};

}  // namespace detail

// Exhaustively enumerates interpretations of kb's signature with domain sizes
// 1..max_domain and returns the first model found. Deterministic; exponential
// in the signature, so for tests only.
inline std::optional<FiniteInterpretation> bounded_model_search(const ClassicalKb& kb,
                                                                int max_domain) {
  if (max_domain < 1 || max_domain > 5) {
    throw std::invalid_argument("bounded_model_search: max_domain must be in 1..5");
  }
  const auto sig = detail::classical_signature(kb);
  const detail::CompiledKb compiled(kb, sig);
  const int nc = static_cast<int>(sig.concepts.size());
  const int nr = static_cast<int>(sig.roles.size());
  const int ni = static_cast<int>(sig.individuals.size());

  std::vector<std::uint32_t> cmask(nc, 0);
  std::vector<std::uint32_t> rmask(nr, 0);
  std::vector<int> imap(ni, 0);

  for (int k = 1; k <= max_domain; ++k) {
    const std::uint64_t role_combos = 1ull << (nr * k * k);
    const std::uint64_t concept_combos = 1ull << (nc * k);
    std::uint64_t individual_combos = 1;
    for (int i = 0; i < ni; ++i) individual_combos *= static_cast<std::uint64_t>(k);

    for (std::uint64_t r = 0; r < role_combos; ++r) {
      for (int j = 0; j < nr; ++j) {
        rmask[j] = static_cast<std::uint32_t>((r >> (j * k * k)) & ((1ull << (k * k)) - 1));
      }
      for (std::uint64_t m = 0; m < individual_combos; ++m) {
        std::uint64_t rem = m;
        for (int j = 0; j < ni; ++j) {
          imap[j] = static_cast<int>(rem % k);
          rem /= k;
        }
        if (!compiled.role_assertions_hold(k, rmask, imap)) continue;
        for (std::uint64_t c = 0; c < concept_combos; ++c) {
          for (int j = 0; j < nc; ++j) {
            cmask[j] = static_cast<std::uint32_t>((c >> (j * k)) & ((1ull << k) - 1));
          }
          if (compiled.satisfied(k, cmask, rmask, imap)) {
            FiniteInterpretation interp;
            interp.domain_size = k;
            for (int j = 0; j < nc; ++j) interp.concepts.emplace(sig.concepts[j], cmask[j]);
            for (int j = 0; j < nr; ++j) interp.roles.emplace(sig.roles[j], rmask[j]);
            for (int j = 0; j < ni; ++j) interp.individuals.emplace(sig.individuals[j], imap[j]);
            return interp;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace alcn
