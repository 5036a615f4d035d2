#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcn/lowering.hpp"

namespace alcn {

// Raised when the tableau exceeds its node budget. The answer is then
// "unknown"; callers must not treat it as consistent or inconsistent.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(std::size_t budget)
      : std::runtime_error("tableau node budget of " + std::to_string(budget) + " exceeded") {}
};

struct ReasonerStats {
  std::uint64_t consistency_checks = 0;
  std::uint64_t subsumption_checks = 0;
};

inline constexpr std::size_t kDefaultNodeBudget = 100000;

// Classical ALC reasoner. Tableau with internalized GCIs, ancestor subset
// blocking, and chronological left-first backtracking over disjunctions, so
// runs are reproducible. Inputs must be lowered (no N constructors).
//
// Internally one run interns every concept it touches into a dense id space;
// node labels are bitsets over those ids, which keeps saturation, blocking
// and state copying cheap.
class Reasoner {
 public:
  explicit Reasoner(std::size_t node_budget = kDefaultNodeBudget) : node_budget_(node_budget) {}

  bool is_consistent(const ClassicalKb& kb) const {
    consistency_checks_.fetch_add(1, std::memory_order_relaxed);
    return run(kb, {}, {});
  }

  // Satisfiability of a concept w.r.t. kb: kb plus a fresh element in c.
  bool is_satisfiable(const ClassicalKb& kb, const Concept& c) const {
    consistency_checks_.fetch_add(1, std::memory_order_relaxed);
    return run(kb, {c}, {});
  }

  // kb entails c <= d iff c and not d is unsatisfiable w.r.t. kb.
  bool entails_subsumption(const ClassicalKb& kb, const Concept& c, const Concept& d) const {
    subsumption_checks_.fetch_add(1, std::memory_order_relaxed);
    return !run(kb, {Concept::conjunction(c, Concept::negation(d))}, {});
  }

  bool entails_assertion(const ClassicalKb& kb, const LoweredConceptAssertion& a) const {
    subsumption_checks_.fetch_add(1, std::memory_order_relaxed);
    return !run(kb, {}, {{a.individual, Concept::negation(a.expr)}});
  }

  // ALC cannot negate role atoms, so a role assertion is entailed exactly when
  // it is syntactically present or the KB is inconsistent.
  bool entails_assertion(const ClassicalKb& kb, const LoweredRoleAssertion& a) const {
    subsumption_checks_.fetch_add(1, std::memory_order_relaxed);
    if (std::find(kb.role_assertions.begin(), kb.role_assertions.end(), a) !=
        kb.role_assertions.end()) {
      return true;
    }
    return !run(kb, {}, {});
  }

  ReasonerStats stats() const {
    return {consistency_checks_.load(std::memory_order_relaxed),
            subsumption_checks_.load(std::memory_order_relaxed)};
  }

  std::size_t node_budget() const { return node_budget_; }

 private:
  struct BitLabel {
    std::vector<std::uint64_t> words;

    bool test(int id) const {
      const std::size_t w = static_cast<std::size_t>(id) >> 6;
      return w < words.size() && (words[w] >> (id & 63)) & 1u;
    }
    // Returns true if the bit was newly set.
    bool set(int id) {
      const std::size_t w = static_cast<std::size_t>(id) >> 6;
      if (w >= words.size()) words.resize(w + 1, 0);
      const std::uint64_t mask = 1ull << (id & 63);
      if (words[w] & mask) return false;
      words[w] |= mask;
      return true;
    }
    // Subset test: every bit of *this is set in other.
    bool subset_of(const BitLabel& other) const {
      for (std::size_t w = 0; w < words.size(); ++w) {
        const std::uint64_t theirs = w < other.words.size() ? other.words[w] : 0;
        if (words[w] & ~theirs) return false;
      }
      return true;
    }
  };

  struct Node {
    BitLabel label;
    std::vector<std::pair<int, int>> edges;  // (role id, target node)
    int parent = -1;
    bool anonymous = true;
  };

  struct State {
    std::vector<Node> nodes;
  };

  // Per-run interning of concepts and roles. Children are interned before
  // parents, and complements are interned on demand.
  struct RunContext {
    struct Info {
      ConceptKind kind;
      int a = -1;           // child / left
      int b = -1;           // right
      int role = -1;        // Exists / Forall
      int complement = -1;  // lazily computed
    };

    std::map<Concept, int> ids;
    std::vector<Concept> concepts;
    std::vector<Info> info;
    std::map<RoleName, int> role_ids;
    int bottom_id = -1;

    int intern(const Concept& c) {
      auto it = ids.find(c);
      if (it != ids.end()) return it->second;
      Info entry;
      entry.kind = c.kind();
      switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Atomic:
          break;
        case ConceptKind::Negation:
          entry.a = intern(c.child());
          break;
        case ConceptKind::Conjunction:
        case ConceptKind::Disjunction:
          entry.a = intern(c.left());
          entry.b = intern(c.right());
          break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
          entry.role = intern_role(c.role());
          entry.a = intern(c.child());
          break;
        case ConceptKind::Normal:
          throw std::invalid_argument("classical reasoning requires lowered concepts");
      }
      const int id = static_cast<int>(concepts.size());
      ids.emplace(c, id);
      concepts.push_back(c);
      info.push_back(entry);
      if (c.kind() == ConceptKind::Bottom) bottom_id = id;
      return id;
    }

    int intern_role(const RoleName& r) {
      auto it = role_ids.find(r);
      if (it != role_ids.end()) return it->second;
      const int id = static_cast<int>(role_ids.size());
      role_ids.emplace(r, id);
      return id;
    }

    int complement_of(int id) {
      if (info[id].complement != -1) return info[id].complement;
      const int comp = intern(nnf(Concept::negation(concepts[id])));
      info[id].complement = comp;
      info[comp].complement = id;
      return comp;
    }
  };

  // Decides consistency of kb extended with one anonymous element satisfying
  // all of extra_root, plus extra concept assertions.
  bool run(const ClassicalKb& kb, const std::vector<Concept>& extra_root,
           const std::vector<LoweredConceptAssertion>& extra_assertions) const {
    RunContext ctx;
    ctx.intern(Concept::bottom());

    std::vector<int> universal;
    universal.reserve(kb.tbox.size());
    for (const auto& ci : kb.tbox) {
      universal.push_back(
          ctx.intern(nnf(Concept::disjunction(Concept::negation(ci.lhs), ci.rhs))));
    }

    State init;
    std::map<IndividualName, int> roots;
    auto root_node = [&](const IndividualName& name) {
      auto it = roots.find(name);
      if (it != roots.end()) return it->second;
      const int id = static_cast<int>(init.nodes.size());
      init.nodes.push_back(Node{{}, {}, -1, false});
      roots.emplace(name, id);
      return id;
    };
    for (const auto& ca : kb.concept_assertions) {
      init.nodes[root_node(ca.individual)].label.set(ctx.intern(nnf(ca.expr)));
    }
    for (const auto& ca : extra_assertions) {
      init.nodes[root_node(ca.individual)].label.set(ctx.intern(nnf(ca.expr)));
    }
    for (const auto& ra : kb.role_assertions) {
      const int s = root_node(ra.subject);
      const int o = root_node(ra.object);
      init.nodes[s].edges.emplace_back(ctx.intern_role(ra.role), o);
    }
    if (!extra_root.empty()) {
      Node fresh;
      for (const auto& c : extra_root) fresh.label.set(ctx.intern(nnf(c)));
      init.nodes.push_back(std::move(fresh));
    }
    if (init.nodes.empty()) {
      init.nodes.push_back(Node{});  // interpretation domains are non-empty
    }

    std::size_t created = init.nodes.size();
    std::vector<State> work;
    work.push_back(std::move(init));

    while (!work.empty()) {
      State state = std::move(work.back());
      work.pop_back();
      for (;;) {
        if (saturate(state, universal, ctx)) break;  // clash
        if (auto branch = find_disjunction(state, ctx)) {
          const auto [node, disjunction] = *branch;
          // Chronological, left first. The right alternative also records the
          // left disjunct's complement, so it never revisits left's models.
          // The copied nodes count against the budget: runaway backtracking
          // must surface as an explicit resource error, not an endless run.
          created += state.nodes.size();
          if (created > node_budget_) throw ResourceLimitError(node_budget_);
          const auto& entry = ctx.info[disjunction];
          State right = state;
          right.nodes[node].label.set(entry.b);
          right.nodes[node].label.set(ctx.complement_of(entry.a));
          work.push_back(std::move(right));
          state.nodes[node].label.set(entry.a);
          continue;
        }
        if (auto expansion = find_existential(state, ctx)) {
          const auto [node, existential] = *expansion;
          if (++created > node_budget_) throw ResourceLimitError(node_budget_);
          const auto& entry = ctx.info[existential];
          Node child;
          child.label.set(entry.a);
          child.parent = node;
          const int child_id = static_cast<int>(state.nodes.size());
          state.nodes.push_back(std::move(child));
          state.nodes[node].edges.emplace_back(entry.role, child_id);
          continue;
        }
        return true;  // complete and clash-free
      }
    }
    return false;
  }

  template <class Fn>
  static void for_each_set_bit(const BitLabel& label, Fn&& fn) {
    for (std::size_t w = 0; w < label.words.size(); ++w) {
      std::uint64_t bits = label.words[w];
      while (bits) {
        const int bit = __builtin_ctzll(bits);
        bits &= bits - 1;
        fn(static_cast<int>(w * 64 + bit));
      }
    }
  }

  // Applies the non-generating rules to fixpoint: conjunction, GCI, value
  // restriction, and forced disjunctions (one disjunct already refuted).
  // Returns true on clash.
  static bool saturate(State& state, const std::vector<int>& universal, RunContext& ctx) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < state.nodes.size(); ++i) {
        if (has_clash(state.nodes[i], ctx)) return true;
        std::vector<int> additions;
        std::vector<std::pair<int, int>> remote;  // (target node, concept id)
        for (const int u : universal) {
          if (!state.nodes[i].label.test(u)) additions.push_back(u);
        }
        for_each_set_bit(state.nodes[i].label, [&](int id) {
          const auto& entry = ctx.info[id];
          switch (entry.kind) {
            case ConceptKind::Conjunction:
              if (!state.nodes[i].label.test(entry.a)) additions.push_back(entry.a);
              if (!state.nodes[i].label.test(entry.b)) additions.push_back(entry.b);
              break;
            case ConceptKind::Disjunction: {
              const auto& label = state.nodes[i].label;
              if (label.test(entry.a) || label.test(entry.b)) break;
              const bool left_refuted = label.test(ctx.complement_of(entry.a));
              const bool right_refuted = label.test(ctx.complement_of(entry.b));
              // both refuted: adding either surfaces the clash
              if (left_refuted) {
                additions.push_back(entry.b);
              } else if (right_refuted) {
                additions.push_back(entry.a);
              }
              break;
            }
            case ConceptKind::Forall:
              for (const auto& [role, target] : state.nodes[i].edges) {
                if (role == entry.role && !state.nodes[target].label.test(entry.a)) {
                  remote.emplace_back(target, entry.a);
                }
              }
              break;
            default:
              break;
          }
        });
        for (const int id : additions) {
          if (state.nodes[i].label.set(id)) changed = true;
        }
        for (const auto& [target, id] : remote) {
          if (state.nodes[target].label.set(id)) changed = true;
        }
        if (has_clash(state.nodes[i], ctx)) return true;
      }
    }
    return false;
  }

  static bool has_clash(const Node& node, const RunContext& ctx) {
    if (ctx.bottom_id != -1 && node.label.test(ctx.bottom_id)) return true;
    bool clash = false;
    for_each_set_bit(node.label, [&](int id) {
      if (clash) return;
      const auto& entry = ctx.info[id];
      if (entry.kind == ConceptKind::Negation && node.label.test(entry.a)) clash = true;
    });
    return clash;
  }

  static std::optional<std::pair<int, int>> find_disjunction(const State& state,
                                                             const RunContext& ctx) {
    for (std::size_t i = 0; i < state.nodes.size(); ++i) {
      const auto& label = state.nodes[i].label;
      std::optional<std::pair<int, int>> found;
      for_each_set_bit(label, [&](int id) {
        if (found) return;
        const auto& entry = ctx.info[id];
        if (entry.kind == ConceptKind::Disjunction && !label.test(entry.a) &&
            !label.test(entry.b)) {
          found = std::make_pair(static_cast<int>(i), id);
        }
      });
      if (found) return found;
    }
    return std::nullopt;
  }

  // An anonymous node is blocked when some ancestor's label includes its own;
  // blocked nodes do not spawn successors.
  static bool is_blocked(const State& state, int node) {
    if (!state.nodes[node].anonymous) return false;
    const auto& label = state.nodes[node].label;
    for (int a = state.nodes[node].parent; a != -1; a = state.nodes[a].parent) {
      if (label.subset_of(state.nodes[a].label)) return true;
    }
    return false;
  }

  static std::optional<std::pair<int, int>> find_existential(const State& state,
                                                             const RunContext& ctx) {
    for (std::size_t i = 0; i < state.nodes.size(); ++i) {
      const Node& node = state.nodes[i];
      bool blocked_known = false;
      bool blocked = false;
      std::optional<std::pair<int, int>> found;
      for_each_set_bit(node.label, [&](int id) {
        if (found || blocked) return;
        const auto& entry = ctx.info[id];
        if (entry.kind != ConceptKind::Exists) return;
        for (const auto& [role, target] : node.edges) {
          if (role == entry.role && state.nodes[target].label.test(entry.a)) return;
        }
        if (!blocked_known) {
          blocked = is_blocked(state, static_cast<int>(i));
          blocked_known = true;
          if (blocked) return;
        }
        found = std::make_pair(static_cast<int>(i), id);
      });
      if (found) return found;
    }
    return std::nullopt;
  }

  std::size_t node_budget_;
  mutable std::atomic<std::uint64_t> consistency_checks_{0};
  mutable std::atomic<std::uint64_t> subsumption_checks_{0};
};

}  // namespace alcn
