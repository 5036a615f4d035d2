#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace alcn {

// Concept, role and individual names live in disjoint namespaces; they are
// compared by exact text.
template <class Tag>
class Name {
 public:
  explicit Name(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw std::invalid_argument("empty name");
  }

  const std::string& text() const { return text_; }

  friend bool operator==(const Name& a, const Name& b) { return a.text_ == b.text_; }
  friend bool operator!=(const Name& a, const Name& b) { return a.text_ != b.text_; }
  friend bool operator<(const Name& a, const Name& b) { return a.text_ < b.text_; }

 private:
  std::string text_;
};

using ConceptName = Name<struct ConceptNameTag>;
using RoleName = Name<struct RoleNameTag>;
using IndividualName = Name<struct IndividualNameTag>;

enum class ConceptKind {
  Top,
  Bottom,
  Atomic,
  Negation,
  Conjunction,
  Disjunction,
  Exists,
  Forall,
  Normal,
};

// Immutable concept term tree. Values share subtrees freely; equality and
// ordering are structural.
class Concept {
 public:
  static Concept top() { return Concept(node(ConceptKind::Top, "", nullptr, nullptr)); }
  static Concept bottom() { return Concept(node(ConceptKind::Bottom, "", nullptr, nullptr)); }
  static Concept atomic(ConceptName name) {
    return Concept(node(ConceptKind::Atomic, name.text(), nullptr, nullptr));
  }
  static Concept negation(Concept c) {
    return Concept(node(ConceptKind::Negation, "", c.node_, nullptr));
  }
  static Concept conjunction(Concept lhs, Concept rhs) {
    return Concept(node(ConceptKind::Conjunction, "", lhs.node_, rhs.node_));
  }
  static Concept disjunction(Concept lhs, Concept rhs) {
    return Concept(node(ConceptKind::Disjunction, "", lhs.node_, rhs.node_));
  }
  static Concept exists(RoleName role, Concept filler) {
    return Concept(node(ConceptKind::Exists, role.text(), filler.node_, nullptr));
  }
  static Concept forall(RoleName role, Concept filler) {
    return Concept(node(ConceptKind::Forall, role.text(), filler.node_, nullptr));
  }
  static Concept normal(Concept c) {
    return Concept(node(ConceptKind::Normal, "", c.node_, nullptr));
  }

  ConceptKind kind() const { return node_->kind; }

  ConceptName name() const {
    require(kind() == ConceptKind::Atomic, "name() on non-atomic concept");
    return ConceptName(node_->text);
  }
  RoleName role() const {
    require(kind() == ConceptKind::Exists || kind() == ConceptKind::Forall,
            "role() on non-restriction concept");
    return RoleName(node_->text);
  }
  // Child of Negation, Exists, Forall or Normal.
  Concept child() const {
    require(node_->a != nullptr && node_->b == nullptr, "child() on concept without unique child");
    return Concept(node_->a);
  }
  Concept left() const {
    require(node_->b != nullptr, "left() on non-binary concept");
    return Concept(node_->a);
  }
  Concept right() const {
    require(node_->b != nullptr, "right() on non-binary concept");
    return Concept(node_->b);
  }

  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Concept& a, const Concept& b) {
    return equal(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const Concept& a, const Concept& b) { return !(a == b); }
  friend bool operator<(const Concept& a, const Concept& b) {
    return compare(a.node_.get(), b.node_.get()) < 0;
  }

 private:
  struct Node {
    ConceptKind kind;
    std::string text;  // atom name, or role name for restrictions
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    std::size_t hash;
  };

  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> node(ConceptKind kind, std::string text,
                                          std::shared_ptr<const Node> a,
                                          std::shared_ptr<const Node> b) {
    std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ull;
    h ^= std::hash<std::string>{}(text) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    if (a) h ^= a->hash + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    if (b) h ^= b->hash + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return std::make_shared<const Node>(Node{kind, std::move(text), std::move(a), std::move(b), h});
  }

  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (x->hash != y->hash || x->kind != y->kind || x->text != y->text) return false;
    if ((x->a == nullptr) != (y->a == nullptr)) return false;
    if ((x->b == nullptr) != (y->b == nullptr)) return false;
    if (x->a && !equal(x->a.get(), y->a.get())) return false;
    if (x->b && !equal(x->b.get(), y->b.get())) return false;
    return true;
  }

  // Deterministic total order on terms; never depends on hashes or pointers.
  static int compare(const Node* x, const Node* y) {
    if (x == y) return 0;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    if (int c = x->text.compare(y->text); c != 0) return c < 0 ? -1 : 1;
    if ((x->a != nullptr) != (y->a != nullptr)) return x->a ? 1 : -1;
    if (x->a) {
      if (int c = compare(x->a.get(), y->a.get()); c != 0) return c;
    }
    if ((x->b != nullptr) != (y->b != nullptr)) return x->b ? 1 : -1;
    if (x->b) {
      if (int c = compare(x->b.get(), y->b.get()); c != 0) return c;
    }
    return 0;
  }

  static void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(what);
  }

  std::shared_ptr<const Node> node_;
};

inline bool contains_normal(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
      return false;
    case ConceptKind::Normal:
      return true;
    case ConceptKind::Negation:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return contains_normal(c.child());
    case ConceptKind::Conjunction:
    case ConceptKind::Disjunction:
      return contains_normal(c.left()) || contains_normal(c.right());
  }
  return false;
}

// Negation normal form: negation ends up directly above atoms and normality
// concepts. Normality concepts are opaque to negation pushing, but their
// arguments are still normalized.
inline Concept nnf(const Concept& c);

inline Concept nnf_negated(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return Concept::bottom();
    case ConceptKind::Bottom:
      return Concept::top();
    case ConceptKind::Atomic:
      return Concept::negation(c);
    case ConceptKind::Normal:
      return Concept::negation(Concept::normal(nnf(c.child())));
    case ConceptKind::Negation:
      return nnf(c.child());
    case ConceptKind::Conjunction:
      return Concept::disjunction(nnf_negated(c.left()), nnf_negated(c.right()));
    case ConceptKind::Disjunction:
      return Concept::conjunction(nnf_negated(c.left()), nnf_negated(c.right()));
    case ConceptKind::Exists:
      return Concept::forall(c.role(), nnf_negated(c.child()));
    case ConceptKind::Forall:
      return Concept::exists(c.role(), nnf_negated(c.child()));
  }
  throw std::logic_error("nnf_negated: unknown concept kind");
}

inline Concept nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
      return c;
    case ConceptKind::Normal:
      return Concept::normal(nnf(c.child()));
    case ConceptKind::Negation:
      return nnf_negated(c.child());
    case ConceptKind::Conjunction:
      return Concept::conjunction(nnf(c.left()), nnf(c.right()));
    case ConceptKind::Disjunction:
      return Concept::disjunction(nnf(c.left()), nnf(c.right()));
    case ConceptKind::Exists:
      return Concept::exists(c.role(), nnf(c.child()));
    case ConceptKind::Forall:
      return Concept::forall(c.role(), nnf(c.child()));
  }
  throw std::logic_error("nnf: unknown concept kind");
}

}  // namespace alcn
