#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <tuple>
#include <string>
#include <string_view>
#include <vector>

namespace curricula {

enum class RequisiteKind : std::uint8_t { prerequisite, corequisite, strict_corequisite };

inline constexpr RequisiteKind kAllRequisiteKinds[] = {
    RequisiteKind::prerequisite, RequisiteKind::corequisite,
    RequisiteKind::strict_corequisite};

inline std::string_view to_string(RequisiteKind kind) {
  switch (kind) {
    case RequisiteKind::prerequisite:
      return "prerequisite";
    case RequisiteKind::corequisite:
      return "corequisite";
    case RequisiteKind::strict_corequisite:
      return "strict_corequisite";
  }
  return "unknown";
}

inline std::optional<RequisiteKind> parse_requisite_kind(std::string_view text) {
  for (auto kind : kAllRequisiteKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

/// Set of requisite kinds, used to select which edges enter the metric graph.
class EdgeKinds {
 public:
  constexpr EdgeKinds() = default;
  constexpr EdgeKinds(std::initializer_list<RequisiteKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  static constexpr EdgeKinds all() {
    return {RequisiteKind::prerequisite, RequisiteKind::corequisite,
            RequisiteKind::strict_corequisite};
  }

  constexpr void insert(RequisiteKind k) { bits_ |= bit(k); }
  constexpr void erase(RequisiteKind k) { bits_ &= static_cast<std::uint8_t>(~bit(k)); }
  constexpr bool contains(RequisiteKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

  friend constexpr bool operator==(EdgeKinds, EdgeKinds) = default;

 private:
  static constexpr std::uint8_t bit(RequisiteKind k) {
    return static_cast<std::uint8_t>(1U << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

struct Course {
  std::string id;
  std::string name;
  double credit_hours = 0.0;
  std::string prefix;  // empty when absent
  std::string number;  // empty when absent

  friend bool operator==(const Course&, const Course&) = default;
};

/// Directed requisite relation: `source` must be satisfied before (or with) `target`.
struct RequisiteEdge {
  std::string source;
  std::string target;
  RequisiteKind kind = RequisiteKind::prerequisite;

  friend bool operator==(const RequisiteEdge&, const RequisiteEdge&) = default;
};

struct Curriculum {
  std::string name;
  std::string institution;
  std::vector<Course> courses;
  std::vector<RequisiteEdge> edges;

  const Course* find_course(std::string_view id) const {
    for (const auto& c : courses) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
};

struct Term {
  std::size_t index = 1;  // 1-based
  std::vector<std::string> course_ids;

  friend bool operator==(const Term&, const Term&) = default;
};

struct DegreePlan {
  Curriculum curriculum;
  std::vector<Term> terms;
};

/// Copy with courses sorted by id, edges by (source, target, kind) and term
/// members sorted; two structurally equal inputs map to equal canonical forms.
inline Curriculum canonical(Curriculum c) {
  std::ranges::sort(c.courses, {}, &Course::id);
  std::ranges::sort(c.edges, [](const RequisiteEdge& a, const RequisiteEdge& b) {
    return std::tie(a.source, a.target, a.kind) < std::tie(b.source, b.target, b.kind);
  });
  return c;
}

inline DegreePlan canonical(DegreePlan plan) {
  plan.curriculum = canonical(std::move(plan.curriculum));
  std::ranges::sort(plan.terms, {}, &Term::index);
  for (auto& t : plan.terms) std::ranges::sort(t.course_ids);
  return plan;
}

/// Equality of course sets and edge sets, ignoring order and the name fields
/// of the curriculum itself.
inline bool same_structure(const Curriculum& a, const Curriculum& b) {
  const auto ca = canonical(a);
  const auto cb = canonical(b);
  return ca.courses == cb.courses && ca.edges == cb.edges;
}

inline bool same_structure(const DegreePlan& a, const DegreePlan& b) {
  if (!same_structure(a.curriculum, b.curriculum)) return false;
  return canonical(a).terms == canonical(b).terms;
}

}  // namespace curricula
