#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curricula/error.hpp"
#include "curricula/graph.hpp"
#include "curricula/model.hpp"

namespace curricula {

enum class ViolationKind {
  duplicate_course,
  negative_credit_hours,
  dangling_edge,
  self_loop,
  duplicate_edge,
  cycle,
  term_index,
  empty_term,
  unknown_plan_course,
  missing_course,
  duplicate_assignment,
  prerequisite_order,
  corequisite_order,
};

inline std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_course: return "duplicate_course";
    case ViolationKind::negative_credit_hours: return "negative_credit_hours";
    case ViolationKind::dangling_edge: return "dangling_edge";
    case ViolationKind::self_loop: return "self_loop";
    case ViolationKind::duplicate_edge: return "duplicate_edge";
    case ViolationKind::cycle: return "cycle";
    case ViolationKind::term_index: return "term_index";
    case ViolationKind::empty_term: return "empty_term";
    case ViolationKind::unknown_plan_course: return "unknown_plan_course";
    case ViolationKind::missing_course: return "missing_course";
    case ViolationKind::duplicate_assignment: return "duplicate_assignment";
    case ViolationKind::prerequisite_order: return "prerequisite_order";
    case ViolationKind::corequisite_order: return "corequisite_order";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  /// Courses involved; for cycles, the vertex sequence.
  std::vector<std::string> courses;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Structural checks on a curriculum. An empty report means the curriculum is
/// a well-formed requisite DAG.
inline ValidationReport validate_curriculum(const Curriculum& c) {
  ValidationReport report;
  std::set<std::string> ids;
  for (const auto& course : c.courses) {
    if (!ids.insert(course.id).second) {
      report.push_back({ViolationKind::duplicate_course, {course.id},
                        "course id '" + course.id + "' is defined more than once"});
    }
    if (!(course.credit_hours >= 0.0)) {
      report.push_back({ViolationKind::negative_credit_hours, {course.id},
                        "course '" + course.id + "' has negative credit hours"});
    }
  }

  std::set<std::pair<std::string, std::string>> pairs;
  std::vector<const RequisiteEdge*> usable;
  for (const auto& e : c.edges) {
    const bool known_source = ids.contains(e.source);
    const bool known_target = ids.contains(e.target);
    if (!known_source || !known_target) {
      const auto& missing = known_source ? e.target : e.source;
      report.push_back({ViolationKind::dangling_edge, {e.source, e.target},
                        "edge " + e.source + " -> " + e.target + " references unknown course '" +
                            missing + "'"});
      continue;
    }
    if (e.source == e.target) {
      report.push_back({ViolationKind::self_loop, {e.source},
                        "course '" + e.source + "' lists itself as a requisite"});
      continue;
    }
    if (!pairs.emplace(e.source, e.target).second) {
      report.push_back({ViolationKind::duplicate_edge, {e.source, e.target},
                        "requisite " + e.source + " -> " + e.target + " is listed more than once"});
      continue;
    }
    usable.push_back(&e);
  }

  RequisiteGraph graph({ids.begin(), ids.end()});
  for (const auto* e : usable) graph.add_edge(graph.at(e->source), graph.at(e->target));
  for (auto& cycle : find_cycles(graph)) {
    std::string text = "requisite cycle:";
    for (const auto& id : cycle) text += " " + id + " ->";
    text += " " + cycle.front() +
            " (cycles of any kind are rejected; orient mutual corequisites one way)";
    report.push_back({ViolationKind::cycle, std::move(cycle), std::move(text)});
  }
  return report;
}

/// Checks term layout and requisite ordering of a plan. Assumes the underlying
/// curriculum is valid; curriculum problems are not repeated here.
inline ValidationReport validate_degree_plan(const DegreePlan& plan) {
  ValidationReport report;
  std::map<std::string, std::size_t> term_of;
  std::set<std::string> known;
  for (const auto& c : plan.curriculum.courses) known.insert(c.id);

  for (std::size_t i = 0; i < plan.terms.size(); ++i) {
    const auto& term = plan.terms[i];
    if (term.index != i + 1) {
      report.push_back({ViolationKind::term_index, {},
                        "term at position " + std::to_string(i + 1) + " has index " +
                            std::to_string(term.index) + "; indices must be consecutive from 1"});
    }
    if (term.course_ids.empty()) {
      report.push_back({ViolationKind::empty_term, {},
                        "term " + std::to_string(term.index) + " has no courses"});
    }
    for (const auto& id : term.course_ids) {
      if (!known.contains(id)) {
        report.push_back({ViolationKind::unknown_plan_course, {id},
                          "term " + std::to_string(term.index) + " lists unknown course '" + id +
                              "'"});
        continue;
      }
      auto [it, fresh] = term_of.emplace(id, term.index);
      if (!fresh) {
        report.push_back({ViolationKind::duplicate_assignment, {id},
                          "course '" + id + "' is assigned to terms " +
                              std::to_string(it->second) + " and " + std::to_string(term.index)});
      }
    }
  }
  for (const auto& c : plan.curriculum.courses) {
    if (!term_of.contains(c.id)) {
      report.push_back({ViolationKind::missing_course, {c.id},
                        "course '" + c.id + "' is not assigned to any term"});
    }
  }

  for (const auto& e : plan.curriculum.edges) {
    auto s = term_of.find(e.source);
    auto t = term_of.find(e.target);
    if (s == term_of.end() || t == term_of.end()) continue;
    const auto ts = s->second;
    const auto tt = t->second;
    const auto where = " (terms " + std::to_string(ts) + " and " + std::to_string(tt) + ")";
    if (e.kind == RequisiteKind::prerequisite && ts >= tt) {
      report.push_back({ViolationKind::prerequisite_order, {e.source, e.target},
                        "prerequisite " + e.source + " must come in an earlier term than " +
                            e.target + where});
    } else if (e.kind != RequisiteKind::prerequisite && ts > tt) {
      report.push_back({ViolationKind::corequisite_order, {e.source, e.target},
                        std::string(to_string(e.kind)) + " " + e.source +
                            " must not come after " + e.target + where});
    }
  }
  return report;
}

inline std::string describe(const ValidationReport& report) {
  std::string text;
  for (const auto& v : report) {
    if (!text.empty()) text += "; ";
    text += v.message;
  }
  return text;
}

/// Throws ValidationError when the curriculum (and plan, if any) is invalid.
inline void require_valid(const Curriculum& c) {
  if (auto r = validate_curriculum(c); !r.empty()) throw ValidationError(describe(r));
}

inline void require_valid(const DegreePlan& plan) {
  require_valid(plan.curriculum);
  if (auto r = validate_degree_plan(plan); !r.empty()) throw ValidationError(describe(r));
}

}  // namespace curricula
