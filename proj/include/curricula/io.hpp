#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "curricula/csv.hpp"
#include "curricula/error.hpp"
#include "curricula/model.hpp"
#include "curricula/validate.hpp"

namespace curricula {

// Curriculum CSV layout. The header line must match exactly (after trimming
// each cell); requisite cells hold semicolon-separated course ids.
inline constexpr std::array<std::string_view, 9> kCurriculumColumns = {
    "Course ID",           "Course Name",  "Prefix", "Number", "Prerequisites", "Corequisites",
    "Strict-Corequisites", "Credit Hours", "Term"};

inline constexpr std::array<std::string_view, 2> kSampleColumns = {"tier", "complexity"};

struct ParsedCurriculum {
  Curriculum curriculum;
  std::optional<DegreePlan> plan;  // present when every row has a Term value
};

namespace detail {

enum Column : std::size_t {
  kId,
  kName,
  kPrefix,
  kNumber,
  kPrereqs,
  kCoreqs,
  kStrictCoreqs,
  kCredits,
  kTerm
};

inline std::string column_name(std::size_t c) { return std::string(kCurriculumColumns[c]); }

inline std::size_t column_for(RequisiteKind kind) {
  switch (kind) {
    case RequisiteKind::prerequisite: return kPrereqs;
    case RequisiteKind::corequisite: return kCoreqs;
    case RequisiteKind::strict_corequisite: return kStrictCoreqs;
  }
  return kPrereqs;
}

inline std::vector<std::string> split_ids(std::string_view cell) {
  std::vector<std::string> ids;
  while (true) {
    auto pos = cell.find(';');
    auto token = csv::trim(cell.substr(0, pos));
    if (!token.empty()) ids.emplace_back(token);
    if (pos == std::string_view::npos) break;
    cell.remove_prefix(pos + 1);
  }
  return ids;
}

template <std::size_t N>
void check_header(const std::vector<csv::Record>& records,
                  const std::array<std::string_view, N>& expected) {
  if (records.empty()) throw ParseError(1, "", "missing header line");
  const auto& header = records.front();
  bool ok = header.fields.size() == N;
  for (std::size_t i = 0; ok && i < N; ++i) ok = csv::trim(header.fields[i]) == expected[i];
  if (!ok) {
    std::string want;
    for (auto name : expected) want += (want.empty() ? "" : ",") + std::string(name);
    throw ParseError(header.line, "", "malformed header; expected '" + want + "'");
  }
}

}  // namespace detail

/// Parses the curriculum CSV format, validating the result. Every error is a
/// ParseError carrying the offending line and column.
inline ParsedCurriculum parse_curriculum(std::string_view text, std::string name = {}) {
  using namespace detail;
  const auto records = csv::read(text);
  check_header(records, kCurriculumColumns);

  ParsedCurriculum out;
  out.curriculum.name = std::move(name);
  auto& cur = out.curriculum;

  std::map<std::string, std::size_t> line_of;  // first definition
  std::vector<std::size_t> row_lines;
  std::vector<std::optional<std::size_t>> terms;
  std::map<std::pair<std::string, std::string>, std::pair<std::size_t, std::size_t>> edge_origin;
  const std::size_t rows = records.size() - 1;

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != kCurriculumColumns.size()) {
      const auto col = std::min(rec.fields.size(), kCurriculumColumns.size() - 1);
      throw ParseError(rec.line, column_name(col),
                       "expected " + std::to_string(kCurriculumColumns.size()) + " fields, found " +
                           std::to_string(rec.fields.size()));
    }
    auto cell = [&](std::size_t c) { return std::string(csv::trim(rec.fields[c])); };

    Course course;
    course.id = cell(kId);
    if (course.id.empty()) throw ParseError(rec.line, column_name(kId), "empty course id");
    if (course.id.find(';') != std::string::npos) {
      throw ParseError(rec.line, column_name(kId), "course id must not contain ';'");
    }
    course.name = cell(kName);
    course.prefix = cell(kPrefix);
    course.number = cell(kNumber);
    auto credits = csv::parse_double(rec.fields[kCredits]);
    if (!credits) {
      throw ParseError(rec.line, column_name(kCredits),
                       "credit hours '" + cell(kCredits) + "' is not a number");
    }
    if (*credits < 0.0) {
      throw ParseError(rec.line, column_name(kCredits), "credit hours must be non-negative");
    }
    course.credit_hours = *credits + 0.0;  // normalises -0

    std::optional<std::size_t> term;
    if (!cell(kTerm).empty()) {
      term = csv::parse_size(rec.fields[kTerm]);
      if (!term || *term == 0) {
        throw ParseError(rec.line, column_name(kTerm),
                         "term '" + cell(kTerm) + "' is not a positive integer");
      }
      if (*term > rows) {
        throw ParseError(rec.line, column_name(kTerm),
                         "term " + cell(kTerm) + " exceeds the number of courses; terms must be "
                         "consecutive from 1");
      }
    }

    for (auto kind : kAllRequisiteKinds) {
      const auto col = column_for(kind);
      for (auto& source : split_ids(rec.fields[col])) {
        edge_origin.try_emplace({source, course.id}, rec.line, col);
        cur.edges.push_back({std::move(source), course.id, kind});
      }
    }
    line_of.try_emplace(course.id, rec.line);
    row_lines.push_back(rec.line);
    terms.push_back(term);
    cur.courses.push_back(std::move(course));
  }

  // Dangling references are reported by name before general validation so the
  // message points at the row that mentions the unknown id.
  for (const auto& e : cur.edges) {
    if (!line_of.contains(e.source)) {
      const auto [line, col] = edge_origin.at({e.source, e.target});
      throw ParseError(line, column_name(col), "reference to undefined course id '" + e.source + "'");
    }
  }

  auto report = validate_curriculum(cur);
  if (!report.empty()) {
    const auto& v = report.front();
    std::size_t line = 1;
    std::size_t col = kId;
    switch (v.kind) {
      case ViolationKind::duplicate_course: {
        std::size_t seen = 0;
        for (std::size_t i = 0; i < cur.courses.size(); ++i) {
          if (cur.courses[i].id == v.courses.front() && ++seen == 2) line = row_lines[i];
        }
        break;
      }
      case ViolationKind::cycle: {
        const auto& cyc = v.courses;
        const auto& from = cyc.size() == 1 ? cyc.front() : cyc.back();
        if (auto it = edge_origin.find({from, cyc.front()}); it != edge_origin.end()) {
          line = it->second.first;
          col = it->second.second;
        }
        break;
      }
      default:
        if (v.courses.size() >= 2) {
          if (auto it = edge_origin.find({v.courses[0], v.courses[1]}); it != edge_origin.end()) {
            line = it->second.first;
            col = it->second.second;
          }
        } else if (!v.courses.empty() && line_of.contains(v.courses.front())) {
          line = line_of.at(v.courses.front());
          col = v.kind == ViolationKind::self_loop ? kPrereqs : kId;
          if (auto it = edge_origin.find({v.courses[0], v.courses[0]}); it != edge_origin.end()) {
            col = it->second.second;
          }
        }
        break;
    }
    throw ParseError(line, column_name(col), v.message);
  }

  const bool any_term = std::ranges::any_of(terms, [](const auto& t) { return t.has_value(); });
  if (!any_term) return out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i]) {
      throw ParseError(row_lines[i], column_name(kTerm),
                       "term missing; give a term for every course or for none");
    }
  }

  DegreePlan plan{cur, {}};
  const std::size_t max_term = *std::ranges::max(terms, {}, [](const auto& t) { return *t; });
  plan.terms.resize(max_term);
  for (std::size_t t = 0; t < max_term; ++t) plan.terms[t].index = t + 1;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    plan.terms[*terms[i] - 1].course_ids.push_back(cur.courses[i].id);
  }
  auto plan_report = validate_degree_plan(plan);
  if (!plan_report.empty()) {
    const auto& v = plan_report.front();
    std::size_t line = 1;
    if (v.kind == ViolationKind::empty_term) {
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!plan.terms[*terms[i] - 1].course_ids.empty() && line == 1) line = row_lines[i];
      }
    } else if (!v.courses.empty()) {
      line = line_of.at(v.courses.back());
    }
    throw ParseError(line, column_name(kTerm), v.message);
  }
  out.plan = std::move(plan);
  return out;
}

namespace detail {

inline std::string serialize_rows(const Curriculum& c, const std::map<std::string, std::size_t>* term_of) {
  std::map<std::string, std::array<std::vector<std::string>, 3>> requisites;
  for (const auto& e : c.edges) {
    requisites[e.target][static_cast<std::size_t>(e.kind)].push_back(e.source);
  }
  std::vector<const Course*> order;
  for (const auto& course : c.courses) order.push_back(&course);
  std::ranges::sort(order, [&](const Course* a, const Course* b) {
    if (term_of) {
      const auto ta = term_of->at(a->id);
      const auto tb = term_of->at(b->id);
      if (ta != tb) return ta < tb;
    }
    return a->id < b->id;
  });

  std::string out;
  std::vector<std::string> header(kCurriculumColumns.begin(), kCurriculumColumns.end());
  csv::append_row(out, header);
  for (const auto* course : order) {
    std::vector<std::string> row{course->id, course->name, course->prefix, course->number};
    auto& reqs = requisites[course->id];
    for (auto& ids : reqs) {
      std::ranges::sort(ids);
      std::string cell;
      for (const auto& id : ids) cell += (cell.empty() ? "" : ";") + id;
      row.push_back(std::move(cell));
    }
    row.push_back(csv::format_double(course->credit_hours));
    row.push_back(term_of ? std::to_string(term_of->at(course->id)) : std::string());
    csv::append_row(out, row);
  }
  return out;
}

}  // namespace detail

/// Canonical CSV text: rows sorted by course id, requisites sorted, LF endings.
inline std::string serialize_curriculum(const Curriculum& c) {
  require_valid(c);
  return detail::serialize_rows(c, nullptr);
}

/// Canonical CSV text with the Term column filled; rows sorted by (term, id).
inline std::string serialize_curriculum(const DegreePlan& plan) {
  require_valid(plan);
  std::map<std::string, std::size_t> term_of;
  for (const auto& t : plan.terms) {
    for (const auto& id : t.course_ids) term_of.emplace(id, t.index);
  }
  return detail::serialize_rows(plan.curriculum, &term_of);
}

inline std::string serialize_curriculum(const ParsedCurriculum& parsed) {
  return parsed.plan ? serialize_curriculum(*parsed.plan) : serialize_curriculum(parsed.curriculum);
}

/// Complexity values grouped by tier label, tiers in first-appearance order.
struct ComplexitySampleSet {
  struct Tier {
    std::string label;
    std::vector<double> values;

    friend bool operator==(const Tier&, const Tier&) = default;
  };
  std::vector<Tier> tiers;

  const Tier* find(std::string_view label) const {
    for (const auto& t : tiers) {
      if (t.label == label) return &t;
    }
    return nullptr;
  }

  std::vector<double> pooled() const {
    std::vector<double> all;
    for (const auto& t : tiers) all.insert(all.end(), t.values.begin(), t.values.end());
    return all;
  }

  friend bool operator==(const ComplexitySampleSet&, const ComplexitySampleSet&) = default;
};

inline ComplexitySampleSet parse_samples(std::string_view text) {
  const auto records = csv::read(text);
  detail::check_header(records, kSampleColumns);
  ComplexitySampleSet set;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 2) {
      throw ParseError(rec.line, "", "expected 2 fields, found " + std::to_string(rec.fields.size()));
    }
    const std::string label(csv::trim(rec.fields[0]));
    if (label.empty()) throw ParseError(rec.line, "tier", "empty tier label");
    auto value = csv::parse_double(rec.fields[1]);
    if (!value) {
      throw ParseError(rec.line, "complexity",
                       "complexity '" + std::string(csv::trim(rec.fields[1])) + "' is not a number");
    }
    if (*value < 0.0) throw ParseError(rec.line, "complexity", "complexity must be non-negative");
    auto it = std::ranges::find(set.tiers, label, &ComplexitySampleSet::Tier::label);
    if (it == set.tiers.end()) {
      set.tiers.push_back({label, {}});
      it = std::prev(set.tiers.end());
    }
    it->values.push_back(*value + 0.0);
  }
  if (set.tiers.empty()) {
    throw ParseError(records.front().line + 1, "", "no samples");
  }
  return set;
}

inline std::string serialize_samples(const ComplexitySampleSet& set) {
  std::string out;
  csv::append_row(out, {std::string(kSampleColumns[0]), std::string(kSampleColumns[1])});
  for (const auto& tier : set.tiers) {
    for (double v : tier.values) csv::append_row(out, {tier.label, csv::format_double(v)});
  }
  return out;
}

}  // namespace curricula
