#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "curricula/error.hpp"
#include "curricula/model.hpp"

namespace curricula {

/// Directed graph over course ids. Vertices are indexed in ascending id order,
/// so index order doubles as the deterministic tie-break everywhere.
class RequisiteGraph {
 public:
  RequisiteGraph() = default;

  /// `ids` need not be sorted; duplicates are rejected.
  explicit RequisiteGraph(std::vector<std::string> ids) : ids_(std::move(ids)) {
    std::ranges::sort(ids_);
    if (std::ranges::adjacent_find(ids_) != ids_.end()) {
      throw InputError("duplicate vertex id '" + *std::ranges::adjacent_find(ids_) + "'");
    }
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
    out_.resize(ids_.size());
    in_.resize(ids_.size());
  }

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  const std::string& id(std::size_t v) const { return ids_.at(v); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Index of `id`, throwing InputError when absent.
  std::size_t at(std::string_view id) const {
    if (auto v = find(id)) return *v;
    throw InputError("unknown course id '" + std::string(id) + "'");
  }

  /// Parallel edges are collapsed.
  void add_edge(std::size_t from, std::size_t to) {
    if (from >= size() || to >= size()) throw InputError("edge endpoint out of range");
    auto& succ = out_[from];
    auto pos = std::ranges::lower_bound(succ, to);
    if (pos != succ.end() && *pos == to) return;
    succ.insert(pos, to);
    auto& pred = in_[to];
    pred.insert(std::ranges::lower_bound(pred, from), from);
    ++edges_;
  }

  bool has_edge(std::size_t from, std::size_t to) const {
    return std::ranges::binary_search(out_.at(from), to);
  }

  std::span<const std::size_t> successors(std::size_t v) const { return out_.at(v); }
  std::span<const std::size_t> predecessors(std::size_t v) const { return in_.at(v); }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::size_t edges_ = 0;
};

/// Graph with every course as a vertex and those edges whose kind is in
/// `kinds`. Throws ValidationError for an edge naming an unknown course.
inline RequisiteGraph build_requisite_graph(const Curriculum& curriculum,
                                            EdgeKinds kinds = EdgeKinds::all()) {
  std::vector<std::string> ids;
  ids.reserve(curriculum.courses.size());
  for (const auto& c : curriculum.courses) ids.push_back(c.id);
  RequisiteGraph graph;
  try {
    graph = RequisiteGraph(std::move(ids));
  } catch (const InputError& e) {
    throw ValidationError(e.what());
  }
  for (const auto& e : curriculum.edges) {
    auto s = graph.find(e.source);
    auto t = graph.find(e.target);
    if (!s || !t) {
      throw ValidationError("edge " + e.source + " -> " + e.target + " (" +
                            std::string(to_string(e.kind)) + ") references unknown course '" +
                            (!s ? e.source : e.target) + "'");
    }
    if (kinds.contains(e.kind)) graph.add_edge(*s, *t);
  }
  return graph;
}

namespace detail {

// Shortest cycle through `start` using only vertices flagged in `allowed`.
inline std::vector<std::size_t> cycle_through(const RequisiteGraph& g, std::size_t start,
                                              const std::vector<bool>& allowed) {
  std::vector<std::size_t> parent(g.size(), g.size());
  std::deque<std::size_t> frontier{start};
  std::vector<bool> seen(g.size(), false);
  seen[start] = true;
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop_front();
    for (auto w : g.successors(v)) {
      if (!allowed[w]) continue;
      if (w == start) {
        std::vector<std::size_t> cycle{v};
        while (cycle.back() != start) cycle.push_back(parent[cycle.back()]);
        std::ranges::reverse(cycle);
        return cycle;
      }
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        frontier.push_back(w);
      }
    }
  }
  return {};
}

}  // namespace detail

/// One cycle per non-trivial strongly connected component (self-loops are
/// reported as single-vertex cycles). Each cycle starts at the smallest id in
/// its component; cycles are ordered by that id.
inline std::vector<std::vector<std::string>> find_cycles(const RequisiteGraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), component(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  // Iterative Tarjan: frame = (vertex, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      auto succ = g.successors(v);
      if (pos < succ.size()) {
        auto w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (!frames.empty()) {
        auto parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<std::size_t> members;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components.size();
          members.push_back(w);
        } while (w != done);
        components.push_back(std::move(members));
      }
    }
  }

  std::vector<std::vector<std::string>> cycles;
  for (const auto& members : components) {
    const auto start = *std::ranges::min_element(members);
    if (members.size() == 1 && !g.has_edge(start, start)) continue;
    std::vector<bool> allowed(n, false);
    for (auto m : members) allowed[m] = true;
    std::vector<std::string> named;
    for (auto v : detail::cycle_through(g, start, allowed)) named.push_back(g.id(v));
    cycles.push_back(std::move(named));
  }
  std::ranges::sort(cycles, {}, [](const auto& c) { return c.front(); });
  return cycles;
}

/// Kahn's algorithm with a min-heap on vertex index, i.e. ties broken by
/// ascending course id. Returns vertex indices.
inline std::vector<std::size_t> topological_indices(const RequisiteGraph& g) {
  std::vector<std::size_t> indegree(g.size());
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < g.size(); ++v) {
    indegree[v] = g.predecessors(v).size();
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  order.reserve(g.size());
  while (!ready.empty()) {
    auto v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto w : g.successors(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != g.size()) throw CycleError(find_cycles(g).front());
  return order;
}

/// Deterministic topological order of course ids; throws CycleError.
inline std::vector<std::string> topological_order(const RequisiteGraph& g) {
  std::vector<std::string> ids;
  for (auto v : topological_indices(g)) ids.push_back(g.id(v));
  return ids;
}

}  // namespace curricula
