#include "prhl/flow.hpp"

#include <cassert>
#include <deque>

namespace prhl {

FlowNetwork::FlowNetwork(int num_vertices)
    : adjacency_(num_vertices), level_(num_vertices), next_arc_(num_vertices) {}

int FlowNetwork::add_edge(int from, int to, Rational capacity) {
  assert(capacity >= 0);
  const int id = static_cast<int>(edges_.size());
  edges_.push_back(Edge{to, std::move(capacity), Rational(0)});
  edges_.push_back(Edge{from, Rational(0), Rational(0)});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id / 2;
}

bool FlowNetwork::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> queue{source};
  level_[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int id : adjacency_[v]) {
      const Edge& e = edges_[id];
      if (level_[e.to] < 0 && e.flow < e.capacity) {
        level_[e.to] = level_[v] + 1;
        queue.push_back(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

Rational FlowNetwork::push(int vertex, int sink, Rational limit) {
  if (vertex == sink) return limit;
  for (int& i = next_arc_[vertex]; i < static_cast<int>(adjacency_[vertex].size()); ++i) {
    const int id = adjacency_[vertex][i];
    Edge& e = edges_[id];
    if (level_[e.to] != level_[vertex] + 1 || e.flow >= e.capacity) continue;
    const Rational residual = e.capacity - e.flow;
    Rational pushed = push(e.to, sink, residual < limit ? residual : limit);
    if (pushed > 0) {
      e.flow += pushed;
      edges_[id ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return Rational(0);
}

Rational FlowNetwork::max_flow(int source, int sink) {
  Rational total = 0;
  // No finite capacity bound is needed per path; the per-edge residual caps
  // each push.
  const Rational unbounded = [&] {
    Rational sum = 1;
    for (const Edge& e : edges_) sum += e.capacity;
    return sum;
  }();
  while (build_levels(source, sink)) {
    std::fill(next_arc_.begin(), next_arc_.end(), 0);
    while (true) {
      Rational pushed = push(source, sink, unbounded);
      if (pushed == 0) break;
      total += pushed;
    }
  }
  return total;
}

}  // namespace prhl
