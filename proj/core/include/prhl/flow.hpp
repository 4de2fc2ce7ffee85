#ifndef PRHL_FLOW_HPP
#define PRHL_FLOW_HPP

#include <vector>

#include "prhl/rational.hpp"

namespace prhl {

// Max flow with exact rational capacities (Dinic). Each augmenting path in a
// phase saturates at least one edge, so termination does not depend on the
// capacities being integral.
class FlowNetwork {
 public:
  explicit FlowNetwork(int num_vertices);

  // Returns an edge id usable with flow() after solving.
  int add_edge(int from, int to, Rational capacity);

  Rational max_flow(int source, int sink);

  // Flow routed through the edge returned by add_edge.
  const Rational& flow(int edge_id) const { return edges_[2 * edge_id].flow; }

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }

 private:
  struct Edge {
    int to;
    Rational capacity;
    Rational flow;
  };

  bool build_levels(int source, int sink);
  Rational push(int vertex, int sink, Rational limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<int> next_arc_;
};

}  // namespace prhl

#endif  // PRHL_FLOW_HPP
