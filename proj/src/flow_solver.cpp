#include "tetris/flow_solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "tetris/errors.hpp"

namespace tetris {

FlowNetwork build_mcf_instance(const LiabilityMatrix& liabilities, const NetPositionVector& b,
                               const ArcCostFn& cost) {
  const std::size_t n = liabilities.size();
  if (b.size() != n) throw PreconditionError("net position vector length differs from firm count");
  if (!(net_positions(liabilities) == b)) {
    throw PreconditionError("net position vector is inconsistent with the liability matrix");
  }

  FlowNetwork net;
  net.firm_count = n;
  net.arcs.reserve(liabilities.nonzero_count() + n);
  for (const MatrixEntry& e : liabilities.entries()) {
    const std::int64_t c = cost ? cost(e.debtor, e.creditor) : 1;
    if (c < 0) throw PreconditionError("arc costs must be non-negative");
    net.arcs.push_back({e.debtor, e.creditor, e.amount, c});
  }
  net.interior_arc_count = net.arcs.size();
  for (FirmIndex i = 0; i < n; ++i) {
    if (b[i].is_negative()) {
      net.arcs.push_back({net.source(), i, -b[i], 0});
      net.required_flow += -b[i];
    }
  }
  for (FirmIndex i = 0; i < n; ++i) {
    if (b[i].is_positive()) net.arcs.push_back({i, net.sink(), b[i], 0});
  }
  return net;
}

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// Residual graph in CSR form. Each node's out-edges are ordered by head
// index; a forward edge precedes the reverse edge to the same head.
class ResidualGraph {
 public:
  struct Edge {
    std::size_t to = 0;
    std::int64_t capacity = 0;
    std::int64_t cost = 0;
    std::size_t reverse = 0;
  };

  explicit ResidualGraph(const FlowNetwork& net) : offsets_(net.node_count() + 1, 0) {
    struct Raw {
      std::size_t from, to;
      std::int64_t capacity, cost;
      bool backward;
      std::size_t partner;
    };
    std::vector<Raw> raw;
    raw.reserve(net.arcs.size() * 2);
    for (const FlowArc& a : net.arcs) {
      const std::size_t k = raw.size();
      raw.push_back({a.from, a.to, a.capacity.minor_units(), a.cost, false, k + 1});
      raw.push_back({a.to, a.from, 0, -a.cost, true, k});
    }
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const Raw& a = raw[x];
      const Raw& b = raw[y];
      if (a.from != b.from) return a.from < b.from;
      if (a.to != b.to) return a.to < b.to;
      return !a.backward && b.backward;
    });
    std::vector<std::size_t> position(raw.size());
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = p;

    edges_.resize(raw.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
      const Raw& r = raw[order[p]];
      edges_[p] = {r.to, r.capacity, r.cost, position[r.partner]};
      ++offsets_[r.from + 1];
    }
    for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) offsets_[v + 1] += offsets_[v];
    forward_position_.resize(net.arcs.size());
    for (std::size_t a = 0; a < net.arcs.size(); ++a) forward_position_[a] = position[2 * a];
  }

  [[nodiscard]] std::size_t node_count() const { return offsets_.size() - 1; }
  [[nodiscard]] std::size_t begin(std::size_t v) const { return offsets_[v]; }
  [[nodiscard]] std::size_t end(std::size_t v) const { return offsets_[v + 1]; }
  [[nodiscard]] Edge& edge(std::size_t e) { return edges_[e]; }
  [[nodiscard]] const Edge& edge(std::size_t e) const { return edges_[e]; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  /// Residual position of the forward edge of input arc `a`.
  [[nodiscard]] std::size_t forward_edge(std::size_t a) const { return forward_position_[a]; }

  void push(std::size_t e, std::int64_t amount) {
    edges_[e].capacity -= amount;
    edges_[edges_[e].reverse].capacity += amount;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> forward_position_;
};

class SuccessiveShortestPaths {
 public:
  SuccessiveShortestPaths(ResidualGraph& graph, std::size_t source, std::size_t sink)
      : g_(graph),
        s_(source),
        t_(sink),
        potential_(graph.node_count(), 0),
        dist_(graph.node_count()),
        level_(graph.node_count()),
        cursor_(graph.node_count()),
        tail_(graph.edge_count()) {
    for (std::size_t v = 0; v < g_.node_count(); ++v) {
      for (std::size_t e = g_.begin(v); e < g_.end(v); ++e) tail_[e] = v;
    }
  }

  std::int64_t run(std::int64_t required) {
    std::int64_t routed = 0;
    while (routed < required) {
      if (!update_potentials()) break;
      while (routed < required && build_levels()) {
        routed += blocking_flow(required - routed);
      }
    }
    return routed;
  }

  /// Every residual edge with spare capacity has non-negative reduced cost:
  /// a certificate that the routed flow is of minimum cost for its value.
  [[nodiscard]] bool reduced_costs_nonnegative() const {
    for (std::size_t e = 0; e < g_.edge_count(); ++e) {
      if (g_.edge(e).capacity > 0 && reduced_cost(e) < 0) return false;
    }
    return true;
  }

 private:
  [[nodiscard]] std::int64_t reduced_cost(std::size_t e) const {
    const auto& edge = g_.edge(e);
    return edge.cost + potential_[tail_[e]] - potential_[edge.to];
  }

  // Dijkstra on reduced costs; returns false when t is unreachable.
  bool update_potentials() {
    std::fill(dist_.begin(), dist_.end(), kUnreached);
    using Item = std::pair<std::int64_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[s_] = 0;
    heap.emplace(0, s_);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d != dist_[u]) continue;
      for (std::size_t e = g_.begin(u); e < g_.end(u); ++e) {
        const auto& edge = g_.edge(e);
        if (edge.capacity <= 0) continue;
        const std::int64_t nd = d + reduced_cost(e);
        if (nd < dist_[edge.to]) {
          dist_[edge.to] = nd;
          heap.emplace(nd, edge.to);
        }
      }
    }
    if (dist_[t_] == kUnreached) return false;
    for (std::size_t v = 0; v < potential_.size(); ++v) {
      potential_[v] += std::min(dist_[v], dist_[t_]);
    }
    return true;
  }

  // Hop layering of the zero-reduced-cost subgraph.
  bool build_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{s_};
    level_[s_] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t e = g_.begin(u); e < g_.end(u); ++e) {
        const auto& edge = g_.edge(e);
        if (edge.capacity > 0 && reduced_cost(e) == 0 && level_[edge.to] < 0) {
          level_[edge.to] = level_[u] + 1;
          queue.push_back(edge.to);
        }
      }
    }
    for (std::size_t v = 0; v < cursor_.size(); ++v) cursor_[v] = g_.begin(v);
    return level_[t_] >= 0;
  }

  [[nodiscard]] bool admissible(std::size_t e) const {
    const auto& edge = g_.edge(e);
    return edge.capacity > 0 && level_[edge.to] == level_[tail_[e]] + 1 && reduced_cost(e) == 0;
  }

  // Repeatedly finds the lexicographically smallest s-t path of the layered
  // graph by depth-first search in ascending head order. Cursors only skip
  // edges that are saturated or lead to dead ends, so restarting from s
  // after each augmentation preserves the lexicographic choice.
  std::int64_t blocking_flow(std::int64_t limit) {
    std::int64_t pushed = 0;
    std::vector<std::size_t> path;
    std::size_t u = s_;
    while (pushed < limit) {
      if (u == t_) {
        std::int64_t bottleneck = limit - pushed;
        for (std::size_t e : path) bottleneck = std::min(bottleneck, g_.edge(e).capacity);
        for (std::size_t e : path) g_.push(e, bottleneck);
        pushed += bottleneck;
        path.clear();
        u = s_;
        continue;
      }
      std::size_t& c = cursor_[u];
      while (c < g_.end(u) && !admissible(c)) ++c;
      if (c == g_.end(u)) {
        level_[u] = -1;
        if (path.empty()) break;
        u = tail_[path.back()];
        path.pop_back();
        ++cursor_[u];
        continue;
      }
      path.push_back(c);
      u = g_.edge(c).to;
    }
    return pushed;
  }

  ResidualGraph& g_;
  std::size_t s_;
  std::size_t t_;
  std::vector<std::int64_t> potential_;
  std::vector<std::int64_t> dist_;
  std::vector<std::int64_t> level_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> tail_;
};

}  // namespace

FlowSolution solve_mcf(const FlowNetwork& network) {
  if (network.interior_arc_count > network.arcs.size()) {
    throw PreconditionError("flow network: interior arc count exceeds arc count");
  }
  for (const FlowArc& a : network.arcs) {
    if (a.from >= network.node_count() || a.to >= network.node_count() || a.capacity.is_negative() ||
        a.cost < 0) {
      throw PreconditionError("flow network: malformed arc");
    }
  }

  ResidualGraph graph(network);
  SuccessiveShortestPaths solver(graph, network.source(), network.sink());
  const std::int64_t required = network.required_flow.minor_units();
  const std::int64_t routed = solver.run(required);
  if (routed != required) {
    std::ostringstream os;
    os << "flow solver routed " << routed << " of the required " << required << " units";
    throw InvariantViolation(os.str());
  }
  if (!solver.reduced_costs_nonnegative()) {
    throw InvariantViolation("flow solver finished without an optimality certificate");
  }

  FlowSolution solution;
  solution.total_flow = Amount{routed};
  std::vector<MatrixEntry> cells;
  for (std::size_t a = 0; a < network.arcs.size(); ++a) {
    const FlowArc& arc = network.arcs[a];
    const std::int64_t flow = arc.capacity.minor_units() - graph.edge(graph.forward_edge(a)).capacity;
    if (flow < 0 || flow > arc.capacity.minor_units()) {
      throw InvariantViolation("flow solver produced an arc flow outside [0, capacity]");
    }
    if (a < network.interior_arc_count) {
      if (flow > 0) cells.push_back({arc.from, arc.to, Amount{flow}});
      solution.total_cost += flow * arc.cost;
    } else if (flow != arc.capacity.minor_units()) {
      throw InvariantViolation("flow solver left a source or sink arc unsaturated");
    }
  }
  solution.flows = LiabilityMatrix::from_entries(network.firm_count, std::move(cells));
  return solution;
}

bool is_acyclic(const LiabilityMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const MatrixEntry& e : matrix.entries()) ++indegree[e.creditor];
  std::vector<FirmIndex> ready;
  for (FirmIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t ordered = 0;
  while (!ready.empty()) {
    const FirmIndex u = ready.back();
    ready.pop_back();
    ++ordered;
    for (const MatrixEntry& e : matrix.row(u)) {
      if (--indegree[e.creditor] == 0) ready.push_back(e.creditor);
    }
  }
  return ordered == n;
}

}  // namespace tetris
