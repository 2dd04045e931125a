#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tetris/amount.hpp"
#include "tetris/liability_matrix.hpp"
#include "tetris/positions.hpp"

namespace tetris {

/// Arc of a flow instance. Nodes 0..n-1 are firms, n is the super-source s
/// and n+1 the super-sink t.
struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  Amount capacity;
  std::int64_t cost = 0;

  friend bool operator==(const FlowArc&, const FlowArc&) = default;
};

/// Minimum-cost flow instance derived from a liability matrix. Arcs are
/// stored as: interior (firm-to-firm) arcs ordered by (from, to), then the
/// s-arcs by firm, then the t-arcs by firm.
struct FlowNetwork {
  std::size_t firm_count = 0;
  std::vector<FlowArc> arcs;
  std::size_t interior_arc_count = 0;
  Amount required_flow;

  [[nodiscard]] std::size_t node_count() const { return firm_count + 2; }
  [[nodiscard]] std::size_t source() const { return firm_count; }
  [[nodiscard]] std::size_t sink() const { return firm_count + 1; }
};

/// Result of the solver: arc flows between firms (the residual matrix M).
struct FlowSolution {
  LiabilityMatrix flows;
  Amount total_flow;
  /// Sum of cost * flow. Equals the grandsum of `flows` under unit costs.
  std::int64_t total_cost = 0;

  friend bool operator==(const FlowSolution&, const FlowSolution&) = default;
};

/// Per-arc cost override. Unit cost (1) on every interior arc when absent.
using ArcCostFn = std::function<std::int64_t(FirmIndex debtor, FirmIndex creditor)>;

/// Interior arcs carry capacity L[i][j]; s feeds every firm with b_i < 0 up
/// to b-_i and every firm with b_i > 0 drains to t up to b+_i, both at zero
/// cost. The required flow is the NID. Throws PreconditionError when `b` is
/// not the net position vector of `liabilities`.
[[nodiscard]] FlowNetwork build_mcf_instance(const LiabilityMatrix& liabilities,
                                             const NetPositionVector& b,
                                             const ArcCostFn& cost = {});

/// Solves the instance with successive shortest augmenting paths over
/// Johnson potentials, integral throughout.
///
/// Ties between optimal solutions are broken deterministically: each phase
/// restricts to arcs of zero reduced cost, layers them by hop count from s,
/// and augments along the lexicographically smallest node sequence (arcs
/// scanned by ascending head index). Throws InvariantViolation if the
/// required flow cannot be routed or a post-condition fails.
[[nodiscard]] FlowSolution solve_mcf(const FlowNetwork& network);

/// Kahn's algorithm over the nonzero entries.
[[nodiscard]] bool is_acyclic(const LiabilityMatrix& matrix);

}  // namespace tetris
