#pragma once

#include <vector>

#include "tetris/flow_solver.hpp"
#include "tetris/liability_matrix.hpp"
#include "tetris/obligation_network.hpp"
#include "tetris/positions.hpp"

namespace tetris {

/// A simple cycle settled at a uniform amount. `nodes` lists the firms in
/// cycle order; the closing arc runs from the last node back to the first.
struct CycleSettlement {
  std::vector<FirmIndex> nodes;
  Amount amount;

  [[nodiscard]] Amount weight() const { return amount * static_cast<std::int64_t>(nodes.size()); }
  friend bool operator==(const CycleSettlement&, const CycleSettlement&) = default;
};

/// Amount of one obligation discharged by the clearing.
struct DischargeLine {
  std::size_t obligation = 0;  // index into ObligationNetwork::obligations()
  Amount discharged;
  Amount remaining;

  friend bool operator==(const DischargeLine&, const DischargeLine&) = default;
};

struct CounterpartySetOff {
  FirmIndex counterparty = 0;
  Amount payable;     // what the firm owed the counterparty and no longer does
  Amount receivable;  // what the counterparty owed the firm and no longer does

  friend bool operator==(const CounterpartySetOff&, const CounterpartySetOff&) = default;
};

/// Statement sent to one firm. Multilateral set-off is only legal when the
/// debit total equals the credit total.
struct SetOffNotice {
  FirmIndex firm = 0;
  std::vector<CounterpartySetOff> counterparties;  // by counterparty index
  std::vector<DischargeLine> payables;             // obligations where firm is debtor
  std::vector<DischargeLine> receivables;          // obligations where firm is creditor
  Amount total_debit;
  Amount total_credit;

  [[nodiscard]] Amount total_set_off() const { return total_debit; }
  friend bool operator==(const SetOffNotice&, const SetOffNotice&) = default;
};

/// How matrix-level set-offs are spread over individual obligations between
/// the same two firms. Oldest first means ascending id unless the input
/// order is declared chronological.
enum class AllocationOrder { kById, kInputOrder };

struct ClearingOptions {
  AllocationOrder allocation = AllocationOrder::kById;
  /// Solve each weakly connected component separately.
  bool split_components = true;
};

struct ClearingResult {
  LiabilityMatrix liabilities;  // L
  NetPositionVector positions;  // b of L (and of M)
  Amount original_weight;       // w(L)
  Amount nid;
  FlowSolution residual;        // M, left for ordinary bank payment
  LiabilityMatrix tetris;       // T = L - M
  std::vector<CycleSettlement> cycles;
  std::vector<SetOffNotice> notices;
  /// Per obligation (parallel to network.obligations()): amount discharged.
  std::vector<Amount> discharged;
  Amount cleared_weight;        // w(T)

  [[nodiscard]] Amount residual_weight() const { return residual.flows.grandsum(); }
  /// Obligations that cannot settle one by one but clear simultaneously.
  [[nodiscard]] bool gridlock() const { return cleared_weight.is_positive(); }
};

/// T = L - M. Throws InvariantViolation when M exceeds L anywhere or T is
/// not balanced.
[[nodiscard]] LiabilityMatrix tetris_subtract(const LiabilityMatrix& liabilities,
                                              const FlowSolution& residual);

/// Splits a balanced matrix into simple cycles, each settled at its
/// bottleneck, until nothing remains. Search starts at the lowest-indexed
/// firm with an outstanding balance and always follows the lowest-indexed
/// successor. Throws PreconditionError when `tetris` is not balanced.
[[nodiscard]] std::vector<CycleSettlement> decompose_cycles(const LiabilityMatrix& tetris);

/// Per-obligation discharged amounts: every T[i][j] is spread over the
/// obligations from i to j oldest first, splitting at most one of them.
/// Throws InvariantViolation when T[i][j] exceeds what the obligations hold.
[[nodiscard]] std::vector<Amount> allocate_discharges(const ObligationNetwork& network,
                                                      const LiabilityMatrix& discharged,
                                                      AllocationOrder order = AllocationOrder::kById);

/// One notice per firm touched by the set-off, ordered by firm index.
[[nodiscard]] std::vector<SetOffNotice> build_setoff_notices(
    const LiabilityMatrix& liabilities, const LiabilityMatrix& tetris, const ObligationNetwork& network,
    AllocationOrder order = AllocationOrder::kById);

/// Collect, net, solve, subtract, decompose and notify. Every result
/// invariant is checked before returning; a failure raises
/// InvariantViolation.
[[nodiscard]] ClearingResult clear(const ObligationNetwork& network, const ClearingOptions& options = {});

/// Same pipeline from a bare matrix (no obligation-level notices).
[[nodiscard]] ClearingResult clear_matrix(const LiabilityMatrix& liabilities,
                                          const ClearingOptions& options = {});

/// Weakly connected component id of every firm; isolated firms get their
/// own component. Ids are assigned in order of the lowest firm index.
[[nodiscard]] std::vector<std::size_t> weak_components(const LiabilityMatrix& matrix);

/// Minimum-cost residual flow of `liabilities`, optionally solved per
/// component and stitched back together.
[[nodiscard]] FlowSolution solve_residual(const LiabilityMatrix& liabilities, bool split_components,
                                          const ArcCostFn& cost = {});

}  // namespace tetris
