#include "tetris/liquidity.hpp"

#include <algorithm>

#include "tetris/errors.hpp"

namespace tetris {

LiquiditySources LiquiditySources::none(std::size_t firm_count) {
  return {std::vector<Amount>(firm_count), std::vector<Amount>(firm_count), std::vector<Amount>(firm_count),
          Amount{}};
}

void LiquiditySources::validate(std::size_t expected_firms) const {
  if (holdings.size() != expected_firms || approved_overdraft.size() != expected_firms ||
      drawn_overdraft.size() != expected_firms) {
    throw PreconditionError("liquidity sources: vector length differs from firm count");
  }
  auto non_negative = [](const std::vector<Amount>& v) {
    return std::none_of(v.begin(), v.end(), [](Amount a) { return a.is_negative(); });
  };
  if (!non_negative(holdings) || !non_negative(approved_overdraft) || !non_negative(drawn_overdraft) ||
      facility_cap.is_negative()) {
    throw PreconditionError("liquidity sources must be non-negative");
  }
  for (std::size_t i = 0; i < expected_firms; ++i) {
    if (drawn_overdraft[i] > approved_overdraft[i]) {
      throw PreconditionError("drawn overdraft exceeds the approved overdraft");
    }
  }
}

std::vector<Amount> LiquiditySources::available_credit() const {
  validate(holdings.size());
  std::vector<Amount> a(holdings.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = approved_overdraft[i] - drawn_overdraft[i];
  return a;
}

FeasibilityReport check_balanced_feasibility(const NetPositionVector& b, const LiquiditySources& sources) {
  sources.validate(b.size());
  const std::vector<Amount> credit = sources.available_credit();
  const std::vector<Amount> need = lattice_split(b.values()).negative;

  FeasibilityReport report;
  for (FirmIndex i = 0; i < b.size(); ++i) {
    const Amount available = sources.holdings[i] + credit[i];
    if (need[i] > available) report.shortfalls.push_back({i, need[i], available, need[i] - available});
  }
  report.total_available_credit = sum(credit);
  report.covers_every_firm = report.shortfalls.empty();
  report.within_facility_cap = report.total_available_credit <= sources.facility_cap;
  report.feasible = report.covers_every_firm && report.within_facility_cap;
  return report;
}

ExtendedMatrix::ExtendedMatrix(std::size_t firm_count, LiabilityMatrix matrix, LiquiditySources sources)
    : firm_count_(firm_count), matrix_(std::move(matrix)), sources_(std::move(sources)) {
  if (matrix_.size() != firm_count_ + 5) throw PreconditionError("extended matrix must have n + 5 nodes");
}

NodeRole ExtendedMatrix::role(std::size_t node) const {
  if (node < firm_count_) return NodeRole::kFirm;
  switch (node - firm_count_) {
    case 0: return NodeRole::kHub;
    case 1: return NodeRole::kHoldingsIn;
    case 2: return NodeRole::kHoldingsOut;
    case 3: return NodeRole::kOverdraftIn;
    case 4: return NodeRole::kOverdraftOut;
    default: throw PreconditionError("extended matrix node out of range");
  }
}

LiabilityMatrix ExtendedMatrix::firm_block_of(const LiabilityMatrix& extended) const {
  std::vector<MatrixEntry> cells;
  for (const MatrixEntry& e : extended.entries()) {
    if (is_firm(e.debtor) && is_firm(e.creditor)) cells.push_back(e);
  }
  return LiabilityMatrix::from_entries(firm_count_, std::move(cells));
}

ExtendedMatrix build_extended_matrix(const LiabilityMatrix& liabilities, const LiquiditySources& sources) {
  const std::size_t n = liabilities.size();
  sources.validate(n);
  const NetPositionVector b = net_positions(liabilities);
  const LatticeSplit split = lattice_split(b.values());
  const DebtCredit dc = debt_credit_vectors(liabilities);
  const std::vector<Amount> credit = sources.available_credit();
  const Amount ceiling = sum(sources.holdings) + min(sum(credit), sources.facility_cap);

  const std::size_t hub = n, h_in = n + 1, h_out = n + 2, a_in = n + 3, a_out = n + 4;
  std::vector<MatrixEntry> cells(liabilities.entries().begin(), liabilities.entries().end());
  cells.push_back({hub, a_in, sources.facility_cap});
  cells.push_back({hub, h_in, sum(split.negative)});
  cells.push_back({h_out, hub, sum(split.positive)});
  cells.push_back({a_out, hub, sum(sources.drawn_overdraft)});
  for (FirmIndex i = 0; i < n; ++i) {
    cells.push_back({h_in, i, sources.holdings[i]});
    cells.push_back({a_in, i, credit[i]});
    cells.push_back({i, a_out, sources.drawn_overdraft[i]});
    cells.push_back({i, h_out, min(dc.credit[i], ceiling)});
  }
  return ExtendedMatrix(n, LiabilityMatrix::from_entries(n + 5, std::move(cells)), sources);
}

ExtendedClearingResult optimize_extended(const ExtendedMatrix& extended) {
  const std::size_t n = extended.firm_count();
  const LiabilityMatrix& full = extended.matrix();
  const ArcCostFn cost = [n](FirmIndex i, FirmIndex j) -> std::int64_t { return (i < n && j < n) ? 1 : 0; };

  ExtendedClearingResult r;
  r.extended = extended;
  FlowSolution residual = solve_residual(full, /*split_components=*/true, cost);
  LiabilityMatrix t = tetris_subtract(full, residual);

  // Cancel liquidity that enters and leaves a firm without touching a firm
  // arc. Unused overdraft and unpaid-out balances are released first.
  const std::size_t hub = extended.hub(), h_in = extended.holdings_in(), h_out = extended.holdings_out();
  const std::size_t a_in = extended.overdraft_in(), a_out = extended.overdraft_out();
  std::vector<MatrixEntry> cancel;
  for (FirmIndex i = 0; i < n; ++i) {
    const Amount from_a = t.at(a_in, i), from_h = t.at(h_in, i);
    const Amount to_h = t.at(i, h_out), to_a = t.at(i, a_out);
    const Amount pass = min(from_a + from_h, to_h + to_a);
    if (pass.is_zero()) continue;
    const Amount drop_a = min(pass, from_a), drop_h = pass - drop_a;
    const Amount drop_out_h = min(pass, to_h), drop_out_a = pass - drop_out_h;
    cancel.push_back({a_in, i, drop_a});
    cancel.push_back({hub, a_in, drop_a});
    cancel.push_back({h_in, i, drop_h});
    cancel.push_back({hub, h_in, drop_h});
    cancel.push_back({i, h_out, drop_out_h});
    cancel.push_back({h_out, hub, drop_out_h});
    cancel.push_back({i, a_out, drop_out_a});
    cancel.push_back({a_out, hub, drop_out_a});
  }
  if (!cancel.empty()) {
    const LiabilityMatrix c = LiabilityMatrix::from_entries(full.size(), std::move(cancel));
    t = subtract(t, c);
    residual.flows = add(residual.flows, c);
  }
  if (!net_positions(t).is_zero()) throw InvariantViolation("extended solution T* is not balanced");
  if (!t.dominated_by(full)) throw InvariantViolation("extended solution T* exceeds L*");

  r.residual = std::move(residual);
  r.tetris = std::move(t);
  r.discharged = extended.firm_block_of(r.tetris);
  r.discharged_weight = r.discharged.grandsum();
  r.movements.resize(n);
  for (FirmIndex i = 0; i < n; ++i) {
    LiquidityMovement& m = r.movements[i];
    m.account_debit = r.tetris.at(h_in, i);
    m.account_credit = r.tetris.at(i, h_out);
    m.overdraft_draw = r.tetris.at(a_in, i);
    m.repayment = r.tetris.at(i, a_out);
  }
  r.holdings_used = r.tetris.at(hub, h_in);
  r.overdraft_drawn = r.tetris.at(hub, a_in);
  r.overdraft_repaid = r.tetris.at(a_out, hub);
  r.paid_out = r.tetris.at(h_out, hub);
  r.cycles = decompose_cycles(r.tetris);
  return r;
}

ExtendedRun clear_extended(const ObligationNetwork& network, const LiquiditySources& sources,
                           const ClearingOptions& options) {
  const LiabilityMatrix liabilities = build_liability_matrix(network);
  ExtendedRun run;
  run.result = optimize_extended(build_extended_matrix(liabilities, sources));
  run.feasibility = check_balanced_feasibility(net_positions(liabilities), sources);
  run.discharged = allocate_discharges(network, run.result.discharged, options.allocation);
  run.trade_credit_cleared_weight = clear_matrix(liabilities, options).cleared_weight;
  if (run.result.discharged_weight < run.trade_credit_cleared_weight) {
    throw InvariantViolation("liquidity-assisted clearing discharged less than trade-credit clearing");
  }
  if (run.feasibility.feasible && !(run.result.discharged == liabilities)) {
    throw InvariantViolation("sources cover every firm but the obligations did not fully clear");
  }
  return run;
}

}  // namespace tetris
