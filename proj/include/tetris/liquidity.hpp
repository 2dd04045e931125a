#pragma once

#include <string>
#include <vector>

#include "tetris/clearing.hpp"
#include "tetris/flow_solver.hpp"
#include "tetris/liability_matrix.hpp"
#include "tetris/obligation_network.hpp"
#include "tetris/positions.hpp"

namespace tetris {

/// Bank-side liquidity of each firm plus the facility-wide overdraft cap.
struct LiquiditySources {
  std::vector<Amount> holdings;            // h+: account balances
  std::vector<Amount> approved_overdraft;  // a^A
  std::vector<Amount> drawn_overdraft;     // r: overdraft already taken
  Amount facility_cap;                     // a_max

  /// All-zero sources for `firm_count` firms.
  static LiquiditySources none(std::size_t firm_count);

  [[nodiscard]] std::size_t firm_count() const { return holdings.size(); }
  /// a = a^A - r. Throws PreconditionError when r exceeds a^A somewhere.
  [[nodiscard]] std::vector<Amount> available_credit() const;
  /// Throws PreconditionError on length mismatch, negative values or r > a^A.
  void validate(std::size_t expected_firms) const;
};

struct Shortfall {
  FirmIndex firm = 0;
  Amount needed;     // b-_i
  Amount available;  // h+_i + a_i
  Amount missing;    // needed - available

  friend bool operator==(const Shortfall&, const Shortfall&) = default;
};

struct FeasibilityReport {
  bool feasible = false;
  bool covers_every_firm = false;  // b- <= h+ + a componentwise
  bool within_facility_cap = false;  // ||a|| <= a_max
  Amount total_available_credit;     // ||a||
  std::vector<Shortfall> shortfalls;
};

/// Can a balanced payment system f = -b be financed from the sources?
[[nodiscard]] FeasibilityReport check_balanced_feasibility(const NetPositionVector& b,
                                                           const LiquiditySources& sources);

enum class NodeRole { kFirm, kHub, kHoldingsIn, kHoldingsOut, kOverdraftIn, kOverdraftOut };

/// Liability matrix over the firms plus five liquidity nodes, in this index
/// order after the firms: hub v0, holdings-in, holdings-out, overdraft-in,
/// overdraft-out. Desired cashflows become liabilities:
///   v0 -> overdraft-in  = a_max        v0 -> holdings-in  = ||b-||
///   holdings-out -> v0  = ||b+||       overdraft-out -> v0 = ||r||
///   holdings-in -> i    = h+_i         overdraft-in -> i  = a^A_i - r_i
///   i -> overdraft-out  = r_i          i -> holdings-out  = min(c_i, ceiling)
/// where ceiling = ||h+|| + min(||a||, a_max) is the most cash that can ever
/// enter the network.
class ExtendedMatrix {
 public:
  ExtendedMatrix() = default;
  ExtendedMatrix(std::size_t firm_count, LiabilityMatrix matrix, LiquiditySources sources);

  [[nodiscard]] std::size_t firm_count() const { return firm_count_; }
  [[nodiscard]] const LiabilityMatrix& matrix() const { return matrix_; }
  [[nodiscard]] const LiquiditySources& sources() const { return sources_; }

  [[nodiscard]] std::size_t hub() const { return firm_count_; }
  [[nodiscard]] std::size_t holdings_in() const { return firm_count_ + 1; }
  [[nodiscard]] std::size_t holdings_out() const { return firm_count_ + 2; }
  [[nodiscard]] std::size_t overdraft_in() const { return firm_count_ + 3; }
  [[nodiscard]] std::size_t overdraft_out() const { return firm_count_ + 4; }

  [[nodiscard]] NodeRole role(std::size_t node) const;
  [[nodiscard]] bool is_firm(std::size_t node) const { return node < firm_count_; }
  /// The firm-to-firm block (the original L).
  [[nodiscard]] LiabilityMatrix firm_block() const { return firm_block_of(matrix_); }
  /// Firm-to-firm block of any matrix over the extended node set.
  [[nodiscard]] LiabilityMatrix firm_block_of(const LiabilityMatrix& extended) const;

 private:
  std::size_t firm_count_ = 0;
  LiabilityMatrix matrix_;
  LiquiditySources sources_;
};

/// Throws PreconditionError on dimension mismatch or drawn > approved.
[[nodiscard]] ExtendedMatrix build_extended_matrix(const LiabilityMatrix& liabilities,
                                                   const LiquiditySources& sources);

/// Bank-side movements of one firm implied by the extended solution.
struct LiquidityMovement {
  Amount account_debit;   // paid from holdings into the network
  Amount account_credit;  // paid out of the network into the account
  Amount overdraft_draw;
  Amount repayment;

  friend bool operator==(const LiquidityMovement&, const LiquidityMovement&) = default;
};

struct ExtendedClearingResult {
  ExtendedMatrix extended;
  FlowSolution residual;          // M*
  LiabilityMatrix tetris;         // T* = L* - M*
  LiabilityMatrix discharged;     // firm block of T*
  Amount discharged_weight;
  std::vector<LiquidityMovement> movements;  // per firm
  std::vector<CycleSettlement> cycles;       // of T*, over extended node ids
  Amount holdings_used;
  Amount overdraft_drawn;
  Amount overdraft_repaid;
  Amount paid_out;
};

/// Maximum-weight circulation of the extended matrix. Firm arcs cost 1 and
/// liquidity arcs cost 0, so minimizing the residual cost maximizes the
/// discharged firm-to-firm weight. Among optimal solutions, liquidity that
/// merely passes through a firm without discharging anything is cancelled.
[[nodiscard]] ExtendedClearingResult optimize_extended(const ExtendedMatrix& extended);

/// Extended pipeline over an obligation network, with per-obligation
/// discharged amounts and the trade-credit-only baseline for comparison.
struct ExtendedRun {
  ExtendedClearingResult result;
  FeasibilityReport feasibility;
  std::vector<Amount> discharged;  // per obligation
  Amount trade_credit_cleared_weight;
};

[[nodiscard]] ExtendedRun clear_extended(const ObligationNetwork& network, const LiquiditySources& sources,
                                         const ClearingOptions& options = {});

}  // namespace tetris
