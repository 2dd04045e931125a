#pragma once

#include <span>
#include <vector>

#include "tetris/amount.hpp"
#include "tetris/liability_matrix.hpp"

namespace tetris {

/// Per-firm credit minus debt. The components always sum to zero; the
/// constructor enforces it.
class NetPositionVector {
 public:
  NetPositionVector() = default;
  /// Throws InvariantViolation if the components do not sum to zero.
  explicit NetPositionVector(std::vector<Amount> values);

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] Amount operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::span<const Amount> values() const { return values_; }
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const NetPositionVector&, const NetPositionVector&) = default;

 private:
  std::vector<Amount> values_;
};

struct DebtCredit {
  std::vector<Amount> debt;    // row sums
  std::vector<Amount> credit;  // column sums
};

struct LatticeSplit {
  std::vector<Amount> positive;  // x+ = max(x, 0)
  std::vector<Amount> negative;  // x- = max(-x, 0)
};

/// A liability matrix plus an external cashflow vector f, where f_i > 0
/// flows from the liquidity source into firm i.
struct PaymentSystem {
  LiabilityMatrix liabilities;
  std::vector<Amount> external_flow;
};

[[nodiscard]] DebtCredit debt_credit_vectors(const LiabilityMatrix& liabilities);

/// b = c - d.
[[nodiscard]] NetPositionVector net_positions(const LiabilityMatrix& liabilities);

[[nodiscard]] LatticeSplit lattice_split(std::span<const Amount> values);

/// Net internal debt: ||b-||, the cash needed to discharge every obligation.
[[nodiscard]] Amount nid(const NetPositionVector& b);

/// f = -b, the external flow that turns (L, f) into a balanced system.
[[nodiscard]] std::vector<Amount> external_clearing_vector(const NetPositionVector& b);

/// true iff b_i + f_i = 0 for every firm. Throws PreconditionError when the
/// flow vector length differs from the firm count.
[[nodiscard]] bool is_balanced_system(const PaymentSystem& system);

}  // namespace tetris
