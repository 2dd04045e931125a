#include "tetris/positions.hpp"

#include <algorithm>

#include "tetris/errors.hpp"

namespace tetris {

NetPositionVector::NetPositionVector(std::vector<Amount> values) : values_(std::move(values)) {
  if (!sum(values_).is_zero()) {
    throw InvariantViolation("net position vector does not sum to zero");
  }
}

bool NetPositionVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](Amount v) { return v.is_zero(); });
}

DebtCredit debt_credit_vectors(const LiabilityMatrix& liabilities) {
  DebtCredit dc{std::vector<Amount>(liabilities.size()), std::vector<Amount>(liabilities.size())};
  for (const MatrixEntry& e : liabilities.entries()) {
    dc.debt[e.debtor] += e.amount;
    dc.credit[e.creditor] += e.amount;
  }
  return dc;
}

NetPositionVector net_positions(const LiabilityMatrix& liabilities) {
  DebtCredit dc = debt_credit_vectors(liabilities);
  std::vector<Amount> b(liabilities.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = dc.credit[i] - dc.debt[i];
  return NetPositionVector(std::move(b));
}

LatticeSplit lattice_split(std::span<const Amount> values) {
  LatticeSplit split{std::vector<Amount>(values.size()), std::vector<Amount>(values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) {
    split.positive[i] = max(values[i], Amount{});
    split.negative[i] = max(-values[i], Amount{});
  }
  return split;
}

Amount nid(const NetPositionVector& b) { return sum(lattice_split(b.values()).negative); }

std::vector<Amount> external_clearing_vector(const NetPositionVector& b) {
  std::vector<Amount> f(b.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = -b[i];
  return f;
}

bool is_balanced_system(const PaymentSystem& system) {
  if (system.external_flow.size() != system.liabilities.size()) {
    throw PreconditionError("payment system: external flow length differs from firm count");
  }
  const NetPositionVector b = net_positions(system.liabilities);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(b[i] + system.external_flow[i]).is_zero()) return false;
  }
  return true;
}

}  // namespace tetris
