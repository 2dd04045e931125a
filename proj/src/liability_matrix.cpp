#include "tetris/liability_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "tetris/errors.hpp"

namespace tetris {
namespace {

bool cell_less(const MatrixEntry& a, const MatrixEntry& b) {
  return a.debtor != b.debtor ? a.debtor < b.debtor : a.creditor < b.creditor;
}

std::vector<std::size_t> offsets_for(std::size_t n, const std::vector<MatrixEntry>& sorted) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const MatrixEntry& e : sorted) ++offsets[e.debtor + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  return offsets;
}

}  // namespace

LiabilityMatrix::LiabilityMatrix(std::size_t firm_count)
    : firm_count_(firm_count), row_offsets_(firm_count + 1, 0) {}

LiabilityMatrix LiabilityMatrix::from_entries(std::size_t firm_count, std::vector<MatrixEntry> cells) {
  for (const MatrixEntry& e : cells) {
    if (e.debtor >= firm_count || e.creditor >= firm_count) {
      std::ostringstream os;
      os << "matrix cell (" << e.debtor << ", " << e.creditor << ") outside " << firm_count << "x"
         << firm_count;
      throw PreconditionError(os.str());
    }
    if (e.amount.is_negative()) throw PreconditionError("liability matrix entries must be non-negative");
    if (e.debtor == e.creditor && !e.amount.is_zero()) {
      throw PreconditionError("liability matrix diagonal must be zero");
    }
  }
  std::stable_sort(cells.begin(), cells.end(), cell_less);

  LiabilityMatrix m(firm_count);
  m.entries_.reserve(cells.size());
  for (const MatrixEntry& e : cells) {
    if (e.amount.is_zero()) continue;
    if (!m.entries_.empty() && m.entries_.back().debtor == e.debtor &&
        m.entries_.back().creditor == e.creditor) {
      m.entries_.back().amount += e.amount;
    } else {
      m.entries_.push_back(e);
    }
  }
  m.row_offsets_ = offsets_for(firm_count, m.entries_);
  return m;
}

LiabilityMatrix LiabilityMatrix::from_dense(
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t n = rows.size();
  std::vector<MatrixEntry> cells;
  FirmIndex i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw PreconditionError("dense liability matrix must be square");
    FirmIndex j = 0;
    for (std::int64_t v : row) {
      if (v != 0) cells.push_back({i, j, Amount{v}});
      ++j;
    }
    ++i;
  }
  return from_entries(n, std::move(cells));
}

Amount LiabilityMatrix::at(FirmIndex debtor, FirmIndex creditor) const {
  if (debtor >= firm_count_ || creditor >= firm_count_) {
    throw PreconditionError("liability matrix index out of range");
  }
  auto r = row(debtor);
  auto it = std::lower_bound(r.begin(), r.end(), creditor,
                             [](const MatrixEntry& e, FirmIndex c) { return e.creditor < c; });
  return (it != r.end() && it->creditor == creditor) ? it->amount : Amount{};
}

std::span<const MatrixEntry> LiabilityMatrix::row(FirmIndex debtor) const {
  if (debtor >= firm_count_) throw PreconditionError("liability matrix row out of range");
  return std::span<const MatrixEntry>(entries_).subspan(
      row_offsets_[debtor], row_offsets_[debtor + 1] - row_offsets_[debtor]);
}

Amount LiabilityMatrix::grandsum() const {
  Amount total;
  for (const MatrixEntry& e : entries_) total += e.amount;
  return total;
}

LiabilityMatrix LiabilityMatrix::transposed() const {
  std::vector<MatrixEntry> cells;
  cells.reserve(entries_.size());
  for (const MatrixEntry& e : entries_) cells.push_back({e.creditor, e.debtor, e.amount});
  return from_entries(firm_count_, std::move(cells));
}

LiabilityMatrix LiabilityMatrix::scaled(std::int64_t factor) const {
  if (factor < 0) throw PreconditionError("liability matrix scale factor must be non-negative");
  std::vector<MatrixEntry> cells(entries_.begin(), entries_.end());
  for (MatrixEntry& e : cells) e.amount *= factor;
  return from_entries(firm_count_, std::move(cells));
}

std::vector<std::vector<Amount>> LiabilityMatrix::to_dense() const {
  std::vector<std::vector<Amount>> dense(firm_count_, std::vector<Amount>(firm_count_));
  for (const MatrixEntry& e : entries_) dense[e.debtor][e.creditor] = e.amount;
  return dense;
}

bool LiabilityMatrix::dominated_by(const LiabilityMatrix& other) const {
  if (firm_count_ != other.firm_count_) return false;
  return std::all_of(entries_.begin(), entries_.end(), [&](const MatrixEntry& e) {
    return e.amount <= other.at(e.debtor, e.creditor);
  });
}

LiabilityMatrix subtract(const LiabilityMatrix& lhs, const LiabilityMatrix& rhs) {
  if (lhs.size() != rhs.size()) throw InvariantViolation("matrix subtraction: size mismatch");
  std::vector<MatrixEntry> cells(lhs.entries().begin(), lhs.entries().end());
  auto a = cells.begin();
  for (const MatrixEntry& e : rhs.entries()) {
    a = std::lower_bound(a, cells.end(), e, cell_less);
    if (a == cells.end() || a->debtor != e.debtor || a->creditor != e.creditor || a->amount < e.amount) {
      std::ostringstream os;
      os << "matrix subtraction goes negative at (" << e.debtor << ", " << e.creditor << ")";
      throw InvariantViolation(os.str());
    }
    a->amount -= e.amount;
  }
  return LiabilityMatrix::from_entries(lhs.size(), std::move(cells));
}

LiabilityMatrix add(const LiabilityMatrix& lhs, const LiabilityMatrix& rhs) {
  if (lhs.size() != rhs.size()) throw PreconditionError("matrix addition: size mismatch");
  std::vector<MatrixEntry> cells(lhs.entries().begin(), lhs.entries().end());
  cells.insert(cells.end(), rhs.entries().begin(), rhs.entries().end());
  return LiabilityMatrix::from_entries(lhs.size(), std::move(cells));
}

}  // namespace tetris
