#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tetris/amount.hpp"

namespace tetris {

using FirmIndex = std::size_t;

/// One nonzero cell of a liability matrix: `debtor` owes `creditor`.
struct MatrixEntry {
  FirmIndex debtor = 0;
  FirmIndex creditor = 0;
  Amount amount;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Square n x n matrix of aggregated obligations with a zero diagonal and
/// non-negative entries.
///
/// Storage is sparse: only positive cells are kept, sorted row-major by
/// (debtor, creditor), with per-row offsets. Reads of absent cells return
/// zero, so the type behaves like the dense matrix it represents.
class LiabilityMatrix {
 public:
  LiabilityMatrix() = default;
  /// The n x n zero matrix.
  explicit LiabilityMatrix(std::size_t firm_count);

  /// Aggregates `cells` (duplicate coordinates are summed, zero cells are
  /// dropped). Throws PreconditionError on out-of-range indices, diagonal
  /// entries or negative amounts.
  static LiabilityMatrix from_entries(std::size_t firm_count, std::vector<MatrixEntry> cells);

  /// Dense row-major literal, mainly for fixtures: rows must be square.
  static LiabilityMatrix from_dense(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  [[nodiscard]] std::size_t size() const { return firm_count_; }
  [[nodiscard]] Amount at(FirmIndex debtor, FirmIndex creditor) const;

  /// All positive cells, row-major.
  [[nodiscard]] std::span<const MatrixEntry> entries() const { return entries_; }
  /// Positive cells of one row, ordered by creditor.
  [[nodiscard]] std::span<const MatrixEntry> row(FirmIndex debtor) const;
  [[nodiscard]] std::size_t nonzero_count() const { return entries_.size(); }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }

  /// Grandsum: sum of all entries, equal to the weight of the network.
  [[nodiscard]] Amount grandsum() const;

  [[nodiscard]] LiabilityMatrix transposed() const;
  [[nodiscard]] LiabilityMatrix scaled(std::int64_t factor) const;
  [[nodiscard]] std::vector<std::vector<Amount>> to_dense() const;

  /// true iff every entry of *this is <= the matching entry of `other`.
  [[nodiscard]] bool dominated_by(const LiabilityMatrix& other) const;

  friend bool operator==(const LiabilityMatrix&, const LiabilityMatrix&) = default;

 private:
  std::size_t firm_count_ = 0;
  std::vector<MatrixEntry> entries_;
  std::vector<std::size_t> row_offsets_ = {0};
};

/// Entrywise `lhs - rhs`. Throws InvariantViolation if any entry would go
/// negative or the sizes differ.
[[nodiscard]] LiabilityMatrix subtract(const LiabilityMatrix& lhs, const LiabilityMatrix& rhs);
/// Entrywise `lhs + rhs`.
[[nodiscard]] LiabilityMatrix add(const LiabilityMatrix& lhs, const LiabilityMatrix& rhs);

}  // namespace tetris
