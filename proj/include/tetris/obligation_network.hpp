#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/amount.hpp"
#include "tetris/liability_matrix.hpp"

namespace tetris {

/// A single invoice: `debtor` owes `creditor` a strictly positive amount.
struct Obligation {
  std::string id;
  FirmIndex debtor = 0;
  FirmIndex creditor = 0;
  Amount amount;
  /// 1-based source line, 0 if not ingested from a file.
  std::size_t line = 0;

  friend bool operator==(const Obligation&, const Obligation&) = default;
};

/// Directed multigraph of firms and individual obligations. Parallel
/// obligations between the same pair of firms are allowed. Immutable once
/// built; all invariants are checked by `create`.
class ObligationNetwork {
 public:
  ObligationNetwork() = default;

  /// Validates and builds the network. Firm indices are the positions in
  /// `firm_labels`. Throws ValidationError listing every problem:
  /// duplicate labels, duplicate obligation ids, unknown firm indices,
  /// self-loops and non-positive amounts.
  static ObligationNetwork create(std::vector<std::string> firm_labels,
                                  std::vector<Obligation> obligations,
                                  std::string currency = {});

  [[nodiscard]] std::size_t firm_count() const { return labels_.size(); }
  [[nodiscard]] std::span<const std::string> firm_labels() const { return labels_; }
  [[nodiscard]] const std::string& label(FirmIndex firm) const { return labels_.at(firm); }
  [[nodiscard]] std::optional<FirmIndex> find_firm(std::string_view label) const;
  [[nodiscard]] std::span<const Obligation> obligations() const { return obligations_; }
  [[nodiscard]] const std::string& currency() const { return currency_; }
  [[nodiscard]] bool empty() const { return obligations_.empty(); }

 private:
  std::vector<std::string> labels_;
  std::vector<Obligation> obligations_;
  std::string currency_;
  // (label, index) sorted by label for lookup.
  std::vector<std::pair<std::string, FirmIndex>> label_index_;
};

/// Collects obligations by firm label and assigns dense firm indices in
/// natural label order ("2" < "10"), so the result is independent of the
/// order obligations were added in.
class NetworkBuilder {
 public:
  NetworkBuilder& add_firm(std::string label);
  NetworkBuilder& add_obligation(std::string id, std::string debtor, std::string creditor,
                                 std::int64_t minor_units, std::size_t line = 0);
  NetworkBuilder& set_currency(std::string currency);

  /// Throws ValidationError (see ObligationNetwork::create).
  [[nodiscard]] ObligationNetwork build() const;

 private:
  struct PendingObligation {
    std::string id;
    std::string debtor;
    std::string creditor;
    std::int64_t minor_units = 0;
    std::size_t line = 0;
  };
  std::vector<std::string> firms_;
  std::vector<PendingObligation> obligations_;
  std::string currency_;
};

/// Natural ordering: digit runs compare by numeric value, everything else
/// bytewise.
[[nodiscard]] bool natural_less(std::string_view lhs, std::string_view rhs);

/// L[i][j] = sum of amounts of all obligations with debtor i and creditor j.
[[nodiscard]] LiabilityMatrix build_liability_matrix(const ObligationNetwork& network);

/// Total value of all obligations, w(G).
[[nodiscard]] Amount network_weight(const ObligationNetwork& network);

}  // namespace tetris
