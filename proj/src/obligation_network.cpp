#include "tetris/obligation_network.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tetris/errors.hpp"

namespace tetris {

bool natural_less(std::string_view lhs, std::string_view rhs) {
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  std::size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    if (is_digit(lhs[i]) && is_digit(rhs[j])) {
      std::size_t i_end = i, j_end = j;
      while (i_end < lhs.size() && is_digit(lhs[i_end])) ++i_end;
      while (j_end < rhs.size() && is_digit(rhs[j_end])) ++j_end;
      // Strip leading zeros, then longer run is larger.
      std::size_t i_nz = i, j_nz = j;
      while (i_nz + 1 < i_end && lhs[i_nz] == '0') ++i_nz;
      while (j_nz + 1 < j_end && rhs[j_nz] == '0') ++j_nz;
      const std::string_view a = lhs.substr(i_nz, i_end - i_nz);
      const std::string_view b = rhs.substr(j_nz, j_end - j_nz);
      if (a.size() != b.size()) return a.size() < b.size();
      if (a != b) return a < b;
      // Equal value: fewer leading zeros first, keeps the order total.
      if ((i_end - i) != (j_end - j)) return (i_end - i) < (j_end - j);
      i = i_end;
      j = j_end;
      continue;
    }
    if (lhs[i] != rhs[j]) {
      return static_cast<unsigned char>(lhs[i]) < static_cast<unsigned char>(rhs[j]);
    }
    ++i;
    ++j;
  }
  return (lhs.size() - i) < (rhs.size() - j);
}

ObligationNetwork ObligationNetwork::create(std::vector<std::string> firm_labels,
                                            std::vector<Obligation> obligations,
                                            std::string currency) {
  std::vector<Issue> issues;

  std::vector<std::pair<std::string, FirmIndex>> index;
  index.reserve(firm_labels.size());
  for (FirmIndex i = 0; i < firm_labels.size(); ++i) index.emplace_back(firm_labels[i], i);
  std::sort(index.begin(), index.end());
  for (std::size_t k = 1; k < index.size(); ++k) {
    if (index[k].first == index[k - 1].first) {
      issues.push_back({0, "duplicate firm label '" + index[k].first + "'"});
    }
  }

  std::map<std::string, std::size_t> first_line_of_id;
  const std::size_t n = firm_labels.size();
  for (const Obligation& o : obligations) {
    auto where = [&](std::string what) {
      issues.push_back({o.line, "obligation '" + o.id + "': " + std::move(what)});
    };
    if (o.id.empty()) where("empty obligation id");
    auto [it, inserted] = first_line_of_id.emplace(o.id, o.line);
    if (!inserted) {
      std::ostringstream os;
      os << "duplicate obligation id";
      if (it->second != 0) os << " (first seen on line " << it->second << ")";
      where(os.str());
    }
    if (o.debtor >= n || o.creditor >= n) {
      where("references an unknown firm");
      continue;
    }
    if (o.debtor == o.creditor) where("self-loop: debtor and creditor are both '" + firm_labels[o.debtor] + "'");
    if (!o.amount.is_positive()) {
      std::ostringstream os;
      os << "amount must be positive, got " << o.amount;
      where(os.str());
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  ObligationNetwork net;
  net.labels_ = std::move(firm_labels);
  net.obligations_ = std::move(obligations);
  net.currency_ = std::move(currency);
  net.label_index_ = std::move(index);
  return net;
}

std::optional<FirmIndex> ObligationNetwork::find_firm(std::string_view label) const {
  auto it = std::lower_bound(label_index_.begin(), label_index_.end(), label,
                             [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == label_index_.end() || it->first != label) return std::nullopt;
  return it->second;
}

NetworkBuilder& NetworkBuilder::add_firm(std::string label) {
  firms_.push_back(std::move(label));
  return *this;
}

NetworkBuilder& NetworkBuilder::add_obligation(std::string id, std::string debtor, std::string creditor,
                                               std::int64_t minor_units, std::size_t line) {
  obligations_.push_back({std::move(id), std::move(debtor), std::move(creditor), minor_units, line});
  return *this;
}

NetworkBuilder& NetworkBuilder::set_currency(std::string currency) {
  currency_ = std::move(currency);
  return *this;
}

ObligationNetwork NetworkBuilder::build() const {
  std::set<std::string> unique(firms_.begin(), firms_.end());
  for (const PendingObligation& o : obligations_) {
    unique.insert(o.debtor);
    unique.insert(o.creditor);
  }
  std::vector<std::string> labels(unique.begin(), unique.end());
  std::sort(labels.begin(), labels.end(),
            [](const std::string& a, const std::string& b) { return natural_less(a, b); });

  std::map<std::string, FirmIndex> index;
  for (FirmIndex i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);

  std::vector<Obligation> obligations;
  obligations.reserve(obligations_.size());
  for (const PendingObligation& o : obligations_) {
    obligations.push_back({o.id, index.at(o.debtor), index.at(o.creditor), Amount{o.minor_units}, o.line});
  }
  return ObligationNetwork::create(std::move(labels), std::move(obligations), currency_);
}

LiabilityMatrix build_liability_matrix(const ObligationNetwork& network) {
  std::vector<MatrixEntry> cells;
  cells.reserve(network.obligations().size());
  for (const Obligation& o : network.obligations()) cells.push_back({o.debtor, o.creditor, o.amount});
  return LiabilityMatrix::from_entries(network.firm_count(), std::move(cells));
}

Amount network_weight(const ObligationNetwork& network) {
  Amount total;
  for (const Obligation& o : network.obligations()) total += o.amount;
  return total;
}

}  // namespace tetris
