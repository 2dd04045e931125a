#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tetris/liquidity.hpp"
#include "tetris/obligation_network.hpp"

namespace tetris {

/// Obligations file: UTF-8 delimited text with a header row naming the
/// columns `obligation_id, debtor, creditor, amount[, currency]` (aliases
/// `id`, `debtor_label`, `creditor_label`, `amount_minor_units`). Amounts are
/// base-10 integers in minor units. Without an id column, ids are `row<N>`.
/// Blank lines and lines starting with '#' are ignored.
///
/// Returns the rows as a builder so other inputs can register more firms.
/// Throws ValidationError listing every offending line.
[[nodiscard]] NetworkBuilder parse_obligation_rows(std::istream& in);
[[nodiscard]] ObligationNetwork parse_obligations(std::istream& in);
[[nodiscard]] ObligationNetwork ingest_obligations(const std::filesystem::path& path);

struct LiquidityRow {
  std::string firm;
  Amount holdings;
  Amount approved_overdraft;
  Amount drawn_overdraft;
  std::size_t line = 0;
};

/// Liquidity file: a `# a_max=<amount>` directive, then a header
/// `firm, holdings, approved_overdraft, drawn_overdraft` and one row per
/// firm. Firms absent from the file have no liquidity.
struct LiquidityTable {
  Amount facility_cap;
  std::vector<LiquidityRow> rows;
};

[[nodiscard]] LiquidityTable parse_liquidity(std::istream& in);

struct ExtendedInputs {
  ObligationNetwork network;
  LiquiditySources sources;
};

/// Firms that appear only in the liquidity file join the network as
/// isolated firms.
[[nodiscard]] ExtendedInputs combine_inputs(NetworkBuilder obligations, const LiquidityTable& liquidity);
[[nodiscard]] ExtendedInputs ingest_extended(const std::filesystem::path& obligations,
                                             const std::filesystem::path& liquidity);

/// Splits one delimited line, honouring double quotes ("" escapes a quote).
/// Unquoted fields are trimmed. Throws ValidationError on an unterminated
/// quote.
[[nodiscard]] std::vector<std::string> split_fields(const std::string& line, std::size_t line_number);

}  // namespace tetris
