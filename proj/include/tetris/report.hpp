#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tetris/clearing.hpp"
#include "tetris/liquidity.hpp"
#include "tetris/obligation_network.hpp"

namespace tetris {

struct ReportOptions {
  bool emit_graph = false;
};

// Renderers. Output depends only on the inputs: fixed ordering, no
// timestamps, so identical runs are byte-identical.

/// `key: value` lines with w(L), w(T), mu(M), NID and the cycle count.
[[nodiscard]] std::string render_summary(const ClearingResult& result, const ObligationNetwork& network);
/// Obligation-level set-off lines, one block of rows per firm.
[[nodiscard]] std::string render_notices(const ClearingResult& result, const ObligationNetwork& network);
/// Per-firm debit/credit totals of the notices.
[[nodiscard]] std::string render_notice_totals(const ClearingResult& result, const ObligationNetwork& network);
[[nodiscard]] std::string render_cycles(const std::vector<CycleSettlement>& cycles,
                                        const std::vector<std::string>& node_labels);
/// Remaining obligations in the input schema; re-ingesting it yields M.
[[nodiscard]] std::string render_residual(const ObligationNetwork& network, const std::vector<Amount>& discharged);
/// Graphviz digraph: firms as nodes, obligations as labelled edges. Fully
/// discharged edges are green, partially discharged ones dashed orange.
[[nodiscard]] std::string render_dot(const ObligationNetwork& network, const std::vector<Amount>& discharged);

/// Diagnostics of an obligation network: debt, credit, net positions, NID.
[[nodiscard]] std::string render_analysis(const ObligationNetwork& network);

[[nodiscard]] std::string render_extended_summary(const ExtendedRun& run, const ObligationNetwork& network);
[[nodiscard]] std::string render_liquidity_ledger(const ExtendedRun& run, const ObligationNetwork& network);
[[nodiscard]] std::string render_shortfalls(const FeasibilityReport& report, const ObligationNetwork& network);
[[nodiscard]] std::string render_discharges(const ObligationNetwork& network, const std::vector<Amount>& discharged);

/// Writes summary.txt, cycles.csv, residual.csv, notices.csv and
/// notice_totals.csv (only when there are notices) and graph.dot (when
/// requested). Returns the written paths in creation order.
std::vector<std::filesystem::path> emit_report(const ClearingResult& result, const ObligationNetwork& network,
                                               const std::filesystem::path& dir, const ReportOptions& options = {});

/// Writes summary.txt, liquidity.csv, discharges.csv, residual.csv,
/// cycles.csv, shortfalls.csv (when infeasible) and graph.dot (on request).
std::vector<std::filesystem::path> emit_extended_report(const ExtendedRun& run, const ObligationNetwork& network,
                                                        const std::filesystem::path& dir,
                                                        const ReportOptions& options = {});

/// Labels of the extended node set: firm labels then v0, v_hin, v_hout,
/// v_ain, v_aout.
[[nodiscard]] std::vector<std::string> extended_labels(const ObligationNetwork& network);

/// CSV field quoting when needed.
[[nodiscard]] std::string csv_field(const std::string& value);

}  // namespace tetris
