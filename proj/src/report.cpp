#include "tetris/report.hpp"

#include <fstream>
#include <sstream>

#include "tetris/errors.hpp"
#include "tetris/flow_solver.hpp"
#include "tetris/positions.hpp"

namespace tetris {
namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::filesystem::path write_file(const std::filesystem::path& dir, const char* name, const std::string& content) {
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot create report file", path, std::make_error_code(std::errc::io_error));
  out << content;
  if (!out) throw std::filesystem::filesystem_error("cannot write report file", path, std::make_error_code(std::errc::io_error));
  return path;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string residual_header(const ObligationNetwork& network) {
  return network.currency().empty() ? "obligation_id,debtor,creditor,amount\n"
                                    : "obligation_id,debtor,creditor,amount,currency\n";
}

}  // namespace

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos && (value.empty() || (value.front() != ' ' && value.back() != ' '))) {
    return value;
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_summary(const ClearingResult& r, const ObligationNetwork& network) {
  std::ostringstream os;
  os << "mode: clear\n"
     << "firms: " << network.firm_count() << "\n"
     << "obligations: " << network.obligations().size() << "\n"
     << "currency: " << network.currency() << "\n"
     << "original_weight: " << r.original_weight << "\n"
     << "cleared_weight: " << r.cleared_weight << "\n"
     << "residual_weight: " << r.residual_weight() << "\n"
     << "nid: " << r.nid << "\n"
     << "cycle_count: " << r.cycles.size() << "\n"
     << "notice_count: " << r.notices.size() << "\n"
     << "gridlock_resolved: " << yes_no(r.gridlock()) << "\n";
  return os.str();
}

std::string render_notices(const ClearingResult& r, const ObligationNetwork& network) {
  std::ostringstream os;
  os << "firm,direction,counterparty,obligation_id,set_off,remaining\n";
  const auto obligations = network.obligations();
  for (const SetOffNotice& n : r.notices) {
    const std::string firm = csv_field(network.label(n.firm));
    for (const DischargeLine& l : n.payables) {
      const Obligation& o = obligations[l.obligation];
      os << firm << ",payable," << csv_field(network.label(o.creditor)) << "," << csv_field(o.id) << ","
         << l.discharged << "," << l.remaining << "\n";
    }
    for (const DischargeLine& l : n.receivables) {
      const Obligation& o = obligations[l.obligation];
      os << firm << ",receivable," << csv_field(network.label(o.debtor)) << "," << csv_field(o.id) << ","
         << l.discharged << "," << l.remaining << "\n";
    }
  }
  return os.str();
}

std::string render_notice_totals(const ClearingResult& r, const ObligationNetwork& network) {
  std::ostringstream os;
  os << "firm,total_debit,total_credit\n";
  for (const SetOffNotice& n : r.notices) {
    os << csv_field(network.label(n.firm)) << "," << n.total_debit << "," << n.total_credit << "\n";
  }
  return os.str();
}

std::string render_cycles(const std::vector<CycleSettlement>& cycles, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "cycle,amount,length,nodes\n";
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    std::string nodes;
    for (std::size_t i = 0; i < cycles[k].nodes.size(); ++i) {
      if (i) nodes += '>';
      nodes += labels.at(cycles[k].nodes[i]);
    }
    os << k + 1 << "," << cycles[k].amount << "," << cycles[k].nodes.size() << "," << csv_field(nodes) << "\n";
  }
  return os.str();
}

std::string render_residual(const ObligationNetwork& network, const std::vector<Amount>& discharged) {
  std::ostringstream os;
  os << residual_header(network);
  const auto obligations = network.obligations();
  for (std::size_t k = 0; k < obligations.size(); ++k) {
    const Obligation& o = obligations[k];
    const Amount left = o.amount - (k < discharged.size() ? discharged[k] : Amount{});
    if (left.is_zero()) continue;
    os << csv_field(o.id) << "," << csv_field(network.label(o.debtor)) << "," << csv_field(network.label(o.creditor))
       << "," << left;
    if (!network.currency().empty()) os << "," << csv_field(network.currency());
    os << "\n";
  }
  return os.str();
}

std::string render_discharges(const ObligationNetwork& network, const std::vector<Amount>& discharged) {
  std::ostringstream os;
  os << "obligation_id,debtor,creditor,discharged,remaining\n";
  const auto obligations = network.obligations();
  for (std::size_t k = 0; k < obligations.size(); ++k) {
    if (k >= discharged.size() || discharged[k].is_zero()) continue;
    const Obligation& o = obligations[k];
    os << csv_field(o.id) << "," << csv_field(network.label(o.debtor)) << "," << csv_field(network.label(o.creditor))
       << "," << discharged[k] << "," << (o.amount - discharged[k]) << "\n";
  }
  return os.str();
}

std::string render_dot(const ObligationNetwork& network, const std::vector<Amount>& discharged) {
  std::ostringstream os;
  os << "digraph obligations {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const std::string& label : network.firm_labels()) os << "  " << dot_quote(label) << ";\n";
  const auto obligations = network.obligations();
  for (std::size_t k = 0; k < obligations.size(); ++k) {
    const Obligation& o = obligations[k];
    const Amount d = k < discharged.size() ? discharged[k] : Amount{};
    std::ostringstream label;
    label << o.id << ": " << o.amount;
    os << "  " << dot_quote(network.label(o.debtor)) << " -> " << dot_quote(network.label(o.creditor)) << " [label=";
    if (d == o.amount) {
      os << dot_quote(label.str()) << ", color=\"forestgreen\", penwidth=2";
    } else if (d.is_positive()) {
      label << " (" << d << " cleared)";
      os << dot_quote(label.str()) << ", color=\"darkorange\", style=\"dashed\"";
    } else {
      os << dot_quote(label.str());
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string render_analysis(const ObligationNetwork& network) {
  const LiabilityMatrix l = build_liability_matrix(network);
  const DebtCredit dc = debt_credit_vectors(l);
  const NetPositionVector b = net_positions(l);
  const LatticeSplit split = lattice_split(b.values());
  const std::vector<Amount> f = external_clearing_vector(b);

  std::ostringstream os;
  os << "firms: " << network.firm_count() << "\n"
     << "obligations: " << network.obligations().size() << "\n"
     << "weight: " << l.grandsum() << "\n"
     << "firm,debt,credit,net_position,b_plus,b_minus,external_flow\n";
  for (FirmIndex i = 0; i < network.firm_count(); ++i) {
    os << csv_field(network.label(i)) << "," << dc.debt[i] << "," << dc.credit[i] << "," << b[i] << ","
       << split.positive[i] << "," << split.negative[i] << "," << f[i] << "\n";
  }
  os << "sum_net_positions: " << sum(b.values()) << "\n"
     << "norm_b: " << l1_norm(b.values()) << "\n"
     << "norm_b_plus: " << sum(split.positive) << "\n"
     << "norm_b_minus: " << sum(split.negative) << "\n"
     << "nid: " << nid(b) << "\n"
     << "network_balanced: " << yes_no(b.is_zero()) << "\n"
     << "acyclic: " << yes_no(is_acyclic(l)) << "\n"
     << "balanced_with_external_flow: " << yes_no(is_balanced_system({l, f})) << "\n";
  return os.str();
}

std::vector<std::string> extended_labels(const ObligationNetwork& network) {
  std::vector<std::string> labels(network.firm_labels().begin(), network.firm_labels().end());
  for (const char* special : {"v0", "v_hin", "v_hout", "v_ain", "v_aout"}) labels.emplace_back(special);
  return labels;
}

std::string render_extended_summary(const ExtendedRun& run, const ObligationNetwork& network) {
  const ExtendedClearingResult& r = run.result;
  const LiabilityMatrix l = r.extended.firm_block();
  const Amount original = l.grandsum();
  std::ostringstream os;
  os << "mode: clear-extended\n"
     << "firms: " << network.firm_count() << "\n"
     << "obligations: " << network.obligations().size() << "\n"
     << "currency: " << network.currency() << "\n"
     << "original_weight: " << original << "\n"
     << "discharged_weight: " << r.discharged_weight << "\n"
     << "remaining_weight: " << (original - r.discharged_weight) << "\n"
     << "trade_credit_cleared_weight: " << run.trade_credit_cleared_weight << "\n"
     << "nid: " << nid(net_positions(l)) << "\n"
     << "feasible: " << yes_no(run.feasibility.feasible) << "\n"
     << "covers_every_firm: " << yes_no(run.feasibility.covers_every_firm) << "\n"
     << "within_facility_cap: " << yes_no(run.feasibility.within_facility_cap) << "\n"
     << "facility_cap: " << r.extended.sources().facility_cap << "\n"
     << "available_credit: " << run.feasibility.total_available_credit << "\n"
     << "holdings_used: " << r.holdings_used << "\n"
     << "overdraft_drawn: " << r.overdraft_drawn << "\n"
     << "overdraft_repaid: " << r.overdraft_repaid << "\n"
     << "paid_out: " << r.paid_out << "\n"
     << "cycle_count: " << r.cycles.size() << "\n";
  return os.str();
}

std::string render_liquidity_ledger(const ExtendedRun& run, const ObligationNetwork& network) {
  std::ostringstream os;
  os << "firm,account_debit,account_credit,overdraft_draw,repayment\n";
  for (FirmIndex i = 0; i < network.firm_count(); ++i) {
    const LiquidityMovement& m = run.result.movements[i];
    if (m == LiquidityMovement{}) continue;
    os << csv_field(network.label(i)) << "," << m.account_debit << "," << m.account_credit << ","
       << m.overdraft_draw << "," << m.repayment << "\n";
  }
  return os.str();
}

std::string render_shortfalls(const FeasibilityReport& report, const ObligationNetwork& network) {
  std::ostringstream os;
  os << "firm,needed,available,missing\n";
  for (const Shortfall& s : report.shortfalls) {
    os << csv_field(network.label(s.firm)) << "," << s.needed << "," << s.available << "," << s.missing << "\n";
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const ClearingResult& r, const ObligationNetwork& network,
                                               const std::filesystem::path& dir, const ReportOptions& options) {
  std::filesystem::create_directories(dir);
  const std::vector<std::string> labels(network.firm_labels().begin(), network.firm_labels().end());
  std::vector<std::filesystem::path> written;
  written.push_back(write_file(dir, "summary.txt", render_summary(r, network)));
  written.push_back(write_file(dir, "cycles.csv", render_cycles(r.cycles, labels)));
  written.push_back(write_file(dir, "residual.csv", render_residual(network, r.discharged)));
  if (!r.notices.empty()) {
    written.push_back(write_file(dir, "notices.csv", render_notices(r, network)));
    written.push_back(write_file(dir, "notice_totals.csv", render_notice_totals(r, network)));
  }
  if (options.emit_graph) written.push_back(write_file(dir, "graph.dot", render_dot(network, r.discharged)));
  return written;
}

std::vector<std::filesystem::path> emit_extended_report(const ExtendedRun& run, const ObligationNetwork& network,
                                                        const std::filesystem::path& dir,
                                                        const ReportOptions& options) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  written.push_back(write_file(dir, "summary.txt", render_extended_summary(run, network)));
  written.push_back(write_file(dir, "liquidity.csv", render_liquidity_ledger(run, network)));
  written.push_back(write_file(dir, "discharges.csv", render_discharges(network, run.discharged)));
  written.push_back(write_file(dir, "residual.csv", render_residual(network, run.discharged)));
  written.push_back(write_file(dir, "cycles.csv", render_cycles(run.result.cycles, extended_labels(network))));
  if (!run.feasibility.feasible) {
    written.push_back(write_file(dir, "shortfalls.csv", render_shortfalls(run.feasibility, network)));
  }
  if (options.emit_graph) written.push_back(write_file(dir, "graph.dot", render_dot(network, run.discharged)));
  return written;
}

}  // namespace tetris
