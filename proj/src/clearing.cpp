#include "tetris/clearing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "tetris/errors.hpp"

namespace tetris {
namespace {

void require(bool condition, const char* what) {
  if (!condition) throw InvariantViolation(std::string("clearing invariant failed: ") + what);
}

LiabilityMatrix matrix_of_cycles(std::size_t n, const std::vector<CycleSettlement>& cycles) {
  std::vector<MatrixEntry> cells;
  for (const CycleSettlement& c : cycles) {
    for (std::size_t k = 0; k < c.nodes.size(); ++k) {
      cells.push_back({c.nodes[k], c.nodes[(k + 1) % c.nodes.size()], c.amount});
    }
  }
  return LiabilityMatrix::from_entries(n, std::move(cells));
}

void verify(const ClearingResult& r) {
  const LiabilityMatrix& m = r.residual.flows;
  require(net_positions(m) == r.positions, "net positions of M differ from those of L");
  require(net_positions(r.tetris).is_zero(), "T is not balanced");
  require(r.residual.total_flow == r.nid, "residual flow differs from the NID");
  require(Amount{r.residual.total_cost} == m.grandsum(), "solver cost differs from the grandsum of M");
  require(r.original_weight == r.cleared_weight + m.grandsum(), "w(L) != w(T) + mu(M)");
  require(add(r.tetris, m) == r.liabilities, "T + M does not reconstruct L");
  require(is_acyclic(m), "M carries a flow cycle");
  require(matrix_of_cycles(r.tetris.size(), r.cycles) == r.tetris, "cycles do not reduce T to zero");
}

}  // namespace

std::vector<std::size_t> weak_components(const LiabilityMatrix& matrix) {
  std::vector<std::size_t> parent(matrix.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const MatrixEntry& e : matrix.entries()) {
    const std::size_t a = find(e.debtor);
    const std::size_t b = find(e.creditor);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> id(matrix.size());
  std::vector<std::size_t> root_id(matrix.size(), matrix.size());
  std::size_t next = 0;
  for (FirmIndex v = 0; v < matrix.size(); ++v) {
    const std::size_t r = find(v);
    if (root_id[r] == matrix.size()) root_id[r] = next++;
    id[v] = root_id[r];
  }
  return id;
}

FlowSolution solve_residual(const LiabilityMatrix& liabilities, bool split_components, const ArcCostFn& cost) {
  const NetPositionVector b = net_positions(liabilities);
  if (!split_components) return solve_mcf(build_mcf_instance(liabilities, b, cost));

  const std::vector<std::size_t> component = weak_components(liabilities);
  const std::size_t count =
      component.empty() ? 0 : *std::max_element(component.begin(), component.end()) + 1;
  std::vector<std::vector<FirmIndex>> members(count);
  std::vector<FirmIndex> local(liabilities.size());
  for (FirmIndex v = 0; v < liabilities.size(); ++v) {
    local[v] = members[component[v]].size();
    members[component[v]].push_back(v);
  }
  std::vector<std::vector<MatrixEntry>> cells(count);
  for (const MatrixEntry& e : liabilities.entries()) {
    cells[component[e.debtor]].push_back({local[e.debtor], local[e.creditor], e.amount});
  }

  FlowSolution total;
  std::vector<MatrixEntry> flows;
  for (std::size_t c = 0; c < count; ++c) {
    if (cells[c].empty()) continue;
    const std::vector<FirmIndex>& global = members[c];
    const LiabilityMatrix part = LiabilityMatrix::from_entries(global.size(), std::move(cells[c]));
    const NetPositionVector part_b = net_positions(part);
    if (part_b.is_zero()) continue;
    ArcCostFn part_cost;
    if (cost) part_cost = [&](FirmIndex i, FirmIndex j) { return cost(global[i], global[j]); };
    const FlowSolution s = solve_mcf(build_mcf_instance(part, part_b, part_cost));
    for (const MatrixEntry& e : s.flows.entries()) flows.push_back({global[e.debtor], global[e.creditor], e.amount});
    total.total_flow += s.total_flow;
    total.total_cost += s.total_cost;
  }
  total.flows = LiabilityMatrix::from_entries(liabilities.size(), std::move(flows));
  return total;
}

LiabilityMatrix tetris_subtract(const LiabilityMatrix& liabilities, const FlowSolution& residual) {
  LiabilityMatrix t = subtract(liabilities, residual.flows);
  if (!net_positions(t).is_zero()) {
    throw InvariantViolation("L - M is not balanced: M does not preserve the net positions of L");
  }
  return t;
}

std::vector<CycleSettlement> decompose_cycles(const LiabilityMatrix& tetris) {
  if (!net_positions(tetris).is_zero()) {
    throw PreconditionError("cycle decomposition requires a balanced matrix");
  }
  const std::size_t n = tetris.size();
  const std::span<const MatrixEntry> cells = tetris.entries();
  std::vector<Amount> left(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) left[k] = cells[k].amount;
  std::vector<std::size_t> cursor(n), row_end(n);
  for (FirmIndex v = 0; v < n; ++v) {
    const auto r = tetris.row(v);
    cursor[v] = static_cast<std::size_t>(r.data() - cells.data());
    row_end[v] = cursor[v] + r.size();
  }
  auto next_arc = [&](FirmIndex v) {
    while (cursor[v] < row_end[v] && left[cursor[v]].is_zero()) ++cursor[v];
    return cursor[v];
  };

  constexpr std::size_t kOffPath = static_cast<std::size_t>(-1);
  std::vector<std::size_t> on_path(n, kOffPath);
  std::vector<FirmIndex> path;
  std::vector<std::size_t> path_arcs;  // path_arcs[k] leaves path[k]
  std::vector<CycleSettlement> cycles;

  for (FirmIndex start = 0; start < n; ++start) {
    if (next_arc(start) == row_end[start]) continue;
    path.assign(1, start);
    path_arcs.clear();
    on_path[start] = 0;
    while (!path.empty()) {
      const FirmIndex u = path.back();
      const std::size_t arc = next_arc(u);
      if (arc == row_end[u]) {
        // Balance guarantees an exit from every node entered on a positive arc.
        if (path.size() != 1) throw InvariantViolation("cycle decomposition stranded at a non-start node");
        on_path[u] = kOffPath;
        path.clear();
        break;
      }
      const FirmIndex v = cells[arc].creditor;
      path_arcs.push_back(arc);
      if (on_path[v] == kOffPath) {
        on_path[v] = path.size();
        path.push_back(v);
        continue;
      }
      const std::size_t first = on_path[v];
      Amount bottleneck = left[path_arcs[first]];
      for (std::size_t k = first; k < path_arcs.size(); ++k) bottleneck = min(bottleneck, left[path_arcs[k]]);
      CycleSettlement cycle{{path.begin() + static_cast<std::ptrdiff_t>(first), path.end()}, bottleneck};
      for (std::size_t k = first; k < path_arcs.size(); ++k) left[path_arcs[k]] -= bottleneck;
      for (std::size_t k = first + 1; k < path.size(); ++k) on_path[path[k]] = kOffPath;
      path.resize(first + 1);
      path_arcs.resize(first);
      cycles.push_back(std::move(cycle));
    }
  }
  return cycles;
}

std::vector<Amount> allocate_discharges(const ObligationNetwork& network, const LiabilityMatrix& discharged,
                                        AllocationOrder order) {
  if (discharged.size() != network.firm_count()) {
    throw PreconditionError("discharge matrix size differs from the network's firm count");
  }
  const auto obligations = network.obligations();
  std::vector<std::size_t> sorted(obligations.size());
  std::iota(sorted.begin(), sorted.end(), std::size_t{0});
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    const Obligation& x = obligations[a];
    const Obligation& y = obligations[b];
    if (x.debtor != y.debtor) return x.debtor < y.debtor;
    if (x.creditor != y.creditor) return x.creditor < y.creditor;
    if (order == AllocationOrder::kById && x.id != y.id) return natural_less(x.id, y.id);
    return a < b;
  });

  std::vector<Amount> result(obligations.size());
  std::size_t k = 0;
  for (const MatrixEntry& e : discharged.entries()) {
    while (k < sorted.size() && std::pair(obligations[sorted[k]].debtor, obligations[sorted[k]].creditor) <
                                    std::pair(e.debtor, e.creditor)) {
      ++k;
    }
    Amount left = e.amount;
    for (; k < sorted.size() && obligations[sorted[k]].debtor == e.debtor &&
           obligations[sorted[k]].creditor == e.creditor;
         ++k) {
      const Amount take = min(left, obligations[sorted[k]].amount);
      result[sorted[k]] = take;
      left -= take;
    }
    if (left.is_positive()) {
      std::ostringstream os;
      os << "set-off of " << e.amount << " from '" << network.label(e.debtor) << "' to '"
         << network.label(e.creditor) << "' exceeds the obligations between them";
      throw InvariantViolation(os.str());
    }
  }
  return result;
}

std::vector<SetOffNotice> build_setoff_notices(const LiabilityMatrix& liabilities, const LiabilityMatrix& tetris,
                                               const ObligationNetwork& network, AllocationOrder order) {
  if (liabilities.size() != tetris.size() || tetris.size() != network.firm_count()) {
    throw PreconditionError("set-off notices: dimension mismatch");
  }
  if (!tetris.dominated_by(liabilities)) throw PreconditionError("set-off exceeds the liabilities");
  if (!net_positions(tetris).is_zero()) throw PreconditionError("set-off matrix is not balanced");

  const std::vector<Amount> discharged = allocate_discharges(network, tetris, order);
  const std::size_t n = tetris.size();
  std::vector<std::map<FirmIndex, CounterpartySetOff>> parties(n);
  for (const MatrixEntry& e : tetris.entries()) {
    auto& out = parties[e.debtor][e.creditor];
    out.counterparty = e.creditor;
    out.payable += e.amount;
    auto& in = parties[e.creditor][e.debtor];
    in.counterparty = e.debtor;
    in.receivable += e.amount;
  }

  std::vector<SetOffNotice> notices(n);
  const auto obligations = network.obligations();
  for (std::size_t k = 0; k < obligations.size(); ++k) {
    if (discharged[k].is_zero()) continue;
    const Obligation& o = obligations[k];
    const DischargeLine line{k, discharged[k], o.amount - discharged[k]};
    notices[o.debtor].payables.push_back(line);
    notices[o.creditor].receivables.push_back(line);
  }

  std::vector<SetOffNotice> out;
  for (FirmIndex f = 0; f < n; ++f) {
    if (parties[f].empty()) continue;
    SetOffNotice& notice = notices[f];
    notice.firm = f;
    for (const auto& [cp, s] : parties[f]) {
      notice.counterparties.push_back(s);
      notice.total_debit += s.payable;
      notice.total_credit += s.receivable;
    }
    if (notice.total_debit != notice.total_credit) {
      throw InvariantViolation("set-off notice for '" + network.label(f) + "' does not balance");
    }
    out.push_back(std::move(notice));
  }
  return out;
}

ClearingResult clear_matrix(const LiabilityMatrix& liabilities, const ClearingOptions& options) {
  ClearingResult r;
  r.liabilities = liabilities;
  r.positions = net_positions(liabilities);
  r.original_weight = liabilities.grandsum();
  r.nid = nid(r.positions);
  r.residual = solve_residual(liabilities, options.split_components);
  r.tetris = tetris_subtract(liabilities, r.residual);
  r.cycles = decompose_cycles(r.tetris);
  r.cleared_weight = r.tetris.grandsum();
  verify(r);
  return r;
}

ClearingResult clear(const ObligationNetwork& network, const ClearingOptions& options) {
  ClearingResult r = clear_matrix(build_liability_matrix(network), options);
  r.discharged = allocate_discharges(network, r.tetris, options.allocation);
  r.notices = build_setoff_notices(r.liabilities, r.tetris, network, options.allocation);
  return r;
}

}  // namespace tetris
