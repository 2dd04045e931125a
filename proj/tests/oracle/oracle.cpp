#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace oracle {
namespace {

struct Arc {
  std::size_t from;
  std::size_t to;
  std::int64_t capacity;
};

std::vector<Arc> arcs_of(const tetris::LiabilityMatrix& liabilities) {
  std::vector<Arc> arcs;
  for (const auto& e : liabilities.entries()) arcs.push_back({e.debtor, e.creditor, e.amount.minor_units()});
  return arcs;
}

// credit minus debt, computed directly from the arcs.
std::vector<std::int64_t> divergence(std::size_t n, const std::vector<Arc>& arcs) {
  std::vector<std::int64_t> div(n, 0);
  for (const Arc& a : arcs) {
    div[a.to] += a.capacity;
    div[a.from] -= a.capacity;
  }
  return div;
}

class MinGrandsum {
 public:
  explicit MinGrandsum(const tetris::LiabilityMatrix& liabilities)
      : n_(liabilities.size()), arcs_(arcs_of(liabilities)), target_(divergence(n_, arcs_)) {
    // Capacity still to come into / out of each node from arc k onwards.
    rest_in_.assign(arcs_.size() + 1, std::vector<std::int64_t>(n_, 0));
    rest_out_.assign(arcs_.size() + 1, std::vector<std::int64_t>(n_, 0));
    for (std::size_t k = arcs_.size(); k-- > 0;) {
      rest_in_[k] = rest_in_[k + 1];
      rest_out_[k] = rest_out_[k + 1];
      rest_in_[k][arcs_[k].to] += arcs_[k].capacity;
      rest_out_[k][arcs_[k].from] += arcs_[k].capacity;
    }
    memo_.resize(arcs_.size() + 1);
  }

  std::int64_t solve() {
    std::vector<std::int64_t> div(n_, 0);
    const std::int64_t best = search(0, div);
    if (best == kInfeasible) throw std::logic_error("oracle: no feasible residual matrix");
    return best;
  }

 private:
  static constexpr std::int64_t kInfeasible = std::numeric_limits<std::int64_t>::max();

  bool reachable(std::size_t k, std::size_t v, std::int64_t div) const {
    const std::int64_t gap = target_[v] - div;
    return gap >= -rest_out_[k][v] && gap <= rest_in_[k][v];
  }

  std::int64_t search(std::size_t k, std::vector<std::int64_t>& div) {
    if (k == arcs_.size()) return div == target_ ? 0 : kInfeasible;
    auto& table = memo_[k];
    if (auto it = table.find(div); it != table.end()) return it->second;
    const Arc& a = arcs_[k];
    std::int64_t best = kInfeasible;
    for (std::int64_t x = 0; x <= a.capacity; ++x) {
      div[a.from] -= x;
      div[a.to] += x;
      if (reachable(k + 1, a.from, div[a.from]) && reachable(k + 1, a.to, div[a.to])) {
        const std::int64_t rest = search(k + 1, div);
        if (rest != kInfeasible) best = std::min(best, x + rest);
      }
      div[a.from] += x;
      div[a.to] -= x;
    }
    table.emplace(div, best);
    return best;
  }

  std::size_t n_;
  std::vector<Arc> arcs_;
  std::vector<std::int64_t> target_;
  std::vector<std::vector<std::int64_t>> rest_in_;
  std::vector<std::vector<std::int64_t>> rest_out_;
  std::vector<std::map<std::vector<std::int64_t>, std::int64_t>> memo_;
};

class MaxCycleWeight {
 public:
  explicit MaxCycleWeight(const tetris::LiabilityMatrix& liabilities) : n_(liabilities.size()) {
    state_.assign(n_ * n_, 0);
    for (const auto& e : liabilities.entries()) {
      state_[e.debtor * n_ + e.creditor] = static_cast<char>(e.amount.minor_units());
    }
    enumerate_cycles();
  }

  std::int64_t solve() { return search(state_); }

 private:
  // Every simple cycle of the support, listed once with its smallest node
  // first, as cell indices.
  void enumerate_cycles() {
    std::vector<std::size_t> path;
    std::vector<bool> on_path(n_, false);
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t start, std::size_t v) {
      for (std::size_t w = start; w < n_; ++w) {
        if (state_[v * n_ + w] == 0) continue;
        if (w == start) {
          std::vector<std::size_t> cells;
          for (std::size_t k = 0; k + 1 < path.size(); ++k) cells.push_back(path[k] * n_ + path[k + 1]);
          cells.push_back(v * n_ + start);
          cycles_.push_back(std::move(cells));
        } else if (!on_path[w]) {
          on_path[w] = true;
          path.push_back(w);
          extend(start, w);
          path.pop_back();
          on_path[w] = false;
        }
      }
    };
    for (std::size_t s = 0; s < n_; ++s) {
      path = {s};
      on_path[s] = true;
      extend(s, s);
      on_path[s] = false;
    }
  }

  // w(R) - ||b-(R)|| bounds what any sequence of eliminations can remove.
  std::int64_t upper_bound(const std::string& r) const {
    std::int64_t weight = 0;
    std::vector<std::int64_t> div(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const std::int64_t x = r[i * n_ + j];
        weight += x;
        div[j] += x;
        div[i] -= x;
      }
    }
    std::int64_t deficit = 0;
    for (std::int64_t d : div) deficit += d < 0 ? -d : 0;
    return weight - deficit;
  }

  std::int64_t search(std::string& r) {
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
    const std::int64_t bound = upper_bound(r);
    std::int64_t best = 0;
    for (const auto& cycle : cycles_) {
      if (best == bound) break;
      const bool open = std::all_of(cycle.begin(), cycle.end(), [&](std::size_t c) { return r[c] > 0; });
      if (!open) continue;
      for (std::size_t c : cycle) --r[c];
      best = std::max(best, static_cast<std::int64_t>(cycle.size()) + search(r));
      for (std::size_t c : cycle) ++r[c];
    }
    memo_.emplace(r, best);
    return best;
  }

  std::size_t n_;
  std::string state_;
  std::vector<std::vector<std::size_t>> cycles_;
  std::unordered_map<std::string, std::int64_t> memo_;
};

}  // namespace

void require_small(const tetris::LiabilityMatrix& liabilities) {
  if (liabilities.size() > kMaxFirms) throw std::invalid_argument("oracle: more than 6 firms");
  for (const auto& e : liabilities.entries()) {
    if (e.amount.minor_units() > kMaxEntry) throw std::invalid_argument("oracle: entry above 4");
  }
}

std::int64_t brute_min_grandsum(const tetris::LiabilityMatrix& liabilities) {
  require_small(liabilities);
  return MinGrandsum(liabilities).solve();
}

std::int64_t brute_max_cycle_weight(const tetris::LiabilityMatrix& liabilities) {
  require_small(liabilities);
  return MaxCycleWeight(liabilities).solve();
}

std::string RandomNetwork::describe() const {
  std::ostringstream os;
  os << "seed=" << seed << " n=" << firms << " density=" << density << " L=[";
  for (const auto& e : matrix.entries()) os << ' ' << e.debtor << "->" << e.creditor << ':' << e.amount;
  os << " ]";
  return os.str();
}

RandomNetwork random_network(std::uint64_t seed, const GeneratorOptions& options) {
  std::mt19937_64 rng(seed);
  RandomNetwork out;
  out.seed = seed;
  out.firms = std::uniform_int_distribution<std::size_t>(options.min_firms, options.max_firms)(rng);
  out.density = std::uniform_real_distribution<double>(options.min_density, options.max_density)(rng);

  std::bernoulli_distribution present(out.density);
  std::uniform_int_distribution<std::int64_t> value(1, options.max_entry);
  std::bernoulli_distribution split(0.3);

  tetris::NetworkBuilder builder;
  for (std::size_t i = 1; i <= out.firms; ++i) builder.add_firm(std::to_string(i));
  std::size_t next_id = 1;
  auto add = [&](std::size_t i, std::size_t j, std::int64_t amount) {
    builder.add_obligation("o" + std::to_string(next_id++), std::to_string(i), std::to_string(j), amount);
  };
  for (std::size_t i = 1; i <= out.firms; ++i) {
    for (std::size_t j = 1; j <= out.firms; ++j) {
      if (i == j || !present(rng)) continue;
      const std::int64_t total = value(rng);
      if (total > 1 && split(rng)) {
        const std::int64_t first = std::uniform_int_distribution<std::int64_t>(1, total - 1)(rng);
        add(i, j, first);
        add(i, j, total - first);
      } else {
        add(i, j, total);
      }
    }
  }
  out.network = builder.build();
  out.matrix = tetris::build_liability_matrix(out.network);
  return out;
}

tetris::LiquiditySources random_sources(std::uint64_t seed, std::size_t firms, std::int64_t max_value) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::int64_t> value(0, max_value);
  auto sources = tetris::LiquiditySources::none(firms);
  std::int64_t available = 0;
  for (std::size_t i = 0; i < firms; ++i) {
    sources.holdings[i] = tetris::Amount{value(rng)};
    const std::int64_t approved = value(rng);
    const std::int64_t drawn = std::uniform_int_distribution<std::int64_t>(0, approved)(rng);
    sources.approved_overdraft[i] = tetris::Amount{approved};
    sources.drawn_overdraft[i] = tetris::Amount{drawn};
    available += approved - drawn;
  }
  sources.facility_cap = tetris::Amount{std::uniform_int_distribution<std::int64_t>(0, available + 1)(rng)};
  return sources;
}

}  // namespace oracle
