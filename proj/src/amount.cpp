#include "tetris/amount.hpp"

#include <ostream>

namespace tetris {

std::ostream& operator<<(std::ostream& os, Amount amount) { return os << amount.minor_units(); }

Amount sum(std::span<const Amount> values) {
  Amount total;
  for (Amount v : values) total += v;
  return total;
}

Amount l1_norm(std::span<const Amount> values) {
  Amount total;
  for (Amount v : values) total += v.is_negative() ? -v : v;
  return total;
}

std::vector<Amount> amounts(std::initializer_list<std::int64_t> values) {
  std::vector<Amount> out;
  out.reserve(values.size());
  for (std::int64_t v : values) out.emplace_back(v);
  return out;
}

}  // namespace tetris
