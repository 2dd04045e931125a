#pragma once

#include <string>
#include <vector>

#include "tetris/liability_matrix.hpp"
#include "tetris/obligation_network.hpp"

namespace fixtures {

// Six invoices over four firms; 1 owes 4 twice.
inline tetris::ObligationNetwork four_firms() {
  return tetris::NetworkBuilder{}
      .add_obligation("e1", "1", "2", 1)
      .add_obligation("e2", "1", "4", 1)
      .add_obligation("e3", "1", "4", 2)
      .add_obligation("e4", "2", "3", 2)
      .add_obligation("e5", "3", "1", 3)
      .add_obligation("e6", "4", "3", 1)
      .build();
}

inline tetris::ObligationNetwork chain() {
  return tetris::NetworkBuilder{}
      .add_obligation("c1", "1", "2", 1)
      .add_obligation("c2", "2", "3", 1)
      .add_obligation("c3", "3", "4", 1)
      .build();
}

inline tetris::ObligationNetwork cycle() {
  return tetris::NetworkBuilder{}
      .add_obligation("y1", "1", "2", 1)
      .add_obligation("y2", "2", "3", 1)
      .add_obligation("y3", "3", "4", 1)
      .add_obligation("y4", "4", "1", 1)
      .build();
}

// The chain with a 2 -> 3 -> 5 -> 2 loop hanging off it; 2 -> 3 carries both.
inline tetris::ObligationNetwork chain_cycle() {
  return tetris::NetworkBuilder{}
      .add_obligation("k1", "1", "2", 1)
      .add_obligation("k2", "2", "3", 2)
      .add_obligation("k3", "3", "4", 1)
      .add_obligation("k4", "3", "5", 1)
      .add_obligation("k5", "5", "2", 1)
      .build();
}

inline tetris::LiabilityMatrix four_firms_matrix() {
  return tetris::LiabilityMatrix::from_dense({{0, 1, 0, 3}, {0, 0, 2, 0}, {3, 0, 0, 0}, {0, 0, 1, 0}});
}

inline tetris::LiabilityMatrix chain_matrix() {
  return tetris::LiabilityMatrix::from_dense({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
}

inline tetris::LiabilityMatrix cycle_matrix() {
  return tetris::LiabilityMatrix::from_dense({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}});
}

inline tetris::LiabilityMatrix chain_cycle_matrix() {
  return tetris::LiabilityMatrix::from_dense(
      {{0, 1, 0, 0, 0}, {0, 0, 2, 0, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
}

}  // namespace fixtures
