#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tetris/errors.hpp"
#include "tetris/flow_solver.hpp"

using namespace tetris;

namespace {

FlowSolution solve(const LiabilityMatrix& L) { return solve_mcf(build_mcf_instance(L, net_positions(L))); }

std::vector<FlowArc> arcs_between(const FlowNetwork& net, std::size_t first, std::size_t last) {
  return {net.arcs.begin() + static_cast<std::ptrdiff_t>(first), net.arcs.begin() + static_cast<std::ptrdiff_t>(last)};
}

}  // namespace

TEST_CASE("build_mcf_instance") {
  SUBCASE("four firms") {
    const FlowNetwork net = build_mcf_instance(fixtures::four_firms_matrix(), net_positions(fixtures::four_firms_matrix()));
    CHECK(net.firm_count == 4);
    CHECK(net.interior_arc_count == 5);
    CHECK(net.arcs.size() == 8);
    CHECK(net.required_flow == Amount{2});
    const auto st = arcs_between(net, 5, 8);
    CHECK(st[0] == FlowArc{4, 0, Amount{1}, 0});
    CHECK(st[1] == FlowArc{4, 1, Amount{1}, 0});
    CHECK(st[2] == FlowArc{3, 5, Amount{2}, 0});
    for (std::size_t k = 0; k < 5; ++k) CHECK(net.arcs[k].cost == 1);
  }
  SUBCASE("balanced cycle") {
    const FlowNetwork net = build_mcf_instance(fixtures::cycle_matrix(), net_positions(fixtures::cycle_matrix()));
    CHECK(net.arcs.size() == net.interior_arc_count);
    CHECK(net.required_flow.is_zero());
  }
  SUBCASE("chain") {
    const FlowNetwork net = build_mcf_instance(fixtures::chain_matrix(), net_positions(fixtures::chain_matrix()));
    CHECK(net.arcs.size() == 5);
    CHECK(net.arcs[3] == FlowArc{net.source(), 0, Amount{1}, 0});
    CHECK(net.arcs[4] == FlowArc{3, net.sink(), Amount{1}, 0});
    CHECK(net.required_flow == Amount{1});
  }
  SUBCASE("inconsistent net positions") {
    CHECK_THROWS_AS((void)build_mcf_instance(fixtures::chain_matrix(), NetPositionVector(amounts({0, 0, 0, 0}))),
                    PreconditionError);
  }
}

TEST_CASE("solve_mcf") {
  SUBCASE("four firms") {
    const FlowSolution s = solve(fixtures::four_firms_matrix());
    CHECK(s.total_flow == Amount{2});
    CHECK(s.total_cost == 4);
    CHECK(s.total_cost == oracle::brute_min_grandsum(fixtures::four_firms_matrix()));
    CHECK(s.flows == LiabilityMatrix::from_dense({{0, 0, 0, 2}, {0, 0, 1, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}}));
  }
  SUBCASE("pure cycle") {
    const FlowSolution s = solve(fixtures::cycle_matrix());
    CHECK(s.total_flow.is_zero());
    CHECK(s.flows.is_zero());
  }
  SUBCASE("chain is forced") {
    const FlowSolution s = solve(fixtures::chain_matrix());
    CHECK(s.flows == fixtures::chain_matrix());
    CHECK(s.total_cost == 3);
  }
  SUBCASE("cost override changes the chosen optimum") {
    // One unit must reach firm 2 from firm 0: directly, or via firm 1.
    const auto L = LiabilityMatrix::from_dense({{0, 1, 1}, {0, 0, 1}, {1, 0, 0}});
    const FlowSolution plain = solve(L);
    CHECK(plain.flows == LiabilityMatrix::from_entries(3, {{0, 2, Amount{1}}}));
    const FlowNetwork net =
        build_mcf_instance(L, net_positions(L), [](FirmIndex i, FirmIndex j) { return i == 0 && j == 2 ? 5 : 1; });
    const FlowSolution costly = solve_mcf(net);
    CHECK(costly.total_cost == 2);
    CHECK(costly.flows == LiabilityMatrix::from_entries(3, {{0, 1, Amount{1}}, {1, 2, Amount{1}}}));
  }
}

TEST_CASE("is_acyclic") {
  CHECK(is_acyclic(fixtures::chain_matrix()));
  CHECK_FALSE(is_acyclic(fixtures::cycle_matrix()));
  CHECK(is_acyclic(solve(fixtures::four_firms_matrix()).flows));
  CHECK(is_acyclic(LiabilityMatrix(0)));
}

TEST_CASE("property: optimal, conservative, acyclic") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto inst = oracle::random_network(seed);
    CAPTURE(inst.describe());
    const FlowSolution s = solve(inst.matrix);
    CHECK(s.total_cost == oracle::brute_min_grandsum(inst.matrix));
    CHECK(s.total_cost == s.flows.grandsum().minor_units());
    CHECK(net_positions(s.flows) == net_positions(inst.matrix));
    CHECK(s.flows.dominated_by(inst.matrix));
    CHECK(is_acyclic(s.flows));
  }
}

TEST_CASE("property: deterministic") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto inst = oracle::random_network(seed, {.max_firms = 30, .max_density = 0.3, .max_entry = 100});
    CAPTURE(inst.describe());
    CHECK(solve(inst.matrix) == solve(inst.matrix));
  }
}

TEST_CASE("property: scaling covariance") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = oracle::random_network(seed, {.max_firms = 12, .max_entry = 9});
    CAPTURE(inst.describe());
    const FlowSolution base = solve(inst.matrix);
    for (std::int64_t k : {2, 7}) {
      const FlowSolution scaled = solve(inst.matrix.scaled(k));
      CHECK(scaled.total_cost == k * base.total_cost);
      CHECK(scaled.flows == base.flows.scaled(k));
    }
  }
}
