#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tetris/errors.hpp"
#include "tetris/liquidity.hpp"

using namespace tetris;

namespace {

LiquiditySources sources(std::initializer_list<std::int64_t> h, std::initializer_list<std::int64_t> approved,
                         std::initializer_list<std::int64_t> drawn, std::int64_t cap) {
  return {amounts(h), amounts(approved), amounts(drawn), Amount{cap}};
}

}  // namespace

TEST_CASE("check_balanced_feasibility") {
  SUBCASE("exact cover from holdings") {
    const auto r = check_balanced_feasibility(NetPositionVector(amounts({-1, -1, 0, 2})),
                                              sources({1, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, 0));
    CHECK(r.feasible);
    CHECK(r.shortfalls.empty());
  }
  SUBCASE("one firm short") {
    const auto r = check_balanced_feasibility(NetPositionVector(amounts({-2, 2})), sources({1, 0}, {0, 0}, {0, 0}, 0));
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.covers_every_firm);
    REQUIRE(r.shortfalls.size() == 1);
    CHECK(r.shortfalls[0] == Shortfall{0, Amount{2}, Amount{1}, Amount{1}});
  }
  SUBCASE("facility cap exceeded") {
    const auto r =
        check_balanced_feasibility(NetPositionVector(amounts({-1, -1, 2})), sources({0, 0, 0}, {1, 1, 0}, {0, 0, 0}, 1));
    CHECK_FALSE(r.feasible);
    CHECK(r.covers_every_firm);
    CHECK_FALSE(r.within_facility_cap);
    CHECK(r.total_available_credit == Amount{2});
  }
  SUBCASE("drawn overdraft reduces available credit") {
    const auto s = sources({0, 0}, {5, 3}, {2, 3}, 10);
    CHECK(s.available_credit() == amounts({3, 0}));
    CHECK_THROWS_AS(sources({0}, {1}, {2}, 0).validate(1), PreconditionError);
  }
}

TEST_CASE("build_extended_matrix") {
  SUBCASE("chain with holdings at the first firm") {
    const auto ext = build_extended_matrix(fixtures::chain_matrix(), sources({1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, 0));
    const auto& m = ext.matrix();
    CHECK(m.size() == 9);
    CHECK(ext.firm_block() == fixtures::chain_matrix());
    CHECK(m.at(ext.hub(), ext.holdings_in()) == Amount{1});
    CHECK(m.at(ext.holdings_out(), ext.hub()) == Amount{1});
    CHECK(m.at(ext.holdings_in(), 0) == Amount{1});
    CHECK(m.at(3, ext.holdings_out()) == Amount{1});
    CHECK(m.at(ext.hub(), ext.overdraft_in()).is_zero());
    CHECK(ext.role(ext.hub()) == NodeRole::kHub);
    CHECK(ext.role(2) == NodeRole::kFirm);
    CHECK(ext.role(ext.overdraft_out()) == NodeRole::kOverdraftOut);
  }
  SUBCASE("no sources") {
    const auto ext = build_extended_matrix(fixtures::four_firms_matrix(), LiquiditySources::none(4));
    const auto& m = ext.matrix();
    for (const auto& e : m.entries()) {
      if (ext.is_firm(e.debtor) && ext.is_firm(e.creditor)) continue;
      const bool hub_arc = (e.debtor == ext.hub() && e.creditor == ext.holdings_in()) ||
                           (e.debtor == ext.holdings_out() && e.creditor == ext.hub());
      CHECK(hub_arc);
    }
    CHECK(m.at(ext.hub(), ext.holdings_in()) == Amount{2});
    CHECK(m.at(ext.holdings_out(), ext.hub()) == Amount{2});
    const auto r = optimize_extended(ext);
    CHECK(r.holdings_used.is_zero());
    CHECK(r.discharged_weight == Amount{6});
  }
  SUBCASE("a zero facility cap blocks overdraft") {
    const auto ext = build_extended_matrix(fixtures::chain_matrix(), sources({0, 0, 0, 0}, {3, 0, 0, 0}, {0, 0, 0, 0}, 0));
    CHECK(ext.matrix().at(ext.hub(), ext.overdraft_in()).is_zero());
    CHECK(ext.matrix().at(ext.overdraft_in(), 0) == Amount{3});
    const auto r = optimize_extended(ext);
    CHECK(r.overdraft_drawn.is_zero());
    CHECK(r.discharged_weight.is_zero());
  }
  SUBCASE("drawn above approved") {
    CHECK_THROWS_AS((void)build_extended_matrix(fixtures::chain_matrix(),
                                                sources({0, 0, 0, 0}, {1, 0, 0, 0}, {2, 0, 0, 0}, 5)),
                    PreconditionError);
  }
}

TEST_CASE("optimize_extended") {
  SUBCASE("chain cleared by holdings, last firm credited") {
    const auto r =
        optimize_extended(build_extended_matrix(fixtures::chain_matrix(), sources({1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, 0)));
    CHECK(r.discharged == fixtures::chain_matrix());
    CHECK(r.discharged_weight == Amount{3});
    CHECK(r.movements[0] == LiquidityMovement{Amount{1}, Amount{}, Amount{}, Amount{}});
    CHECK(r.movements[3] == LiquidityMovement{Amount{}, Amount{1}, Amount{}, Amount{}});
    CHECK(r.movements[1] == LiquidityMovement{});
    CHECK(r.holdings_used == Amount{1});
    CHECK(r.paid_out == Amount{1});
  }
  SUBCASE("cycle needs no liquidity") {
    const auto r = optimize_extended(build_extended_matrix(fixtures::cycle_matrix(), LiquiditySources::none(4)));
    CHECK(r.discharged == fixtures::cycle_matrix());
    for (const auto& m : r.movements) CHECK(m == LiquidityMovement{});
  }
  SUBCASE("chain without sources deadlocks") {
    const auto r = optimize_extended(build_extended_matrix(fixtures::chain_matrix(), LiquiditySources::none(4)));
    CHECK(r.discharged.is_zero());
  }
  SUBCASE("overdraft draw and repayment") {
    // Firm 1 draws 1 on its facility; firm 4 had 1 drawn and repays it.
    const auto r = optimize_extended(
        build_extended_matrix(fixtures::chain_matrix(), sources({0, 0, 0, 0}, {2, 0, 0, 1}, {0, 0, 0, 1}, 2)));
    CHECK(r.discharged == fixtures::chain_matrix());
    CHECK(r.movements[0].overdraft_draw == Amount{1});
    CHECK(r.overdraft_drawn == Amount{1});
    CHECK(r.movements[3].repayment + r.movements[3].account_credit == Amount{1});
  }
}

TEST_CASE("clear_extended over a network") {
  const auto run = clear_extended(fixtures::chain(), sources({1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, 0));
  CHECK(run.feasibility.feasible);
  CHECK(run.trade_credit_cleared_weight.is_zero());
  CHECK(run.discharged == amounts({1, 1, 1}));
}

TEST_CASE("property: liquidity never clears less and respects every capacity") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto inst = oracle::random_network(seed, {.max_firms = 5});
    const auto src = oracle::random_sources(seed, inst.firms);
    CAPTURE(inst.describe());
    const auto run = clear_extended(inst.network, src);
    const auto& r = run.result;
    CHECK(r.discharged_weight >= run.trade_credit_cleared_weight);
    CHECK(r.discharged.dominated_by(inst.matrix));
    const auto credit = src.available_credit();
    Amount drawn;
    for (std::size_t i = 0; i < inst.firms; ++i) {
      CHECK(r.movements[i].account_debit <= src.holdings[i]);
      CHECK(r.movements[i].overdraft_draw <= credit[i]);
      CHECK(r.movements[i].repayment <= src.drawn_overdraft[i]);
      drawn += r.movements[i].overdraft_draw;
    }
    CHECK(drawn <= src.facility_cap);
    CHECK(drawn == r.overdraft_drawn);
    if (run.feasibility.feasible) CHECK(r.discharged == inst.matrix);
    // Net of bank movements, every firm's position is covered.
    const NetPositionVector b = net_positions(r.discharged);
    for (std::size_t i = 0; i < inst.firms; ++i) {
      const auto& m = r.movements[i];
      CHECK(b[i] + m.account_debit + m.overdraft_draw - m.account_credit - m.repayment == Amount{});
    }
  }
}

TEST_CASE("property: more holdings never clear less") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto inst = oracle::random_network(seed, {.max_firms = 5});
    CAPTURE(inst.describe());
    auto src = oracle::random_sources(seed, inst.firms);
    Amount previous = optimize_extended(build_extended_matrix(inst.matrix, src)).discharged_weight;
    for (std::size_t i = 0; i < inst.firms; ++i) {
      src.holdings[i] += Amount{1};
      const Amount now = optimize_extended(build_extended_matrix(inst.matrix, src)).discharged_weight;
      CHECK(now >= previous);
      previous = now;
    }
  }
}
