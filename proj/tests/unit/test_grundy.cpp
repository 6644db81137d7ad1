#include "doctest.h"
#include "naive.hpp"
#include "setnim/error.hpp"
#include "setnim/grundy.hpp"

using namespace setnim;

TEST_CASE("grundy values agree with the naive recursion") {
  CHECK(grundy(builtin_game("nim:2"), {1, 2}) == 3);
  CHECK(grundy(builtin_game("cn:3,2"), {1, 1, 1}) == 0);
  CHECK(grundy(builtin_game("h"), Position::zeros(6)) == 0);
  for (const char* id : {"cn:4,2", "pn:4,2", "moore:4,2"}) {
    const GameSpec g = builtin_game(id);
    naive::Solver ref(g);
    for (const Position& p : naive::box(4, 2)) {
      const unsigned expected = ref.grundy(p);
      CHECK(grundy(g, p) == expected);
      CHECK(grundy(g, p, {.memoize = false}) == expected);
      CHECK(grundy(g, p, {.canonicalize = true}) == expected);
    }
  }
}

TEST_CASE("nim grundy is xor") {
  const GameSpec g = builtin_game("nim:3");
  for (const Position& p : naive::box(3, 5)) CHECK(grundy(g, p) == static_cast<GrundyValue>(p[0] ^ p[1] ^ p[2]));
}

TEST_CASE("grundy table matches the recursion") {
  const GameSpec g = builtin_game("cn:5,2");
  const Box box = Box::cube(5, 2);
  const auto table = grundy_table(g, box);
  naive::Solver ref(g);
  for (std::size_t i = 0; i < box.size(); ++i) CHECK(table[i] == ref.grundy(box.position(i)));
}

TEST_CASE("outcome table and outcome") {
  for (const char* id : {"cn:5,2", "pn:5,3", "h"}) {
    const GameSpec g = builtin_game(id);
    const OutcomeTable table(g, Box::cube(g.size(), 2));
    naive::Solver ref(g);
    for (const Position& p : naive::box(g.size(), 2)) CHECK(table.is_p(p) == ref.is_p(p));
  }
  CHECK(outcome(builtin_game("cn:5,2"), {3, 8, 5, 9, 6}) == Outcome::N);
  CHECK(outcome(builtin_game("pn:5,3"), {4, 6, 0, 0, 10}) == Outcome::P);
  CHECK(outcome(builtin_game("h"), Position::zeros(6)) == Outcome::P);
}

TEST_CASE("P-positions in a box") {
  const auto cn42 = p_positions(builtin_game("cn:4,2"), 2);
  CHECK(cn42.size() == 9);
  for (const Position& p : cn42) CHECK((p[0] == p[2] && p[1] == p[3]));
  CHECK(p_positions(builtin_game("nim:1"), 5) == std::vector<Position>{{0}});
  CHECK(p_positions(builtin_game("pn:3,2"), 2) == std::vector<Position>{{0, 0, 0}, {1, 0, 1}, {2, 0, 2}});
}

TEST_CASE("brute-force winning move") {
  CHECK(brute_winning_move(builtin_game("cn:3,2"), {2, 1, 1}) == Move{1, 0, 0});
  CHECK_FALSE(brute_winning_move(builtin_game("cn:3,2"), {0, 0, 0}).has_value());
  CHECK_FALSE(brute_winning_move(builtin_game("nim:2"), {3, 3}).has_value());
  CHECK(brute_winning_move(builtin_game("nim:2"), {3, 1}) == Move{2, 0});
}

TEST_CASE("budget exhaustion is reported") {
  try {
    grundy(builtin_game("cn:5,2"), {6, 6, 6, 6, 6}, {.budget = 1000});
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  CHECK_THROWS_AS(outcome(builtin_game("h"), {1000000, 1000000, 1000000, 1, 1, 1}), Error);
  CHECK_THROWS_AS(p_positions(builtin_game("cn:5,2"), 6, 1000), Error);
}

TEST_CASE("verify_oracle on exact and broken predicates") {
  const GameSpec nim1 = builtin_game("nim:1");
  const auto broken = verify_oracle(nim1, [](const Position&) { return true; }, {}, {.bound = 1});
  CHECK(broken.mismatch_count == 1);
  REQUIRE(broken.closure_violations.size() == 1);
  CHECK(broken.closure_violations[0].from == Position{1});
  CHECK(broken.closure_violations[0].move == Move{1});
  CHECK(broken.closure_violations[0].to == Position{0});

  const GameSpec nim2 = builtin_game("nim:2");
  auto member = [](const Position& p) { return p[0] == p[1]; };
  auto mover = [](const Position& p) -> std::optional<Move> {
    if (p[0] == p[1]) return std::nullopt;
    return p[0] > p[1] ? Move{p[0] - p[1], 0} : Move{0, p[1] - p[0]};
  };
  const auto ok = verify_oracle(nim2, member, mover, {.bound = 6});
  CHECK(ok.clean());
  CHECK(ok.positions_checked == 49);

  auto lazy = [](const Position&) -> std::optional<Move> { return std::nullopt; };
  const auto bad = verify_oracle(nim2, member, lazy, {.bound = 3});
  CHECK(bad.reachability_count == 12);
}

TEST_CASE("threaded sweep reports equal the sequential one") {
  const GameSpec g = builtin_game("cn:4,2");
  auto wrong = [](const Position& p) { return p[0] == p[2]; };
  const VerificationReport a = verify_oracle(g, wrong, {}, {.bound = 4, .threads = 1, .cap = 5});
  const VerificationReport b = verify_oracle(g, wrong, {}, {.bound = 4, .threads = 3, .cap = 5});
  CHECK(a.mismatch_count > 0);
  CHECK(a.mismatch_count == b.mismatch_count);
  CHECK(a.closure_count == b.closure_count);
  CHECK(a.outcome_mismatches == b.outcome_mismatches);
  REQUIRE(a.closure_violations.size() == b.closure_violations.size());
  for (std::size_t i = 0; i < a.closure_violations.size(); ++i) {
    CHECK(a.closure_violations[i].from == b.closure_violations[i].from);
    CHECK(a.closure_violations[i].move == b.closure_violations[i].move);
  }
}
