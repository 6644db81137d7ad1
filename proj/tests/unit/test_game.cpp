#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "naive.hpp"
#include "setnim/error.hpp"
#include "setnim/game.hpp"

using namespace setnim;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadRequest;
}

}  // namespace

TEST_CASE("build_game normalizes and checks coverage") {
  CHECK(code_of([] { build_game(6, {{0, 1}, {1, 2}, {2}, {4}, {0}}); }) == ErrorCode::CoverageGap);
  const GameSpec g = build_game(4, {{1, 2, 3}, {0, 3}, {0, 1, 2}, {0, 3}, {1, 2}});
  CHECK(g.move_set_lists() == std::vector<std::vector<int>>{{0, 1, 2}, {0, 3}, {1, 2, 3}});
  CHECK(build_game(1, {{0}}).move_sets().size() == 1);
  CHECK(build_game(g.size(), g.move_set_lists()) == g);
  CHECK(code_of([] { build_game(3, {{0, 1}, {}}); }) == ErrorCode::EmptySet);
  CHECK(code_of([] { build_game(3, {{0, 3}, {1, 2}}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("builtin ids") {
  CHECK(builtin_game("pn:5,3").move_set_lists() == std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
  CHECK(builtin_game("h").move_set_lists() ==
        std::vector<std::vector<int>>{{0, 1, 2}, {0, 5}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
  CHECK(builtin_game("nim:3").move_sets().size() == 3);
  CHECK(builtin_game("cn:7,3").move_sets().size() == 7);
  CHECK(builtin_game("moore:4,2").move_sets().size() == 6);
  CHECK(code_of([] { builtin_game("cn:3,4"); }) == ErrorCode::BadParameters);
  CHECK(code_of([] { builtin_game("xyz:3"); }) == ErrorCode::UnknownId);
  CHECK(code_of([] { builtin_game("file:/nonexistent.json"); }) == ErrorCode::FileFormatError);
}

TEST_CASE("game file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "setnim_unit_game.json";
  const GameSpec g = build_game(4, {{0, 3}, {0, 1, 2}, {1, 2, 3}});
  std::ofstream(path) << game_file_text(g);
  CHECK(load_game_file(path) == g);
  std::ofstream(path) << "{\"n\": 2}";
  CHECK(code_of([&] { load_game_file(path); }) == ErrorCode::FileFormatError);
  std::filesystem::remove(path);
}

TEST_CASE("legality") {
  const GameSpec cn73 = builtin_game("cn:7,3");
  CHECK(is_legal_move(cn73, {3, 5, 9, 14, 11, 6, 15}, {0, 0, 0, 5, 6, 3, 0}).legal);
  CHECK(is_legal_move(cn73, {3, 5, 9, 14, 11, 6, 15}, {1, 0, 0, 0, 0, 1, 1}).legal);
  const auto zero = is_legal_move(cn73, {1, 1, 1, 1, 1, 1, 1}, Move::zeros(7));
  CHECK_FALSE(zero.legal);
  CHECK(zero.reason == "NoTokensRemoved");
  const auto ends = is_legal_move(builtin_game("pn:5,3"), {1, 1, 1, 1, 1}, {1, 0, 0, 0, 1});
  CHECK_FALSE(ends.legal);
  CHECK(ends.reason == "SupportNotInMoveSet");
  CHECK(is_legal_move(builtin_game("nim:2"), {1, 1}, {2, 0}).reason == "Overdraw");
  CHECK(code_of([&] { is_legal_move(cn73, {1, 1}, {1, 0}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("apply_move") {
  CHECK(apply_move({2, 3, 5, 4}, {0, 3, 3, 2}) == Position{2, 0, 2, 2});
  CHECK(apply_move({3, 8, 5, 9, 6}, {0, 0, 2, 4, 0}) == Position{3, 8, 3, 5, 6});
  CHECK(apply_move({4, 4}, {0, 0}) == Position{4, 4});
  CHECK(code_of([] { apply_move({1, 1}, {2, 0}); }) == ErrorCode::NegativeResult);
}

TEST_CASE("legal move enumeration matches an independent count") {
  CHECK(legal_moves(builtin_game("nim:1"), {2}) == std::vector<Move>{{1}, {2}});
  CHECK(legal_moves(builtin_game("cn:3,2"), {1, 1, 0}) == std::vector<Move>{{0, 1, 0}, {1, 0, 0}, {1, 1, 0}});
  CHECK(legal_moves(builtin_game("h"), Position::zeros(6)).empty());
  for (const char* id : {"cn:5,2", "pn:5,3", "h", "cn:6,3"}) {
    const GameSpec g = builtin_game(id);
    for (const Position& p : naive::box(g.size(), 2)) {
      const auto moves = legal_moves(g, p);
      std::set<std::vector<Height>> got;
      for (const Move& m : moves) {
        CHECK(is_legal_move(g, p, m).legal);
        got.insert(apply_move(p, m).heights);
      }
      CHECK(got.size() == moves.size());
      CHECK(got == naive::options(g, p.heights));
      if (p.is_zero()) CHECK(moves.empty());
      else CHECK_FALSE(moves.empty());
    }
  }
}

TEST_CASE("symmetries") {
  CHECK(symmetries(builtin_game("cn:5,2")).size() == 10);
  CHECK(symmetries(builtin_game("cn:8,3")).size() == 16);
  const auto pn = symmetries(builtin_game("pn:6,3"));
  REQUIRE(pn.size() == 2);
  CHECK(std::find(pn.begin(), pn.end(), Permutation{5, 4, 3, 2, 1, 0}) != pn.end());
  CHECK(symmetries(builtin_game("nim:3")).size() == 6);
  CHECK(symmetries(builtin_game("h")).size() == 2);
  CHECK(code_of([] { symmetries(builtin_game("nim:13")); }) == ErrorCode::TooLarge);

  // brute force over all permutations of 5 vertices
  const GameSpec g = builtin_game("cn:5,2");
  Permutation perm = identity_permutation(5);
  std::size_t count = 0;
  do {
    std::vector<VertexSet> image;
    for (VertexSet s : g.move_sets()) image.push_back(act(perm, s));
    if (normalize_move_sets(image) == g.move_sets()) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(count == 10);

  const GameSpec h = builtin_game("h");
  for (const auto& s : symmetries(h))
    for (const Position& p : naive::box(6, 1))
      for (const Move& m : legal_moves(h, p)) CHECK(is_legal_move(h, act(s, p), act(s, m)).legal);
}

TEST_CASE("height parsing") {
  CHECK(parse_heights("3,5, 9") == std::vector<Height>{3, 5, 9});
  CHECK(format_heights({0, 12}) == "0,12");
  CHECK(code_of([] { parse_heights("1,x"); }) == ErrorCode::BadRequest);
  CHECK(code_of([] { parse_heights("1,-2"); }) == ErrorCode::NegativeHeight);
  CHECK(vertex_label(0) == "a");
  CHECK(set_label(make_set({1, 2})) == "{bc}");
}
