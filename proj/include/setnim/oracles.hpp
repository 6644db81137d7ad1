#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setnim/game.hpp"
#include "setnim/grundy.hpp"
#include "setnim/invariance.hpp"
#include "setnim/reduction.hpp"

namespace setnim {

// Heights of an 8-cycle position measured from its square minima:
// p = (a, b+x1, a+x2, b+x3, a+x4, b+x5, a+x6, b+x7), a the minimum of the
// even stacks and b that of the odd stacks. x[0] is always 0.
struct SquareDecomposition {
  Height a = 0;
  Height b = 0;
  std::array<Height, 8> x{};

  // Requires p[0] to be the even-square minimum.
  static SquareDecomposition of(const Position& p);
  Position reconstruct() const;
  // (x1, x2, x4, x5+x6, x7)
  Position reduced() const;
};

// Closed forms. Each takes the position in the game's own stack order.
bool p_membership_base(int n, int k, const Position& pos);  // cn:3,2 4,2 5,2 5,3 6,3 7,4
bool p_membership_path(int n, int k, const Position& pos);  // pn:n,k with 2k >= n
bool p_membership_h(const Position& pos);
bool p_membership_cn73(const Position& pos);
bool p_membership_cn83(const Position& pos);
bool p_membership_nim(const Position& pos);

// Constructive winning moves; none iff the position is a P-position.
std::optional<Move> move_path(int n, int k, const Position& pos);
std::optional<Move> move_h(const Position& pos);
std::optional<Move> move_cn73(const Position& pos);
std::optional<Move> move_cn83(const Position& pos);
std::optional<Move> move_nim(const Position& pos);
// cn:3,2 4,2 5,2 6,3 are constructive; cn:5,3 and cn:7,4 search by brute force.
std::optional<Move> move_base(int n, int k, const Position& pos, std::uint64_t budget = kDefaultBudget);

// The reduction processes behind the moves above, with their intermediate
// results.
IrpOutcome irp_h(const Position& pos);
IrpOutcome irp_cn52(const Position& pos);
IrpOutcome irp_cn63(const Position& pos);
IrpOutcome irp_cn73(const Position& pos);
IrpOutcome irp_cn83(const Position& pos);

const std::vector<ZeroOne>& h_invariants();  // z1, z2
// Case label of an invariance-reduced position of H.
std::string h_case_label(const Position& reduced);

// Invariant schedule and case table of a game solved by reduction.
struct IrpProfile {
  std::string game;
  GameSpec spec;
  InvarianceSchedule schedule;
  std::vector<IrpCase> cases;
};

// h, cn:5,2, cn:6,3, cn:7,3, cn:8,3; null otherwise.
const IrpProfile* irp_profile(std::string_view id);
// "zero" for the zero position, none when no case applies.
std::optional<std::string> irp_case_label(const IrpProfile& profile, const Position& reduced);

enum class Method { ClosedForm, Irp, BruteForce };
std::string_view method_name(Method m);

struct SolveResult {
  Outcome outcome = Outcome::P;
  std::optional<Move> move;
  Method method = Method::ClosedForm;
  // Solved game that answered; equals the input id unless a reduction was used.
  std::string solved_as;
  // Merge/relabel steps from the input game to `solved_as`, when used.
  std::optional<ReductionTrace> reduction;
  // Position and move in `solved_as`, when a reduction was used.
  std::optional<Position> reduced_position;
  std::optional<Move> reduced_move;
  // Reduction process inside the solved game, when used.
  std::shared_ptr<const IrpOutcome> detail;
};

struct Classification {
  Outcome outcome = Outcome::P;
  Method method = Method::ClosedForm;
  std::string solved_as;
};

// One entry per solved family member; `id` is a builtin game id.
struct SolvedGame {
  std::string id;
  GameSpec spec;
  Membership membership;
  // Whether moves come from a construction rather than a search.
  bool constructive = true;
  // Answers an N-position: move, method and any reduction detail.
  std::function<SolveResult(const Position&, std::uint64_t)> winning;
};

// Solved game for a builtin id, if any (cn:3,2 4,2 5,2 5,3 6,3 7,4 7,3 8,3,
// h, pn:n,k with 2k >= n, nim:n).
std::optional<SolvedGame> solved_game(std::string_view id);
// Solved games on n stacks, in a fixed order.
std::vector<std::string> solved_ids_for_size(int n);

SolveResult solve_solved(const SolvedGame& game, const Position& pos, std::uint64_t budget = kDefaultBudget);

// Dispatch: a solved builtin answers directly. Other games are merge-reduced
// and matched against the solved games up to relabeling; failing that the
// position is searched by brute force.
SolveResult solve(const GameSpec& spec, const Position& pos, std::uint64_t budget = kDefaultBudget);
SolveResult solve(std::string_view game_id, const Position& pos, std::uint64_t budget = kDefaultBudget);
Classification classify(const GameSpec& spec, const Position& pos, std::uint64_t budget = kDefaultBudget);

// Membership and move supplier for verification sweeps of a builtin solved
// game. Games without a construction get moves from `table`.
Membership oracle_membership(const SolvedGame& game);
MoveSupplier oracle_moves(const SolvedGame& game, std::shared_ptr<const OutcomeTable> table = nullptr);

}  // namespace setnim
