#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "setnim/box.hpp"
#include "setnim/game.hpp"
#include "setnim/grundy.hpp"
#include "setnim/reduction.hpp"

namespace setnim {

using ZeroOne = std::vector<int>;

struct InvariantVector {
  ZeroOne z;
  // Height cap of the bounded check; empty when taken as known.
  std::optional<Height> verified_bound;
};

// Vectors are applied in order. Each batch is a group of indices into
// `vectors` with pairwise disjoint supports whose minima are taken together.
struct InvarianceSchedule {
  std::vector<InvariantVector> vectors;
  std::vector<std::vector<std::size_t>> batches;

  static InvarianceSchedule sequential(const std::vector<ZeroOne>& zs);
  // Greedy grouping of consecutive vectors with disjoint supports.
  static InvarianceSchedule batched(const std::vector<ZeroOne>& zs);
};

ZeroOne zero_one_from_mask(VertexSet mask, int n);
VertexSet support_of(const ZeroOne& z);
std::string format_zero_one(const ZeroOne& z);

Height indicator_min(const ZeroOne& z, const Position& pos);

struct InvarianceReduction {
  Position pos;
  std::vector<Height> coefficients;  // one per schedule vector
  std::vector<InvarianceStep> steps;  // only the nonzero coefficients
};

InvarianceReduction invariance_reduce(const InvarianceSchedule& schedule, const Position& pos);

// Membership of every position of [0,bound]^n.
class MembershipTable {
 public:
  MembershipTable(int n, Height bound, const Membership& membership, int threads = 1,
                  std::uint64_t budget = kDefaultBudget);
  // Brute-force P-positions as the membership.
  MembershipTable(const GameSpec& spec, Height bound, std::uint64_t budget = kDefaultBudget);

  const Box& box() const { return box_; }
  Height bound() const { return bound_; }
  bool contains(std::size_t index) const { return member_[index] != 0; }

 private:
  Box box_;
  Height bound_;
  std::vector<std::uint8_t> member_;
};

struct InvarianceCheck {
  bool invariant = true;
  // First position p (lexicographic, last coordinate fastest) whose class
  // differs from that of p + z.
  std::optional<Position> witness;
};

InvarianceCheck is_invariant_bounded(const MembershipTable& table, const ZeroOne& z);
InvarianceCheck is_invariant_bounded(const Membership& membership, const ZeroOne& z, Height bound,
                                     std::uint64_t budget = kDefaultBudget);

struct Discovery {
  std::vector<InvariantVector> all;
  std::vector<InvariantVector> generators;
};

// Candidates are ordered by support size, then with earlier stacks first.
Discovery discover_invariants(const MembershipTable& table, int threads = 1);
Discovery discover_invariants(const Membership& membership, int n, Height bound, int threads = 1,
                              std::uint64_t budget = kDefaultBudget);

// Whether pos is a non-negative integer combination of the generators.
bool combo_membership(const std::vector<ZeroOne>& generators, const Position& pos,
                      std::uint64_t budget = kDefaultBudget);

struct IrpOutcome;

struct SubSolution {
  std::optional<Move> move;
  std::shared_ptr<const IrpOutcome> detail;  // set when the sub-solver is itself a reduction
};

using SubSolver = std::function<SubSolution(const Position&)>;

// One row of a case table: when `matches` accepts the invariance-reduced
// position, `recipe` appends symmetry/zero/merge steps that must end in
// `target`, where `solver` supplies the move.
struct IrpCase {
  std::string label;
  std::function<bool(const Position&)> matches;
  std::function<void(TraceBuilder&)> recipe;
  GameSpec target;
  std::string target_name;
  SubSolver solver;
};

struct IrpOutcome {
  std::optional<Move> move;
  Position start;
  std::vector<Height> coefficients;
  Position reduced;
  std::string case_label;  // empty when the reduced position is 0
  std::string subgame;
  Position sub_position;
  std::optional<Move> sub_move;
  std::shared_ptr<const IrpOutcome> sub_detail;
  ReductionTrace trace;
};

// Invariance-reduce, pick the first matching case, reduce to its sub-game,
// solve there and lift. Throws NoCaseMatched when no row applies.
IrpOutcome irp_move(const GameSpec& spec, const InvarianceSchedule& schedule,
                    const std::vector<IrpCase>& cases, const Position& pos);

}  // namespace setnim
