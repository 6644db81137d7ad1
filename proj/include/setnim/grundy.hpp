#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "setnim/box.hpp"
#include "setnim/game.hpp"

namespace setnim {

constexpr std::uint64_t kDefaultBudget = 100'000'000;

using GrundyValue = std::uint32_t;

struct GrundyOptions {
  std::uint64_t budget = kDefaultBudget;
  bool memoize = true;
  // Key the memo on the least symmetric image of each position.
  bool canonicalize = false;
};

// Exact Grundy value by depth-first evaluation on an explicit work stack.
// The budget caps option evaluations.
GrundyValue grundy(const GameSpec& spec, const Position& pos, const GrundyOptions& options = {});

// P/N table of every position in a box, built by a forward sieve: positions
// are visited by increasing index, an unmarked position is P and marks all of
// its in-box predecessors as N. The budget caps box size plus marks.
class OutcomeTable {
 public:
  OutcomeTable(const GameSpec& spec, Box box, std::uint64_t budget = kDefaultBudget);

  const Box& box() const { return box_; }
  bool is_p(std::size_t index) const { return p_[index] != 0; }
  bool is_p(const Position& pos) const { return is_p(box_.index(pos)); }
  std::size_t p_count() const;

 private:
  Box box_;
  std::vector<std::uint8_t> p_;
};

// Grundy values of every position in a box, by ascending index.
std::vector<GrundyValue> grundy_table(const GameSpec& spec, const Box& box,
                                      std::uint64_t budget = kDefaultBudget);

Outcome outcome(const GameSpec& spec, const Position& pos, std::uint64_t budget = kDefaultBudget);
std::vector<Position> p_positions(const GameSpec& spec, Height bound,
                                  std::uint64_t budget = kDefaultBudget);
// First legal move in canonical order whose option is P; none iff pos is P.
std::optional<Move> brute_winning_move(const GameSpec& spec, const Position& pos,
                                       std::uint64_t budget = kDefaultBudget);
// Same, reading outcomes from a table whose box contains pos.
std::optional<Move> winning_move_from_table(const GameSpec& spec, const OutcomeTable& table,
                                            const Position& pos);

using Membership = std::function<bool(const Position&)>;
using MoveSupplier = std::function<std::optional<Move>(const Position&)>;

struct ClosureViolation {
  Position from;
  Move move;
  Position to;
};

struct VerificationReport {
  Height bound = 0;
  std::uint64_t positions_checked = 0;
  std::vector<Position> outcome_mismatches;
  std::vector<ClosureViolation> closure_violations;
  std::vector<Position> reachability_violations;
  // Totals; the lists above keep at most `cap` entries each.
  std::uint64_t mismatch_count = 0;
  std::uint64_t closure_count = 0;
  std::uint64_t reachability_count = 0;
  bool reachability_checked = false;

  bool clean() const { return mismatch_count == 0 && closure_count == 0 && reachability_count == 0; }
};

struct VerifyOptions {
  Height bound = 4;
  std::uint64_t budget = kDefaultBudget;
  int threads = 1;
  std::size_t cap = 20;
};

// Checks a membership predicate against brute force on [0,bound]^n:
// agreement, closure (no move between two members) and, when move_fn is
// given, that every non-member gets a legal move into a member.
VerificationReport verify_oracle(const GameSpec& spec, const Membership& membership,
                                 const MoveSupplier& move_fn, const VerifyOptions& options);

}  // namespace setnim
