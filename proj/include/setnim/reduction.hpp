#pragma once

#include <variant>
#include <vector>

#include "setnim/game.hpp"

namespace setnim {

// Relabels vertices: vertex v of the current game becomes perm[v].
struct SymmetryStep {
  Permutation perm;
};

// Subtracts coeff * z from the position; the game is unchanged.
struct InvarianceStep {
  std::vector<int> z;
  Height coeff = 0;
};

// Drops empty stacks. remap[old] is the new index, or -1 when removed.
struct ZeroStep {
  VertexSet removed = 0;
  std::vector<int> remap;
};

// Collapses a class of co-occurring stacks into one stack holding their sum.
// remap[old] is the new index; every member of cls maps to merged_index.
struct MergeStep {
  VertexSet cls = 0;
  int merged_index = 0;
  std::vector<int> remap;
};

using ReductionStep = std::variant<SymmetryStep, InvarianceStep, ZeroStep, MergeStep>;

struct ReductionTrace {
  GameSpec source_spec;
  GameSpec target_spec;
  std::vector<ReductionStep> steps;

  // Concatenation; other.source_spec must equal this->target_spec.
  ReductionTrace then(const ReductionTrace& other) const;
};

ReductionTrace identity_trace(const GameSpec& spec);

struct ZeroReduction {
  GameSpec spec;
  Position pos;
  ZeroStep step;
};

struct MergeReduction {
  GameSpec spec;
  MergeStep step;
};

ZeroReduction zero_reduce(const GameSpec& spec, const Position& pos, VertexSet subset);
// Partition into classes of vertices lying in exactly the same move sets,
// ordered by smallest member.
std::vector<VertexSet> mergeable_classes(const GameSpec& spec);
MergeReduction merge_reduce(const GameSpec& spec, VertexSet cls);

GameSpec reduce_spec(const GameSpec& spec, const ReductionStep& step);
Position project_step(const ReductionStep& step, const Position& pos);
// Maps a move of the reduced game back through one step. `upper` is the
// position before the step.
Move lift_step(const ReductionStep& step, const Move& reduced_mv, const Position& upper);

Position project(const ReductionTrace& trace, const Position& pos);
// Intermediate positions: result[0] = pos, result[i+1] after step i.
std::vector<Position> project_all(const ReductionTrace& trace, const Position& pos);
Move lift_move(const ReductionTrace& trace, const Move& reduced_mv, const Position& pos);

// Incremental trace construction that tracks the current game and position.
class TraceBuilder {
 public:
  TraceBuilder(const GameSpec& spec, const Position& pos);

  TraceBuilder& permute(const Permutation& perm);
  TraceBuilder& subtract(const std::vector<int>& z, Height coeff);
  TraceBuilder& zero(VertexSet subset);
  TraceBuilder& merge(VertexSet cls);

  const GameSpec& spec() const { return trace_.target_spec; }
  const Position& position() const { return pos_; }
  const ReductionTrace& trace() const { return trace_; }

 private:
  ReductionTrace trace_;
  Position pos_;
};

}  // namespace setnim
