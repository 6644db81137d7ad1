#include "setnim/reduction.hpp"

#include <algorithm>

#include "setnim/error.hpp"

namespace setnim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int vertex_count_after(const std::vector<int>& remap) {
  return 1 + *std::max_element(remap.begin(), remap.end());
}

VertexSet remap_set(VertexSet s, const std::vector<int>& remap) {
  VertexSet out = 0;
  for (int v : members(s))
    if (remap[v] >= 0) out |= vertex_bit(remap[v]);
  return out;
}

}  // namespace

ReductionTrace ReductionTrace::then(const ReductionTrace& other) const {
  if (!(other.source_spec == target_spec))
    fail(ErrorCode::PreconditionViolated, "trace composition across different games");
  ReductionTrace out = *this;
  out.steps.insert(out.steps.end(), other.steps.begin(), other.steps.end());
  out.target_spec = other.target_spec;
  return out;
}

ReductionTrace identity_trace(const GameSpec& spec) { return {spec, spec, {}}; }

ZeroReduction zero_reduce(const GameSpec& spec, const Position& pos, VertexSet subset) {
  const int n = spec.size();
  if (pos.size() != n) fail(ErrorCode::DimensionMismatch, "position length differs from game size");
  if (subset == 0) fail(ErrorCode::PreconditionViolated, "zero reduction of an empty vertex set");
  for (int v : members(subset)) {
    if (v >= n) fail(ErrorCode::IndexOutOfRange, "vertex outside the game");
    if (pos[v] != 0)
      fail(ErrorCode::NonZeroVertex, "stack " + vertex_label(v) + " is not empty");
  }
  if (popcount(subset) == n) fail(ErrorCode::EmptyResult, "zero reduction would remove every stack");
  ZeroStep step{subset, std::vector<int>(n, -1)};
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (!(subset & vertex_bit(v))) step.remap[v] = next++;
  ZeroReduction out{reduce_spec(spec, step), project_step(step, pos), step};
  return out;
}

std::vector<VertexSet> mergeable_classes(const GameSpec& spec) {
  const int n = spec.size();
  const auto& sets = spec.move_sets();
  std::vector<VertexSet> classes;
  VertexSet assigned = 0;
  for (int v = 0; v < n; ++v) {
    if (assigned & vertex_bit(v)) continue;
    VertexSet cls = 0;
    for (int w = v; w < n; ++w) {
      bool same = true;
      for (VertexSet s : sets)
        if (static_cast<bool>(s & vertex_bit(v)) != static_cast<bool>(s & vertex_bit(w))) {
          same = false;
          break;
        }
      if (same) cls |= vertex_bit(w);
    }
    assigned |= cls;
    classes.push_back(cls);
  }
  return classes;
}

MergeReduction merge_reduce(const GameSpec& spec, VertexSet cls) {
  const int n = spec.size();
  if (popcount(cls) < 2) fail(ErrorCode::PreconditionViolated, "merge class needs at least two stacks");
  for (int v : members(cls))
    if (v >= n) fail(ErrorCode::IndexOutOfRange, "vertex outside the game");
  for (VertexSet s : spec.move_sets()) {
    const VertexSet common = s & cls;
    if (common != 0 && common != cls)
      fail(ErrorCode::PreconditionViolated,
           "move set " + set_label(s) + " splits the class " + set_label(cls));
  }
  MergeStep step;
  step.cls = cls;
  step.remap.assign(n, -1);
  const int lowest = members(cls).front();
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (cls & vertex_bit(v)) {
      if (v == lowest) {
        step.merged_index = next;
        step.remap[v] = next++;
      } else {
        step.remap[v] = step.merged_index;
      }
    } else {
      step.remap[v] = next++;
    }
  }
  return {reduce_spec(spec, step), step};
}

GameSpec reduce_spec(const GameSpec& spec, const ReductionStep& step) {
  return std::visit(
      Overloaded{
          [&](const SymmetryStep& s) {
            std::vector<VertexSet> sets;
            for (VertexSet m : spec.move_sets()) sets.push_back(act(s.perm, m));
            return build_game_from_masks(spec.size(), sets, spec.id());
          },
          [&](const InvarianceStep&) { return spec; },
          [&](const ZeroStep& s) {
            std::vector<VertexSet> sets;
            for (VertexSet m : spec.move_sets()) {
              const VertexSet r = remap_set(m, s.remap);
              if (r) sets.push_back(r);
            }
            return build_game_from_masks(vertex_count_after(s.remap), sets, "reduced");
          },
          [&](const MergeStep& s) {
            std::vector<VertexSet> sets;
            for (VertexSet m : spec.move_sets()) sets.push_back(remap_set(m, s.remap));
            return build_game_from_masks(vertex_count_after(s.remap), sets, "reduced");
          },
      },
      step);
}

Position project_step(const ReductionStep& step, const Position& pos) {
  return std::visit(
      Overloaded{
          [&](const SymmetryStep& s) {
            if (static_cast<int>(s.perm.size()) != pos.size())
              fail(ErrorCode::DimensionMismatch, "permutation length differs from position");
            return act(s.perm, pos);
          },
          [&](const InvarianceStep& s) {
            if (static_cast<int>(s.z.size()) != pos.size())
              fail(ErrorCode::DimensionMismatch, "invariant vector length differs from position");
            Position out = pos;
            for (int i = 0; i < pos.size(); ++i) {
              out[i] -= s.coeff * s.z[i];
              if (out[i] < 0)
                fail(ErrorCode::NegativeHeight, "invariance step drives stack " + vertex_label(i) + " negative");
            }
            return out;
          },
          [&](const ZeroStep& s) {
            if (static_cast<int>(s.remap.size()) != pos.size())
              fail(ErrorCode::DimensionMismatch, "zero step length differs from position");
            Position out = Position::zeros(vertex_count_after(s.remap));
            for (int v = 0; v < pos.size(); ++v) {
              if (s.remap[v] >= 0) {
                out[s.remap[v]] = pos[v];
              } else if (pos[v] != 0) {
                fail(ErrorCode::NonZeroVertex, "zero step removes non-empty stack " + vertex_label(v));
              }
            }
            return out;
          },
          [&](const MergeStep& s) {
            if (static_cast<int>(s.remap.size()) != pos.size())
              fail(ErrorCode::DimensionMismatch, "merge step length differs from position");
            Position out = Position::zeros(vertex_count_after(s.remap));
            for (int v = 0; v < pos.size(); ++v) out[s.remap[v]] += pos[v];
            return out;
          },
      },
      step);
}

Move lift_step(const ReductionStep& step, const Move& reduced_mv, const Position& upper) {
  return std::visit(
      Overloaded{
          [&](const SymmetryStep& s) { return act(inverse(s.perm), reduced_mv); },
          [&](const InvarianceStep&) { return reduced_mv; },
          [&](const ZeroStep& s) {
            Move out = Move::zeros(upper.size());
            for (int v = 0; v < upper.size(); ++v)
              if (s.remap[v] >= 0) out[v] = reduced_mv[s.remap[v]];
            return out;
          },
          [&](const MergeStep& s) {
            Move out = Move::zeros(upper.size());
            for (int v = 0; v < upper.size(); ++v)
              if (!(s.cls & vertex_bit(v))) out[v] = reduced_mv[s.remap[v]];
            // smallest stack first, ties by lower index
            std::vector<int> order = members(s.cls);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return upper[a] < upper[b]; });
            Height left = reduced_mv[s.merged_index];
            for (int v : order) {
              const Height take = std::min(left, upper[v]);
              out[v] = take;
              left -= take;
            }
            if (left != 0)
              fail(ErrorCode::IllegalReducedMove, "merged removal exceeds the merged stacks");
            return out;
          },
      },
      step);
}

std::vector<Position> project_all(const ReductionTrace& trace, const Position& pos) {
  if (pos.size() != trace.source_spec.size())
    fail(ErrorCode::DimensionMismatch, "position length differs from the source game");
  std::vector<Position> out{pos};
  for (const auto& step : trace.steps) out.push_back(project_step(step, out.back()));
  return out;
}

Position project(const ReductionTrace& trace, const Position& pos) {
  return project_all(trace, pos).back();
}

Move lift_move(const ReductionTrace& trace, const Move& reduced_mv, const Position& pos) {
  const std::vector<Position> levels = project_all(trace, pos);
  const Legality legality = is_legal_move(trace.target_spec, levels.back(), reduced_mv);
  if (!legality.legal)
    fail(ErrorCode::IllegalReducedMove, "reduced move " + format(reduced_mv) + " is illegal: " + legality.reason);
  Move mv = reduced_mv;
  for (std::size_t i = trace.steps.size(); i-- > 0;) mv = lift_step(trace.steps[i], mv, levels[i]);
  return mv;
}

TraceBuilder::TraceBuilder(const GameSpec& spec, const Position& pos)
    : trace_(identity_trace(spec)), pos_(pos) {
  if (pos.size() != spec.size()) fail(ErrorCode::DimensionMismatch, "position length differs from game size");
}

TraceBuilder& TraceBuilder::permute(const Permutation& perm) {
  SymmetryStep step{perm};
  pos_ = project_step(step, pos_);
  trace_.target_spec = reduce_spec(trace_.target_spec, step);
  trace_.steps.emplace_back(std::move(step));
  return *this;
}

TraceBuilder& TraceBuilder::subtract(const std::vector<int>& z, Height coeff) {
  InvarianceStep step{z, coeff};
  pos_ = project_step(step, pos_);
  trace_.steps.emplace_back(std::move(step));
  return *this;
}

TraceBuilder& TraceBuilder::zero(VertexSet subset) {
  ZeroReduction r = zero_reduce(trace_.target_spec, pos_, subset);
  pos_ = std::move(r.pos);
  trace_.target_spec = std::move(r.spec);
  trace_.steps.emplace_back(std::move(r.step));
  return *this;
}

TraceBuilder& TraceBuilder::merge(VertexSet cls) {
  MergeReduction r = merge_reduce(trace_.target_spec, cls);
  pos_ = project_step(r.step, pos_);
  trace_.target_spec = std::move(r.spec);
  trace_.steps.emplace_back(std::move(r.step));
  return *this;
}

}  // namespace setnim
