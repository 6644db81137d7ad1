#include "setnim/invariance.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "parallel.hpp"
#include "setnim/error.hpp"

namespace setnim {
namespace {

void check_zero_one(const ZeroOne& z) {
  bool any = false;
  for (int x : z) {
    if (x != 0 && x != 1) fail(ErrorCode::BadParameters, "invariant vectors must be zero-one");
    any = any || x == 1;
  }
  if (!any) fail(ErrorCode::BadParameters, "invariant vectors must be nonzero");
}

// Candidate order: fewer ones first, then ones on earlier stacks first.
bool candidate_less(const ZeroOne& a, const ZeroOne& b) {
  const auto ca = std::count(a.begin(), a.end(), 1);
  const auto cb = std::count(b.begin(), b.end(), 1);
  if (ca != cb) return ca < cb;
  return a > b;
}

}  // namespace

InvarianceSchedule InvarianceSchedule::sequential(const std::vector<ZeroOne>& zs) {
  InvarianceSchedule s;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    check_zero_one(zs[i]);
    s.vectors.push_back({zs[i], std::nullopt});
    s.batches.push_back({i});
  }
  return s;
}

InvarianceSchedule InvarianceSchedule::batched(const std::vector<ZeroOne>& zs) {
  InvarianceSchedule s;
  VertexSet used = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    check_zero_one(zs[i]);
    s.vectors.push_back({zs[i], std::nullopt});
    const VertexSet sup = support_of(zs[i]);
    if (s.batches.empty() || (used & sup) != 0) {
      s.batches.push_back({});
      used = 0;
    }
    s.batches.back().push_back(i);
    used |= sup;
  }
  return s;
}

ZeroOne zero_one_from_mask(VertexSet mask, int n) {
  ZeroOne z(n, 0);
  for (int v : members(mask))
    if (v < n) z[v] = 1;
  return z;
}

VertexSet support_of(const ZeroOne& z) {
  VertexSet s = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i]) s |= vertex_bit(static_cast<int>(i));
  return s;
}

std::string format_zero_one(const ZeroOne& z) {
  std::string out = "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(z[i]);
  }
  return out + ")";
}

Height indicator_min(const ZeroOne& z, const Position& pos) {
  if (static_cast<int>(z.size()) != pos.size())
    fail(ErrorCode::DimensionMismatch, "invariant vector length differs from position");
  check_zero_one(z);
  Height m = std::numeric_limits<Height>::max();
  for (int i = 0; i < pos.size(); ++i)
    if (z[i]) m = std::min(m, pos[i]);
  return m;
}

InvarianceReduction invariance_reduce(const InvarianceSchedule& schedule, const Position& pos) {
  InvarianceReduction out{pos, std::vector<Height>(schedule.vectors.size(), 0), {}};
  for (const auto& batch : schedule.batches) {
    for (std::size_t i : batch) out.coefficients[i] = indicator_min(schedule.vectors[i].z, out.pos);
    for (std::size_t i : batch) {
      const Height c = out.coefficients[i];
      if (c == 0) continue;
      const ZeroOne& z = schedule.vectors[i].z;
      for (int j = 0; j < out.pos.size(); ++j) {
        out.pos[j] -= c * z[j];
        if (out.pos[j] < 0) fail(ErrorCode::PreconditionViolated, "batched vectors overlap");
      }
      out.steps.push_back({z, c});
    }
  }
  return out;
}

MembershipTable::MembershipTable(int n, Height bound, const Membership& membership, int threads,
                                 std::uint64_t budget)
    : box_(Box::cube(n, bound)), bound_(bound) {
  if (box_.size() > budget)
    fail(ErrorCode::BudgetExceeded, "position box exceeds the work budget of " + std::to_string(budget));
  member_.assign(box_.size(), 0);
  const std::size_t chunk = box_.stride(0);
  detail::run_chunks(static_cast<std::size_t>(bound) + 1, threads, [&](std::size_t c) {
    for (std::size_t idx = c * chunk; idx < (c + 1) * chunk; ++idx)
      member_[idx] = membership(box_.position(idx)) ? 1 : 0;
  });
}

MembershipTable::MembershipTable(const GameSpec& spec, Height bound, std::uint64_t budget)
    : box_(Box::cube(spec.size(), bound)), bound_(bound) {
  if (box_.size() > budget)
    fail(ErrorCode::BudgetExceeded, "position box exceeds the work budget of " + std::to_string(budget));
  const OutcomeTable table(spec, box_, budget);
  member_.assign(box_.size(), 0);
  for (std::size_t idx = 0; idx < box_.size(); ++idx) member_[idx] = table.is_p(idx) ? 1 : 0;
}

InvarianceCheck is_invariant_bounded(const MembershipTable& table, const ZeroOne& z) {
  const Box& box = table.box();
  if (static_cast<int>(z.size()) != box.rank())
    fail(ErrorCode::DimensionMismatch, "invariant vector length differs from the box");
  check_zero_one(z);
  const int n = box.rank();
  std::size_t offset = 0;
  for (int i = 0; i < n; ++i)
    if (z[i]) offset += box.stride(i);
  // odometer over positions whose shift by z stays in the box
  std::vector<Height> limit(n);
  for (int i = 0; i < n; ++i) limit[i] = table.bound() - z[i];
  if (table.bound() < 1) return {true, std::nullopt};
  std::vector<Height> cur(n, 0);
  std::size_t idx = 0;
  while (true) {
    if (table.contains(idx) != table.contains(idx + offset)) return {false, Position(cur)};
    int i = n - 1;
    while (i >= 0 && cur[i] == limit[i]) {
      idx -= static_cast<std::size_t>(cur[i]) * box.stride(i);
      cur[i] = 0;
      --i;
    }
    if (i < 0) return {true, std::nullopt};
    ++cur[i];
    idx += box.stride(i);
  }
}

InvarianceCheck is_invariant_bounded(const Membership& membership, const ZeroOne& z, Height bound,
                                     std::uint64_t budget) {
  return is_invariant_bounded(MembershipTable(static_cast<int>(z.size()), bound, membership, 1, budget), z);
}

Discovery discover_invariants(const MembershipTable& table, int threads) {
  const int n = table.box().rank();
  if (n > 12) fail(ErrorCode::TooLarge, "invariant discovery supports at most 12 stacks");
  const std::size_t count = (std::size_t{1} << n) - 1;
  std::vector<ZeroOne> candidates;
  for (std::size_t mask = 1; mask <= count; ++mask) candidates.push_back(zero_one_from_mask(mask, n));
  std::sort(candidates.begin(), candidates.end(), candidate_less);

  std::vector<std::uint8_t> passed(candidates.size(), 0);
  detail::run_chunks(candidates.size(), threads, [&](std::size_t c) {
    passed[c] = is_invariant_bounded(table, candidates[c]).invariant ? 1 : 0;
  });

  Discovery out;
  std::set<VertexSet> members_all;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!passed[c]) continue;
    out.all.push_back({candidates[c], table.bound()});
    members_all.insert(support_of(candidates[c]));
  }
  for (const auto& iv : out.all) {
    const VertexSet z = support_of(iv.z);
    bool decomposable = false;
    for (VertexSet x = (z - 1) & z; x != 0 && !decomposable; x = (x - 1) & z)
      decomposable = members_all.count(x) && members_all.count(z ^ x);
    if (!decomposable) out.generators.push_back(iv);
  }
  return out;
}

Discovery discover_invariants(const Membership& membership, int n, Height bound, int threads,
                              std::uint64_t budget) {
  return discover_invariants(MembershipTable(n, bound, membership, threads, budget), threads);
}

bool combo_membership(const std::vector<ZeroOne>& generators, const Position& pos, std::uint64_t budget) {
  for (const auto& g : generators) {
    check_zero_one(g);
    if (static_cast<int>(g.size()) != pos.size())
      fail(ErrorCode::DimensionMismatch, "generator length differs from position");
  }
  for (int i = 0; i < pos.size(); ++i)
    if (pos[i] < 0) fail(ErrorCode::NegativeHeight, "negative stack height");

  // Depth-first search on residuals. The first nonzero coordinate must be
  // covered by the next generator; residuals known to fail are skipped.
  struct Frame {
    std::vector<Height> residual;
    std::size_t next = 0;
  };
  std::set<std::vector<Height>> failed;
  std::vector<Frame> stack{{pos.heights, 0}};
  std::uint64_t work = 0;
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto first = std::find_if(top.residual.begin(), top.residual.end(), [](Height h) { return h != 0; });
    if (first == top.residual.end()) return true;
    const auto lead = static_cast<std::size_t>(first - top.residual.begin());
    bool pushed = false;
    while (top.next < generators.size()) {
      const ZeroOne& g = generators[top.next++];
      if (!g[lead]) continue;
      bool fits = true;
      for (std::size_t j = 0; j < g.size() && fits; ++j) fits = top.residual[j] >= g[j];
      if (!fits) continue;
      std::vector<Height> child = top.residual;
      for (std::size_t j = 0; j < g.size(); ++j) child[j] -= g[j];
      if (failed.count(child)) continue;
      if (++work > budget)
        fail(ErrorCode::BudgetExceeded, "work budget of " + std::to_string(budget) + " exceeded");
      stack.push_back({std::move(child), 0});
      pushed = true;
      break;
    }
    if (!pushed) {
      failed.insert(std::move(stack.back().residual));
      stack.pop_back();
    }
  }
  return false;
}

IrpOutcome irp_move(const GameSpec& spec, const InvarianceSchedule& schedule,
                    const std::vector<IrpCase>& cases, const Position& pos) {
  if (pos.size() != spec.size()) fail(ErrorCode::DimensionMismatch, "position length differs from game size");
  for (const auto& iv : schedule.vectors)
    if (static_cast<int>(iv.z.size()) != spec.size())
      fail(ErrorCode::DimensionMismatch, "schedule vector length differs from game size");

  const InvarianceReduction red = invariance_reduce(schedule, pos);
  TraceBuilder builder(spec, pos);
  for (const auto& step : red.steps) builder.subtract(step.z, step.coeff);

  IrpOutcome out;
  out.start = pos;
  out.coefficients = red.coefficients;
  out.reduced = red.pos;
  if (red.pos.is_zero()) {
    out.trace = builder.trace();
    return out;
  }
  const auto row = std::find_if(cases.begin(), cases.end(), [&](const IrpCase& c) { return c.matches(red.pos); });
  if (row == cases.end())
    fail(ErrorCode::NoCaseMatched, "no reduction case matches the reduced position " + format(red.pos));
  row->recipe(builder);
  if (!(builder.spec() == row->target))
    fail(ErrorCode::NoCaseMatched, "case '" + row->label + "' did not reduce to " + row->target_name);
  out.case_label = row->label;
  out.subgame = row->target_name;
  out.sub_position = builder.position();
  SubSolution sub = row->solver(builder.position());
  out.sub_move = sub.move;
  out.sub_detail = std::move(sub.detail);
  out.trace = builder.trace();
  if (sub.move) out.move = lift_move(out.trace, *sub.move, pos);
  return out;
}

}  // namespace setnim
