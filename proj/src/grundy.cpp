#include "setnim/grundy.hpp"

#include <algorithm>
#include <unordered_map>

#include "parallel.hpp"
#include "setnim/error.hpp"

namespace setnim {
namespace {

std::vector<std::vector<int>> set_vertices(const GameSpec& spec) {
  std::vector<std::vector<int>> out;
  for (VertexSet s : spec.move_sets()) out.push_back(members(s));
  return out;
}

// Visits every nonzero step pattern on `vertices` that stays inside the box,
// downward (removals) or upward (additions). f(offset, support) gets the index
// distance and the support of the step; returning false stops the walk.
template <class F>
bool for_each_step(const Box& box, const Position& pos, const std::vector<int>& vertices,
                   bool upward, F&& f) {
  int vs[kMaxVertices];
  Height room[kMaxVertices];
  Height cur[kMaxVertices];
  int k = 0;
  for (int v : vertices) {
    const Height r = upward ? box.limit(v) - pos[v] : pos[v];
    if (r > 0) {
      vs[k] = v;
      room[k] = r;
      cur[k] = 0;
      ++k;
    }
  }
  std::size_t off = 0;
  VertexSet support = 0;
  while (true) {
    int i = k - 1;
    while (i >= 0 && cur[i] == room[i]) {
      off -= static_cast<std::size_t>(cur[i]) * box.stride(vs[i]);
      cur[i] = 0;
      support &= ~vertex_bit(vs[i]);
      --i;
    }
    if (i < 0) return true;
    ++cur[i];
    off += box.stride(vs[i]);
    support |= vertex_bit(vs[i]);
    if (!f(off, support)) return false;
  }
}

void check_budget(std::uint64_t used, std::uint64_t budget) {
  if (used > budget)
    fail(ErrorCode::BudgetExceeded, "work budget of " + std::to_string(budget) + " exceeded");
}

struct HeightsHash {
  std::size_t operator()(const std::vector<Height>& h) const {
    std::size_t seed = h.size();
    for (Height x : h) seed ^= std::hash<Height>{}(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

GrundyValue mex(std::vector<GrundyValue>& values) {
  std::sort(values.begin(), values.end());
  GrundyValue m = 0;
  for (GrundyValue v : values) {
    if (v == m) ++m;
    else if (v > m) break;
  }
  return m;
}

}  // namespace

GrundyValue grundy(const GameSpec& spec, const Position& pos, const GrundyOptions& options) {
  if (pos.size() != spec.size()) fail(ErrorCode::DimensionMismatch, "position length differs from game size");
  for (int i = 0; i < pos.size(); ++i)
    if (pos[i] < 0) fail(ErrorCode::NegativeHeight, "negative stack height");

  std::vector<Permutation> perms;
  if (options.canonicalize) perms = symmetries(spec);
  auto key_of = [&](const Position& p) {
    if (perms.empty()) return p.heights;
    std::vector<Height> best = p.heights;
    for (const auto& perm : perms) best = std::min(best, act(perm, p).heights);
    return best;
  };

  std::unordered_map<std::vector<Height>, GrundyValue, HeightsHash> memo;
  std::uint64_t work = 0;

  struct Frame {
    Position pos;
    std::vector<Position> options;
    std::size_t next = 0;
    std::vector<GrundyValue> values;
  };
  auto expand = [&](const Position& p) {
    Frame f{p, {}, 0, {}};
    for_each_legal_move(spec, p, [&](const Move& mv) {
      f.options.push_back(apply_move(p, mv));
      return true;
    });
    work += f.options.size();
    check_budget(work, options.budget);
    return f;
  };

  std::vector<Frame> stack;
  stack.push_back(expand(pos));
  while (true) {
    Frame& top = stack.back();
    if (top.next < top.options.size()) {
      const Position& child = top.options[top.next];
      if (options.memoize) {
        auto it = memo.find(key_of(child));
        if (it != memo.end()) {
          top.values.push_back(it->second);
          ++top.next;
          continue;
        }
      }
      Frame f = expand(child);
      stack.push_back(std::move(f));
      continue;
    }
    const GrundyValue g = mex(top.values);
    if (options.memoize) memo.emplace(key_of(top.pos), g);
    stack.pop_back();
    if (stack.empty()) return g;
    stack.back().values.push_back(g);
    ++stack.back().next;
  }
}

OutcomeTable::OutcomeTable(const GameSpec& spec, Box box, std::uint64_t budget) : box_(std::move(box)) {
  if (box_.rank() != spec.size()) fail(ErrorCode::DimensionMismatch, "box rank differs from game size");
  std::uint64_t work = box_.size();
  check_budget(work, budget);
  const auto sets = set_vertices(spec);
  std::vector<std::uint8_t> marked(box_.size(), 0);
  p_.assign(box_.size(), 0);
  for (std::size_t idx = 0; idx < box_.size(); ++idx) {
    if (marked[idx]) continue;
    p_[idx] = 1;
    const Position pos = box_.position(idx);
    for (const auto& vs : sets) {
      for_each_step(box_, pos, vs, true, [&](std::size_t off, VertexSet) {
        marked[idx + off] = 1;
        ++work;
        return true;
      });
    }
    check_budget(work, budget);
  }
}

std::size_t OutcomeTable::p_count() const {
  return static_cast<std::size_t>(std::count(p_.begin(), p_.end(), std::uint8_t{1}));
}

std::vector<GrundyValue> grundy_table(const GameSpec& spec, const Box& box, std::uint64_t budget) {
  if (box.rank() != spec.size()) fail(ErrorCode::DimensionMismatch, "box rank differs from game size");
  std::uint64_t work = box.size();
  check_budget(work, budget);
  const auto sets = set_vertices(spec);
  std::vector<GrundyValue> g(box.size(), 0);
  std::vector<GrundyValue> seen;
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    const Position pos = box.position(idx);
    seen.clear();
    for (const auto& vs : sets) {
      for_each_step(box, pos, vs, false, [&](std::size_t off, VertexSet) {
        seen.push_back(g[idx - off]);
        return true;
      });
    }
    work += seen.size();
    check_budget(work, budget);
    g[idx] = mex(seen);
  }
  return g;
}

Outcome outcome(const GameSpec& spec, const Position& pos, std::uint64_t budget) {
  if (pos.size() != spec.size()) fail(ErrorCode::DimensionMismatch, "position length differs from game size");
  if (box_volume(pos.heights) > budget)
    fail(ErrorCode::BudgetExceeded, "position box exceeds the work budget of " + std::to_string(budget));
  const OutcomeTable table(spec, Box::below(pos), budget);
  return table.is_p(pos) ? Outcome::P : Outcome::N;
}

std::vector<Position> p_positions(const GameSpec& spec, Height bound, std::uint64_t budget) {
  if (bound < 0) fail(ErrorCode::BadParameters, "bound must be non-negative");
  if (box_volume(std::vector<Height>(spec.size(), bound)) > budget)
    fail(ErrorCode::BudgetExceeded, "position box exceeds the work budget of " + std::to_string(budget));
  const OutcomeTable table(spec, Box::cube(spec.size(), bound), budget);
  std::vector<Position> out;
  for (std::size_t idx = 0; idx < table.box().size(); ++idx)
    if (table.is_p(idx)) out.push_back(table.box().position(idx));
  return out;
}

std::optional<Move> winning_move_from_table(const GameSpec& spec, const OutcomeTable& table,
                                            const Position& pos) {
  if (!table.box().contains(pos)) fail(ErrorCode::PreconditionViolated, "position outside the outcome table");
  std::optional<Move> found;
  if (table.is_p(pos)) return found;
  for_each_legal_move(spec, pos, [&](const Move& mv) {
    if (table.is_p(apply_move(pos, mv))) {
      found = mv;
      return false;
    }
    return true;
  });
  if (!found) fail(ErrorCode::Internal, "N-position without a move to P");
  return found;
}

std::optional<Move> brute_winning_move(const GameSpec& spec, const Position& pos, std::uint64_t budget) {
  if (pos.size() != spec.size()) fail(ErrorCode::DimensionMismatch, "position length differs from game size");
  if (box_volume(pos.heights) > budget)
    fail(ErrorCode::BudgetExceeded, "position box exceeds the work budget of " + std::to_string(budget));
  const OutcomeTable table(spec, Box::below(pos), budget);
  return winning_move_from_table(spec, table, pos);
}

VerificationReport verify_oracle(const GameSpec& spec, const Membership& membership,
                                 const MoveSupplier& move_fn, const VerifyOptions& options) {
  if (options.bound < 0) fail(ErrorCode::BadParameters, "bound must be non-negative");
  const Box box = Box::cube(spec.size(), options.bound);
  if (box.size() > options.budget)
    fail(ErrorCode::BudgetExceeded, "position box exceeds the work budget of " + std::to_string(options.budget));
  const OutcomeTable table(spec, box, options.budget);

  const std::size_t chunks = static_cast<std::size_t>(options.bound) + 1;
  const std::size_t chunk_size = box.stride(0);
  std::vector<std::uint8_t> member(box.size(), 0);
  detail::run_chunks(chunks, options.threads, [&](std::size_t c) {
    for (std::size_t idx = c * chunk_size; idx < (c + 1) * chunk_size; ++idx)
      member[idx] = membership(box.position(idx)) ? 1 : 0;
  });

  const auto sets = set_vertices(spec);
  std::vector<VerificationReport> parts(chunks);
  detail::run_chunks(chunks, options.threads, [&](std::size_t c) {
    VerificationReport& r = parts[c];
    for (std::size_t idx = c * chunk_size; idx < (c + 1) * chunk_size; ++idx) {
      const Position pos = box.position(idx);
      ++r.positions_checked;
      if ((member[idx] != 0) != table.is_p(idx)) {
        ++r.mismatch_count;
        if (r.outcome_mismatches.size() < options.cap) r.outcome_mismatches.push_back(pos);
      }
      if (member[idx]) {
        for (std::size_t s = 0; s < sets.size(); ++s) {
          for_each_step(box, pos, sets[s], false, [&](std::size_t off, VertexSet support) {
            if (spec.first_set_containing(support) != static_cast<int>(s)) return true;
            if (member[idx - off]) {
              ++r.closure_count;
              if (r.closure_violations.size() < options.cap) {
                const Position to = box.position(idx - off);
                Move mv = Move::zeros(pos.size());
                for (int i = 0; i < pos.size(); ++i) mv[i] = pos[i] - to[i];
                r.closure_violations.push_back({pos, mv, to});
              }
            }
            return true;
          });
        }
      } else if (move_fn) {
        bool ok = false;
        try {
          const std::optional<Move> mv = move_fn(pos);
          if (mv && is_legal_move(spec, pos, *mv).legal) ok = member[box.index(apply_move(pos, *mv))] != 0;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::BudgetExceeded) throw;
        }
        if (!ok) {
          ++r.reachability_count;
          if (r.reachability_violations.size() < options.cap) r.reachability_violations.push_back(pos);
        }
      }
    }
  });

  VerificationReport report;
  report.bound = options.bound;
  report.reachability_checked = static_cast<bool>(move_fn);
  auto append = [&](auto& dst, const auto& src) {
    for (const auto& x : src)
      if (dst.size() < options.cap) dst.push_back(x);
  };
  for (const auto& r : parts) {
    report.positions_checked += r.positions_checked;
    report.mismatch_count += r.mismatch_count;
    report.closure_count += r.closure_count;
    report.reachability_count += r.reachability_count;
    append(report.outcome_mismatches, r.outcome_mismatches);
    append(report.closure_violations, r.closure_violations);
    append(report.reachability_violations, r.reachability_violations);
  }
  return report;
}

}  // namespace setnim
