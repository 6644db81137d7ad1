#include "setnim/oracles.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "setnim/error.hpp"

namespace setnim {
namespace {

void check_position(const Position& pos, int n) {
  if (pos.size() != n)
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(n) + " stacks, got " + std::to_string(pos.size()));
  for (int i = 0; i < n; ++i)
    if (pos[i] < 0) fail(ErrorCode::NegativeHeight, "negative stack height");
}

// Image s + i (rotation) or s - i (reflection) of the cycle.
Position dihedral_image(const Position& p, int s, bool reflect) {
  const int n = p.size();
  Position q = Position::zeros(n);
  for (int i = 0; i < n; ++i) q[i] = p[((reflect ? s - i : s + i) % n + n) % n];
  return q;
}

template <class Pred>
bool any_dihedral(const Position& p, Pred pred) {
  for (int s = 0; s < p.size(); ++s)
    for (bool reflect : {false, true})
      if (pred(dihedral_image(p, s, reflect))) return true;
  return false;
}

Permutation rotation_to_front(int n, int r) {
  Permutation perm(n);
  for (int v = 0; v < n; ++v) perm[v] = ((v - r) % n + n) % n;
  return perm;
}

Permutation reflection_through(int n, int r) {
  Permutation perm(n);
  for (int v = 0; v < n; ++v) perm[v] = ((r - v) % n + n) % n;
  return perm;
}

Height sum_range(const Position& p, int from, int to) {
  Height s = 0;
  for (int i = from; i < to; ++i) s += p[i];
  return s;
}

int first_zero(const Position& p) {
  for (int i = 0; i < p.size(); ++i)
    if (p[i] == 0) return i;
  return -1;
}

bool parse_pair(std::string_view text, int& n, int& k) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return false;
  auto parse = [](std::string_view t, int& out) {
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc{} && ptr == t.data() + t.size();
  };
  return parse(text.substr(0, comma), n) && parse(text.substr(comma + 1), k);
}

bool parse_int(std::string_view text, int& n) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

void check_path_parameters(int n, int k) {
  if (n < 1 || k < 1 || k > n) fail(ErrorCode::BadParameters, "path game needs 1 <= k <= n");
  if (2 * k < n) fail(ErrorCode::UnsupportedParameters, "path closed form needs k >= n/2");
}

SubSolver path_solver(int n, int k) {
  return [n, k](const Position& p) { return SubSolution{move_path(n, k, p), nullptr}; };
}

SubSolver detailed_solver(IrpOutcome (*irp)(const Position&)) {
  return [irp](const Position& p) {
    auto detail = std::make_shared<const IrpOutcome>(irp(p));
    return SubSolution{detail->move, detail};
  };
}

const GameSpec& builtin_cached(std::string_view id) {
  static const std::vector<std::pair<std::string, GameSpec>> cache = [] {
    std::vector<std::pair<std::string, GameSpec>> c;
    for (const char* g : {"h", "cn:4,2", "cn:5,2", "cn:6,3", "cn:7,3", "cn:8,3", "pn:3,2", "pn:3,3", "pn:4,2",
                          "pn:5,3", "pn:6,3"})
      c.emplace_back(g, builtin_game(g));
    return c;
  }();
  for (const auto& [k, v] : cache)
    if (k == id) return v;
  fail(ErrorCode::UnknownId, "no cached game " + std::string(id));
}

const std::vector<IrpCase>& h_cases() {
  static const std::vector<IrpCase> cases = [] {
    std::vector<IrpCase> c;
    c.push_back({"case 1", [](const Position& p) { return p[0] == 0; },
                 [](TraceBuilder& b) { b.zero(make_set({0})); }, builtin_cached("pn:5,3"), "pn:5,3",
                 path_solver(5, 3)});
    c.push_back({"case 1", [](const Position& p) { return p[5] == 0; },
                 [](TraceBuilder& b) {
                   b.permute({5, 4, 3, 2, 1, 0});
                   b.zero(make_set({0}));
                 },
                 builtin_cached("pn:5,3"), "pn:5,3", path_solver(5, 3)});
    c.push_back({"case 2", [](const Position& p) { return p[1] == 0 && p[2] == 0; },
                 [](TraceBuilder& b) {
                   b.zero(make_set({1, 2}));
                   b.merge(make_set({1, 2}));
                   b.permute({0, 2, 1});
                 },
                 builtin_cached("pn:3,2"), "pn:3,2", path_solver(3, 2)});
    c.push_back({"case 2", [](const Position& p) { return p[3] == 0 && p[4] == 0; },
                 [](TraceBuilder& b) {
                   b.zero(make_set({3, 4}));
                   b.merge(make_set({1, 2}));
                   b.permute({1, 0, 2});
                 },
                 builtin_cached("pn:3,2"), "pn:3,2", path_solver(3, 2)});
    c.push_back({"case 3", [](const Position& p) { return p[2] == 0 && p[3] == 0; },
                 [](TraceBuilder& b) {
                   b.zero(make_set({2, 3}));
                   b.permute({1, 0, 3, 2});
                 },
                 builtin_cached("pn:4,2"), "pn:4,2", path_solver(4, 2)});
    c.push_back({"case 4", [](const Position& p) { return p[1] == 0 && p[4] == 0; },
                 [](TraceBuilder& b) { b.zero(make_set({1, 4})); }, builtin_cached("cn:4,2"), "cn:4,2",
                 [](const Position& p) { return SubSolution{move_base(4, 2, p), nullptr}; }});
    return c;
  }();
  return cases;
}

// A zero in the even square and one in the odd square at cyclic distance
// `dist`, mapped to stacks 0 and `dist` by a parity-preserving symmetry.
std::optional<Permutation> square_zero_pair(const Position& p, int dist) {
  for (int i = 0; i < 8; i += 2) {
    if (p[i] != 0) continue;
    for (int j = 1; j < 8; j += 2) {
      if (p[j] != 0) continue;
      if ((j - i + 8) % 8 == dist) return rotation_to_front(8, i);
      if ((i - j + 8) % 8 == dist) return reflection_through(8, i);
    }
  }
  return std::nullopt;
}

bool cn52_form(const Position& q) {
  const Height m = *std::max_element(q.heights.begin(), q.heights.end());
  return q[0] == m && q[1] == q[4] && q[0] + q[1] == q[2] + q[3];
}

bool cn74_form(const Position& q) {
  const Height a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5], g = q[6];
  const bool s1 = a == 0 && b == 0 && c == g && c > 0 && d + e + f == c;
  const bool s2 = a == b && b == c && c == d && d == e && e == f && f == g;
  const bool s3 = a == b && c == g && d == f && a + c == d + e && 0 < a && a < e;
  const bool s4 = a == f && b + c == d + e && d + e == g + a && a < std::min(b, e) && a < std::max(c, d);
  return s1 || s2 || s3 || s4;
}

bool h_form(const Position& p) {
  return p[0] <= p[5] && p[0] + p[1] + p[2] == p[3] + p[4] + p[5] && p[0] == p[3] + std::min(p[2], p[4]);
}

bool cn73_form(const Position& q) {
  const Height m = *std::min_element(q.heights.begin(), q.heights.end());
  return q[0] == m && q[1] <= q[6] && q[0] + q[1] == q[4] + std::min(q[3], q[5]) &&
         q[1] + q[2] + q[3] == q[4] + q[5] + q[6];
}

bool is_solved_base(int n, int k) {
  return (n == 3 && k == 2) || (n == 4 && k == 2) || (n == 5 && k == 2) || (n == 5 && k == 3) ||
         (n == 6 && k == 3) || (n == 7 && k == 4);
}

SolveResult irp_result(const SolvedGame& g, IrpOutcome out) {
  SolveResult r;
  r.outcome = Outcome::N;
  r.move = out.move;
  r.method = Method::Irp;
  r.solved_as = g.id;
  r.detail = std::make_shared<const IrpOutcome>(std::move(out));
  return r;
}

SolveResult direct_result(const SolvedGame& g, std::optional<Move> mv, Method method) {
  SolveResult r;
  r.outcome = Outcome::N;
  r.move = std::move(mv);
  r.method = method;
  r.solved_as = g.id;
  return r;
}

}  // namespace

SquareDecomposition SquareDecomposition::of(const Position& p) {
  check_position(p, 8);
  SquareDecomposition d;
  d.a = std::min({p[0], p[2], p[4], p[6]});
  d.b = std::min({p[1], p[3], p[5], p[7]});
  if (p[0] != d.a) fail(ErrorCode::PreconditionViolated, "stack 0 is not the even-square minimum");
  for (int i = 0; i < 8; ++i) d.x[i] = p[i] - (i % 2 ? d.b : d.a);
  return d;
}

Position SquareDecomposition::reconstruct() const {
  Position p = Position::zeros(8);
  for (int i = 0; i < 8; ++i) p[i] = x[i] + (i % 2 ? b : a);
  return p;
}

Position SquareDecomposition::reduced() const { return Position{x[1], x[2], x[4], x[5] + x[6], x[7]}; }

bool p_membership_base(int n, int k, const Position& pos) {
  if (!is_solved_base(n, k))
    fail(ErrorCode::UnsupportedGame, "no closed form for cn:" + std::to_string(n) + "," + std::to_string(k));
  check_position(pos, n);
  const Position& p = pos;
  if (n == 3) return p[0] == p[1] && p[1] == p[2];
  if (n == 4) return p[0] == p[2] && p[1] == p[3];
  if (n == 6) return p[0] + p[1] == p[3] + p[4] && p[1] + p[2] == p[4] + p[5];
  if (n == 5 && k == 2) return any_dihedral(p, cn52_form);
  if (n == 5) return any_dihedral(p, [](const Position& q) { return q[0] == 0 && q[1] == q[4] && q[1] == q[2] + q[3]; });
  return any_dihedral(p, cn74_form);
}

bool p_membership_path(int n, int k, const Position& pos) {
  check_path_parameters(n, k);
  check_position(pos, n);
  if (k == n) return pos.is_zero();
  // window of k-1 zeros at stacks l .. l+k-2, with l stacks before it
  for (int l = 1; l <= n - k; ++l) {
    bool zeros = true;
    for (int i = l; i < l + k - 1 && zeros; ++i) zeros = pos[i] == 0;
    if (zeros && sum_range(pos, 0, l) == sum_range(pos, l + k - 1, n)) return true;
  }
  return false;
}

bool p_membership_h(const Position& pos) {
  check_position(pos, 6);
  Position r = pos;
  std::reverse(r.heights.begin(), r.heights.end());
  return h_form(pos) || h_form(r);
}

bool p_membership_cn73(const Position& pos) {
  check_position(pos, 7);
  return any_dihedral(pos, cn73_form);
}

bool p_membership_cn83(const Position& pos) {
  check_position(pos, 8);
  return any_dihedral(pos, [](const Position& q) {
    const Height a = std::min({q[0], q[2], q[4], q[6]});
    const Height b = std::min({q[1], q[3], q[5], q[7]});
    if (q[0] != a || q[3] != b) return false;
    return p_membership_base(5, 2, SquareDecomposition::of(q).reduced());
  });
}

bool p_membership_nim(const Position& pos) {
  Height x = 0;
  for (int i = 0; i < pos.size(); ++i) {
    if (pos[i] < 0) fail(ErrorCode::NegativeHeight, "negative stack height");
    x ^= pos[i];
  }
  return x == 0;
}

std::optional<Move> move_path(int n, int k, const Position& pos) {
  check_path_parameters(n, k);
  check_position(pos, n);
  if (p_membership_path(n, k, pos)) return std::nullopt;
  Move mv = Move::zeros(n);
  if (k == n) {
    mv.removals = pos.heights;
    return mv;
  }
  auto L = [&](int i) { return sum_range(pos, 0, i); };
  auto R = [&](int i) { return sum_range(pos, i + k - 1, n); };
  auto zero_out = [&](int from, int to) {
    for (int i = from; i < to; ++i) mv[i] = pos[i];
  };

  // an existing window of k-1 zeros: equalize the sides, innermost stacks first
  for (int l = 1; l <= n - k; ++l) {
    bool zeros = true;
    for (int i = l; i < l + k - 1 && zeros; ++i) zeros = pos[i] == 0;
    if (!zeros) continue;
    Height excess = L(l) - R(l);
    if (excess > 0) {
      for (int i = l - 1; i >= 0 && excess > 0; --i) {
        mv[i] = std::min(excess, pos[i]);
        excess -= mv[i];
      }
    } else {
      excess = -excess;
      for (int i = l + k - 1; i < n && excess > 0; ++i) {
        mv[i] = std::min(excess, pos[i]);
        excess -= mv[i];
      }
    }
    return mv;
  }
  // equal sides around some window: empty the window
  for (int i = 1; i <= n - k; ++i) {
    if (L(i) == R(i)) {
      zero_out(i, i + k - 1);
      return mv;
    }
  }
  if (L(1) > R(1)) {
    mv[0] = pos[0] - R(1);
    zero_out(1, k);
    return mv;
  }
  if (L(n - k) < R(n - k)) {
    zero_out(n - k, n - 1);
    mv[n - 1] = pos[n - 1] - L(n - k);
    return mv;
  }
  for (int i = 1; i < n - k; ++i) {
    if (L(i) < R(i) && L(i + 1) > R(i + 1)) {
      if (L(i) < R(i + 1)) {
        mv[i] = pos[i] - (R(i + 1) - L(i));
        zero_out(i + 1, i + k);
      } else {
        zero_out(i, i + k - 1);
        mv[i + k - 1] = pos[i + k - 1] - (L(i) - R(i + 1));
      }
      return mv;
    }
  }
  fail(ErrorCode::NoCaseMatched, "no path move found for " + format(pos));
}

const std::vector<ZeroOne>& h_invariants() {
  static const std::vector<ZeroOne> zs{{1, 1, 0, 1, 0, 1}, {1, 0, 1, 0, 1, 1}};
  return zs;
}

namespace {

int window_start(const Position& p) {
  const VertexSet support = ~p.zero_set() & 0x3F;
  for (int i = 0; i < 6; ++i) {
    const VertexSet w = vertex_bit(i) | vertex_bit((i + 1) % 6) | vertex_bit((i + 2) % 6);
    if ((support & ~w) == 0) return i;
  }
  return -1;
}

std::vector<IrpProfile> build_profiles() {
  std::vector<IrpProfile> out;
  out.push_back({"h", builtin_cached("h"), InvarianceSchedule::sequential(h_invariants()), h_cases()});
  out.push_back({"cn:5,2", builtin_cached("cn:5,2"), InvarianceSchedule::sequential({{1, 1, 1, 1, 1}}),
                 {{"zero moved to stack a", [](const Position&) { return true; },
                   [](TraceBuilder& b) {
                     b.permute(rotation_to_front(5, first_zero(b.position())));
                     b.zero(make_set({0}));
                   },
                   builtin_cached("pn:4,2"), "pn:4,2", path_solver(4, 2)}}});
  out.push_back({"cn:6,3", builtin_cached("cn:6,3"),
                 InvarianceSchedule::batched({{1, 0, 0, 1, 0, 0},
                                              {0, 1, 0, 0, 1, 0},
                                              {0, 0, 1, 0, 0, 1},
                                              {1, 0, 1, 0, 1, 0},
                                              {0, 1, 0, 1, 0, 1}}),
                 {{"residual inside one window", [](const Position& p) { return window_start(p) >= 0; },
                   [](TraceBuilder& b) {
                     b.permute(rotation_to_front(6, window_start(b.position())));
                     b.zero(make_set({3, 4, 5}));
                   },
                   builtin_cached("pn:3,3"), "pn:3,3", path_solver(3, 3)}}});
  out.push_back({"cn:7,3", builtin_cached("cn:7,3"), InvarianceSchedule::sequential({{1, 1, 1, 1, 1, 1, 1}}),
                 {{"minimum moved to stack a", [](const Position&) { return true; },
                   [](TraceBuilder& b) {
                     b.permute(rotation_to_front(7, first_zero(b.position())));
                     b.zero(make_set({0}));
                   },
                   builtin_cached("h"), "h", detailed_solver(irp_h)}}});
  out.push_back({"cn:8,3", builtin_cached("cn:8,3"),
                 InvarianceSchedule::batched({{1, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 1}}),
                 {{"square minima at distance 3", [](const Position& p) { return square_zero_pair(p, 3).has_value(); },
                   [](TraceBuilder& b) {
                     b.permute(*square_zero_pair(b.position(), 3));
                     b.zero(make_set({0, 3}));
                     b.merge(make_set({3, 4}));
                   },
                   builtin_cached("cn:5,2"), "cn:5,2", detailed_solver(irp_cn52)},
                  {"adjacent square minima", [](const Position& p) { return square_zero_pair(p, 1).has_value(); },
                   [](TraceBuilder& b) {
                     b.permute(*square_zero_pair(b.position(), 1));
                     b.zero(make_set({0, 1}));
                   },
                   builtin_cached("pn:6,3"), "pn:6,3", path_solver(6, 3)}}});
  return out;
}

IrpOutcome run_profile(std::string_view id, const Position& pos) {
  const IrpProfile& p = *irp_profile(id);
  check_position(pos, p.spec.size());
  return irp_move(p.spec, p.schedule, p.cases, pos);
}

}  // namespace

const IrpProfile* irp_profile(std::string_view id) {
  static const std::vector<IrpProfile> profiles = build_profiles();
  for (const auto& p : profiles)
    if (p.game == id) return &p;
  return nullptr;
}

std::optional<std::string> irp_case_label(const IrpProfile& profile, const Position& reduced) {
  check_position(reduced, profile.spec.size());
  if (reduced.is_zero()) return "zero";
  for (const auto& c : profile.cases)
    if (c.matches(reduced)) return c.label;
  return std::nullopt;
}

std::string h_case_label(const Position& reduced) {
  auto label = irp_case_label(*irp_profile("h"), reduced);
  if (!label) fail(ErrorCode::NoCaseMatched, "no case of H matches " + format(reduced));
  return *label;
}

IrpOutcome irp_h(const Position& pos) { return run_profile("h", pos); }
IrpOutcome irp_cn52(const Position& pos) { return run_profile("cn:5,2", pos); }
IrpOutcome irp_cn63(const Position& pos) { return run_profile("cn:6,3", pos); }
IrpOutcome irp_cn73(const Position& pos) { return run_profile("cn:7,3", pos); }
IrpOutcome irp_cn83(const Position& pos) { return run_profile("cn:8,3", pos); }

std::optional<Move> move_h(const Position& pos) { return irp_h(pos).move; }
std::optional<Move> move_cn73(const Position& pos) { return irp_cn73(pos).move; }
std::optional<Move> move_cn83(const Position& pos) { return irp_cn83(pos).move; }

std::optional<Move> move_nim(const Position& pos) {
  if (p_membership_nim(pos)) return std::nullopt;
  Height x = 0;
  for (Height h : pos.heights) x ^= h;
  Move mv = Move::zeros(pos.size());
  for (int i = 0; i < pos.size(); ++i) {
    if ((pos[i] ^ x) < pos[i]) {
      mv[i] = pos[i] - (pos[i] ^ x);
      return mv;
    }
  }
  fail(ErrorCode::NoCaseMatched, "no nim move found for " + format(pos));
}

std::optional<Move> move_base(int n, int k, const Position& pos, std::uint64_t budget) {
  if (!is_solved_base(n, k))
    fail(ErrorCode::UnsupportedGame, "no solver for cn:" + std::to_string(n) + "," + std::to_string(k));
  check_position(pos, n);
  if (p_membership_base(n, k, pos)) return std::nullopt;
  Move mv = Move::zeros(n);
  if (n == 3) {
    const Height m = std::min({pos[0], pos[1], pos[2]});
    for (int i = 0; i < 3; ++i) mv[i] = pos[i] - m;
    return mv;
  }
  if (n == 4) {
    for (int i : {0, 1}) {
      if (pos[i] > pos[i + 2]) mv[i] = pos[i] - pos[i + 2];
      else mv[i + 2] = pos[i + 2] - pos[i];
    }
    return mv;
  }
  if (n == 5 && k == 2) return irp_cn52(pos).move;
  if (n == 6) return irp_cn63(pos).move;
  return brute_winning_move(builtin_game("cn:" + std::to_string(n) + "," + std::to_string(k)), pos, budget);
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::Irp: return "irp";
    case Method::BruteForce: return "brute_force";
  }
  return "unknown";
}

std::optional<SolvedGame> solved_game(std::string_view id) {
  int n = 0;
  int k = 0;
  SolvedGame g;
  g.id = std::string(id);
  if (id == "h") {
    g.spec = builtin_cached("h");
    g.membership = p_membership_h;
    g.winning = [id = g.id](const Position& p, std::uint64_t) {
      SolvedGame self;
      self.id = id;
      return irp_result(self, irp_h(p));
    };
    return g;
  }
  if (id.starts_with("nim:") && parse_int(id.substr(4), n) && n >= 1 && n <= kMaxVertices) {
    g.spec = builtin_game(id);
    g.membership = p_membership_nim;
    g.winning = [id = g.id](const Position& p, std::uint64_t) {
      SolvedGame self;
      self.id = id;
      return direct_result(self, move_nim(p), Method::ClosedForm);
    };
    return g;
  }
  if (id.starts_with("pn:") && parse_pair(id.substr(3), n, k) && n >= 1 && k >= 1 && k <= n && 2 * k >= n &&
      n <= kMaxVertices) {
    g.spec = builtin_game(id);
    g.membership = [n, k](const Position& p) { return p_membership_path(n, k, p); };
    g.winning = [n, k, id = g.id](const Position& p, std::uint64_t) {
      SolvedGame self;
      self.id = id;
      return direct_result(self, move_path(n, k, p), Method::ClosedForm);
    };
    return g;
  }
  if (!id.starts_with("cn:") || !parse_pair(id.substr(3), n, k)) return std::nullopt;
  const std::string gid = g.id;
  if (is_solved_base(n, k)) {
    g.spec = builtin_game(id);
    g.membership = [n, k](const Position& p) { return p_membership_base(n, k, p); };
    g.constructive = !((n == 5 && k == 3) || (n == 7 && k == 4));
    g.winning = [n, k, gid](const Position& p, std::uint64_t budget) {
      SolvedGame self;
      self.id = gid;
      if (n == 5 && k == 2) return irp_result(self, irp_cn52(p));
      if (n == 6) return irp_result(self, irp_cn63(p));
      if (n == 3 || n == 4) return direct_result(self, move_base(n, k, p, budget), Method::ClosedForm);
      return direct_result(self, move_base(n, k, p, budget), Method::BruteForce);
    };
    return g;
  }
  if (n == 7 && k == 3) {
    g.spec = builtin_cached("cn:7,3");
    g.membership = p_membership_cn73;
    g.winning = [gid](const Position& p, std::uint64_t) {
      SolvedGame self;
      self.id = gid;
      return irp_result(self, irp_cn73(p));
    };
    return g;
  }
  if (n == 8 && k == 3) {
    g.spec = builtin_cached("cn:8,3");
    g.membership = p_membership_cn83;
    g.winning = [gid](const Position& p, std::uint64_t) {
      SolvedGame self;
      self.id = gid;
      return irp_result(self, irp_cn83(p));
    };
    return g;
  }
  return std::nullopt;
}

std::vector<std::string> solved_ids_for_size(int n) {
  std::vector<std::string> out;
  for (auto [cn, ck] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {5, 2}, {5, 3}, {6, 3}, {7, 4}, {7, 3}, {8, 3}})
    if (cn == n) out.push_back("cn:" + std::to_string(cn) + "," + std::to_string(ck));
  if (n == 6) out.push_back("h");
  for (int k = (n + 1) / 2; k <= n; ++k) out.push_back("pn:" + std::to_string(n) + "," + std::to_string(k));
  out.push_back("nim:" + std::to_string(n));
  return out;
}

SolveResult solve_solved(const SolvedGame& game, const Position& pos, std::uint64_t budget) {
  check_position(pos, game.spec.size());
  if (game.membership(pos)) {
    SolveResult r;
    r.outcome = Outcome::P;
    r.method = Method::ClosedForm;
    r.solved_as = game.id;
    return r;
  }
  SolveResult r = game.winning(pos, budget);
  if (!r.move)
    fail(ErrorCode::Internal, "closed form and move construction disagree at " + format(pos));
  return r;
}

namespace {

struct Match {
  ReductionTrace trace;
  Position position;
  SolvedGame game;
};

// Merges every mergeable class, then looks for a solved game isomorphic to
// the result.
std::optional<Match> match_solved(const GameSpec& spec, const Position& pos) {
  TraceBuilder b(spec, pos);
  while (true) {
    const auto classes = mergeable_classes(b.spec());
    const auto it = std::find_if(classes.begin(), classes.end(), [](VertexSet c) { return popcount(c) >= 2; });
    if (it == classes.end()) break;
    b.merge(*it);
  }
  const int n = b.spec().size();
  if (n > 12) return std::nullopt;
  for (const std::string& id : solved_ids_for_size(n)) {
    std::optional<SolvedGame> g = solved_game(id);
    if (!g || g->spec.move_sets().size() != b.spec().move_sets().size()) continue;
    const auto isos = isomorphisms(b.spec(), g->spec, 1);
    if (isos.empty()) continue;
    b.permute(isos.front());
    return Match{b.trace(), b.position(), std::move(*g)};
  }
  return std::nullopt;
}

}  // namespace

SolveResult solve(const GameSpec& spec, const Position& pos, std::uint64_t budget) {
  check_position(pos, spec.size());
  if (auto g = solved_game(spec.id()); g && g->spec == spec) return solve_solved(*g, pos, budget);

  if (auto m = match_solved(spec, pos)) {
    const SolveResult inner = solve_solved(m->game, m->position, budget);
    SolveResult r = inner;
    r.method = inner.method == Method::BruteForce ? Method::BruteForce : Method::Irp;
    r.reduction = m->trace;
    r.reduced_position = m->position;
    r.reduced_move = inner.move;
    if (inner.move) r.move = lift_move(m->trace, *inner.move, pos);
    return r;
  }
  SolveResult r;
  r.method = Method::BruteForce;
  r.solved_as = spec.id();
  r.move = brute_winning_move(spec, pos, budget);
  r.outcome = r.move ? Outcome::N : Outcome::P;
  return r;
}

SolveResult solve(std::string_view game_id, const Position& pos, std::uint64_t budget) {
  return solve(builtin_game(game_id), pos, budget);
}

Classification classify(const GameSpec& spec, const Position& pos, std::uint64_t budget) {
  check_position(pos, spec.size());
  if (auto g = solved_game(spec.id()); g && g->spec == spec)
    return {g->membership(pos) ? Outcome::P : Outcome::N, Method::ClosedForm, g->id};
  if (auto m = match_solved(spec, pos))
    return {m->game.membership(m->position) ? Outcome::P : Outcome::N, Method::Irp, m->game.id};
  return {outcome(spec, pos, budget), Method::BruteForce, spec.id()};
}

Membership oracle_membership(const SolvedGame& game) { return game.membership; }

MoveSupplier oracle_moves(const SolvedGame& game, std::shared_ptr<const OutcomeTable> table) {
  if (game.constructive || !table) {
    return [game](const Position& p) { return solve_solved(game, p).move; };
  }
  const GameSpec spec = game.spec;
  return [spec, table](const Position& p) { return winning_move_from_table(spec, *table, p); };
}

}  // namespace setnim
