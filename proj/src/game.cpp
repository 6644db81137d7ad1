#include "setnim/game.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "setnim/error.hpp"

namespace setnim {

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

VertexSet make_set(const std::vector<int>& vertices) {
  VertexSet s = 0;
  for (int v : vertices) s |= vertex_bit(v);
  return s;
}

int popcount(VertexSet s) { return std::popcount(s); }

Height Position::total() const {
  return std::accumulate(heights.begin(), heights.end(), Height{0});
}

bool Position::is_zero() const {
  return std::all_of(heights.begin(), heights.end(), [](Height h) { return h == 0; });
}

VertexSet Position::zero_set() const {
  VertexSet s = 0;
  for (int i = 0; i < size(); ++i)
    if (heights[i] == 0) s |= vertex_bit(i);
  return s;
}

Height Move::total() const {
  return std::accumulate(removals.begin(), removals.end(), Height{0});
}

VertexSet Move::support() const {
  VertexSet s = 0;
  for (int i = 0; i < size(); ++i)
    if (removals[i] != 0) s |= vertex_bit(i);
  return s;
}

std::vector<std::vector<int>> GameSpec::move_set_lists() const {
  std::vector<std::vector<int>> out;
  out.reserve(sets_.size());
  for (VertexSet s : sets_) out.push_back(members(s));
  return out;
}

bool GameSpec::playable(VertexSet support) const { return first_set_containing(support) >= 0; }

int GameSpec::first_set_containing(VertexSet support) const {
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if ((support & ~sets_[i]) == 0) return static_cast<int>(i);
  return -1;
}

std::vector<VertexSet> normalize_move_sets(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VertexSet> kept;
  for (VertexSet s : sets) {
    if (s == 0) continue;
    bool dominated = std::any_of(sets.begin(), sets.end(), [s](VertexSet t) {
      return t != s && (s & ~t) == 0;
    });
    if (!dominated) kept.push_back(s);
  }
  // canonical order: lexicographic on the ascending vertex lists
  std::sort(kept.begin(), kept.end(), [](VertexSet a, VertexSet b) {
    return members(a) < members(b);
  });
  return kept;
}

GameSpec build_game_from_masks(int n, std::vector<VertexSet> sets, std::string id,
                               bool check_coverage) {
  if (n < 1 || n > kMaxVertices)
    fail(ErrorCode::BadParameters, "vertex count must be in 1.." + std::to_string(kMaxVertices));
  const VertexSet all = n == 64 ? ~VertexSet{0} : (vertex_bit(n) - 1);
  VertexSet covered = 0;
  for (VertexSet s : sets) {
    if (s == 0) fail(ErrorCode::EmptySet, "move sets must be nonempty");
    if (s & ~all) fail(ErrorCode::IndexOutOfRange, "move set vertex outside 0.." + std::to_string(n - 1));
    covered |= s;
  }
  if (check_coverage && covered != all) {
    std::string missing;
    for (int v : members(all & ~covered)) missing += vertex_label(v);
    fail(ErrorCode::CoverageGap, "vertices not covered by any move set: " + missing);
  }
  GameSpec spec;
  spec.n_ = n;
  spec.sets_ = normalize_move_sets(std::move(sets));
  spec.id_ = std::move(id);
  return spec;
}

GameSpec build_game(int n, const std::vector<std::vector<int>>& raw_sets, std::string id) {
  if (n < 1 || n > kMaxVertices)
    fail(ErrorCode::BadParameters, "vertex count must be in 1.." + std::to_string(kMaxVertices));
  std::vector<VertexSet> masks;
  for (const auto& raw : raw_sets) {
    if (raw.empty()) fail(ErrorCode::EmptySet, "move sets must be nonempty");
    for (int v : raw)
      if (v < 0 || v >= n)
        fail(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
    masks.push_back(make_set(raw));
  }
  return build_game_from_masks(n, std::move(masks), std::move(id));
}

namespace {

std::vector<int> parse_params(std::string_view text, std::string_view id) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      fail(ErrorCode::UnknownId, "malformed game id '" + std::string(id) + "'");
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

VertexSet window(int start, int k, int n) {
  VertexSet s = 0;
  for (int j = 0; j < k; ++j) s |= vertex_bit((start + j) % n);
  return s;
}

void check_nk(int n, int k, std::string_view id) {
  if (n < 1 || n > kMaxVertices || k < 1 || k > n)
    fail(ErrorCode::BadParameters, "bad parameters in '" + std::string(id) + "' (need 1 <= k <= n)");
}

}  // namespace

GameSpec builtin_game(std::string_view id) {
  const std::string ids(id);
  if (id == "h") {
    return build_game(6, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {0, 5}}, "h");
  }
  if (id.starts_with("file:")) {
    GameSpec spec = load_game_file(std::filesystem::path(std::string(id.substr(5))));
    spec.set_id(ids);
    return spec;
  }
  const auto colon = id.find(':');
  if (colon == std::string_view::npos) fail(ErrorCode::UnknownId, "unknown game id '" + ids + "'");
  const std::string_view family = id.substr(0, colon);
  const std::vector<int> params = parse_params(id.substr(colon + 1), id);

  if (family == "nim") {
    if (params.size() != 1) fail(ErrorCode::UnknownId, "nim takes one parameter: '" + ids + "'");
    const int n = params[0];
    check_nk(n, 1, id);
    std::vector<VertexSet> sets;
    for (int v = 0; v < n; ++v) sets.push_back(vertex_bit(v));
    return build_game_from_masks(n, sets, ids);
  }
  if (params.size() != 2) fail(ErrorCode::UnknownId, "expected two parameters in '" + ids + "'");
  const int n = params[0];
  const int k = params[1];
  check_nk(n, k, id);
  std::vector<VertexSet> sets;
  if (family == "cn") {
    for (int i = 0; i < n; ++i) sets.push_back(window(i, k, n));
  } else if (family == "pn") {
    for (int i = 0; i + k <= n; ++i) sets.push_back(window(i, k, n));
  } else if (family == "moore") {
    if (n > 20) fail(ErrorCode::BadParameters, "moore games limited to 20 stacks");
    for (VertexSet s = 1; s < vertex_bit(n); ++s)
      if (std::popcount(s) == k) sets.push_back(s);
  } else {
    fail(ErrorCode::UnknownId, "unknown game family '" + std::string(family) + "'");
  }
  return build_game_from_masks(n, sets, ids);
}

GameSpec load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileFormatError, "cannot open game file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::FileFormatError, "game file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() ||
      !doc.contains("move_sets") || !doc["move_sets"].is_array())
    fail(ErrorCode::FileFormatError, "game file needs integer \"n\" and array \"move_sets\"");
  std::vector<std::vector<int>> sets;
  for (const auto& s : doc["move_sets"]) {
    if (!s.is_array()) fail(ErrorCode::FileFormatError, "each move set must be an array");
    std::vector<int> vs;
    for (const auto& v : s) {
      if (!v.is_number_integer()) fail(ErrorCode::FileFormatError, "vertices must be integers");
      vs.push_back(v.get<int>());
    }
    sets.push_back(std::move(vs));
  }
  return build_game(doc["n"].get<int>(), sets, "file:" + path.string());
}

std::string game_file_text(const GameSpec& spec) {
  nlohmann::json doc;
  doc["n"] = spec.size();
  doc["move_sets"] = spec.move_set_lists();
  return doc.dump();
}

Legality is_legal_move(const GameSpec& spec, const Position& pos, const Move& mv) {
  if (pos.size() != spec.size() || mv.size() != spec.size())
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(spec.size()) + " stacks");
  for (int i = 0; i < mv.size(); ++i) {
    if (mv[i] < 0) return {false, "NegativeRemoval"};
    if (mv[i] > pos[i]) return {false, "Overdraw"};
  }
  if (mv.total() < 1) return {false, "NoTokensRemoved"};
  if (!spec.playable(mv.support())) return {false, "SupportNotInMoveSet"};
  return {true, ""};
}

Position apply_move(const Position& pos, const Move& mv) {
  if (pos.size() != mv.size()) fail(ErrorCode::DimensionMismatch, "move and position differ in length");
  Position out = pos;
  for (int i = 0; i < pos.size(); ++i) {
    out[i] -= mv[i];
    if (out[i] < 0)
      fail(ErrorCode::NegativeResult, "move removes more than stack " + vertex_label(i) + " holds");
  }
  return out;
}

void for_each_legal_move(const GameSpec& spec, const Position& pos,
                         const std::function<bool(const Move&)>& visit) {
  if (pos.size() != spec.size())
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(spec.size()) + " stacks");
  const auto& sets = spec.move_sets();
  Move mv = Move::zeros(spec.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    std::vector<int> vs;
    for (int v : members(sets[j]))
      if (pos[v] > 0) vs.push_back(v);
    if (vs.empty()) continue;
    std::fill(mv.removals.begin(), mv.removals.end(), 0);
    // odometer, last vertex fastest => lexicographic order
    while (true) {
      int i = static_cast<int>(vs.size()) - 1;
      while (i >= 0 && mv[vs[i]] == pos[vs[i]]) {
        mv[vs[i]] = 0;
        --i;
      }
      if (i < 0) break;
      ++mv[vs[i]];
      if (spec.first_set_containing(mv.support()) != static_cast<int>(j)) continue;
      if (!visit(mv)) return;
    }
  }
}

std::vector<Move> legal_moves(const GameSpec& spec, const Position& pos) {
  std::vector<Move> out;
  for_each_legal_move(spec, pos, [&](const Move& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse(const Permutation& perm) {
  Permutation inv(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) inv[perm[v]] = static_cast<int>(v);
  return inv;
}

Position act(const Permutation& perm, const Position& pos) {
  Position out = Position::zeros(pos.size());
  for (int v = 0; v < pos.size(); ++v) out[perm[v]] = pos[v];
  return out;
}

Move act(const Permutation& perm, const Move& mv) {
  Move out = Move::zeros(mv.size());
  for (int v = 0; v < mv.size(); ++v) out[perm[v]] = mv[v];
  return out;
}

VertexSet act(const Permutation& perm, VertexSet s) {
  VertexSet out = 0;
  for (int v : members(s)) out |= vertex_bit(perm[v]);
  return out;
}

std::vector<Permutation> isomorphisms(const GameSpec& from, const GameSpec& to, std::size_t limit) {
  const int n = from.size();
  if (n > 12) fail(ErrorCode::TooLarge, "symmetry search limited to 12 vertices");
  std::vector<Permutation> found;
  if (to.size() != n || from.move_sets().size() != to.move_sets().size()) return found;

  const auto& src = from.move_sets();
  std::vector<VertexSet> target = to.move_sets();
  std::sort(target.begin(), target.end());

  // sets that become fully assigned once vertex v is placed
  std::vector<std::vector<VertexSet>> closing(n);
  for (VertexSet s : src) closing[63 - std::countl_zero(s)].push_back(s);

  // vertex signature: number of sets of each size containing it
  auto signature = [n](const GameSpec& g, int v) {
    std::vector<int> sig(n + 1, 0);
    for (VertexSet s : g.move_sets())
      if (s & vertex_bit(v)) ++sig[std::popcount(s)];
    return sig;
  };
  std::vector<std::vector<int>> sig_from(n), sig_to(n);
  for (int v = 0; v < n; ++v) {
    sig_from[v] = signature(from, v);
    sig_to[v] = signature(to, v);
  }

  Permutation perm(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> place = [&](int v) -> bool {
    if (v == n) {
      found.push_back(perm);
      return limit == 0 || found.size() < limit;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || sig_from[v] != sig_to[w]) continue;
      perm[v] = w;
      bool ok = true;
      for (VertexSet s : closing[v]) {
        if (!std::binary_search(target.begin(), target.end(), act(perm, s))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[w] = true;
      const bool more = place(v + 1);
      used[w] = false;
      if (!more) return false;
    }
    perm[v] = -1;
    return true;
  };
  place(0);
  return found;
}

std::vector<Permutation> symmetries(const GameSpec& spec) { return isomorphisms(spec, spec); }

std::string format_heights(const std::vector<Height>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<Height> parse_heights(std::string_view text) {
  std::vector<Height> out;
  if (text.empty()) fail(ErrorCode::BadRequest, "empty integer list");
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    Height value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      fail(ErrorCode::BadRequest, "not an integer list: '" + std::string(text) + "'");
    if (value < 0) fail(ErrorCode::NegativeHeight, "negative entry in '" + std::string(text) + "'");
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

std::string vertex_label(int v) {
  if (v >= 0 && v < 26) return std::string(1, static_cast<char>('a' + v));
  return "v" + std::to_string(v);
}

std::string set_label(VertexSet s) {
  std::string out = "{";
  for (int v : members(s)) out += vertex_label(v);
  return out + "}";
}

}  // namespace setnim
