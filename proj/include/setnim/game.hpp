#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace setnim {

using Height = std::int64_t;

// Bitmask over vertices 0..n-1 (bit v set <=> vertex v in the set).
using VertexSet = std::uint64_t;

constexpr int kMaxVertices = 63;

inline VertexSet vertex_bit(int v) { return VertexSet{1} << v; }
std::vector<int> members(VertexSet s);
VertexSet make_set(const std::vector<int>& vertices);
int popcount(VertexSet s);

struct Position {
  std::vector<Height> heights;

  Position() = default;
  explicit Position(std::vector<Height> h) : heights(std::move(h)) {}
  Position(std::initializer_list<Height> h) : heights(h) {}
  static Position zeros(int n) { return Position(std::vector<Height>(n, 0)); }

  int size() const { return static_cast<int>(heights.size()); }
  Height operator[](int i) const { return heights[i]; }
  Height& operator[](int i) { return heights[i]; }
  Height total() const;
  bool is_zero() const;
  VertexSet zero_set() const;

  friend auto operator<=>(const Position&, const Position&) = default;
};

struct Move {
  std::vector<Height> removals;

  Move() = default;
  explicit Move(std::vector<Height> r) : removals(std::move(r)) {}
  Move(std::initializer_list<Height> r) : removals(r) {}
  static Move zeros(int n) { return Move(std::vector<Height>(n, 0)); }

  int size() const { return static_cast<int>(removals.size()); }
  Height operator[](int i) const { return removals[i]; }
  Height& operator[](int i) { return removals[i]; }
  Height total() const;
  VertexSet support() const;

  friend auto operator<=>(const Move&, const Move&) = default;
};

enum class Outcome { P, N };

inline char outcome_char(Outcome o) { return o == Outcome::P ? 'P' : 'N'; }

// A SetNim game: n stacks plus the maximal move sets, normalized (no
// duplicates, no set contained in another, sorted by vertex list).
class GameSpec {
 public:
  GameSpec() = default;

  int size() const { return n_; }
  const std::vector<VertexSet>& move_sets() const { return sets_; }
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  std::vector<std::vector<int>> move_set_lists() const;

  // True iff the support lies inside some move set.
  bool playable(VertexSet support) const;
  // Index of the first move set containing the support, or -1.
  int first_set_containing(VertexSet support) const;

  friend bool operator==(const GameSpec& a, const GameSpec& b) {
    return a.n_ == b.n_ && a.sets_ == b.sets_;
  }

 private:
  friend GameSpec build_game(int, const std::vector<std::vector<int>>&, std::string);
  friend GameSpec build_game_from_masks(int, std::vector<VertexSet>, std::string, bool);

  int n_ = 0;
  std::vector<VertexSet> sets_;
  std::string id_;
};

// Removes duplicates and non-maximal sets and sorts; does not check coverage.
std::vector<VertexSet> normalize_move_sets(std::vector<VertexSet> sets);

GameSpec build_game(int n, const std::vector<std::vector<int>>& raw_sets,
                    std::string id = "custom");
// Same contract on bitmasks. With check_coverage=false the union may miss
// vertices (used for intermediate specs that are re-validated later).
GameSpec build_game_from_masks(int n, std::vector<VertexSet> sets, std::string id,
                               bool check_coverage = true);

// nim:<n> | moore:<n>,<k> | cn:<n>,<k> | pn:<n>,<k> | h | file:<path>
GameSpec builtin_game(std::string_view id);
GameSpec load_game_file(const std::filesystem::path& path);
std::string game_file_text(const GameSpec& spec);

struct Legality {
  bool legal = false;
  std::string reason;  // empty when legal
};

Legality is_legal_move(const GameSpec& spec, const Position& pos, const Move& mv);
Position apply_move(const Position& pos, const Move& mv);

// Visits every distinct legal move once, ordered by first containing move set
// and then lexicographically. Return false from the visitor to stop early.
void for_each_legal_move(const GameSpec& spec, const Position& pos,
                         const std::function<bool(const Move&)>& visit);
std::vector<Move> legal_moves(const GameSpec& spec, const Position& pos);

// perm[v] is the image of vertex v.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation inverse(const Permutation& perm);
// Result r has r[perm[v]] = x[v].
Position act(const Permutation& perm, const Position& pos);
Move act(const Permutation& perm, const Move& mv);
VertexSet act(const Permutation& perm, VertexSet s);

// Vertex bijections mapping the move sets of `from` onto those of `to`.
// Stops after `limit` results (0 = unlimited). Sizes up to 12 vertices.
std::vector<Permutation> isomorphisms(const GameSpec& from, const GameSpec& to,
                                      std::size_t limit = 0);
std::vector<Permutation> symmetries(const GameSpec& spec);

// Comma-separated integers, as used on the command line and in messages.
std::string format_heights(const std::vector<Height>& values);
inline std::string format(const Position& p) { return format_heights(p.heights); }
inline std::string format(const Move& m) { return format_heights(m.removals); }
std::vector<Height> parse_heights(std::string_view text);

std::string vertex_label(int v);
std::string set_label(VertexSet s);

}  // namespace setnim
