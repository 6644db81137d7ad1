#include "setnim/complex.hpp"

#include <algorithm>

#include "setnim/error.hpp"

namespace setnim {
namespace {

bool is_face(const GameSpec& spec, VertexSet s) {
  if (s == 0) return true;
  return std::any_of(spec.move_sets().begin(), spec.move_sets().end(), [s](VertexSet m) { return (s & m) == s; });
}

std::string coefficient_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "c" + std::to_string(i + 1);
}

}  // namespace

std::vector<int> Circuit::indicator(int n) const {
  std::vector<int> e(n, 0);
  for (int v : members(vertices)) e[v] = 1;
  return e;
}

std::vector<Circuit> circuits(const GameSpec& spec) {
  const int n = spec.size();
  if (n > 12) fail(ErrorCode::TooLarge, "circuit enumeration supports at most 12 vertices");
  std::vector<Circuit> out;
  const VertexSet full = (VertexSet{1} << n) - 1;
  for (VertexSet s = 1; s <= full; ++s) {
    if (is_face(spec, s)) continue;
    bool minimal = true;
    for (int v : members(s)) {
      if (!is_face(spec, s & ~vertex_bit(v))) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back({s, 0, std::nullopt});
  }
  std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) {
    return members(a.vertices) < members(b.vertices);
  });
  return out;
}

CircuitReport points_of(std::vector<Circuit> list) {
  CircuitReport report{std::move(list), true};
  for (std::size_t i = 0; i < report.circuits.size(); ++i) {
    VertexSet others = 0;
    for (std::size_t j = 0; j < report.circuits.size(); ++j)
      if (j != i) others |= report.circuits[j].vertices;
    Circuit& c = report.circuits[i];
    c.points = c.vertices & ~others;
    c.point = c.points ? std::optional<int>(members(c.points).front()) : std::nullopt;
    report.pointed = report.pointed && c.point.has_value();
  }
  return report;
}

CircuitReport analyze_complex(const GameSpec& spec) { return points_of(circuits(spec)); }

bool pointed_p_membership(const CircuitReport& report, const Position& pos) {
  if (!report.pointed) fail(ErrorCode::NotPointed, "the complex has a circuit without a point");
  const int n = pos.size();
  for (const Circuit& c : report.circuits)
    if (members(c.vertices).back() >= n) fail(ErrorCode::DimensionMismatch, "position is shorter than the complex");
  std::vector<Height> rebuilt(n, 0);
  for (const Circuit& c : report.circuits) {
    const Height coeff = pos[*c.point];
    if (coeff < 0) fail(ErrorCode::NegativeHeight, "negative stack height");
    for (int v : members(c.vertices)) rebuilt[v] += coeff;
  }
  return rebuilt == pos.heights;
}

bool pointed_p_membership(const GameSpec& spec, const Position& pos) {
  if (pos.size() != spec.size())
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(spec.size()) + " stacks");
  return pointed_p_membership(analyze_complex(spec), pos);
}

std::string p_family_formula(const CircuitReport& report, int n) {
  std::string out = "(";
  for (int v = 0; v < n; ++v) {
    if (v) out += ',';
    std::string term;
    for (std::size_t i = 0; i < report.circuits.size(); ++i) {
      if (!(report.circuits[i].vertices & vertex_bit(v))) continue;
      if (!term.empty()) term += '+';
      term += coefficient_name(i);
    }
    out += term.empty() ? "0" : term;
  }
  return out + ")";
}

}  // namespace setnim
