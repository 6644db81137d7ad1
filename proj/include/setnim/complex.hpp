#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setnim/game.hpp"

namespace setnim {

// Minimal non-face of the complex generated by the move sets.
struct Circuit {
  VertexSet vertices = 0;
  // Vertices lying in no other circuit.
  VertexSet points = 0;
  // Least-index point, if any.
  std::optional<int> point;

  std::vector<int> indicator(int n) const;
};

struct CircuitReport {
  std::vector<Circuit> circuits;  // ordered by sorted vertex list
  bool pointed = false;           // every circuit has a point
};

// Circuits without points filled in. Up to 12 vertices.
std::vector<Circuit> circuits(const GameSpec& spec);
CircuitReport points_of(std::vector<Circuit> circuits);
CircuitReport analyze_complex(const GameSpec& spec);

// P-positions of a pointed complex are the non-negative integer combinations
// of circuit indicators. Throws NotPointed otherwise.
bool pointed_p_membership(const GameSpec& spec, const Position& pos);
bool pointed_p_membership(const CircuitReport& report, const Position& pos);

// Circuit coefficients named a, b, c, ... in circuit order, e.g.
// "(a+b,c,a,b,a+c)"; stacks in no circuit read 0.
std::string p_family_formula(const CircuitReport& report, int n);

}  // namespace setnim
