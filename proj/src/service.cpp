#include "setnim/service.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <variant>

#include "setnim/complex.hpp"
#include "setnim/invariance.hpp"
#include "setnim/oracles.hpp"
#include "setnim/reduction.hpp"

namespace setnim::service {
namespace {

std::optional<SolvedGame> solved_for(const GameSpec& spec) {
  auto g = solved_game(spec.id());
  if (g && g->spec == spec) return g;
  return std::nullopt;
}

const char* outcome_name(Outcome o) { return o == Outcome::P ? "P" : "N"; }

Json step_json(const ReductionStep& step, const Position& after) {
  Json j = std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SymmetryStep>) return {{"step", "relabel"}, {"map", s.perm}};
        if constexpr (std::is_same_v<T, InvarianceStep>)
          return {{"step", "subtract"}, {"vector", s.z}, {"times", s.coeff}};
        if constexpr (std::is_same_v<T, ZeroStep>) return {{"step", "zero"}, {"stacks", set_label(s.removed)}};
        if constexpr (std::is_same_v<T, MergeStep>) return {{"step", "merge"}, {"stacks", set_label(s.cls)}};
      },
      step);
  j["position"] = after.heights;
  return j;
}

Json trace_json(const ReductionTrace& trace, const Position& start) {
  const auto positions = project_all(trace, start);
  Json steps = Json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) steps.push_back(step_json(trace.steps[i], positions[i + 1]));
  return steps;
}

Json process_json(const IrpOutcome& out) {
  Json j;
  j["position"] = out.start.heights;
  j["coefficients"] = out.coefficients;
  j["invariance_reduced"] = out.reduced.heights;
  j["steps"] = trace_json(out.trace, out.start);
  if (out.case_label.empty()) {
    j["case"] = nullptr;
    return j;
  }
  j["case"] = out.case_label;
  j["subgame"] = out.subgame;
  j["sub_position"] = out.sub_position.heights;
  j["sub_move"] = out.sub_move ? Json(out.sub_move->removals) : Json(nullptr);
  if (out.sub_detail) j["sub_process"] = process_json(*out.sub_detail);
  j["move"] = out.move ? Json(out.move->removals) : Json(nullptr);
  return j;
}

Json explanation(const SolveResult& r, const Position& pos) {
  Json e = Json::object();
  if (r.reduction) {
    Json red;
    red["solved_as"] = r.solved_as;
    red["steps"] = trace_json(*r.reduction, pos);
    red["reduced_position"] = r.reduced_position->heights;
    red["reduced_move"] = r.reduced_move ? Json(r.reduced_move->removals) : Json(nullptr);
    red["lifted_move"] = r.move ? Json(r.move->removals) : Json(nullptr);
    e["reduction"] = red;
  }
  if (r.detail) e["process"] = process_json(*r.detail);
  if (!r.detail) e["rule"] = r.method == Method::BruteForce ? "game tree search" : "closed form";
  return e;
}

Json vectors_json(const std::vector<InvariantVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json j;
    j["vector"] = v.z;
    j["verified_bound"] = v.verified_bound ? Json(*v.verified_bound) : Json(nullptr);
    out.push_back(j);
  }
  return out;
}

std::string description(const std::string& id, int n) {
  int a = 0;
  int b = 0;
  if (id == "h") return "path of 6 stacks, moves on 3 consecutive stacks or on the two end stacks";
  if (std::sscanf(id.c_str(), "cn:%d,%d", &a, &b) == 2)
    return "cycle of " + std::to_string(a) + " stacks, moves on " + std::to_string(b) + " consecutive stacks";
  if (std::sscanf(id.c_str(), "pn:%d,%d", &a, &b) == 2)
    return "path of " + std::to_string(a) + " stacks, moves on " + std::to_string(b) + " consecutive stacks";
  return "nim on " + std::to_string(n) + " stacks";
}

}  // namespace

GameSpec resolve_game(std::string_view id, bool allow_files) {
  if (id.starts_with("file:") && !allow_files) fail(ErrorCode::UnknownId, "game files are not served");
  return builtin_game(id);
}

Json games() {
  std::vector<std::string> ids{"cn:3,2", "cn:4,2", "cn:5,2", "cn:5,3", "cn:6,3", "cn:7,3", "cn:7,4", "cn:8,3", "h"};
  for (int n = 3; n <= 8; ++n)
    for (int k = (n + 1) / 2; k <= n; ++k) ids.push_back("pn:" + std::to_string(n) + "," + std::to_string(k));
  for (int n = 2; n <= 4; ++n) ids.push_back("nim:" + std::to_string(n));
  Json list = Json::array();
  for (const auto& id : ids) {
    const SolvedGame g = *solved_game(id);
    Json j;
    j["id"] = id;
    j["stacks"] = g.spec.size();
    j["description"] = description(id, g.spec.size());
    j["constructive"] = g.constructive;
    list.push_back(j);
  }
  return {{"games", list}};
}

Json classify(const GameSpec& spec, const Position& pos, const Options& options) {
  const Classification c = setnim::classify(spec, pos, options.budget);
  Json j;
  j["game"] = spec.id();
  j["position"] = pos.heights;
  j["outcome"] = outcome_name(c.outcome);
  j["method"] = method_name(c.method);
  j["solved_as"] = c.solved_as;
  return j;
}

Json solve(const GameSpec& spec, const Position& pos, const Options& options) {
  const SolveResult r = setnim::solve(spec, pos, options.budget);
  Json j;
  j["game"] = spec.id();
  j["position"] = pos.heights;
  j["outcome"] = outcome_name(r.outcome);
  j["method"] = method_name(r.method);
  j["solved_as"] = r.solved_as;
  if (r.move) {
    j["move"] = r.move->removals;
    j["resulting_position"] = apply_move(pos, *r.move).heights;
  }
  if (options.explain) j["explanation"] = explanation(r, pos);
  return j;
}

Json legal(const GameSpec& spec, const Position& pos, const Move& mv) {
  const Legality l = is_legal_move(spec, pos, mv);
  Json j;
  j["legal"] = l.legal;
  if (!l.legal) j["reason"] = l.reason;
  return j;
}

Json apply(const GameSpec& spec, const Position& pos, const Move& mv) {
  const Legality l = is_legal_move(spec, pos, mv);
  if (!l.legal) fail(ErrorCode::IllegalMove, l.reason);
  return {{"position", apply_move(pos, mv).heights}};
}

Json legal_sets(const GameSpec& spec) {
  Json j;
  j["game"] = spec.id();
  j["stacks"] = spec.size();
  j["sets"] = spec.move_set_lists();
  Json labels = Json::array();
  for (VertexSet s : spec.move_sets()) labels.push_back(set_label(s));
  j["labels"] = labels;
  return j;
}

Json grundy_value(const GameSpec& spec, const Position& pos, const Options& options) {
  GrundyOptions go;
  go.budget = options.budget;
  Json j;
  j["game"] = spec.id();
  j["position"] = pos.heights;
  j["grundy"] = grundy(spec, pos, go);
  return j;
}

Json enumerate(const GameSpec& spec, Height bound, const Options& options) {
  const auto ps = p_positions(spec, bound, options.budget);
  Json list = Json::array();
  for (const auto& p : ps) list.push_back(p.heights);
  Json j;
  j["game"] = spec.id();
  j["bound"] = bound;
  j["count"] = ps.size();
  j["p_positions"] = list;
  return j;
}

Json verify(const GameSpec& spec, Height bound, const Options& options, std::uint64_t samples, std::uint64_t seed,
            Height max_height) {
  const auto game = solved_for(spec);
  if (!game) fail(ErrorCode::UnsupportedGame, "no closed form to verify for " + spec.id());
  std::shared_ptr<const OutcomeTable> table;
  if (!game->constructive)
    table = std::make_shared<const OutcomeTable>(spec, Box::cube(spec.size(), bound), options.budget);
  VerifyOptions vo;
  vo.bound = bound;
  vo.budget = options.budget;
  vo.threads = options.threads;
  const VerificationReport rep = verify_oracle(spec, oracle_membership(*game), oracle_moves(*game, table), vo);

  Json j;
  j["game"] = spec.id();
  j["bound"] = bound;
  j["positions_checked"] = rep.positions_checked;
  j["mismatches"] = rep.mismatch_count;
  j["closure_violations"] = rep.closure_count;
  j["reachability_violations"] = rep.reachability_count;
  j["summary"] = std::to_string(rep.mismatch_count) + " mismatches, " + std::to_string(rep.closure_count) +
                 " closure violations, " + std::to_string(rep.reachability_count) + " reachability violations";
  bool passed = rep.clean();
  if (!rep.clean()) {
    Json ex;
    Json m = Json::array();
    for (const auto& p : rep.outcome_mismatches) m.push_back(p.heights);
    ex["mismatches"] = m;
    Json c = Json::array();
    for (const auto& v : rep.closure_violations)
      c.push_back({{"from", v.from.heights}, {"move", v.move.removals}, {"to", v.to.heights}});
    ex["closure_violations"] = c;
    Json r = Json::array();
    for (const auto& p : rep.reachability_violations) r.push_back(p.heights);
    ex["reachability_violations"] = r;
    j["examples"] = ex;
  }

  if (samples > 0) {
    if (!game->constructive) fail(ErrorCode::UnsupportedGame, "random samples need a constructive solver");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Height> height(0, max_height);
    std::vector<double> micros;
    std::uint64_t failures = 0;
    Json failed = Json::array();
    for (std::uint64_t t = 0; t < samples; ++t) {
      Position p = Position::zeros(spec.size());
      for (int i = 0; i < p.size(); ++i) p[i] = height(rng);
      const auto start = std::chrono::steady_clock::now();
      const bool member = game->membership(p);
      const SolveResult r = solve_solved(*game, p, options.budget);
      micros.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count());
      bool ok = r.move.has_value() != member;
      if (ok && r.move) ok = is_legal_move(spec, p, *r.move).legal && game->membership(apply_move(p, *r.move));
      if (!ok) {
        ++failures;
        if (failed.size() < 20) failed.push_back(p.heights);
      }
    }
    std::nth_element(micros.begin(), micros.begin() + micros.size() / 2, micros.end());
    Json s;
    s["count"] = samples;
    s["seed"] = seed;
    s["max_height"] = max_height;
    s["failures"] = failures;
    s["failed_positions"] = failed;
    s["median_latency_us"] = micros[micros.size() / 2];
    j["samples"] = s;
    passed = passed && failures == 0;
  }
  j["passed"] = passed;
  return j;
}

Json discover(const GameSpec& spec, Height bound, const Options& options) {
  const auto game = solved_for(spec);
  const MembershipTable table = game ? MembershipTable(spec.size(), bound, game->membership, options.threads, options.budget)
                                     : MembershipTable(spec, bound, options.budget);
  const Discovery d = discover_invariants(table, options.threads);
  Json j;
  j["game"] = spec.id();
  j["bound"] = bound;
  j["membership"] = game ? "closed_form" : "brute_force";
  j["all"] = vectors_json(d.all);
  j["generators"] = vectors_json(d.generators);
  return j;
}

Json circuits(const GameSpec& spec) {
  const CircuitReport r = analyze_complex(spec);
  Json list = Json::array();
  for (const Circuit& c : r.circuits) {
    Json cj;
    cj["vertices"] = members(c.vertices);
    cj["label"] = set_label(c.vertices);
    cj["points"] = members(c.points);
    cj["point"] = c.point ? Json(*c.point) : Json(nullptr);
    list.push_back(cj);
  }
  Json j;
  j["game"] = spec.id();
  j["circuits"] = list;
  j["pointed"] = r.pointed;
  j["p_family"] = r.pointed ? Json(p_family_formula(r, spec.size())) : Json(nullptr);
  return j;
}

Json reduce(const GameSpec& spec, const Position& pos) {
  const IrpProfile* profile = irp_profile(spec.id());
  if (!profile || !(profile->spec == spec)) fail(ErrorCode::UnsupportedGame, "no invariant schedule for " + spec.id());
  if (pos.size() != spec.size()) fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(spec.size()) + " stacks");
  const std::size_t k = profile->schedule.vectors.size();
  std::vector<std::vector<std::size_t>> orders{{}};
  for (std::size_t i = 0; i < k; ++i) orders[0].push_back(i);
  if (k > 1) orders.emplace_back(orders[0].rbegin(), orders[0].rend());

  Json vectors = Json::array();
  for (const auto& v : profile->schedule.vectors) vectors.push_back(v.z);
  Json list = Json::array();
  std::vector<std::optional<std::string>> labels;
  for (const auto& order : orders) {
    Position cur = pos;
    Json iterates = Json::array();
    Json coeffs = Json::array();
    Json numbers = Json::array();
    for (std::size_t i : order) {
      const ZeroOne& z = profile->schedule.vectors[i].z;
      const Height c = indicator_min(z, cur);
      for (int s = 0; s < cur.size(); ++s) cur[s] -= c * z[s];
      numbers.push_back(i + 1);
      coeffs.push_back(c);
      iterates.push_back(cur.heights);
    }
    labels.push_back(irp_case_label(*profile, cur));
    Json o;
    o["order"] = numbers;
    o["coefficients"] = coeffs;
    o["iterates"] = iterates;
    o["reduced_position"] = cur.heights;
    o["case"] = labels.back() ? Json(*labels.back()) : Json(nullptr);
    list.push_back(o);
  }
  Json j;
  j["game"] = spec.id();
  j["position"] = pos.heights;
  j["vectors"] = vectors;
  j["orders"] = list;
  j["same_case"] = std::all_of(labels.begin(), labels.end(), [&](const auto& l) { return l == labels.front(); });
  return j;
}

std::string_view code_name(ErrorCode code) {
  if (code == ErrorCode::UnknownId) return "UnknownGame";
  return error_code_name(code);
}

Json error_body(const Error& e) {
  Json j;
  j["code"] = code_name(e.code());
  j["message"] = e.what();
  if (e.code() == ErrorCode::BudgetExceeded) j["retry"] = "raise the budget or retry with a smaller position";
  return j;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return 2;
    case ErrorCode::Internal:
    case ErrorCode::NoCaseMatched: return 3;
    default: return 1;
  }
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadRequest: return 400;
    case ErrorCode::BudgetExceeded: return 503;
    case ErrorCode::Internal:
    case ErrorCode::NoCaseMatched: return 500;
    default: return 422;
  }
}

namespace {

std::vector<Height> integers_from(const Json& value, const char* what) {
  if (!value.is_array()) fail(ErrorCode::BadRequest, std::string(what) + " must be an array of integers");
  std::vector<Height> out;
  for (const auto& v : value) {
    if (!v.is_number_integer()) fail(ErrorCode::BadRequest, std::string(what) + " must be an array of integers");
    out.push_back(v.get<Height>());
  }
  return out;
}

}  // namespace

Position position_from(const Json& value) { return Position(integers_from(value, "position")); }
Move move_from(const Json& value) { return Move(integers_from(value, "move")); }

}  // namespace setnim::service
