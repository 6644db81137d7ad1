#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "setnim/http.hpp"
#include "setnim/service.hpp"

using namespace setnim;
using service::Json;

namespace {

struct Args {
  std::string game;
  std::string pos;
  Height bound = 4;
  std::uint64_t budget = kDefaultBudget;
  bool json = false;
  bool explain = false;
  int threads = std::max(1u, std::thread::hardware_concurrency());
  int port = 8080;
  std::string host = "127.0.0.1";
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  Height max_height = 1000000;
};

std::string heights(const Json& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i].get<Height>());
  return out;
}

std::string vector_text(const Json& a) { return "(" + heights(a) + ")"; }

void render_steps(std::ostream& os, const Json& steps, const std::string& indent, bool subtract) {
  for (const auto& s : steps) {
    const std::string kind = s["step"];
    if ((kind == "subtract") != subtract) continue;
    os << indent;
    if (kind == "subtract") os << "subtract " << s["times"].get<Height>() << " x " << vector_text(s["vector"]);
    else if (kind == "relabel") os << "relabel stacks by " << vector_text(s["map"]);
    else os << kind << " " << s["stacks"].get<std::string>();
    os << " -> " << heights(s["position"]) << "\n";
  }
}

void render_process(std::ostream& os, const Json& p, const std::string& indent) {
  os << indent << "1. invariance reduction of " << heights(p["position"]) << "\n";
  render_steps(os, p["steps"], indent + "   ", true);
  os << indent << "   reduced: " << heights(p["invariance_reduced"]) << "\n";
  if (p["case"].is_null()) {
    os << indent << "   reduced position is 0: no winning move\n";
    return;
  }
  os << indent << "2. " << p["case"].get<std::string>() << ": reduce to " << p["subgame"].get<std::string>() << "\n";
  render_steps(os, p["steps"], indent + "   ", false);
  os << indent << "3. move in " << p["subgame"].get<std::string>() << " at " << heights(p["sub_position"]) << ": "
     << (p["sub_move"].is_null() ? std::string("none") : heights(p["sub_move"])) << "\n";
  if (p.contains("sub_process")) render_process(os, p["sub_process"], indent + "   ");
  os << indent << "4. lifted move: " << (p["move"].is_null() ? std::string("none") : heights(p["move"])) << "\n";
}

void render_explanation(std::ostream& os, const Json& e) {
  os << "explanation:\n";
  if (e.contains("reduction")) {
    const Json& r = e["reduction"];
    os << "  reduce to " << r["solved_as"].get<std::string>() << "\n";
    render_steps(os, r["steps"], "    ", false);
    os << "  move there: " << (r["reduced_move"].is_null() ? std::string("none") : heights(r["reduced_move"]))
       << "\n";
    if (!r["lifted_move"].is_null()) os << "  lifted move: " << heights(r["lifted_move"]) << "\n";
  }
  if (e.contains("process")) render_process(os, e["process"], "  ");
  if (e.contains("rule")) os << "  " << e["rule"].get<std::string>() << "\n";
}

void render_text(std::ostream& os, const std::string& cmd, const Json& j) {
  if (cmd == "classify") {
    os << j["outcome"].get<std::string>() << "\nmethod: " << j["method"].get<std::string>()
       << "\nsolved as: " << j["solved_as"].get<std::string>() << "\n";
  } else if (cmd == "move") {
    if (j.contains("move")) {
      os << "move: " << heights(j["move"]) << "\nresult: " << heights(j["resulting_position"]) << "\n";
    } else {
      os << "no winning move: P-position\n";
    }
    os << "method: " << j["method"].get<std::string>() << "\n";
    if (j.contains("explanation")) render_explanation(os, j["explanation"]);
  } else if (cmd == "grundy") {
    os << "grundy: " << j["grundy"].get<unsigned>() << "\n";
  } else if (cmd == "enumerate") {
    os << j["count"].get<std::size_t>() << " P-positions with heights <= " << j["bound"].get<Height>() << "\n";
    for (const auto& p : j["p_positions"]) os << heights(p) << "\n";
  } else if (cmd == "verify") {
    os << j["positions_checked"].get<std::uint64_t>() << " positions checked at bound " << j["bound"].get<Height>()
       << "\n" << j["summary"].get<std::string>() << "\n";
    if (j.contains("samples")) {
      const Json& s = j["samples"];
      os << s["count"].get<std::uint64_t>() << " random positions up to " << s["max_height"].get<Height>() << ": "
         << s["failures"].get<std::uint64_t>() << " failures, median " << s["median_latency_us"].get<double>()
         << " us\n";
    }
  } else if (cmd == "discover") {
    os << "invariant vectors (bound " << j["bound"].get<Height>() << ", " << j["membership"].get<std::string>()
       << " membership):\n";
    for (const auto& v : j["all"]) os << "  " << vector_text(v["vector"]) << "\n";
    os << "generators:\n";
    for (const auto& v : j["generators"]) os << "  " << vector_text(v["vector"]) << "\n";
  } else if (cmd == "circuits") {
    os << "circuits:\n";
    for (const auto& c : j["circuits"]) {
      os << "  " << c["label"].get<std::string>();
      if (!c["point"].is_null()) os << "  point " << vertex_label(c["point"].get<int>());
      os << "\n";
    }
    os << "pointed: " << (j["pointed"].get<bool>() ? "yes" : "no") << "\n";
    if (!j["p_family"].is_null()) os << "P-positions: " << j["p_family"].get<std::string>() << "\n";
  } else if (cmd == "reduce") {
    for (const auto& o : j["orders"]) {
      os << "order";
      for (const auto& i : o["order"]) os << " z" << i.get<int>();
      os << ":";
      for (const auto& it : o["iterates"]) os << " -> " << heights(it);
      os << "  [" << (o["case"].is_null() ? std::string("no case") : o["case"].get<std::string>()) << "]\n";
    }
  }
}

Json run(const std::string& cmd, const Args& a) {
  service::Options o;
  o.budget = a.budget;
  o.threads = a.threads;
  o.explain = a.explain;
  const GameSpec spec = service::resolve_game(a.game, true);
  auto pos = [&] { return Position(parse_heights(a.pos)); };
  if (cmd == "classify") return service::classify(spec, pos(), o);
  if (cmd == "move") return service::solve(spec, pos(), o);
  if (cmd == "grundy") return service::grundy_value(spec, pos(), o);
  if (cmd == "enumerate") return service::enumerate(spec, a.bound, o);
  if (cmd == "verify") return service::verify(spec, a.bound, o, a.samples, a.seed, a.max_height);
  if (cmd == "discover") return service::discover(spec, a.bound, o);
  if (cmd == "circuits") return service::circuits(spec);
  return service::reduce(spec, pos());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for SetNim games: outcomes, winning moves, invariants and circuits"};
  app.require_subcommand(1);
  Args a;

  auto add = [&](const std::string& name, const std::string& help, bool pos, bool bound) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--game", a.game, "game id: cn:n,k pn:n,k h nim:n moore:n,k file:<path>")->required();
    if (pos) sub->add_option("--pos", a.pos, "stack heights, comma separated")->required();
    if (bound) sub->add_option("--bound", a.bound, "height bound of the box")->check(CLI::Range(0, 64));
    sub->add_option("--budget", a.budget, "work budget")->check(CLI::PositiveNumber);
    sub->add_flag("--json", a.json, "print a JSON document");
    return sub;
  };
  add("classify", "P or N, and how it was decided", true, false);
  add("move", "a winning move", true, false)->add_flag("--explain", a.explain, "show the reduction steps");
  add("grundy", "Grundy value by game tree search", true, false);
  add("enumerate", "P-positions in a box by game tree search", false, true);
  CLI::App* verify = add("verify", "check a closed form against game tree search", false, true);
  verify->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--samples", a.samples, "random large positions to check the moves on");
  verify->add_option("--seed", a.seed, "seed for the random positions");
  verify->add_option("--max-height", a.max_height, "height cap for the random positions")->check(CLI::NonNegativeNumber);
  add("discover", "zero-one invariant vectors in a box", false, true)
      ->add_option("--threads", a.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  add("circuits", "circuits of the move-set complex", false, false);
  add("reduce", "invariance reduction in both schedule orders", true, false);
  CLI::App* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--port", a.port, "port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", a.host, "interface to bind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "serve") {
      std::cout << "listening on http://" << a.host << ":" << a.port << std::endl;
      if (!http::serve(a.host, a.port)) {
        std::cerr << "error: cannot bind " << a.host << ":" << a.port << "\n";
        return 1;
      }
      return 0;
    }
    const Json j = run(cmd, a);
    if (a.json) std::cout << j.dump(2) << "\n";
    else render_text(std::cout, cmd, j);
    if (cmd == "verify" && !j["passed"].get<bool>()) return 3;
    return 0;
  } catch (const Error& e) {
    if (a.json) std::cout << service::error_body(e).dump(2) << "\n";
    std::cerr << "error [" << service::code_name(e.code()) << "]: " << e.what() << "\n";
    return service::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
