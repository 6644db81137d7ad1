#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setnim/oracles.hpp"
#include "setnim/service.hpp"

namespace py = pybind11;
using namespace setnim;

namespace {

py::object to_python(const service::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

service::Options options(std::uint64_t budget, bool explain = false) {
  service::Options o;
  o.budget = budget;
  o.explain = explain;
  return o;
}

GameSpec game(const std::string& id) { return service::resolve_game(id, true); }

}  // namespace

PYBIND11_MODULE(setnim, m) {
  m.doc() = "Outcomes, winning moves, invariants and circuits of SetNim games";

  static py::exception<Error> error(m, "SetNimError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(service::code_name(e.code())), e.what()).ptr());
    }
  });

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;

  m.def("games", [] { return to_python(service::games()); }, "Builtin games and their move sets.");
  m.def(
      "classify",
      [](const std::string& id, const std::vector<Height>& pos, std::uint64_t budget) {
        return to_python(service::classify(game(id), Position(pos), options(budget)));
      },
      py::arg("game"), py::arg("position"), py::arg("budget") = kDefaultBudget, "Outcome and how it was decided.");
  m.def(
      "solve",
      [](const std::string& id, const std::vector<Height>& pos, bool explain, std::uint64_t budget) {
        return to_python(service::solve(game(id), Position(pos), options(budget, explain)));
      },
      py::arg("game"), py::arg("position"), py::arg("explain") = false, py::arg("budget") = kDefaultBudget,
      "A winning move, if any.");
  m.def(
      "is_p_position",
      [](const std::string& id, const std::vector<Height>& pos, std::uint64_t budget) {
        return classify(game(id), Position(pos), budget).outcome == Outcome::P;
      },
      py::arg("game"), py::arg("position"), py::arg("budget") = kDefaultBudget);
  m.def(
      "winning_move",
      [](const std::string& id, const std::vector<Height>& pos, std::uint64_t budget) -> std::optional<std::vector<Height>> {
        const SolveResult r = solve(game(id), Position(pos), budget);
        if (!r.move) return std::nullopt;
        return r.move->removals;
      },
      py::arg("game"), py::arg("position"), py::arg("budget") = kDefaultBudget);
  m.def(
      "legal_moves",
      [](const std::string& id, const std::vector<Height>& pos) {
        std::vector<std::vector<Height>> out;
        for (const Move& mv : setnim::legal_moves(game(id), Position(pos))) out.push_back(mv.removals);
        return out;
      },
      py::arg("game"), py::arg("position"));
  m.def(
      "is_legal",
      [](const std::string& id, const std::vector<Height>& pos, const std::vector<Height>& mv) {
        return to_python(service::legal(game(id), Position(pos), Move(mv)));
      },
      py::arg("game"), py::arg("position"), py::arg("move"));
  m.def(
      "apply",
      [](const std::string& id, const std::vector<Height>& pos, const std::vector<Height>& mv) {
        return to_python(service::apply(game(id), Position(pos), Move(mv)));
      },
      py::arg("game"), py::arg("position"), py::arg("move"));
  m.def(
      "grundy",
      [](const std::string& id, const std::vector<Height>& pos, std::uint64_t budget) {
        return service::grundy_value(game(id), Position(pos), options(budget))["grundy"].get<GrundyValue>();
      },
      py::arg("game"), py::arg("position"), py::arg("budget") = kDefaultBudget);
  m.def(
      "enumerate",
      [](const std::string& id, Height bound, std::uint64_t budget) {
        return to_python(service::enumerate(game(id), bound, options(budget)));
      },
      py::arg("game"), py::arg("bound"), py::arg("budget") = kDefaultBudget);
  m.def(
      "verify",
      [](const std::string& id, Height bound, std::uint64_t samples, std::uint64_t seed, Height max_height) {
        return to_python(service::verify(game(id), bound, {}, samples, seed, max_height));
      },
      py::arg("game"), py::arg("bound"), py::arg("samples") = 0, py::arg("seed") = 1,
      py::arg("max_height") = 1000000);
  m.def(
      "discover",
      [](const std::string& id, Height bound, std::uint64_t budget) {
        return to_python(service::discover(game(id), bound, options(budget)));
      },
      py::arg("game"), py::arg("bound"), py::arg("budget") = kDefaultBudget);
  m.def(
      "circuits", [](const std::string& id) { return to_python(service::circuits(game(id))); }, py::arg("game"));
  m.def(
      "reduce",
      [](const std::string& id, const std::vector<Height>& pos) {
        return to_python(service::reduce(game(id), Position(pos)));
      },
      py::arg("game"), py::arg("position"));
}
