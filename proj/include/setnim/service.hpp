#pragma once

// Structured-document layer shared by the command line and the HTTP API.

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "setnim/error.hpp"
#include "setnim/game.hpp"
#include "setnim/grundy.hpp"

namespace setnim::service {

using Json = nlohmann::ordered_json;

struct Options {
  std::uint64_t budget = kDefaultBudget;
  int threads = 1;
  bool explain = false;
};

// Builtin ids, plus file:<path> when allow_files is set.
GameSpec resolve_game(std::string_view id, bool allow_files);

Json games();
Json classify(const GameSpec& spec, const Position& pos, const Options& options = {});
Json solve(const GameSpec& spec, const Position& pos, const Options& options = {});
Json legal(const GameSpec& spec, const Position& pos, const Move& mv);
Json apply(const GameSpec& spec, const Position& pos, const Move& mv);
Json legal_sets(const GameSpec& spec);
Json grundy_value(const GameSpec& spec, const Position& pos, const Options& options = {});
Json enumerate(const GameSpec& spec, Height bound, const Options& options = {});
// Exhaustive check of a solved game on [0,bound]^n, plus `samples` random
// positions with heights up to max_height.
Json verify(const GameSpec& spec, Height bound, const Options& options = {}, std::uint64_t samples = 0,
            std::uint64_t seed = 1, Height max_height = 1000000);
Json discover(const GameSpec& spec, Height bound, const Options& options = {});
Json circuits(const GameSpec& spec);
// Invariance reduction under the forward and reversed schedule orders.
Json reduce(const GameSpec& spec, const Position& pos);

// Stable code names used in error documents.
std::string_view code_name(ErrorCode code);
Json error_body(const Error& e);
int exit_code(ErrorCode code);    // 1 validation, 2 budget, 3 internal
int http_status(ErrorCode code);  // 400, 422, 503, 500

// Checked conversions from request documents; throw BadRequest.
Position position_from(const Json& value);
Move move_from(const Json& value);

}  // namespace setnim::service
