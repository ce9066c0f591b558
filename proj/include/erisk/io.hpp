#ifndef ERISK_IO_HPP_
#define ERISK_IO_HPP_

#include "erisk/game.hpp"

#include <json.hpp>

#include <string>

namespace erisk {

struct ParsedInstance {
  Game game;
  RiskParams params;
};

// Builds a validated game from the JSON description. Rational rewards are
// multiplied by the lcm D of their denominators; D is recorded in
// params.reward_scale.
ParsedInstance validate_game(const nlohmann::json& raw);

ParsedInstance load_instance(const std::string& path);

// Inverse of validate_game for integral rewards (params written as given).
nlohmann::json to_json(const Game& g, const RiskParams& rp);

// {state id: action label} for the combined profile.
nlohmann::json strategy_to_json(const Game& g, const Strategy& max, const Strategy& min);

// Reads a {state id: action label} map. States that are absent keep
// action 0.
void strategy_from_json(const Game& g, const nlohmann::json& j, Strategy& max, Strategy& min);

}  // namespace erisk

#endif  // ERISK_IO_HPP_
