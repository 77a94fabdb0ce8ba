#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "auctionlab/montecarlo/scenario.hpp"

namespace auctionlab::cli {

inline constexpr int kScenarioVersion = 1;

// Parses a scenario document. Throws montecarlo::ValidationError listing
// every problem found, both schema errors (unknown keys, wrong types) and
// semantic ones from Scenario::violations().
montecarlo::Scenario parse_scenario(std::string_view text);
montecarlo::Scenario parse_scenario_json(const nlohmann::json& doc);

// Reads and parses a file; an unreadable file throws std::runtime_error.
montecarlo::Scenario load_scenario(const std::filesystem::path& path);

}  // namespace auctionlab::cli
