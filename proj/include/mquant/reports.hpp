#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace mq {

// Randomized check of probability-as-expected-frequency on one Bose space:
// max over draws, outcomes of |E(f_k) - |psi_k|^2| at the given sector.
nlohmann::json eq11_report(int modes, int cutoff, int sector, int draws, std::uint64_t seed,
                           double tolerance);

// Schema validators for every machine-readable report the tool emits.
// They check required keys and types and write a reason into *why on
// failure (when non-null).
bool validate_eq11_report(const nlohmann::json& j, std::string* why = nullptr);
bool validate_tower_report(const nlohmann::json& j, std::string* why = nullptr);
bool validate_ur_tower_report(const nlohmann::json& j, std::string* why = nullptr);
bool validate_contrast_report(const nlohmann::json& j, std::string* why = nullptr);
bool validate_parabose_report(const nlohmann::json& j, std::string* why = nullptr);

}  // namespace mq
