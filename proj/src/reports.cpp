#include "mquant/reports.hpp"

#include <cmath>

#include "mquant/multiquant.hpp"
#include "mquant/random.hpp"

namespace mq {

nlohmann::json eq11_report(int modes, int cutoff, int sector, int draws, std::uint64_t seed,
                           double tolerance) {
  if (modes < 2) throw Error("eq11: need at least two modes");
  if (sector > cutoff)
    throw DimensionOverflow("eq11: sector " + std::to_string(sector) + " exceeds cutoff " +
                            std::to_string(cutoff));
  auto space = lift(Alternative::make(modes), FockStatistics::bose(cutoff));

  double worst = 0.0;
  if (sector > 0) {
    Rng rng(seed);
    for (int d = 0; d < draws; ++d) {
      auto psi = random_unit_vector(rng, modes);
      StateVector state = symmetric_product_state(space, psi, sector);
      for (int k = 1; k <= modes; ++k) {
        auto spec = frequency_spectrum(state, k, sector);
        worst = std::max(worst, std::abs(spec.expectation() - std::norm(psi[k - 1])));
      }
    }
  }
  // sector 0 is the vacuum: no draws, the identity holds trivially

  nlohmann::json j;
  j["modes"] = modes;
  j["cutoff"] = cutoff;
  j["sector"] = sector;
  j["draws"] = draws;
  j["seed"] = seed;
  j["dim"] = space->dim();
  j["max_deviation"] = worst;
  j["tolerance"] = tolerance;
  j["pass"] = worst <= tolerance;
  return j;
}

namespace {

bool fail(std::string* why, const std::string& reason) {
  if (why) *why = reason;
  return false;
}

bool need_number(const nlohmann::json& j, const char* key, std::string* why) {
  if (!j.contains(key)) return fail(why, std::string("missing key: ") + key);
  if (!j[key].is_number()) return fail(why, std::string("not a number: ") + key);
  return true;
}

bool need_number_or_null(const nlohmann::json& j, const char* key, std::string* why) {
  if (!j.contains(key)) return fail(why, std::string("missing key: ") + key);
  if (!j[key].is_number() && !j[key].is_null())
    return fail(why, std::string("not a number or null: ") + key);
  return true;
}

bool need_bool(const nlohmann::json& j, const char* key, std::string* why) {
  if (!j.contains(key)) return fail(why, std::string("missing key: ") + key);
  if (!j[key].is_boolean()) return fail(why, std::string("not a boolean: ") + key);
  return true;
}

bool need_string(const nlohmann::json& j, const char* key, std::string* why) {
  if (!j.contains(key)) return fail(why, std::string("missing key: ") + key);
  if (!j[key].is_string()) return fail(why, std::string("not a string: ") + key);
  return true;
}

bool validate_levels(const nlohmann::json& j, bool want_cutoff, std::string* why) {
  if (!j.contains("levels") || !j["levels"].is_array() || j["levels"].empty())
    return fail(why, "levels must be a nonempty array");
  for (const auto& lv : j["levels"]) {
    if (!need_string(lv, "name", why)) return false;
    if (!need_number(lv, "dim", why)) return false;
    if (!need_string(lv, "statistics", why)) return false;
    if (want_cutoff && !lv.contains("cutoff")) return fail(why, "missing key: cutoff");
    if (!need_number_or_null(lv, "eq11_max_deviation", why)) return false;
  }
  return true;
}

}  // namespace

bool validate_eq11_report(const nlohmann::json& j, std::string* why) {
  return need_number(j, "modes", why) && need_number(j, "cutoff", why) &&
         need_number(j, "sector", why) && need_number(j, "draws", why) &&
         need_number(j, "seed", why) && need_number(j, "max_deviation", why) &&
         need_number(j, "tolerance", why) && need_bool(j, "pass", why);
}

bool validate_tower_report(const nlohmann::json& j, std::string* why) {
  return validate_levels(j, true, why) && need_number(j, "draws", why) &&
         need_number(j, "seed", why);
}

bool validate_ur_tower_report(const nlohmann::json& j, std::string* why) {
  if (!validate_levels(j, false, why)) return false;
  if (!j.contains("parabose")) return fail(why, "missing key: parabose");
  return validate_parabose_report(j["parabose"], why);
}

bool validate_contrast_report(const nlohmann::json& j, std::string* why) {
  return need_number(j, "hermiticity_defect_dirac", why) &&
         need_number(j, "hermiticity_defect_photon", why) &&
         need_number(j, "hermiticity_defect_photon_symbolic", why) &&
         need_number(j, "charge_commutator_norm", why) &&
         need_number(j, "photon_number_field_commutator_norm", why) &&
         need_number(j, "on_shell_current_max_abs", why) && need_bool(j, "pass", why);
}

bool validate_parabose_report(const nlohmann::json& j, std::string* why) {
  return need_number(j, "p", why) && need_number(j, "trilinear_residual", why) &&
         need_number(j, "vacuum_pairing", why) &&
         need_number(j, "vacuum_pairing_max_deviation", why) && need_bool(j, "pass", why);
}

}  // namespace mq
