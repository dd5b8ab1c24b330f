#pragma once

// Serialization of module outputs: CSV tables and JSON documents carrying
// "schema": 1.

#include "rotwave/asymptotics.hpp"
#include "rotwave/groundstate.hpp"
#include "rotwave/specfun.hpp"
#include "rotwave/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rotwave::io {

inline constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal form (17 significant digits at most).
std::string format_double(double x);

std::string zeros_csv(const std::vector<specfun::BesselZero>& zeros);
nlohmann::json zeros_json(const std::vector<specfun::BesselZero>& zeros);

std::string sandwich_csv(const asymptotics::SandwichReport& report);
nlohmann::json sandwich_json(const asymptotics::SandwichReport& report);

// columns n,sigma,alpha,residual,kappa,c_empirical (empty when not computed)
std::string alpha_csv(const std::vector<spectrum::AdmissibleAlpha>& rows);
nlohmann::json alpha_json(const std::vector<spectrum::AdmissibleAlpha>& rows);

std::string spectrum_csv(const spectrum::SpectrumWindow& window);
nlohmann::json spectrum_json(const spectrum::SpectrumWindow& window);

nlohmann::json nehari_json(const groundstate::NehariResult& result);
// coefficient table ell,k,parity,value
std::string nehari_csv(const groundstate::NehariResult& result);

// r,value
std::string profile_csv(const std::vector<double>& r, const std::vector<double>& values);
nlohmann::json radial_json(const groundstate::RadialResult& result);
nlohmann::json vk_json(const groundstate::VkResult& result);

nlohmann::json scan_json(const groundstate::CrossoverReport& report);
std::string scan_csv(const groundstate::CrossoverReport& report);

} // namespace rotwave::io
