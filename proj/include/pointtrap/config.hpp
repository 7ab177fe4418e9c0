#pragma once

#include <string>

#include "json.hpp"

#include "pointtrap/types.hpp"

// JSON trap-configuration ingestion with unit-suffixed quantities
// ("650um", "8.07MHz", "300V"). This is the single unit-conversion layer;
// everything behind it is strict SI.

namespace ptp {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Unit { Length, Voltage, Frequency, Dimensionless };

/// Parse a quantity that is either a plain number (interpreted as SI) or a
/// string with a unit suffix. Throws ConfigError with `field` in the message.
double parse_quantity(const nlohmann::json& value, Unit unit,
                      const std::string& field);

/// Parse a full trap configuration. Unknown keys are rejected. A document with
/// a top-level "input" object (a previously emitted report) is unwrapped so
/// that reports can be re-ingested verbatim.
TrapConfig parse_config(const nlohmann::json& doc);

TrapConfig load_config(const std::string& path);

/// Normalized SI echo of a configuration; parse_config(config_to_json(c)) == c.
nlohmann::json config_to_json(const TrapConfig& config);

/// FNV-1a hash of the canonical serialized configuration, as "0x..." string.
std::string config_hash(const TrapConfig& config);

inline constexpr const char* version_string = "0.1.0";

} // namespace ptp
