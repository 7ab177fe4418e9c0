#include "pointtrap/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>

namespace ptp {

using nlohmann::json;

namespace {

const std::map<std::string, double>& suffix_table(Unit unit) {
    static const std::map<std::string, double> length = {
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    static const std::map<std::string, double> voltage = {
        {"V", 1.0}, {"mV", 1e-3}, {"kV", 1e3}};
    static const std::map<std::string, double> frequency = {
        {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
    static const std::map<std::string, double> none = {};
    switch (unit) {
        case Unit::Length: return length;
        case Unit::Voltage: return voltage;
        case Unit::Frequency: return frequency;
        default: return none;
    }
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) { ok = true; break; }
        if (!ok)
            throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(where + ": missing required key \"" + key + "\"");
    return *it;
}

} // namespace

double parse_quantity(const json& value, Unit unit, const std::string& field) {
    if (value.is_number())
        return value.get<double>();
    if (!value.is_string())
        throw ConfigError(field + ": expected a number (SI) or unit-suffixed string");

    const std::string s = value.get<std::string>();
    const char* begin = s.c_str();
    const char* end = begin + s.size();
    double magnitude = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, magnitude);
    if (ec != std::errc{} || ptr == begin)
        throw ConfigError(field + ": cannot parse number in \"" + s + "\"");

    std::string suffix(ptr, end);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
        suffix.erase(suffix.begin());
    if (suffix.empty()) {
        if (unit == Unit::Dimensionless) return magnitude;
        throw ConfigError(field + ": missing unit suffix in \"" + s + "\"");
    }
    if (unit == Unit::Dimensionless)
        throw ConfigError(field + ": unexpected unit suffix in \"" + s + "\"");

    const auto& table = suffix_table(unit);
    const auto it = table.find(suffix);
    if (it == table.end())
        throw ConfigError(field + ": unknown unit suffix \"" + suffix + "\"");
    return magnitude * it->second;
}

TrapConfig parse_config(const json& doc_in) {
    const json* doc = &doc_in;
    if (doc_in.is_object() && doc_in.contains("input"))
        doc = &doc_in.at("input"); // re-ingest an emitted report

    if (!doc->is_object())
        throw ConfigError("config: expected a JSON object");
    reject_unknown_keys(*doc, {"geometry", "drive", "species"}, "config");

    TrapConfig config;

    const json& geom = require(*doc, "geometry", "config");
    reject_unknown_keys(geom, {"a", "b"}, "geometry");
    config.geometry.a = parse_quantity(require(geom, "a", "geometry"), Unit::Length, "geometry.a");
    config.geometry.b = parse_quantity(require(geom, "b", "geometry"), Unit::Length, "geometry.b");

    const json& drive = require(*doc, "drive", "config");
    reject_unknown_keys(drive, {"v_rf", "frequency", "omega_rf", "epsilon"}, "drive");
    config.drive.v_rf =
        parse_quantity(require(drive, "v_rf", "drive"), Unit::Voltage, "drive.v_rf");
    if (drive.contains("omega_rf")) {
        if (drive.contains("frequency"))
            throw ConfigError("drive: give either frequency or omega_rf, not both");
        config.drive.omega_rf =
            parse_quantity(drive.at("omega_rf"), Unit::Dimensionless, "drive.omega_rf");
    } else {
        config.drive.omega_rf =
            2.0 * constants::pi *
            parse_quantity(require(drive, "frequency", "drive"), Unit::Frequency,
                           "drive.frequency");
    }
    if (drive.contains("epsilon"))
        config.drive.epsilon =
            parse_quantity(drive.at("epsilon"), Unit::Dimensionless, "drive.epsilon");

    const json& species = require(*doc, "species", "config");
    if (species.contains("preset")) {
        reject_unknown_keys(species, {"preset"}, "species");
        const std::string name = species.at("preset").get<std::string>();
        if (name == "Sr88")
            config.ion = IonSpecies::sr88();
        else
            throw ConfigError("species: unknown preset \"" + name + "\"");
    } else {
        reject_unknown_keys(species, {"mass_amu", "charge_e"}, "species");
        const double amu = parse_quantity(require(species, "mass_amu", "species"),
                                          Unit::Dimensionless, "species.mass_amu");
        const double qe = parse_quantity(require(species, "charge_e", "species"),
                                         Unit::Dimensionless, "species.charge_e");
        config.ion.mass = amu * constants::atomic_mass_unit;
        config.ion.charge = qe * constants::elementary_charge;
    }

    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config;
}

TrapConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const TrapConfig& config) {
    return json{
        {"geometry", {{"a", config.geometry.a}, {"b", config.geometry.b}}},
        {"drive",
         {{"v_rf", config.drive.v_rf},
          {"omega_rf", config.drive.omega_rf},
          {"epsilon", config.drive.epsilon}}},
        {"species",
         {{"mass_amu", config.ion.mass / constants::atomic_mass_unit},
          {"charge_e", config.ion.charge / constants::elementary_charge}}}};
}

std::string config_hash(const TrapConfig& config) {
    const std::string canon = config_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace ptp
