#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "pointtrap/config.hpp"

using namespace ptp;
using nlohmann::json;

namespace {

json valid_doc() {
    return json{{"geometry", {{"a", "650um"}, {"b", "3.24mm"}}},
                {"drive",
                 {{"v_rf", "300V"}, {"frequency", "8.07MHz"}, {"epsilon", 0.0}}},
                {"species", {{"preset", "Sr88"}}}};
}

} // namespace

TEST_CASE("quantity parsing: numbers are SI, strings carry unit suffixes") {
    CHECK(parse_quantity(json(650e-6), Unit::Length, "x") == 650e-6);
    CHECK(parse_quantity(json("650um"), Unit::Length, "x") ==
          doctest::Approx(650e-6).epsilon(1e-14));
    CHECK(parse_quantity(json("3.24mm"), Unit::Length, "x") ==
          doctest::Approx(3.24e-3).epsilon(1e-14));
    CHECK(parse_quantity(json("2cm"), Unit::Length, "x") ==
          doctest::Approx(0.02).epsilon(1e-14));
    CHECK(parse_quantity(json("5nm"), Unit::Length, "x") ==
          doctest::Approx(5e-9).epsilon(1e-14));
    CHECK(parse_quantity(json("300V"), Unit::Voltage, "x") == 300.0);
    CHECK(parse_quantity(json("0.3kV"), Unit::Voltage, "x") ==
          doctest::Approx(300.0).epsilon(1e-14));
    CHECK(parse_quantity(json("8.07MHz"), Unit::Frequency, "x") ==
          doctest::Approx(8.07e6).epsilon(1e-14));
    CHECK(parse_quantity(json("10 kHz"), Unit::Frequency, "x") ==
          doctest::Approx(1e4).epsilon(1e-14));
    CHECK(parse_quantity(json("0.52"), Unit::Dimensionless, "x") == 0.52);
}

TEST_CASE("quantity parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_quantity(json("650"), Unit::Length, "x"), ConfigError);
    CHECK_THROWS_AS(parse_quantity(json("650ly"), Unit::Length, "x"), ConfigError);
    CHECK_THROWS_AS(parse_quantity(json("0.5mm"), Unit::Dimensionless, "x"),
                    ConfigError);
    CHECK_THROWS_AS(parse_quantity(json("abc"), Unit::Length, "x"), ConfigError);
    CHECK_THROWS_AS(parse_quantity(json(nullptr), Unit::Length, "x"), ConfigError);
    CHECK_THROWS_AS(parse_quantity(json::object(), Unit::Length, "x"), ConfigError);
    CHECK_THROWS_AS(parse_quantity(json("300mV"), Unit::Length, "x"), ConfigError);
}

TEST_CASE("full configuration parsing") {
    const TrapConfig c = parse_config(valid_doc());
    CHECK(c.geometry.a == doctest::Approx(650e-6).epsilon(1e-14));
    CHECK(c.geometry.b == doctest::Approx(3.24e-3).epsilon(1e-14));
    CHECK(c.drive.v_rf == 300.0);
    CHECK(c.drive.omega_rf ==
          doctest::Approx(2.0 * constants::pi * 8.07e6).epsilon(1e-14));
    CHECK(c.drive.epsilon == 0.0);
    CHECK(c.ion.mass ==
          doctest::Approx(87.9056121 * constants::atomic_mass_unit).epsilon(1e-14));
    CHECK(c.ion.charge == constants::elementary_charge);
}

TEST_CASE("drive accepts omega_rf directly, but not both forms") {
    json doc = valid_doc();
    doc["drive"].erase("frequency");
    doc["drive"]["omega_rf"] = 5.07e7;
    CHECK(parse_config(doc).drive.omega_rf == 5.07e7);
    doc["drive"]["frequency"] = "8MHz";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("custom species via mass and charge") {
    json doc = valid_doc();
    doc["species"] = {{"mass_amu", 39.9626}, {"charge_e", 2.0}};
    const TrapConfig c = parse_config(doc);
    CHECK(c.ion.mass ==
          doctest::Approx(39.9626 * constants::atomic_mass_unit).epsilon(1e-14));
    CHECK(c.ion.charge ==
          doctest::Approx(2.0 * constants::elementary_charge).epsilon(1e-14));
    doc["species"] = {{"preset", "Xe999"}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("unknown or missing keys are rejected with context") {
    json doc = valid_doc();
    doc["color"] = "blue";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = valid_doc();
    doc["geometry"]["c"] = 1.0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = valid_doc();
    doc["drive"]["phase"] = 0.0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = valid_doc();
    doc["geometry"].erase("b");
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = valid_doc();
    doc["species"] = {{"preset", "Sr88"}, {"mass_amu", 88.0}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("physically invalid configurations become ConfigError") {
    json doc = valid_doc();
    doc["geometry"] = {{"a", "4mm"}, {"b", "3.24mm"}}; // a >= b
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = valid_doc();
    doc["drive"]["v_rf"] = -5.0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("serialization round-trips exactly") {
    const TrapConfig c = parse_config(valid_doc());
    const TrapConfig c2 = parse_config(config_to_json(c));
    CHECK(c2.geometry.a == c.geometry.a);
    CHECK(c2.geometry.b == c.geometry.b);
    CHECK(c2.drive.v_rf == c.drive.v_rf);
    CHECK(c2.drive.omega_rf == c.drive.omega_rf);
    CHECK(c2.drive.epsilon == c.drive.epsilon);
    CHECK(c2.ion.mass == c.ion.mass);
    CHECK(c2.ion.charge == c.ion.charge);
}

TEST_CASE("an emitted report is accepted as a config again") {
    const TrapConfig c = parse_config(valid_doc());
    const json report = {{"tool", "pointtrap"},
                         {"input", config_to_json(c)},
                         {"characteristics", {{"z0_m", 958e-6}}}};
    const TrapConfig c2 = parse_config(report);
    CHECK(c2.geometry.a == c.geometry.a);
    CHECK(c2.drive.omega_rf == c.drive.omega_rf);
}

TEST_CASE("config hash is stable and content sensitive") {
    const TrapConfig c = parse_config(valid_doc());
    const std::string h1 = config_hash(c);
    CHECK(h1.size() == 18);
    CHECK(h1.substr(0, 2) == "0x");
    CHECK(config_hash(c) == h1);
    TrapConfig c2 = c;
    c2.drive.v_rf = 301.0;
    CHECK(config_hash(c2) != h1);
}

TEST_CASE("missing config file") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/trap.json"), ConfigError);
}
