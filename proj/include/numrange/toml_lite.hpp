#pragma once

#include <string>

#include <json.hpp>

namespace numrange {

// Minimal TOML-subset reader used for experiment configs: [table] headers
// (dotted allowed), key = value lines with strings, numbers, booleans and
// single-line arrays, and # comments. Unsupported syntax raises ConfigError.
nlohmann::json toml_lite_parse(const std::string& text);

}  // namespace numrange
