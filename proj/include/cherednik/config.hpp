#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cherednik/rational.hpp"

namespace cherednik {

// One value from a config file: a quoted string, a rational number, a boolean
// or a bracketed list. Values remember where they start so downstream parsers
// (polynomials, scalars) can report positions inside the original file.
struct ConfigValue {
  enum class Kind { String, Number, Bool, List };

  Kind kind = Kind::String;
  std::string text;                // String contents / Number literal
  Rat num;                         // Number
  bool flag = false;               // Bool
  std::vector<ConfigValue> items;  // List
  int line = 1, col = 1;

  std::string describe() const;
  std::string canonical() const;
};

// Sections in file order, keys in file order. Keys may be dotted
// (e.g. target.k1) and must be unique within their section.
struct Config {
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, ConfigValue>>>> sections;

  std::vector<std::pair<std::string, ConfigValue>>* section(const std::string& name);
  const std::vector<std::pair<std::string, ConfigValue>>* section(const std::string& name) const;
  const ConfigValue* find(const std::string& sec, const std::string& key) const;
  void set(const std::string& sec, const std::string& key, ConfigValue v);
};

// Parses the [section] key = value grammar; throws ConfigError with a
// 1-based position on any syntax problem or on unknown/duplicate structure.
Config parse_config_text(const std::string& text);

// Parses one value the way config values are parsed, for --override.
ConfigValue parse_config_value(const std::string& text);

}  // namespace cherednik
