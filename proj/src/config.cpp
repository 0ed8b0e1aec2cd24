#include "cherednik/config.hpp"

#include <cctype>

namespace cherednik {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char next() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_space() {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') next();
      } else if (std::isspace((unsigned char)c)) {
        next();
      } else {
        break;
      }
    }
  }
  [[noreturn]] void error(const std::string& what) const { throw ConfigError(what, line, col); }
};

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_' || c == '-' || c == '.';
}

std::string read_ident(Cursor& cur) {
  if (cur.done() || !ident_start(cur.peek())) cur.error("expected an identifier");
  std::string s;
  while (!cur.done() && ident_char(cur.peek())) s += cur.next();
  return s;
}

ConfigValue read_value(Cursor& cur) {
  cur.skip_space();
  if (cur.done()) cur.error("expected a value");
  ConfigValue v;
  v.line = cur.line;
  v.col = cur.col;
  char c = cur.peek();
  if (c == '"') {
    cur.next();
    v.kind = ConfigValue::Kind::String;
    v.line = cur.line;
    v.col = cur.col;
    while (!cur.done() && cur.peek() != '"') {
      if (cur.peek() == '\n') cur.error("unterminated string");
      v.text += cur.next();
    }
    if (cur.done()) cur.error("unterminated string");
    cur.next();
    return v;
  }
  if (c == '[') {
    cur.next();
    v.kind = ConfigValue::Kind::List;
    cur.skip_space();
    if (!cur.done() && cur.peek() == ']') {
      cur.next();
      return v;
    }
    while (true) {
      v.items.push_back(read_value(cur));
      cur.skip_space();
      if (cur.done()) cur.error("unterminated list");
      char d = cur.next();
      if (d == ']') return v;
      if (d != ',') throw ConfigError("expected ',' or ']' in list", cur.line, cur.col - 1);
    }
  }
  if (c == '-' || std::isdigit((unsigned char)c)) {
    v.kind = ConfigValue::Kind::Number;
    if (c == '-') v.text += cur.next();
    if (cur.done() || !std::isdigit((unsigned char)cur.peek())) cur.error("expected digits");
    while (!cur.done() && std::isdigit((unsigned char)cur.peek())) v.text += cur.next();
    if (!cur.done() && cur.peek() == '/') {
      v.text += cur.next();
      if (cur.done() || !std::isdigit((unsigned char)cur.peek()))
        cur.error("expected digits after '/'");
      while (!cur.done() && std::isdigit((unsigned char)cur.peek())) v.text += cur.next();
    }
    v.num = rat_parse(v.text);
    return v;
  }
  if (ident_start(c)) {
    int l = cur.line, co = cur.col;
    std::string word = read_ident(cur);
    if (word == "true" || word == "false") {
      v.kind = ConfigValue::Kind::Bool;
      v.flag = word == "true";
      return v;
    }
    throw ConfigError("unquoted value '" + word + "' (strings need quotes)", l, co);
  }
  cur.error(std::string("unexpected character '") + c + "'");
}

}  // namespace

std::string ConfigValue::describe() const {
  switch (kind) {
    case Kind::String: return "string";
    case Kind::Number: return "number";
    case Kind::Bool: return "boolean";
    case Kind::List: return "list";
  }
  return "value";
}

std::string ConfigValue::canonical() const {
  switch (kind) {
    case Kind::String: return "\"" + text + "\"";
    case Kind::Number: return rat_str(num);
    case Kind::Bool: return flag ? "true" : "false";
    case Kind::List: {
      std::string s = "[";
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += items[i].canonical();
      }
      return s + "]";
    }
  }
  return "";
}

std::vector<std::pair<std::string, ConfigValue>>* Config::section(const std::string& name) {
  for (auto& [n, kv] : sections)
    if (n == name) return &kv;
  return nullptr;
}

const std::vector<std::pair<std::string, ConfigValue>>* Config::section(
    const std::string& name) const {
  for (const auto& [n, kv] : sections)
    if (n == name) return &kv;
  return nullptr;
}

const ConfigValue* Config::find(const std::string& sec, const std::string& key) const {
  const auto* kv = section(sec);
  if (!kv) return nullptr;
  for (const auto& [k, v] : *kv)
    if (k == key) return &v;
  return nullptr;
}

void Config::set(const std::string& sec, const std::string& key, ConfigValue v) {
  auto* kv = section(sec);
  if (!kv) {
    sections.emplace_back(sec, std::vector<std::pair<std::string, ConfigValue>>{});
    kv = &sections.back().second;
  }
  for (auto& [k, old] : *kv)
    if (k == key) {
      old = std::move(v);
      return;
    }
  kv->emplace_back(key, std::move(v));
}

Config parse_config_text(const std::string& text) {
  static const std::vector<std::string> known{"group", "parameters", "command", "options"};
  Cursor cur{text};
  Config cfg;
  cur.skip_space();
  while (!cur.done()) {
    if (cur.peek() != '[') cur.error("expected a '[section]' header");
    int l = cur.line, c = cur.col;
    cur.next();
    std::string name = read_ident(cur);
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == name;
    if (!ok) throw ConfigError("unknown section '" + name + "'", l, c);
    if (cur.done() || cur.peek() != ']') cur.error("expected ']'");
    cur.next();
    if (cfg.section(name)) throw ConfigError("duplicate section '" + name + "'", l, c);
    cfg.sections.emplace_back(name, std::vector<std::pair<std::string, ConfigValue>>{});
    auto& kv = cfg.sections.back().second;
    cur.skip_space();
    while (!cur.done() && cur.peek() != '[') {
      int kl = cur.line, kc = cur.col;
      std::string key = read_ident(cur);
      for (const auto& [k, v] : kv)
        if (k == key) throw ConfigError("duplicate key '" + key + "'", kl, kc);
      cur.skip_space();
      if (cur.done() || cur.peek() != '=') cur.error("expected '=' after key '" + key + "'");
      cur.next();
      kv.emplace_back(key, read_value(cur));
      cur.skip_space();
    }
  }
  return cfg;
}

ConfigValue parse_config_value(const std::string& text) {
  Cursor cur{text};
  ConfigValue v = read_value(cur);
  cur.skip_space();
  if (!cur.done()) cur.error("trailing characters after value");
  return v;
}

}  // namespace cherednik
