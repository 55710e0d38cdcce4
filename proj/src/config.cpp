#include "ifsrep/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace ifsrep {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string stripSpaces(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

const std::set<std::string> kIntegerKeys = {"level", "depth", "k", "n", "seed", "grid", "workers", "factors", "order",
                                            "burnin", "quadrature", "i"};
const std::set<std::string> kSystemNames = {"dyadic", "cantor3", "cantor4", "sierpinski", "julia", "inline"};

double parseDouble(std::string_view text, const std::string& what) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("malformed number for " + what + ": '" + std::string(text) + "'");
  }
  return v;
}

long long parseInteger(std::string_view text, const std::string& what) {
  text = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("malformed integer for " + what + ": '" + std::string(text) + "'");
  }
  return v;
}

/// Splits "[a,b,...]" at top-level commas.
std::vector<std::string> splitList(std::string_view text, const char* what) {
  const std::string s = stripSpaces(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError(std::string(what) + " must be a bracketed list: '" + std::string(text) + "'");
  }
  std::vector<std::string> items;
  int depth = 0;
  std::string current;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ConfigError(std::string("unbalanced parentheses in ") + what);
    if (ch == ',' && depth == 0) {
      items.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (depth != 0) throw ConfigError(std::string("unbalanced parentheses in ") + what);
  if (!current.empty() || !items.empty()) items.push_back(current);
  for (const auto& item : items) {
    if (item.empty()) throw ConfigError(std::string("empty entry in ") + what);
  }
  return items;
}

Rational rationalOrThrow(std::string_view text, const std::string& what) {
  try {
    return parseRational(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::string formatRationalList(const std::vector<Rational>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + toString(values[i]);
  return out + "]";
}

/// Validates `value` for `key` and returns its canonical text.
std::string normalize(const std::string& key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (value.empty()) throw ConfigError("empty value for key '" + key + "'");
  if (kIntegerKeys.count(key)) {
    const long long v = parseInteger(value, key);
    if (v < 0) throw ConfigError("key '" + key + "' must be non-negative");
    return std::to_string(v);
  }
  if (key == "system") {
    const std::string name(value);
    if (!kSystemNames.count(name)) throw ConfigError("unknown system '" + name + "'");
    return name;
  }
  if (key == "maps") {
    std::string out = "[";
    const auto maps = parseMapList(value);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      out += (i ? ",(" : "(") + toString(maps[i].first) + "," + toString(maps[i].second) + ")";
    }
    return out + "]";
  }
  if (key == "probs") return formatRationalList(parseRationalList(value));
  if (key == "domain") {
    const auto bounds = parseRationalList(value);
    if (bounds.size() != 2 || bounds[0] >= bounds[1]) throw ConfigError("domain must be [lo,hi] with lo < hi");
    return formatRationalList(bounds);
  }
  if (key == "xi") return toString(rationalOrThrow(value, key));
  if (key == "tol" || key == "r") {
    const double v = parseDouble(value, key);
    if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
    return std::string(value);
  }
  if (key == "c") {
    try {
      parseComplex(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("c: ") + e.what());
    }
    return stripSpaces(value);
  }
  if (key == "omega") {
    try {
      InfWordSpec::parse(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("omega: ") + e.what());
    }
    return stripSpaces(value);
  }
  if (key == "psi") {
    if (value != "one") parseRationalList(value);
    return value == "one" ? std::string(value) : formatRationalList(parseRationalList(value));
  }
  if (key == "f") {
    if (value != "x") parseRationalList(value);
    return value == "x" ? std::string(value) : formatRationalList(parseRationalList(value));
  }
  if (key == "format") {
    if (value != "json" && value != "csv") throw ConfigError("format must be json or csv");
    return std::string(value);
  }
  if (key == "out") return std::string(value);
  throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& RunConfig::knownKeys() {
  static const std::vector<std::string> keys = {
      "burnin", "c",     "depth", "domain", "f",    "factors", "format", "grid",   "i",   "k",       "level", "maps",
      "n",      "omega", "order", "out",    "probs", "psi",    "quadrature", "r", "seed", "system", "tol", "workers",
      "xi"};
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "system" && value.find('=') != std::string::npos) {
    applyAssignments(value);
    values_["system"] = "inline";
    return;
  }
  const auto& keys = knownKeys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown key '" + key + "'");
  values_[key] = normalize(key, value);
}

void RunConfig::applyAssignments(std::string_view text) {
  // Tokens are separated by whitespace outside brackets and parentheses.
  std::string token;
  int depth = 0;
  auto flush = [&] {
    const auto t = trim(token);
    if (!t.empty()) {
      const auto eq = t.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(t) + "'");
      set(std::string(trim(t.substr(0, eq))), std::string(t.substr(eq + 1)));
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key(trim(content.substr(0, eq)));
    try {
      config.set(key, std::string(content.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void RunConfig::merge(const RunConfig& other) {
  for (const auto& [key, value] : other.values_) values_[key] = value;
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::getString(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

long long RunConfig::getInt(const std::string& key, long long fallback) const {
  auto v = get(key);
  return v ? parseInteger(*v, key) : fallback;
}

double RunConfig::getDouble(const std::string& key, double fallback) const {
  auto v = get(key);
  return v ? parseDouble(*v, key) : fallback;
}

Rational RunConfig::getRational(const std::string& key, const Rational& fallback) const {
  auto v = get(key);
  return v ? rationalOrThrow(*v, key) : fallback;
}

std::complex<double> RunConfig::getComplex(const std::string& key, std::complex<double> fallback) const {
  auto v = get(key);
  return v ? parseComplex(*v) : fallback;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
  return out;
}

IFSSystem RunConfig::system(const std::string& fallback) const {
  const std::string name = getString("system", has("maps") ? "inline" : fallback);
  try {
    if (name == "inline") {
      if (!has("maps") || !has("probs")) throw ConfigError("an inline system needs maps and probs");
      Rational lo(0), hi(1);
      if (has("domain")) {
        const auto bounds = parseRationalList(*get("domain"));
        lo = bounds[0];
        hi = bounds[1];
      }
      return {"inline", inlineSystem(parseMapList(*get("maps")), parseRationalList(*get("probs")), lo, hi)};
    }
    if (name == "julia") {
      if (!has("c")) throw ConfigError("the julia system needs c");
      return standardSystem(name, getComplex("c", {}));
    }
    return standardSystem(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid system: ") + e.what());
  }
}

std::complex<double> parseComplex(std::string_view text) {
  const std::string s = stripSpaces(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  auto number = [&](std::string_view part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    if (part.front() == '+') part.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw std::invalid_argument("malformed complex literal: " + s);
    }
    return v;
  };
  if (s.back() != 'i') return {number(s), 0.0};
  const std::string_view body(s.data(), s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

std::string formatComplex(std::complex<double> z) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g%+.17gi", z.real(), z.imag());
  return buffer;
}

std::vector<std::pair<Rational, Rational>> parseMapList(std::string_view text) {
  std::vector<std::pair<Rational, Rational>> maps;
  for (const auto& item : splitList(text, "maps")) {
    if (item.size() < 2 || item.front() != '(' || item.back() != ')') {
      throw ConfigError("each map must be written (r,t): '" + item + "'");
    }
    const std::string inner = item.substr(1, item.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos) {
      throw ConfigError("each map must be written (r,t): '" + item + "'");
    }
    maps.emplace_back(rationalOrThrow(inner.substr(0, comma), "maps"), rationalOrThrow(inner.substr(comma + 1), "maps"));
  }
  if (maps.empty()) throw ConfigError("maps must not be empty");
  return maps;
}

std::vector<Rational> parseRationalList(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& item : splitList(text, "list")) out.push_back(rationalOrThrow(item, "list"));
  if (out.empty()) throw ConfigError("list must not be empty");
  return out;
}

AffineSystem1D inlineSystem(const std::vector<std::pair<Rational, Rational>>& maps, const std::vector<Rational>& probs,
                            const Rational& lo, const Rational& hi) {
  std::vector<AffineMap<1>> affine;
  for (const auto& [r, t] : maps) affine.push_back(affine1D(r, t));
  Box<1> domain;
  domain.lo(0) = lo;
  domain.hi(0) = hi;
  try {
    return AffineSystem1D(std::move(affine), WeightVector(probs), domain, ShiftRule{});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid inline system: ") + e.what());
  }
}

}  // namespace ifsrep
