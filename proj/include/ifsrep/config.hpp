#pragma once

// Run configuration: a flat key=value text file plus overrides.
//
//   # comment
//   system = cantor3
//   level = 6
//
// An inline one-dimensional system replaces the name:
//   maps=[(1/3,0),(1/3,2/3)] probs=[1/2,1/2]
// where each pair (r,t) is x -> r x + t.

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ifsrep/ifs.hpp"

namespace ifsrep {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RunConfig {
 public:
  /// The accepted keys, in canonical order.
  static const std::vector<std::string>& knownKeys();

  /// Throws ConfigError on unknown keys, malformed lines or bad values.
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::filesystem::path& path);

  /// Sets one key after validating and normalizing its value.
  void set(const std::string& key, const std::string& value);
  /// Applies "a=b" tokens, several per string allowed (whitespace separated).
  void applyAssignments(std::string_view text);
  /// Keys set in `other` win.
  void merge(const RunConfig& other);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string getString(const std::string& key, const std::string& fallback) const;
  long long getInt(const std::string& key, long long fallback) const;
  double getDouble(const std::string& key, double fallback) const;
  Rational getRational(const std::string& key, const Rational& fallback) const;
  std::complex<double> getComplex(const std::string& key, std::complex<double> fallback) const;

  /// Sorted key=value lines. parse(canonical()).canonical() == canonical().
  std::string canonical() const;
  const std::map<std::string, std::string>& values() const { return values_; }

  /// The configured system: a standard name, or maps/probs/domain.
  /// The julia system takes its parameter from `c`.
  IFSSystem system(const std::string& fallback = "dyadic") const;

 private:
  std::map<std::string, std::string> values_;
};

/// "0.125+0.625i", "-0.5i", "2", "0.375-0.125i".
std::complex<double> parseComplex(std::string_view text);
/// Shortest round-tripping text for parseComplex.
std::string formatComplex(std::complex<double> z);

/// "[(1/3,0),(1/3,2/3)]" -> list of (ratio, offset).
std::vector<std::pair<Rational, Rational>> parseMapList(std::string_view text);
/// "[1/2,1/2]"
std::vector<Rational> parseRationalList(std::string_view text);

/// A one-dimensional system from inline data, on [lo, hi] (default [0, 1]).
AffineSystem1D inlineSystem(const std::vector<std::pair<Rational, Rational>>& maps, const std::vector<Rational>& probs,
                            const Rational& lo = Rational(0), const Rational& hi = Rational(1));

}  // namespace ifsrep
