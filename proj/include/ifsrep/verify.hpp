#pragma once

// Verification suites behind the `verify` command. Each check reports the
// level it ran at, how many words (or samples) it covered, the largest
// deviation seen and whether it passed.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ifsrep/export.hpp"
#include "ifsrep/ifs.hpp"

namespace ifsrep {

struct CheckItem {
  std::string check;
  int level = 0;
  long long words = 0;
  double deviation = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckItem> items;

  bool pass() const;
  void append(const VerifyReport& other);
  /// {suite, pass, checks: [{check, level, words, deviation, pass}]}
  Json toJson() const;
};

struct VerifyOptions {
  /// Highest truncation level for the operator suites.
  int level = 6;
  /// Spectrum depth for the kernel suite.
  int depth = 8;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

VerifyReport verifyCuntzSuite(const IFSSystem& system, const VerifyOptions& options);
VerifyReport verifyPvmSuite(const IFSSystem& system, const VerifyOptions& options);
/// One-dimensional systems only; other systems are checked on cantor3.
VerifyReport verifyDensitySuite(const IFSSystem& system, const VerifyOptions& options);
VerifyReport verifyBoundarySuite(const VerifyOptions& options);
/// Moments, CDF and encoding checks; one-dimensional systems, else cantor3.
VerifyReport verifyMeasureSuite(const IFSSystem& system, const VerifyOptions& options);
VerifyReport verifyAll(const IFSSystem& system, const VerifyOptions& options);

/// max |sigma(tau_+-(z)) - z| over an inverse orbit of `count` points.
double juliaBranchResidual(std::complex<double> c, std::size_t count, std::uint64_t seed);

/// Chaos-game mean and second moment with their standard errors.
struct MonteCarloMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double se1 = 0.0;
  double se2 = 0.0;
};

MonteCarloMoments chaosGameMoments(const IFSSystem& system, std::size_t count, std::uint64_t seed,
                                   unsigned workers = 1);

}  // namespace ifsrep
