#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ifsrep/boundary.hpp"
#include "ifsrep/config.hpp"
#include "ifsrep/cuntz.hpp"
#include "ifsrep/density.hpp"
#include "ifsrep/export.hpp"
#include "ifsrep/measure.hpp"
#include "ifsrep/pvm.hpp"
#include "ifsrep/verify.hpp"

namespace ifsrep {

namespace {

constexpr const char* kOutDirVariable = "IFSREP_OUT_DIR";

struct Invocation {
  std::string command;
  std::string target;
  RunConfig config;
};

/// Where the result of a command goes: --out, $IFSREP_OUT_DIR/<default>, or the stream.
void emit(const Invocation& inv, const std::string& text, const std::string& extension, std::ostream& out) {
  std::optional<std::filesystem::path> path;
  if (auto o = inv.config.get("out")) path = *o;
  const char* dir = std::getenv(kOutDirVariable);
  if (dir != nullptr && *dir != '\0') {
    if (!path) path = inv.command + "-" + inv.target + "." + extension;
    if (path->is_relative()) path = std::filesystem::path(dir) / *path;
  }
  if (!path) {
    out << text;
    return;
  }
  if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path->string());
  file << text;
  if (!file) throw std::runtime_error("write failed for " + path->string());
}

bool wantsCsv(const Invocation& inv) { return inv.config.getString("format", "json") == "csv"; }

std::string jsonText(const Json& j) { return j.dump(2) + "\n"; }

std::string tableText(const Invocation& inv, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream s;
  if (inv.config.getString("format", "csv") == "json") {
    Json list = Json::array();
    for (const auto& row : rows) list.push_back(row);
    s << jsonText({{"columns", header}, {"rows", std::move(list)}});
  } else {
    writeCsv(s, header, rows);
  }
  return s.str();
}

std::vector<std::vector<double>> pointRows(const PointSet& points) {
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(points.size()));
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    std::vector<double> row;
    for (Eigen::Index j = 0; j < points.points.cols(); ++j) row.push_back(points.points(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> pointHeader(const PointSet& points) {
  switch (points.kind) {
    case PointSet::Kind::Real1D:
      return {"x"};
    case PointSet::Kind::Real2D:
      return {"x", "y"};
    case PointSet::Kind::Complex:
      return {"re", "im"};
  }
  return {};
}

SamplingOptions samplingOptions(const RunConfig& config, std::size_t count) {
  SamplingOptions options;
  options.seed = static_cast<std::uint64_t>(config.getInt("seed", 0));
  options.count = static_cast<std::size_t>(config.getInt("n", static_cast<long long>(count)));
  options.burnin = static_cast<std::size_t>(config.getInt("burnin", 128));
  options.workers = static_cast<unsigned>(std::max<long long>(1, config.getInt("workers", 1)));
  return options;
}

IFSMeasure lineMeasure(const RunConfig& config) {
  const IFSSystem system = config.system();
  if (!std::holds_alternative<AffineSystem1D>(system.kind)) {
    throw std::invalid_argument("system '" + system.name + "' is not a one-dimensional affine system");
  }
  return IFSMeasure(system.affine1D());
}

int runVerify(const Invocation& inv, std::ostream& out) {
  VerifyOptions options;
  options.level = static_cast<int>(inv.config.getInt("level", 6));
  options.depth = static_cast<int>(inv.config.getInt("depth", 8));
  options.tol = inv.config.getDouble("tol", 1e-12);
  options.seed = static_cast<std::uint64_t>(inv.config.getInt("seed", 1));
  options.workers = static_cast<unsigned>(std::max<long long>(1, inv.config.getInt("workers", 1)));
  if (options.level < 1) throw ConfigError("level must be at least 1");
  if (options.depth > 16) throw ConfigError("depth must be at most 16");

  VerifyReport report;
  if (inv.target == "boundary") {
    report = verifyBoundarySuite(options);
  } else {
    const IFSSystem system = inv.config.system();
    if (inv.target == "cuntz") report = verifyCuntzSuite(system, options);
    if (inv.target == "pvm") report = verifyPvmSuite(system, options);
    if (inv.target == "density") report = verifyDensitySuite(system, options);
    if (inv.target == "all") report = verifyAll(system, options);
  }

  if (wantsCsv(inv)) {
    std::ostringstream s;
    s << "check,level,words,deviation,pass\n";
    for (const auto& item : report.items) {
      s << '"' << item.check << "\"," << item.level << ',' << item.words << ',' << formatDecimal(item.deviation)
        << ',' << (item.pass ? "true" : "false") << '\n';
    }
    emit(inv, s.str(), "csv", out);
  } else {
    emit(inv, jsonText(report.toJson()), "json", out);
  }
  return report.pass() ? kExitOk : kExitCheckFailed;
}

int runGenerate(const Invocation& inv, std::ostream& out) {
  const auto& config = inv.config;
  const std::string ext = config.getString("format", "csv") == "json" ? "json" : "csv";
  if (inv.target == "attractor") {
    const PointSet points = chaosGame(config.system("sierpinski"), samplingOptions(config, 10000));
    emit(inv, tableText(inv, pointHeader(points), pointRows(points)), ext, out);
  } else if (inv.target == "julia") {
    const auto c = config.getComplex("c", {0.125, 0.625});
    if (c == std::complex<double>{}) throw ConfigError("the julia system needs c != 0");
    const PointSet points = juliaInverseOrbit(c, samplingOptions(config, 10000));
    emit(inv, tableText(inv, pointHeader(points), pointRows(points)), ext, out);
  } else if (inv.target == "cdf") {
    const auto rows = cdfCurve(lineMeasure(config), static_cast<int>(config.getInt("grid", 1000)));
    emit(inv, tableText(inv, {"x", "F"}, rows), ext, out);
  } else if (inv.target == "staircase") {
    const auto rows = staircaseCurves(static_cast<int>(config.getInt("grid", 1000)));
    emit(inv, tableText(inv, {"x", "F_lambda", "F_3", "F_4"}, rows), ext, out);
  } else if (inv.target == "kernel") {
    const auto samples = kernelGrid({0.3, 0.6, 0.9}, 8, static_cast<int>(config.getInt("grid", 64)),
                                    config.getDouble("tol", 1e-12),
                                    static_cast<unsigned>(std::max<long long>(1, config.getInt("workers", 1))));
    std::vector<std::vector<double>> rows;
    for (const auto& s : samples) rows.push_back({s.z.real(), s.z.imag(), s.x, s.k.real(), s.k.imag()});
    emit(inv, tableText(inv, {"re_z", "im_z", "x", "re_K", "im_K"}, rows), ext, out);
  }
  return kExitOk;
}

LevelFunction psiFromConfig(const RunConfig& config, const Alphabet& alphabet) {
  const std::string psi = config.getString("psi", "one");
  if (psi == "one") return LevelFunction::constant(alphabet, 0);
  LevelFunction f{0, parseRationalList(psi)};
  std::size_t size = 1;
  while (size < f.values.size()) {
    size *= static_cast<std::size_t>(alphabet.n);
    ++f.level;
  }
  if (size != f.values.size()) throw ConfigError("psi must list N^l values");
  return f;
}

std::vector<Rational> polynomialFromConfig(const RunConfig& config) {
  const std::string f = config.getString("f", "x");
  if (f == "x") return {Rational(0), Rational(1)};
  return parseRationalList(f);
}

int runAnalyze(const Invocation& inv, std::ostream& out) {
  const auto& config = inv.config;
  if (inv.target == "moments") {
    const long long n = config.getInt("n", 4);
    if (n < 1) throw ConfigError("n must be at least 1");
    const auto moments = lineMeasure(config).moments(static_cast<int>(n - 1));
    if (wantsCsv(inv)) {
      std::ostringstream s;
      s << "degree,moment\n";
      for (std::size_t j = 0; j < moments.size(); ++j) s << j << ',' << toString(moments[j]) << '\n';
      emit(inv, s.str(), "csv", out);
    } else {
      emit(inv, jsonText(fractionArray(moments)), "json", out);
    }
    return kExitOk;
  }
  if (inv.target == "fourier") {
    const Rational xi = config.getRational("xi", Rational(1));
    const auto v = fourier(lineMeasure(config), xi, config.getDouble("tol", 1e-12));
    emit(inv,
         jsonText({{"xi", toString(xi)},
                   {"re", v.value.real()},
                   {"im", v.value.imag()},
                   {"factors", v.factors},
                   {"tailBound", v.tailBound}}),
         "json", out);
    return kExitOk;
  }
  if (inv.target == "markov") {
    const auto model = RepresentationModel<Rational>::fromSystem(config.system());
    const int k = static_cast<int>(config.getInt("k", 1));
    const auto psi = psiFromConfig(config, model.alphabet());
    const RationalMatrix m = markovMatrix(model, psi, k);
    emit(inv, jsonText({{"k", k}, {"psi", config.getString("psi", "one")}, {"matrix", rationalMatrixJson(m)}}), "json",
         out);
    return kExitOk;
  }
  if (inv.target == "gradient") {
    const IFSSystem system = config.system("cantor3");
    if (!std::holds_alternative<AffineSystem1D>(system.kind)) throw ConfigError("gradient needs a 1D system");
    const int k = static_cast<int>(config.getInt("k", 10));
    const DiscreteMeasure mu = cylinderApproximation(system.affine1D(), k);
    const BVStep f = distributionFunction(mu);
    const auto grad = gradientMu(f, mu);
    std::set<Rational> distinct;
    for (const auto& [x, v] : grad) distinct.insert(v);
    std::map<Rational, Rational> phi;
    for (const auto& [x, w] : mu.atoms()) phi[x] = x;
    const auto [lhs, rhs] = gradientAdjointPair(f, mu, phi);
    emit(inv,
         jsonText({{"level", k},
                   {"atoms", mu.size()},
                   {"gradientValues", fractionArray({distinct.begin(), distinct.end()})},
                   {"adjoint", {{"phi", "x"}, {"integral", toString(lhs)}, {"pairing", toString(rhs)}}}}),
         "json", out);
    return kExitOk;
  }
  if (inv.target == "boundary-limit") {
    const IFSMeasure m = lineMeasure(config);
    const auto coefficients = polynomialFromConfig(config);
    const auto omega = InfWordSpec::parse(config.getString("omega", "(0)"));
    const int k = static_cast<int>(config.getInt("k", 10));
    if (k < 1) throw ConfigError("k must be at least 1");
    const auto result = boundaryLimitExact(m, coefficients, omega, k);
    std::vector<Rational> residuals;
    for (int j = 1; j <= k; ++j) residuals.push_back(boundaryLimitExact(m, coefficients, omega, j).residual);
    emit(inv,
         jsonText({{"k", k},
                   {"omega", omega.str()},
                   {"value", toString(result.value)},
                   {"target", toString(result.target)},
                   {"residual", toString(result.residual)},
                   {"residualDecimal", toDouble(result.residual)},
                   {"residuals", fractionArray(residuals)}}),
         "json", out);
    return kExitOk;
  }
  return kExitConfigError;
}

int runDump(const Invocation& inv, std::ostream& out) {
  const auto& config = inv.config;
  const int level = static_cast<int>(config.getInt("level", 2));
  if (inv.target == "generator") {
    const IFSSystem system = config.system();
    const int i = static_cast<int>(config.getInt("i", 0));
    if (i >= system.size()) throw ConfigError("letter i outside the alphabet");
    Json dump;
    if (auto gauge = config.get("omega")) {
      const auto model = RepresentationModel<Cyclotomic>::fromSystem(system, InfWordSpec::parse(*gauge));
      dump = operatorDump(generatorS(model, i, level));
    } else {
      const auto model = RepresentationModel<Rational>::fromSystem(system);
      dump = operatorDump(generatorS(model, i, level));
    }
    emit(inv, jsonText(dump), "json", out);
  } else if (inv.target == "measure") {
    const IFSSystem system = config.system("cantor3");
    if (!std::holds_alternative<AffineSystem1D>(system.kind)) throw ConfigError("measure dump needs a 1D system");
    emit(inv, jsonText(discreteMeasureJson(cylinderApproximation(system.affine1D(), level))), "json", out);
  }
  return kExitOk;
}

/// Registers the options shared by every command. Values are recorded in
/// command-line order and applied on top of --config.
void addCommonOptions(CLI::App* sub, std::vector<std::pair<std::string, std::string>>& assignments,
                      std::string& configPath) {
  auto value = [&](const std::string& flags, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
        flags, [&assignments, key](const std::string& v) { assignments.emplace_back(key, v); }, help);
  };
  sub->add_option("--config", configPath, "key=value configuration file");
  sub->add_option_function<std::vector<std::string>>(
      "--set",
      [&assignments](const std::vector<std::string>& items) {
        for (const auto& item : items) assignments.emplace_back("", item);
      },
      "override, key=value (repeatable)");
  value("--system", "system", "dyadic, cantor3, cantor4, sierpinski, julia, or \"maps=[...] probs=[...]\"");
  value("--maps", "maps", "inline maps [(r,t),...]");
  value("--probs", "probs", "inline weights [p,...]");
  value("--level", "level", "truncation level");
  value("--depth", "depth", "spectrum depth");
  value("-k,--k", "k", "step or level");
  value("-n,--count", "n", "sample or moment count");
  value("--seed", "seed", "random seed");
  value("--grid", "grid", "grid size");
  value("--c", "c", "julia parameter, e.g. 0.125+0.625i");
  value("--psi", "psi", "vector: one, or a table [v,...]");
  value("--f", "f", "function: x, or polynomial coefficients [c0,c1,...]");
  value("--omega", "omega", "eventually periodic word, e.g. 01(2)");
  value("--xi", "xi", "frequency");
  value("--i", "i", "letter");
  value("--tol", "tol", "tolerance");
  value("--workers", "workers", "worker threads");
  value("--format", "format", "json or csv");
  value("--out", "out", "output file");
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated function systems, Cuntz representations and boundary kernels", "ifsrep"};
  app.require_subcommand(1);

  std::vector<std::pair<std::string, std::string>> assignments;
  std::string configPath;
  std::string target;

  struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> targets;
  };
  const std::vector<Command> commands = {
      {"verify", "run a verification suite", {"cuntz", "pvm", "density", "boundary", "all"}},
      {"generate", "write plot data", {"attractor", "julia", "cdf", "staircase", "kernel"}},
      {"analyze", "exact and numerical queries", {"moments", "fourier", "markov", "gradient", "boundary-limit"}},
      {"dump", "operator and measure dumps", {"generator", "measure"}},
      {"config", "print the canonical configuration", {"show"}},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("target", target, "one of the listed targets")->required()->check(CLI::IsMember(c.targets));
    addCommonOptions(sub, assignments, configPath);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  Invocation inv;
  inv.command = app.get_subcommands().front()->get_name();
  inv.target = target;
  try {
    if (!configPath.empty()) inv.config = RunConfig::load(configPath);
    for (const auto& [key, value] : assignments) {
      if (key.empty()) {
        inv.config.applyAssignments(value);
      } else {
        inv.config.set(key, value);
      }
    }
    if (inv.command == "verify") return runVerify(inv, out);
    if (inv.command == "generate") return runGenerate(inv, out);
    if (inv.command == "analyze") return runAnalyze(inv, out);
    if (inv.command == "dump") return runDump(inv, out);
    emit(inv, inv.config.canonical(), "conf", out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "unsupported: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    err << "too large: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

}  // namespace ifsrep
