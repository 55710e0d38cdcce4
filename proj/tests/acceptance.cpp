// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "ifsrep/boundary.hpp"
#include "ifsrep/cuntz.hpp"
#include "ifsrep/density.hpp"
#include "ifsrep/measure.hpp"
#include "ifsrep/pvm.hpp"
#include "ifsrep/verify.hpp"

using namespace ifsrep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename Scalar>
bool same(const TruncatedOperator<Scalar>& a, const TruncatedOperator<Scalar>& b) {
  return a.sourceLevel() == b.sourceLevel() && a.targetLevel() == b.targetLevel() && (a - b).isZero();
}

std::vector<Word> wordsUpTo(const Alphabet& a, int maxLength) {
  std::vector<Word> out;
  for (int l = 0; l <= maxLength; ++l) {
    for (const auto& w : allWords(a, l)) out.push_back(w);
  }
  return out;
}

Outcome cuntzRelations() {
  int levels = 0;
  for (int n : {2, 3}) {
    const RepresentationModel<Rational> m(WeightVector::uniform(n));
    for (int k = 0; k <= 8; ++k) {
      const auto r = verifyCuntzLevel(m, k);
      if (!r.pass || !r.exactlyZero || r.deviation != 0.0) {
        return {false, "N=" + std::to_string(n) + " k=" + std::to_string(k) + " " + r.failingRelation};
      }
      ++levels;
    }
  }
  return {true, std::to_string(levels) + " levels, deviation 0"};
}

Outcome kolmogorov() {
  long checks = 0;
  for (int n : {2, 3}) {
    const RepresentationModel<Rational> m(WeightVector::uniform(n));
    const int k = 6;
    for (const auto& f : wordsUpTo(m.alphabet(), k)) {
      // Additivity at the level just below the refinement.
      const int level = std::max<int>(static_cast<int>(f.size()) + 1, 1);
      auto sum = Op::zero(m.alphabet(), level, level);
      for (int i = 0; i < n; ++i) sum = sum + qCylinder(m, f.append(i), level);
      if (!same(sum, qCylinder(m, f, level))) return {false, "additivity at " + f.str()};
      // The same cylinder one level up is the lift.
      if (!same(qCylinder(m, f, k + 1), qCylinder(m, f, k).lift())) return {false, "lift of " + f.str()};
      checks += 2;
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> num(-6, 6);
    for (int l = 0; l <= k; ++l) {
      LevelFunction f{l, {}};
      for (Eigen::Index j = 0; j < levelSize(m.alphabet(), l); ++j) f.values.emplace_back(num(rng), 5);
      if (!same(qFunctional(m, f, l + 1), qFunctional(m, f, l).lift())) {
        return {false, "functional lift at level " + std::to_string(l)};
      }
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " identities exact"};
}

Outcome orthogonality() {
  const RepresentationModel<Rational> m(WeightVector::uniform(2));
  const int k = 6;
  const auto words = wordsUpTo(m.alphabet(), k);
  std::vector<Op> q;
  for (const auto& w : words) q.push_back(qCylinder(m, w, k));
  long pairs = 0;
  long disjoint = 0;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      const auto prod = q[a] * q[b];
      const auto meet = cylinderIntersect({words[a]}, {words[b]});
      const bool ok = meet ? same(prod, qCylinder(m, meet->base, k)) : prod.isZero();
      if (!ok) return {false, words[a].str() + " x " + words[b].str()};
      if (!meet) ++disjoint;
      ++pairs;
    }
  }
  const bool witness = !same(qPreimage(m, Word{0}, 2), qCylinder(m, Word{0}, 2));
  return {witness, std::to_string(pairs) + " pairs (" + std::to_string(disjoint) +
                       " disjoint), preimage witness " + (witness ? "differs" : "MISSING")};
}

Outcome cdfValues() {
  const IFSMeasure c3(standardSystem("cantor3"));
  const IFSMeasure c4(standardSystem("cantor4"));
  if (c4.cdf(Rational(1, 6)) != Rational(1, 2)) return {false, "F_4(1/6)"};
  if (c4.cdf(Rational(2, 3)) != 1) return {false, "F_4(2/3)"};
  if (c3.cdf(Rational(1, 3)) != Rational(1, 2)) return {false, "F_3(1/3)"};
  struct Gap {
    const IFSMeasure* m;
    Rational lo, hi, value;
  };
  const Gap gaps[] = {{&c3, Rational(1, 3), Rational(2, 3), Rational(1, 2)},
                      {&c3, Rational(1, 9), Rational(2, 9), Rational(1, 4)},
                      {&c4, Rational(1, 6), Rational(1, 2), Rational(1, 2)},
                      {&c4, Rational(1, 24), Rational(1, 8), Rational(1, 4)}};
  for (const IFSMeasure* m : {&c3, &c4}) {
    Rational prev(0);
    for (int j = 0; j < 1000; ++j) {
      const Rational x(j, 999);
      const Rational f = m->cdf(x);
      if (f < prev) return {false, "not monotone at " + toString(x)};
      prev = f;
      for (const auto& g : gaps) {
        if (g.m == m && x >= g.lo && x < g.hi && f != g.value) return {false, "gap value at " + toString(x)};
      }
    }
  }
  return {true, "F_4(1/6)=1/2, F_4(2/3)=1, F_3(1/3)=1/2; 1000-point grid monotone"};
}

Outcome moments() {
  const auto c3 = standardSystem("cantor3");
  const auto c4 = standardSystem("cantor4");
  const IFSMeasure m3(c3);
  const IFSMeasure m4(c4);
  if (m3.moment(1) != Rational(1, 2) || m3.moment(2) != Rational(3, 8) || m4.moment(1) != Rational(1, 3)) {
    return {false, "exact moments"};
  }
  const auto mc3 = chaosGameMoments(c3, 1000000, 1);
  const auto mc4 = chaosGameMoments(c4, 1000000, 2);
  const double z1 = std::abs(mc3.m1 - 0.5) / mc3.se1;
  const double z2 = std::abs(mc3.m2 - 0.375) / mc3.se2;
  const double z3 = std::abs(mc4.m1 - 1.0 / 3.0) / mc4.se1;
  char buf[160];
  std::snprintf(buf, sizeof buf, "exact 1/2, 3/8, 1/3; Monte Carlo |z| = %.2f, %.2f, %.2f", z1, z2, z3);
  return {z1 <= 3.0 && z2 <= 3.0 && z3 <= 3.0, buf};
}

Outcome spectralOrthogonalityCheck() {
  const IFSMeasure m4(standardSystem("cantor4"));
  const auto lambda = spectrumExpand(3);
  double worst = 0.0;
  for (auto a : lambda) {
    for (auto b : lambda) {
      if (a != b) worst = std::max(worst, std::abs(fourierFixed(m4, Rational(a - b), 40).value));
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "max |mu4^| = %.3g", worst);
  return {worst <= 1e-10, buf};
}

Outcome kernelReproduction() {
  FourierCache cache(40);
  std::vector<Complex> points;
  const double side = 0.9 / std::sqrt(2.0);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) points.emplace_back(-side + side * a / 2.0, -side + side * b / 2.0);
  }
  double worst = 0.0;
  for (const auto& z : points) {
    for (const auto& w : points) worst = std::max(worst, reproduceCheck(z, w, 8, cache).residual);
  }
  const SpectralPolynomial f{{0, {1.0, 0.0}}, {1, {0.5, -0.5}}, {5, {0.0, 2.0}}, {20, {-1.0, 0.0}}, {21, {0.25, 0.0}}};
  bool recovery = true;
  for (const double r : {0.5, 0.9, 0.99, 0.999}) {
    for (int j = 0; j < 16; ++j) recovery = recovery && boundaryRecovery(f, j / 16.0, r).pass;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max residual %.3g over %zu pairs; boundary recovery %s", worst,
                points.size() * points.size(), recovery ? "within bound" : "VIOLATED");
  return {worst <= 1e-8 && recovery, buf};
}

// residual_k = 3^-k |m1 - Y(sigma^k omega)|, so the one-step ratio is 1/3
// times a ratio of tail distances. It is exactly 1/3 when every tail point
// sits at the same distance from m1; over a full period it is always 3^-p.
Outcome boundaryLimitDecay() {
  const IFSMeasure c3(standardSystem("cantor3"));
  const auto& s = c3.system();
  const std::vector<Rational> fx{Rational(0), Rational(1)};
  const Rational bound = Rational(1, 3) + Rational(1, 20);
  Rational worstStep(0);
  Rational worstOther(0);
  double worstPeriod = 0.0;
  for (const char* w : {"(0)", "(1)", "(01)", "0(1)", "1(0)", "(0011)", "01(110)", "(001)"}) {
    const auto omega = InfWordSpec::parse(w);
    const int pre = static_cast<int>(omega.preperiod().size());
    const int period = static_cast<int>(omega.period().size());
    std::set<Rational> distances;
    for (int j = 0; j < period; ++j) {
      InfWordSpec tail = omega;
      for (int l = 0; l < pre + j; ++l) tail = tail.shift();
      distances.insert(abs(c3.moment(1) - encodeExact(s, tail)(0)));
    }
    std::vector<Rational> residuals{Rational(0)};
    for (int k = 1; k <= 15; ++k) residuals.push_back(boundaryLimitExact(c3, fx, omega, k).residual);
    for (int k = 1; k < 15; ++k) {
      if (residuals[k] == 0) return {false, std::string("zero residual for ") + w};
      const Rational ratio = residuals[k + 1] / residuals[k];
      if (k > pre) {
        Rational& slot = distances.size() == 1 ? worstStep : worstOther;
        slot = std::max(slot, ratio);
      }
    }
    for (int k = pre + 1; k + period <= 15; ++k) {
      worstPeriod = std::max(worstPeriod, std::pow(toDouble(residuals[k + period] / residuals[k]), 1.0 / period));
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "one-step ratio %s (equidistant tails), per-period rate %.6f; one-step up to %s on other tails",
                toString(worstStep).c_str(), worstPeriod, toString(worstOther).c_str());
  return {worstStep <= bound && worstPeriod <= toDouble(bound), buf};
}

Outcome markov() {
  const std::vector<WeightVector> weights{WeightVector::uniform(2), WeightVector({Rational(1, 3), Rational(2, 3)}),
                                          WeightVector({Rational(1, 6), Rational(1, 3), Rational(1, 2)})};
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(1, 9);
  for (const auto& p : weights) {
    const RepresentationModel<Rational> m(p);
    for (int k = 1; k <= 4; ++k) {
      const auto t = markovMatrix(m, LevelFunction::constant(m.alphabet(), 0), k);
      for (Eigen::Index i = 0; i < t.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
          if (t(i, j) != p[static_cast<std::size_t>(j)]) return {false, "row differs from weights"};
        }
      }
      LevelFunction psi{k + 1, {}};
      for (Eigen::Index j = 0; j < levelSize(m.alphabet(), k + 1); ++j) psi.values.emplace_back(num(rng), 4);
      const auto s = markovMatrix(m, psi, k);
      for (Eigen::Index i = 0; i < s.rows(); ++i) {
        if (s.row(i).sum() != 1) return {false, "row sum"};
      }
    }
  }
  return {true, "psi = 1 rows equal p for 3 weight vectors, k <= 4; rows sum to 1"};
}

Outcome squareDensities() {
  const auto dyadic = standardSystem("dyadic").affine1D();
  const auto c3 = standardSystem("cantor3").affine1D();
  const auto c4 = standardSystem("cantor4").affine1D();
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> point(0, 47);
  std::uniform_int_distribution<int> weight(1, 9);
  std::uniform_int_distribution<int> value(-5, 5);
  auto random = [&] {
    std::vector<std::pair<Rational, Rational>> atoms;
    for (int j = 0; j < 6; ++j) atoms.emplace_back(Rational(point(rng), 48), Rational(weight(rng), 11));
    const DiscreteMeasure mu(atoms);
    std::map<Rational, Surd> phi;
    for (const auto& [x, w] : mu.atoms()) phi[x] = Surd(Rational(value(rng))) + Surd(Rational(value(rng), 3)) * Surd::sqrt(Rational(3));
    return SquareDensityVector(mu, phi);
  };
  int checks = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const auto v = random();
    const auto w = random();
    for (const auto* s : {&dyadic, &c3, &c4}) {
      for (int i = 0; i < 2; ++i) {
        const auto si = inducedIsometry(*s, i, v);
        if (!(innerProduct(si, si) == innerProduct(v, v))) return {false, "isometry"};
        if (!innerProduct(si, inducedIsometry(*s, 1 - i, w)).isZero()) return {false, "orthogonal ranges"};
        if (!radonNikodymRuleHolds(*s, i, v.carrier(), v.carrier() + w.carrier())) return {false, "RN rule"};
        for (const Rational c : {Rational(2), Rational(3), Rational(1, 5)}) {
          const auto vc = rescaleRepresentative(v, c);
          if (!sameClass(inducedIsometry(*s, i, vc), si)) return {false, "representative (isometry)"};
          if (!(innerProduct(vc, w) == innerProduct(v, w))) return {false, "representative (inner product)"};
          if (!sameClass(addClasses(vc, w), addClasses(v, w))) return {false, "representative (sum)"};
        }
        checks += 4;
      }
    }
  }
  return {true, std::to_string(checks) + " exact identities"};
}

Outcome gradient() {
  const auto c3 = standardSystem("cantor3").affine1D();
  const DiscreteMeasure mu = cylinderApproximation(c3, 10);
  const BVStep f = distributionFunction(mu);
  for (const auto& [x, g] : gradientMu(f, mu)) {
    if (g != 1) return {false, "gradient " + toString(g) + " at " + toString(x)};
  }
  double worst = 0.0;
  for (int variant = 0; variant < 3; ++variant) {
    std::map<Rational, Rational> phi;
    for (const auto& [x, w] : mu.atoms()) {
      phi[x] = variant == 0 ? x : variant == 1 ? x * x - x : Rational(1) / (x + 1);
    }
    const auto [a, b] = gradientAdjointPair(f, mu, phi);
    worst = std::max(worst, std::abs(toDouble(a - b)));
  }
  char buf[100];
  std::snprintf(buf, sizeof buf, "%zu atoms, gradient 1, adjoint gap %.3g", mu.size(), worst);
  return {worst <= 1e-12, buf};
}

Outcome julia() {
  double worst = 0.0;
  for (const std::complex<double> c : {std::complex<double>(0.125, 0.625), std::complex<double>(0.375, -0.125)}) {
    SamplingOptions options;
    options.seed = 7;
    options.count = 10000;
    const auto orbit = juliaInverseOrbit(c, options);
    const JuliaSystem system{c};
    for (Eigen::Index i = 0; i < orbit.size(); ++i) {
      const std::complex<double> z(orbit.points(i, 0), orbit.points(i, 1));
      for (const auto& b : system.branches()) worst = std::max(worst, std::abs(system.shift(b.apply(z)) - z));
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "max |sigma(tau(z)) - z| = %.3g", worst);
  return {worst <= 1e-12, buf};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"exact Cuntz relations", 5.0, cuntzRelations},
      {"Kolmogorov consistency and additivity", 5.0, kolmogorov},
      {"orthogonality of Q", 0.0, orthogonality},
      {"CDF values", 1.0, cdfValues},
      {"moments vs Monte Carlo", 30.0, moments},
      {"spectral orthogonality of mu4", 1.0, spectralOrthogonalityCheck},
      {"kernel self-reproduction", 10.0, kernelReproduction},
      {"boundary limit decay", 0.0, boundaryLimitDecay},
      {"Markov transitions", 0.0, markov},
      {"square-density identities", 0.0, squareDensities},
      {"fractional gradient", 0.0, gradient},
      {"Julia branch identity", 0.0, julia},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0.0 && seconds >= c.budget) {
      o.pass = false;
      o.detail += " [over the " + std::to_string(static_cast<int>(c.budget)) + " s budget]";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-40s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
