#include "ifsrep/verify.hpp"

#include <cmath>
#include <random>

#include "ifsrep/boundary.hpp"
#include "ifsrep/cuntz.hpp"
#include "ifsrep/density.hpp"
#include "ifsrep/measure.hpp"
#include "ifsrep/pvm.hpp"

namespace ifsrep {

bool VerifyReport::pass() const {
  for (const auto& item : items) {
    if (!item.pass) return false;
  }
  return true;
}

void VerifyReport::append(const VerifyReport& other) {
  for (auto item : other.items) {
    item.check = other.suite + ": " + item.check;
    items.push_back(std::move(item));
  }
}

Json VerifyReport::toJson() const {
  Json checks = Json::array();
  for (const auto& item : items) {
    checks.push_back({{"check", item.check},
                      {"level", item.level},
                      {"words", item.words},
                      {"deviation", item.deviation},
                      {"pass", item.pass}});
  }
  return {{"suite", suite}, {"pass", pass()}, {"checks", std::move(checks)}};
}

namespace {

using Model = RepresentationModel<Rational>;

long long wordCount(const Alphabet& alphabet, int k) {
  return static_cast<long long>(levelDimension(alphabet, k, SIZE_MAX));
}

/// All words of length 0..k.
std::vector<Word> wordsUpTo(const Alphabet& alphabet, int k) {
  std::vector<Word> out;
  for (int len = 0; len <= k; ++len) {
    for (auto& w : allWords(alphabet, len)) out.push_back(std::move(w));
  }
  return out;
}

Rational randomRational(std::mt19937_64& rng, int maxDen = 12) {
  std::uniform_int_distribution<int> den(1, maxDen);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(-2 * d, 2 * d);
  return Rational(num(rng), d);
}

Rational randomPositive(std::mt19937_64& rng, int maxDen = 12) {
  std::uniform_int_distribution<int> den(1, maxDen);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(1, 3 * d);
  return Rational(num(rng), d);
}

/// Orthogonality and additivity of Q over cylinders at level k.
void pvmAlgebraChecks(const Model& model, int k, VerifyReport& report) {
  const auto& alphabet = model.alphabet();
  const auto words = wordsUpTo(alphabet, k);
  std::vector<Op> q;
  q.reserve(words.size());
  for (const auto& f : words) q.push_back(qCylinder(model, f, k));

  CheckItem ortho{"Q(E_f) Q(E_g) = Q(E_f cap E_g)", k, static_cast<long long>(words.size() * words.size()), 0.0, true};
  const Op zero = Op::zero(alphabet, k, k);
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      const auto meet = cylinderIntersect(Cylinder{words[a]}, Cylinder{words[b]});
      const Op expected = meet ? qCylinder(model, meet->base, k) : zero;
      const Op product = q[a] * q[b];
      ortho.deviation = std::max(ortho.deviation, maxDeviation(product, expected));
      ortho.pass = ortho.pass && agrees(product, expected);
    }
  }
  report.items.push_back(ortho);

  CheckItem additive{"Q(E_f) = sum_i Q(E_fi)", k, 0, 0.0, true};
  for (const auto& f : wordsUpTo(alphabet, k - 1)) {
    Op sum = zero;
    for (int i = 0; i < alphabet.n; ++i) sum = sum + qCylinder(model, f.append(i), k);
    const Op lhs = qCylinder(model, f, k);
    additive.deviation = std::max(additive.deviation, maxDeviation(lhs, sum));
    additive.pass = additive.pass && agrees(lhs, sum);
    ++additive.words;
  }
  report.items.push_back(additive);
}

}  // namespace

VerifyReport verifyCuntzSuite(const IFSSystem& system, const VerifyOptions& options) {
  VerifyReport report{"cuntz", {}};
  const auto model = Model::fromSystem(system);
  const auto& alphabet = model.alphabet();
  for (int k = 0; k < options.level; ++k) {
    const auto r = verifyCuntzLevel(model, k, options.tol);
    report.items.push_back({"cuntz relations", k, wordCount(alphabet, k), r.deviation, r.pass && r.exactlyZero});
  }

  const InfWordSpec x = InfWordSpec::parse("(1)");
  const auto twisted = RepresentationModel<Cyclotomic>::fromSystem(system, x);
  const int twistedTop = std::min(options.level, 5);
  for (int k = 0; k < twistedTop; ++k) {
    const auto r = verifyCuntzLevel(twisted, k, options.tol);
    report.items.push_back(
        {"cuntz relations, gauge twist (1)", k, wordCount(alphabet, k), r.deviation, r.pass && r.exactlyZero});
  }

  const int k = std::min(options.level, 3);
  {
    const auto id = Op::identity(alphabet, k);
    const bool fixed = fixedByBeta(model, id) && commutesWithCoisometries(model, id);
    report.items.push_back({"beta fixes scalars", k, wordCount(alphabet, k), 0.0, fixed});
    if (k >= 1) {
      const auto p = qCylinder(model, Word{0}, k);
      const bool moved = !fixedByBeta(model, p) && !commutesWithCoisometries(model, p);
      report.items.push_back({"beta moves Q(E_0)", k, wordCount(alphabet, k), 0.0, moved});
    }
  }
  {
    const auto u = uAlpha(model, Endomorphism::identity(), k, options.tol);
    report.items.push_back({"U_alpha for the identity", k + 1, wordCount(alphabet, k + 1),
                            std::max(u.unitarityDeviation, u.covarianceDeviation), u.pass && u.u.isDiagonal()});
    const auto g = uAlpha(twisted, Endomorphism::gaugeAction(x), k, options.tol);
    report.items.push_back({"U_alpha for the gauge action", k + 1, wordCount(alphabet, k + 1),
                            std::max(g.unitarityDeviation, g.covarianceDeviation), g.pass});
  }
  return report;
}

VerifyReport verifyPvmSuite(const IFSSystem& system, const VerifyOptions& options) {
  VerifyReport report{"pvm", {}};
  const auto model = Model::fromSystem(system);
  const auto& alphabet = model.alphabet();
  const int top = std::max(2, std::min(options.level, alphabet.n == 2 ? 6 : 4));
  pvmAlgebraChecks(model, top, report);

  std::mt19937_64 rng(options.seed);
  CheckItem lifting{"Q^(k+1)(F lifted) = Q^(k)(F) lifted", top - 1, 0, 0.0, true};
  CheckItem squares{"Q^(k)(F)^2 = Q^(k)(F^2)", top - 1, 0, 0.0, true};
  for (int l = 0; l < top; ++l) {
    LevelFunction f = LevelFunction::constant(alphabet, l, Rational(0));
    for (auto& v : f.values) v = randomRational(rng);
    LevelFunction f2 = f;
    for (auto& v : f2.values) v *= v;
    for (int k = l; k < top; ++k) {
      const Op low = qFunctional(model, f, k);
      const Op high = qFunctional(model, f, k + 1);
      lifting.deviation = std::max(lifting.deviation, maxDeviation(high, low.lift()));
      lifting.pass = lifting.pass && agrees(high, low.lift());
      squares.pass = squares.pass && agrees(low * low, qFunctional(model, f2, k));
      lifting.words += wordCount(alphabet, k);
      squares.words += wordCount(alphabet, k);
    }
  }
  report.items.push_back(lifting);
  report.items.push_back(squares);

  CheckItem sameAsCuntz{"Q(E_f) = S_f S_f^*", top, 0, 0.0, true};
  for (const auto& f : wordsUpTo(alphabet, top)) {
    if (f.empty()) continue;
    sameAsCuntz.pass = sameAsCuntz.pass && agrees(qCylinder(model, f, top), wordProjection(model, f, top));
    ++sameAsCuntz.words;
  }
  report.items.push_back(sameAsCuntz);

  CheckItem covariance{"shift covariance of Q", top, 0, 0.0, true};
  for (const auto& f : wordsUpTo(alphabet, std::min(top - 1, 3))) {
    if (f.empty()) continue;
    for (int i = 0; i < alphabet.n; ++i) {
      const auto r = covarianceChecks(model, f, i, static_cast<int>(f.size()) + 1, options.tol);
      covariance.deviation = std::max(covariance.deviation, r.deviation);
      covariance.pass = covariance.pass && r.pass;
      ++covariance.words;
    }
  }
  report.items.push_back(covariance);

  {
    const Op pre = qPreimage(model, Word{0}, 2);
    const Op plain = qCylinder(model, Word{0}, 2);
    report.items.push_back({"Q(sigma^-1 E_0) differs from Q(E_0)", 2, wordCount(alphabet, 2),
                            maxDeviation(pre, plain), !agrees(pre, plain)});
  }

  const auto one = LevelFunction::constant(alphabet, 0);
  CheckItem markov{"Markov rows for psi = 1 equal the weights", 0, 0, 0.0, true};
  for (int k = 1; k <= std::min(3, top); ++k) {
    const RationalMatrix m = markovMatrix(model, one, k);
    for (int i = 0; i < alphabet.n; ++i) {
      Rational rowSum(0);
      for (int j = 0; j < alphabet.n; ++j) {
        markov.pass = markov.pass && m(i, j) == model.weights()[static_cast<std::size_t>(j)];
        rowSum += m(i, j);
      }
      markov.pass = markov.pass && rowSum == 1;
    }
    markov.level = k;
    markov.words += alphabet.n * alphabet.n;
  }
  report.items.push_back(markov);

  CheckItem scalar{"scalar measure of psi = 1 is a probability", top, wordCount(alphabet, top), 0.0, true};
  {
    Rational total(0);
    const auto masses = scalarMeasure(model, one, top);
    const auto words = allWords(alphabet, top);
    for (std::size_t i = 0; i < masses.size(); ++i) {
      scalar.pass = scalar.pass && masses[i] == model.weights().product(words[i]);
      total += masses[i];
    }
    scalar.pass = scalar.pass && total == 1;
  }
  report.items.push_back(scalar);

  {
    const auto atom = atomMass(model, InfWordSpec::parse("(0)"), top);
    report.items.push_back(
        {"cylinder masses decrease along (0)", top, top, 0.0, atom.rank == 1 && atom.monotone && !atom.atomPresent});
  }
  {
    const bool cyclic = monicCheck(model, one, std::min(top, 5));
    const auto spike = LevelFunction::indicator(alphabet, Word(std::vector<int>(2, 0)));
    const bool notCyclic = !monicCheck(model, spike, 2);
    report.items.push_back({"monic: 1 is cyclic, a point mass is not", std::min(top, 5),
                            wordCount(alphabet, std::min(top, 5)), 0.0, cyclic && notCyclic});
  }
  return report;
}

namespace {

IFSSystem lineSystem(const IFSSystem& system) {
  if (std::holds_alternative<AffineSystem1D>(system.kind)) return system;
  return standardSystem("cantor3");
}

/// A random atomic square density with atoms in the half-open domain.
SquareDensityVector randomDensity(const AffineSystem1D& s, std::mt19937_64& rng, int atoms) {
  const Rational lo = s.domain().lo(0);
  const Rational width = s.domain().hi(0) - lo;
  std::uniform_int_distribution<int> den(2, 40);
  std::vector<std::pair<Rational, Rational>> weights;
  std::map<Rational, Surd> values;
  for (int a = 0; a < atoms; ++a) {
    const int d = den(rng);
    std::uniform_int_distribution<int> num(0, d - 1);
    const Rational x = lo + width * Rational(num(rng), d);
    if (values.count(x)) continue;
    weights.emplace_back(x, randomPositive(rng));
    values[x] = Surd(randomRational(rng));
    if (a % 3 == 0) values[x] = values[x] * Surd::sqrt(Rational(2));
  }
  return SquareDensityVector(DiscreteMeasure(weights), values);
}

double surdDeviation(const Surd& a, const Surd& b) { return std::abs((a - b).toDouble()); }

}  // namespace

VerifyReport verifyDensitySuite(const IFSSystem& system, const VerifyOptions& options) {
  VerifyReport report{"density", {}};
  const IFSSystem line = lineSystem(system);
  const AffineSystem1D& s = line.affine1D();
  std::mt19937_64 rng(options.seed);
  constexpr int kSamples = 12;

  CheckItem isometry{"||S_i v|| = ||v||", 0, 0, 0.0, true};
  CheckItem ranges{"<S_i v, S_j w> = 0 for i != j", 0, 0, 0.0, true};
  CheckItem coisometry{"S_i^* S_j v = delta_ij v", 0, 0, 0.0, true};
  CheckItem rn{"Radon-Nikodym rule under tau_i", 0, 0, 0.0, true};
  CheckItem rescale{"representative independence, c in {2, 3, 1/5}", 0, 0, 0.0, true};
  CheckItem dominating{"inner product independent of lambda", 0, 0, 0.0, true};
  CheckItem polarization{"||v + w||^2 = ||v||^2 + 2<v,w> + ||w||^2", 0, 0, 0.0, true};
  for (int trial = 0; trial < kSamples; ++trial) {
    const auto v = randomDensity(s, rng, 5);
    const auto w = randomDensity(s, rng, 4);
    const Surd vv = innerProduct(v, v);
    for (int i = 0; i < s.size(); ++i) {
      const auto sv = inducedIsometry(s, i, v);
      const Surd norm = innerProduct(sv, sv);
      isometry.deviation = std::max(isometry.deviation, surdDeviation(norm, vv));
      isometry.pass = isometry.pass && norm == vv;
      ++isometry.words;
      for (int j = 0; j < s.size(); ++j) {
        const auto back = inducedCoisometry(s, i, inducedIsometry(s, j, v));
        coisometry.pass = coisometry.pass && (i == j ? sameClass(back, v) : back.isZero());
        ++coisometry.words;
        if (i == j) continue;
        const Surd cross = innerProduct(sv, inducedIsometry(s, j, w));
        ranges.deviation = std::max(ranges.deviation, std::abs(cross.toDouble()));
        ranges.pass = ranges.pass && cross.isZero();
        ++ranges.words;
      }
      const DiscreteMeasure lambda = v.carrier() + w.carrier();
      rn.pass = rn.pass && radonNikodymRuleHolds(s, i, v.carrier(), lambda);
      ++rn.words;
    }
    const Surd vw = innerProduct(v, w);
    for (const Rational& c : {Rational(2), Rational(3), Rational(1, 5)}) {
      const auto vc = rescaleRepresentative(v, c);
      const bool same = sameClass(vc, v) || vc.coordinates() == v.coordinates();
      const bool inner = innerProduct(vc, w) == vw;
      const bool sum = addClasses(vc, w).coordinates() == addClasses(v, w).coordinates();
      const bool iso = inducedIsometry(s, 0, vc).coordinates() == inducedIsometry(s, 0, v).coordinates();
      rescale.deviation = std::max(rescale.deviation, surdDeviation(innerProduct(vc, w), vw));
      rescale.pass = rescale.pass && same && inner && sum && iso;
      ++rescale.words;
    }
    const auto extra = randomDensity(s, rng, 3).carrier();
    const Surd wide = innerProduct(v, w, v.carrier() + w.carrier() + extra);
    dominating.pass = dominating.pass && wide == vw;
    ++dominating.words;
    const auto sum = addClasses(v, w);
    const Surd lhs = innerProduct(sum, sum);
    const Surd rhs = vv + Surd(2) * vw + innerProduct(w, w);
    polarization.deviation = std::max(polarization.deviation, surdDeviation(lhs, rhs));
    polarization.pass = polarization.pass && lhs == rhs;
    ++polarization.words;
  }
  for (auto* item : {&isometry, &ranges, &coisometry, &rn, &rescale, &dominating, &polarization}) {
    report.items.push_back(*item);
  }

  {
    // Atoms inside the branch cells are reproduced by sum_i S_i S_i^*.
    const auto cellAtoms = cylinderApproximation(s, 3);
    std::map<Rational, Surd> values;
    for (const auto& [x, w] : cellAtoms.atoms()) values[x] = Surd(1);
    const SquareDensityVector v(cellAtoms, values);
    report.items.push_back({"sum_i S_i S_i^* = I on the cells", 3, static_cast<long long>(cellAtoms.size()), 0.0,
                            sameClass(rangeProjectionSum(s, v), v)});
  }

  {
    const DiscreteMeasure a({{Rational(1, 8), Rational(1)}, {Rational(1, 4), Rational(2)}});
    const DiscreteMeasure b({{Rational(1, 8), Rational(3)}, {Rational(1, 4), Rational(1)}, {Rational(5, 8), 1}});
    const DiscreteMeasure c({{Rational(3, 4), Rational(1)}});
    const DiscreteMeasure d({{Rational(1, 4), Rational(1)}, {Rational(3, 4), Rational(1)}});
    bool agree = true;
    for (const auto* x : {&a, &b, &c, &d}) {
      for (const auto* y : {&a, &b, &c, &d}) agree = agree && absoluteContinuityLattice(*x, *y) == subspaceRelation(*x, *y);
    }
    const bool expected = absoluteContinuityLattice(a, b) == Continuity::MuLlNu &&
                          absoluteContinuityLattice(a, c) == Continuity::Singular &&
                          absoluteContinuityLattice(a, a) == Continuity::Equivalent &&
                          absoluteContinuityLattice(a, d) == Continuity::None;
    report.items.push_back({"absolute continuity lattice matches H(mu) relations", 0, 16, 0.0, agree && expected});
  }

  {
    const int k = 3;
    auto [omega, y1] = levelEncoding(s, k);
    const auto y2 = firstLetter(s.alphabet(), k);
    std::map<Rational, Rational> f;
    std::map<Rational, Rational> g;
    for (const auto& x : y1) f[x] = randomRational(rng);
    for (const auto& x : y2) g[x] = randomRational(rng);
    const auto [lhs, rhs] = adjointFactorization(omega, y1, y2, f, g);
    const auto same = conditionalExpectation(omega, y1, y1, f);
    report.items.push_back({"<T2^* T1 f, g> = <T1 f, T2 g>", k, static_cast<long long>(y1.size()),
                            std::abs(toDouble(lhs - rhs)), lhs == rhs && same == f});
  }

  {
    const int k = std::min(options.level + 4, 10);
    const DiscreteMeasure mu = cylinderApproximation(s, k);
    const BVStep f = distributionFunction(mu);
    const auto grad = gradientMu(f, mu);
    bool ones = true;
    for (const auto& [x, v] : grad) ones = ones && v == 1;
    const auto doubled = gradientMu(f.scaled(Rational(2)), mu);
    bool twos = true;
    for (const auto& [x, v] : doubled) twos = twos && v == 2;
    std::map<Rational, Rational> phi;
    for (const auto& [x, w] : mu.atoms()) phi[x] = randomRational(rng);
    const auto [lhs, rhs] = gradientAdjointPair(f, mu, phi);
    const Rational probe = s.domain().lo(0) + (s.domain().hi(0) - s.domain().lo(0)) / 3;
    const bool rebuilt = reconstruct(grad, mu, probe) == f(probe);
    report.items.push_back({"grad_mu F_mu = 1, dF adjoint identity", k, static_cast<long long>(mu.size()),
                            std::abs(toDouble(lhs - rhs)), ones && twos && lhs == rhs && rebuilt});
  }
  return report;
}

VerifyReport verifyBoundarySuite(const VerifyOptions& options) {
  VerifyReport report{"boundary", {}};
  const int d = options.depth;

  const double ortho = spectralOrthogonality(3, 40);
  report.items.push_back({"|mu4^(lambda - lambda')| on Lambda_3", 3, 64, ortho, ortho <= 1e-10});

  const std::vector<Complex> grid = {{0.0, 0.0}, {0.45, 0.0}, {-0.3, 0.6}, {0.0, -0.9}, 0.9 * unitCircle(0.3)};
  FourierCache cache(40);
  double worst = 0.0;
  for (const auto& z : grid) {
    for (const auto& w : grid) worst = std::max(worst, reproduceCheck(z, w, d, cache).residual);
  }
  report.items.push_back({"K4 self-reproduction", d, 25, worst, worst <= 1e-8});

  const double eig = kernelGramMinEigenvalue(grid);
  report.items.push_back({"K^C Gram matrix is positive", 0, 5, std::max(0.0, -eig), eig > -1e-10});

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double series = 0.0;
  double symmetry = 0.0;
  bool tails = true;
  for (int trial = 0; trial < 20; ++trial) {
    const Complex z = 0.9 * std::sqrt(unit(rng)) * unitCircle(unit(rng));
    const Complex w = 0.9 * std::sqrt(unit(rng)) * unitCircle(unit(rng));
    const double x = unit(rng);
    series = std::max(series, std::abs(k4Eval(z, x, 5).value - k4Series(z, x, 5)));
    series = std::max(series, std::abs(k4EvalTol(z, x).value - k4Series(z, x, 5)));
    symmetry = std::max(symmetry, std::abs(kComplex(z, w) - std::conj(kComplex(w, z))));
    for (int factors = 1; factors <= 4; ++factors) {
      const auto coarse = k4Eval(z, x, factors);
      tails = tails && std::abs(k4Eval(z, x, 2 * factors).value - coarse.value) <= coarse.tailBound;
    }
  }
  report.items.push_back({"K4 product equals its Lambda series", 5, 40, series, series <= 1e-10});
  report.items.push_back({"K4 tail bound covers doubling the factors", 8, 80, 0.0, tails});
  report.items.push_back({"K^C(z, w) = conj K^C(w, z)", 0, 20, symmetry, symmetry <= 1e-14});

  {
    const auto lambda = spectrumExpand(5);
    SpectralPolynomial f;
    for (long long l : lambda) {
      if (unit(rng) < 0.5) f[l] = Complex(unit(rng) - 0.5, unit(rng) - 0.5);
    }
    f[0] = 1.0;
    bool ok = true;
    double residual = 0.0;
    for (int j = 1; j <= 4; ++j) {
      const double r = 1.0 - std::pow(10.0, -j);
      for (int s = 0; s < 8; ++s) {
        const auto rec = boundaryRecovery(f, unit(rng), r);
        ok = ok && rec.pass;
        residual = std::max(residual, rec.residual);
      }
    }
    const SpectralPolynomial five{{5, 1.0}};
    const Complex z(0.3, -0.4);
    const double picks = std::abs(kOperatorApply(five, z) - std::pow(z, 5));
    report.items.push_back({"boundary recovery within the termwise bound", 5, static_cast<long long>(f.size()),
                            residual, ok && picks <= 1e-15});
    const double defect = tMuIsometryDefect(f, cache);
    report.items.push_back({"T_mu is isometric on the Lambda span", 5, static_cast<long long>(f.size()), defect,
                            defect <= 1e-10});
  }

  {
    const HerglotzInner b(64);
    bool inside = true;
    double largest = 0.0;
    for (int ring = 0; ring <= 9; ++ring) {
      for (int a = 0; a < 16; ++a) {
        const Complex z = 0.1 * ring * unitCircle(a / 16.0);
        inside = inside && b.h(z).real() > 0.0 && std::abs(b.b(z)) < 1.0;
        largest = std::max(largest, std::abs(b.b(z)));
      }
    }
    const double atZero = std::abs(k3Eval(b, 0.0, 0.37).value - 1.0);
    report.items.push_back({"Herglotz: Re H > 0 and |b| < 1 on |z| <= 0.9", 0, 160, largest, inside && atZero < 1e-12});
    const Complex z(0.3, 0.2);
    const double n10 = k3SquareNorm(b, z, 10);
    const double n12 = k3SquareNorm(b, z, 12);
    const double drift = std::abs(n12 - n10) / n12;
    report.items.push_back({"K3(z, .) square norm stable from level 10 to 12", 12, 4096, drift,
                            std::isfinite(n12) && drift <= 0.01});
    const auto rep = k3Reproduction(b, z, Complex(-0.2, 0.1), 12);
    // The companion kernel is unknown in closed form: reported, never failed.
    report.items.push_back({"K3 reproduction residual (informational)", 12, 4096, rep.residual, true});
  }
  return report;
}

VerifyReport verifyMeasureSuite(const IFSSystem& system, const VerifyOptions& options) {
  VerifyReport report{"measure", {}};
  const IFSSystem line = lineSystem(system);
  const AffineSystem1D& s = line.affine1D();
  const IFSMeasure m(s);

  {
    const auto moments = m.moments(4);
    // m_1 is the fixed point of x = sum p_i tau_i(x) averaged: m_1 = sum p_i t_i / (1 - sum p_i r_i).
    Rational num(0), den(1);
    for (int i = 0; i < s.size(); ++i) {
      num += s.weights()[static_cast<std::size_t>(i)] * s.map(i).t(0);
      den -= s.weights()[static_cast<std::size_t>(i)] * s.map(i).a(0, 0);
    }
    const bool ok = moments[0] == 1 && moments[1] == num / den;
    const auto mc = chaosGameMoments(line, 200000, options.seed, options.workers);
    const double z1 = std::abs(mc.m1 - toDouble(moments[1])) / mc.se1;
    const double z2 = std::abs(mc.m2 - toDouble(moments[2])) / mc.se2;
    report.items.push_back({"moments: exact m_1 and chaos game within 3 se", 0, 200000, std::max(z1, z2),
                            ok && z1 <= 3.0 && z2 <= 3.0});
  }

  {
    const int grid = 1000;
    const Rational lo = s.domain().lo(0);
    const Rational step = (s.domain().hi(0) - lo) / grid;
    bool monotone = true;
    Rational previous(0);
    for (int j = 0; j <= grid; ++j) {
      const Rational f = m.cdf(lo + step * j);
      monotone = monotone && f >= previous && f <= 1;
      previous = f;
    }
    monotone = monotone && previous == 1;
    // The CDF is constant on every level-3 gap and gains p_w across each cell.
    bool cells = true;
    for (const auto& w : allWords(s.alphabet(), 3)) {
      const auto cell = s.cell(w);
      cells = cells && m.cdf(cell.hi(0)) - m.cdf(cell.lo(0)) <= m.cellMass(w);
    }
    report.items.push_back({"CDF monotone from 0 to 1, cell increments", 3, grid + 1, 0.0, monotone && cells});
  }

  {
    bool ok = true;
    Rational worst(0);
    for (const auto* spec : {"(0)", "(1)", "0(01)", "1(10)"}) {
      const auto w = InfWordSpec::parse(spec);
      for (int b = 0; b < s.size(); ++b) {
        const auto r = intertwineCheck(s, b, w, options.level);
        ok = ok && r.pass && r.exactAgreement;
        worst = std::max(worst, r.residual);
      }
    }
    report.items.push_back({"tau_b Y = Y prepend b", options.level, 4, toDouble(worst), ok});
  }

  {
    bool ok = true;
    double ratio = 0.0;
    const std::vector<Rational> identity = {Rational(0), Rational(1)};
    const auto omega = InfWordSpec::parse("(1)");
    Rational previous = boundaryLimitExact(m, identity, omega, 1).residual;
    const Rational r = m.commonRatio();
    for (int k = 2; k <= 12; ++k) {
      const Rational residual = boundaryLimitExact(m, identity, omega, k).residual;
      if (previous != 0) {
        const double q = toDouble(residual / previous);
        ratio = std::max(ratio, q);
        ok = ok && q <= toDouble(r) + 0.05;
      }
      previous = residual;
    }
    report.items.push_back({"boundary limit residual ratio", 12, 12, ratio, ok});
  }
  return report;
}

VerifyReport verifyAll(const IFSSystem& system, const VerifyOptions& options) {
  VerifyReport report{"all", {}};
  report.append(verifyCuntzSuite(system, options));
  report.append(verifyPvmSuite(system, options));
  report.append(verifyDensitySuite(system, options));
  report.append(verifyMeasureSuite(system, options));
  report.append(verifyBoundarySuite(options));
  return report;
}

double juliaBranchResidual(std::complex<double> c, std::size_t count, std::uint64_t seed) {
  SamplingOptions options;
  options.seed = seed;
  options.count = count;
  const PointSet orbit = juliaInverseOrbit(c, options);
  const JuliaSystem system{c};
  double worst = 0.0;
  for (Eigen::Index i = 0; i < orbit.size(); ++i) {
    const std::complex<double> z(orbit.points(i, 0), orbit.points(i, 1));
    for (const auto& branch : system.branches()) {
      const auto back = system.shift(branch.apply(z));
      worst = std::max(worst, std::abs(back - z) / std::max(1.0, std::abs(z)));
    }
  }
  return worst;
}

MonteCarloMoments chaosGameMoments(const IFSSystem& system, std::size_t count, std::uint64_t seed, unsigned workers) {
  SamplingOptions options;
  options.seed = seed;
  options.count = count;
  options.workers = workers;
  const PointSet points = chaosGame(system, options);
  if (points.kind != PointSet::Kind::Real1D) throw std::invalid_argument("moments need a one-dimensional system");
  const Eigen::VectorXd x = points.points.col(0);
  const Eigen::VectorXd x2 = x.array().square();
  const Eigen::VectorXd x4 = x2.array().square();
  const double n = static_cast<double>(count);
  MonteCarloMoments out;
  out.m1 = x.mean();
  out.m2 = x2.mean();
  out.se1 = std::sqrt(std::max(out.m2 - out.m1 * out.m1, 0.0) / n);
  out.se2 = std::sqrt(std::max(x4.mean() - out.m2 * out.m2, 0.0) / n);
  return out;
}

}  // namespace ifsrep
