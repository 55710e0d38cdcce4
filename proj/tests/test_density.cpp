#include <doctest.h>

#include <random>

#include "ifsrep/density.hpp"
#include "ifsrep/measure.hpp"

using namespace ifsrep;

namespace {

using Atoms = std::vector<std::pair<Rational, Rational>>;

Rational q(long a, long b = 1) { return Rational(a, b); }

SquareDensityVector vec(const Atoms& atoms, const std::vector<Surd>& phi) {
  const DiscreteMeasure mu(atoms);
  std::map<Rational, Surd> values;
  for (std::size_t j = 0; j < atoms.size(); ++j) values[atoms[j].first] = phi[j];
  return SquareDensityVector(mu, values);
}

Surd normSquared(const SquareDensityVector& v) { return innerProduct(v, v); }

// Random vector on [0, 1) with atoms on a 1/24 grid.
SquareDensityVector randomVector(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> point(0, 23);
  std::uniform_int_distribution<int> weight(1, 6);
  std::uniform_int_distribution<int> value(-4, 4);
  Atoms atoms;
  std::vector<Surd> phi;
  for (int j = 0; j < 5; ++j) {
    atoms.emplace_back(q(point(rng), 24), q(weight(rng), 7));
  }
  const DiscreteMeasure mu(atoms);
  std::map<Rational, Surd> values;
  for (const auto& [x, w] : mu.atoms()) values[x] = Surd(q(value(rng), 2)) + Surd(q(value(rng))) * Surd::sqrt(q(2));
  return SquareDensityVector(mu, values);
}

}  // namespace

TEST_CASE("discrete measures") {
  const DiscreteMeasure mu({{q(1, 2), q(1, 3)}, {q(1, 4), q(1, 6)}, {q(1, 2), q(1, 6)}});
  CHECK(mu.size() == 2);
  CHECK(mu.weight(q(1, 2)) == q(1, 2));
  CHECK(mu.weight(q(3, 4)) == 0);
  CHECK(mu.total() == q(2, 3));
  CHECK((mu + mu).weight(q(1, 4)) == q(1, 3));
  CHECK(mu.scaled(q(3)).total() == 2);
  const auto pushed = mu.pushforward(affine1D(q(1, 3), q(2, 3)));
  CHECK(pushed.weight(q(5, 6)) == q(1, 2));
  CHECK_THROWS(DiscreteMeasure({{q(0), q(0)}}));
  CHECK_THROWS(DiscreteMeasure({{q(0), q(-1)}}));

  const auto rn = radonNikodym(mu, mu + DiscreteMeasure({{q(0), q(1)}}));
  CHECK(rn.at(q(0)) == 0);
  CHECK(rn.at(q(1, 2)) == 1);
  CHECK_THROWS_AS(radonNikodym(mu, DiscreteMeasure({{q(1, 2), q(1)}})), std::domain_error);
}

TEST_CASE("inner products of square densities") {
  const auto a = vec({{q(1, 5), q(1)}}, {Surd(1)});
  const auto b = vec({{q(2, 5), q(1)}}, {Surd(1)});
  CHECK(innerProduct(a, b).isZero());

  const Atoms atoms{{q(0), q(1, 2)}, {q(1, 3), q(1, 4)}, {q(1, 2), q(1, 4)}};
  const auto v = vec(atoms, {Surd(1), Surd(2), Surd::sqrt(q(3))});
  const auto w = vec(atoms, {Surd(3), Surd(-1), Surd::sqrt(q(3))});
  // With a common measure the pairing is the L^2 inner product.
  CHECK(innerProduct(v, w) == Surd(q(3, 2)) + Surd(q(-2, 4)) + Surd(q(3, 4)));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = randomVector(rng);
    const auto y = randomVector(rng);
    const auto lambda = x.carrier().scaled(q(2)) + y.carrier().scaled(q(1, 3)) + DiscreteMeasure({{q(7, 8), q(1)}});
    CHECK(innerProduct(x, y) == innerProduct(x, y, lambda));
    CHECK(innerProduct(x, y) == innerProduct(y, x));
    const auto sum = addClasses(x, y);
    CHECK(normSquared(sum) == normSquared(x) + Surd(2) * innerProduct(x, y) + normSquared(y));
    CHECK(addClasses(x, negate(x)).isZero());
    for (const Rational c : {q(2), q(3), q(1, 5)}) {
      const auto xc = rescaleRepresentative(x, c);
      CHECK(sameClass(xc, x));
      CHECK(innerProduct(xc, y) == innerProduct(x, y));
      CHECK(sameClass(addClasses(xc, y), sum));
    }
  }
}

TEST_CASE("induced Cuntz isometries") {
  const auto dyadic = standardSystem("dyadic").affine1D();
  const auto c3 = standardSystem("cantor3").affine1D();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = randomVector(rng);
    const auto w = randomVector(rng);
    for (const auto* s : {&dyadic, &c3}) {
      for (int i = 0; i < 2; ++i) {
        const auto si = inducedIsometry(*s, i, v);
        CHECK(normSquared(si) == normSquared(v));
        for (int j = 0; j < 2; ++j) {
          const auto sj = inducedIsometry(*s, j, w);
          if (i != j) CHECK(innerProduct(si, sj).isZero());
          const auto back = inducedCoisometry(*s, j, si);
          if (i == j) {
            CHECK(sameClass(back, v));
          } else {
            CHECK(back.isZero());
          }
        }
        for (const Rational c : {q(2), q(3), q(1, 5)}) {
          CHECK(sameClass(inducedIsometry(*s, i, rescaleRepresentative(v, c)), si));
        }
        CHECK(radonNikodymRuleHolds(*s, i, v.carrier(), v.carrier() + w.carrier()));
      }
    }
    CHECK(sameClass(rangeProjectionSum(dyadic, v), v));
  }
  // Off the attractor of cantor3 the range projections miss mass.
  const auto gap = vec({{q(1, 2), q(1)}}, {Surd(1)});
  CHECK(rangeProjectionSum(c3, gap).isZero());
  CHECK_THROWS(inducedIsometry(dyadic, 0, vec({{q(1), q(1)}}, {Surd(1)})));
}

TEST_CASE("absolute continuity lattice") {
  const DiscreteMeasure a({{q(0), q(1)}, {q(1, 2), q(2)}});
  const DiscreteMeasure b({{q(0), q(5)}, {q(1, 2), q(1, 7)}});
  const DiscreteMeasure c({{q(0), q(1)}, {q(1, 2), q(1)}, {q(3, 4), q(1)}});
  const DiscreteMeasure d({{q(1, 4), q(1)}});
  const DiscreteMeasure e({{q(1, 4), q(1)}, {q(0), q(1)}});
  const std::vector<std::tuple<DiscreteMeasure, DiscreteMeasure, Continuity>> cases{
      {a, b, Continuity::Equivalent}, {a, c, Continuity::MuLlNu}, {c, a, Continuity::NuLlMu},
      {a, d, Continuity::Singular},   {a, e, Continuity::None}};
  for (const auto& [mu, nu, expected] : cases) {
    CHECK(std::string(toString(absoluteContinuityLattice(mu, nu))) == toString(expected));
    CHECK(std::string(toString(subspaceRelation(mu, nu))) == toString(expected));
  }
  CHECK(std::string(toString(Continuity::MuLlNu)) == "mu<<nu");
}

TEST_CASE("conditional expectations") {
  const auto dyadic = standardSystem("dyadic").affine1D();
  const auto [omega, y1] = levelEncoding(dyadic, 3);
  const auto y2 = firstLetter(dyadic.alphabet(), 3);
  std::map<Rational, Rational> identity;
  for (const auto& x : y1) identity[x] = x;
  const auto e = conditionalExpectation(omega, y1, y2, identity);
  CHECK(e.at(q(0)) == q(1, 4));
  CHECK(e.at(q(1)) == q(3, 4));

  CHECK(conditionalExpectation(omega, y1, y1, identity) == identity);
  const std::vector<Rational> constant(y1.size(), q(5));
  const auto full = conditionalExpectation(omega, y1, constant, identity);
  REQUIRE(full.size() == 1);
  CHECK(full.at(q(5)) == q(1, 2));

  std::map<Rational, Rational> f;
  for (const auto& x : y1) f[x] = x * x - 3 * x;
  const std::map<Rational, Rational> g{{q(0), q(2)}, {q(1), q(-7, 3)}};
  const auto [lhs, rhs] = adjointFactorization(omega, y1, y2, f, g);
  CHECK(lhs == rhs);
}

TEST_CASE("gradient with respect to mu") {
  const auto c3 = standardSystem("cantor3").affine1D();
  const IFSMeasure mu3(standardSystem("cantor3"));
  for (int k = 1; k <= 8; ++k) {
    const auto mu = cylinderApproximation(c3, k);
    CHECK(mu.total() == 1);
    const auto f = distributionFunction(mu);
    for (const auto& [x, g] : gradientMu(f, mu)) CHECK(g == 1);
    for (const auto& [x, g] : gradientMu(f.scaled(q(2)), mu)) CHECK(g == 2);
    CHECK(f(q(1, 3)) == mu3.cdf(q(1, 3)));
    CHECK(f(q(1, 3)) == q(1, 2));
    CHECK(f.totalVariation() == 1);
    const auto grad = gradientMu(f, mu);
    for (int j = 0; j <= 12; ++j) CHECK(reconstruct(grad, mu, q(j, 12)) == f(q(j, 12)));
    std::map<Rational, Rational> phi;
    for (const auto& [x, w] : mu.atoms()) phi[x] = x * x + 1;
    const auto [a, b] = gradientAdjointPair(f, mu, phi);
    CHECK(a == b);
  }
  BVStep offSupport;
  offSupport.jumps[q(1, 2)] = 1;
  CHECK_THROWS_AS(gradientMu(offSupport, cylinderApproximation(c3, 3)), std::domain_error);
}
