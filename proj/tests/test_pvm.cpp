#include <doctest.h>

#include <random>

#include "ifsrep/measure.hpp"
#include "ifsrep/pvm.hpp"

using namespace ifsrep;

namespace {

template <typename Scalar>
bool same(const TruncatedOperator<Scalar>& a, const TruncatedOperator<Scalar>& b) {
  return a.sourceLevel() == b.sourceLevel() && a.targetLevel() == b.targetLevel() && (a - b).isZero();
}

std::optional<Word> meet(const Word& f, const Word& g) {
  if (g.startsWith(f)) return g;
  if (f.startsWith(g)) return f;
  return std::nullopt;
}

}  // namespace

TEST_CASE("cylinder projections") {
  const RepresentationModel<Rational> m(WeightVector::uniform(2));
  CHECK(same(qCylinder(m, Word{}, 2), Op::identity(m.alphabet(), 2)));
  CHECK(projectionRank(qCylinder(m, Word{0, 1}, 2)) == 1);
  CHECK_THROWS(qCylinder(m, Word{0, 1, 0}, 2));

  const int k = 6;
  std::vector<Word> words;
  for (int l = 0; l <= k; ++l) {
    for (const auto& w : allWords(m.alphabet(), l)) words.push_back(w);
  }
  std::vector<Op> q;
  for (const auto& w : words) q.push_back(qCylinder(m, w, k));
  for (std::size_t a = 0; a < words.size(); ++a) {
    if (words[a].size() < static_cast<std::size_t>(k)) {
      CHECK(same(q[a], qCylinder(m, words[a].append(0), k) + qCylinder(m, words[a].append(1), k)));
    }
    for (std::size_t b = 0; b < words.size(); ++b) {
      const auto prod = q[a] * q[b];
      const auto w = meet(words[a], words[b]);
      if (w) {
        CHECK(same(prod, qCylinder(m, *w, k)));
      } else {
        CHECK(prod.isZero());
      }
    }
  }
}

TEST_CASE("preimages are not images") {
  const RepresentationModel<Rational> m(WeightVector::uniform(2));
  const auto pre = qPreimage(m, Word{0}, 2);
  CHECK(pre.diagonalEntries() == std::vector<Rational>{1, 0, 1, 0});
  CHECK_FALSE(same(pre, qCylinder(m, Word{0}, 2)));
  CHECK(same(pre, qCylinder(m, Word{0, 0}, 2) + qCylinder(m, Word{1, 0}, 2)));
  CHECK_THROWS(qPreimage(m, Word{0, 1}, 2));
}

TEST_CASE("functional calculus") {
  const RepresentationModel<Rational> m(WeightVector::uniform(3));
  const Alphabet& a = m.alphabet();
  CHECK(same(qFunctional(m, LevelFunction::constant(a, 2), 3), Op::identity(a, 3)));
  CHECK(same(qFunctional(m, LevelFunction::indicator(a, Word{2, 1}), 3), qCylinder(m, Word{2, 1}, 3)));

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-9, 9);
  LevelFunction f{2, {}};
  for (int j = 0; j < 9; ++j) f.values.emplace_back(num(rng), 4);
  LevelFunction f2 = f;
  for (auto& v : f2.values) v *= v;
  const auto qf = qFunctional(m, f, 2);
  CHECK(same(qf * qf, qFunctional(m, f2, 2)));
  for (const auto& v : qFunctional(m, f2, 2).diagonalEntries()) CHECK(v >= 0);
  // The level-2 function viewed at level 4 gives the lifted operator.
  CHECK(same(qFunctional(m, f, 4), qf.liftBy(2)));
  CHECK(same(qFunctional(m, f, 4), qFunctional(m, f.liftTo(a, 4), 4)));
}

TEST_CASE("self-duality against the measure") {
  for (const char* name : {"cantor3", "cantor4"}) {
    const auto system = standardSystem(name);
    const IFSMeasure mu(system);
    const auto m = RepresentationModel<Rational>::fromSystem(system);
    const auto one = LevelFunction::constant(m.alphabet(), 8);
    for (int l = 0; l <= 8; ++l) {
      for (const auto& f : allWords(m.alphabet(), l)) {
        CHECK(expectation(m, one, qCylinder(m, f, 8)) == mu.cellMass(f));
      }
    }
  }
  const WeightVector p({Rational(1, 5), Rational(3, 10), Rational(1, 2)});
  const RepresentationModel<Rational> m(p);
  const auto one = LevelFunction::constant(m.alphabet(), 4);
  for (const auto& f : allWords(m.alphabet(), 3)) CHECK(expectation(m, one, qCylinder(m, f, 4)) == p.product(f));
}

TEST_CASE("markov transitions") {
  for (const WeightVector& p : {WeightVector::uniform(2), WeightVector({Rational(1, 3), Rational(2, 3)}),
                                WeightVector({Rational(1, 6), Rational(1, 3), Rational(1, 2)})}) {
    const RepresentationModel<Rational> m(p);
    const auto one = LevelFunction::constant(m.alphabet(), 0);
    for (int k = 1; k <= 3; ++k) {
      const auto t = markovMatrix(m, one, k);
      for (Eigen::Index i = 0; i < t.rows(); ++i) {
        Rational sum(0);
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
          CHECK(t(i, j) == p[static_cast<std::size_t>(j)]);
          sum += t(i, j);
        }
        CHECK(sum == 1);
      }
    }
  }
  const RepresentationModel<Rational> m(WeightVector::uniform(2));
  const auto e01 = LevelFunction::indicator(m.alphabet(), Word{0, 1});
  CHECK(markovTransition(m, e01, 1, 0, 1) == 1);
  CHECK(markovTransition(m, e01, 1, 0, 0) == 0);
  CHECK_THROWS_AS(markovTransition(m, e01, 1, 1, 0), std::domain_error);

  // A non-constant psi still gives stochastic rows where defined.
  LevelFunction psi{3, {Rational(1), Rational(2), Rational(0), Rational(1, 2), Rational(3), Rational(1), Rational(1),
                        Rational(5)}};
  for (int k = 1; k <= 2; ++k) {
    const auto t = markovMatrix(m, psi, k);
    for (Eigen::Index i = 0; i < 2; ++i) CHECK(t(i, 0) + t(i, 1) == 1);
  }
}

TEST_CASE("scalar measures and atoms") {
  const auto m = RepresentationModel<Rational>::fromSystem(standardSystem("cantor3"));
  LevelFunction psi{2, {Rational(1), Rational(-2), Rational(3), Rational(1, 2)}};
  for (int k = 0; k <= 4; ++k) {
    const auto mu = scalarMeasure(m, psi, k);
    Rational sum(0);
    for (const auto& v : mu) {
      CHECK(v >= 0);
      sum += v;
    }
    CHECK(sum == 1);
  }
  const auto atom = atomMass(m, InfWordSpec::parse("(0)"), 10);
  CHECK(atom.rank == 1);
  CHECK(atom.mass == Rational(1, 1024));
  CHECK(atom.monotone);
  CHECK_FALSE(atom.atomPresent);
  REQUIRE(atom.masses.size() == 10);
  for (std::size_t j = 1; j < atom.masses.size(); ++j) CHECK(atom.masses[j] < atom.masses[j - 1]);
}

TEST_CASE("covariance") {
  const RepresentationModel<Rational> m(WeightVector::uniform(2));
  const auto r = covarianceChecks(m, Word{0}, 1, 3);
  CHECK(r.pass);
  CHECK(r.betaPreimage);
  CHECK(r.intertwine);
  CHECK(r.adjointIntertwine);
  CHECK(r.deviation == 0.0);
  CHECK(covarianceChecks(m, Word{1}, 1, 3).pass);
  for (int l = 1; l <= 3; ++l) {
    for (const auto& f : allWords(m.alphabet(), l)) {
      for (int i = 0; i < 2; ++i) CHECK(covarianceChecks(m, f, i, 4).pass);
    }
  }
  // S_1^* Q(E_[0]) vanishes.
  CHECK((generatorSAdjoint(m, 1, 2) * qCylinder(m, Word{0}, 3)).isZero());
  CHECK_THROWS(covarianceChecks(m, Word{0, 1}, 0, 2));
}

TEST_CASE("monic vectors") {
  const auto m = RepresentationModel<Rational>::fromSystem(standardSystem("cantor3"));
  for (int k = 0; k <= 6; ++k) CHECK(monicCheck(m, LevelFunction::constant(m.alphabet(), k), k));
  for (int k = 1; k <= 4; ++k) {
    const auto e = LevelFunction::indicator(m.alphabet(), Word(std::vector<int>(static_cast<std::size_t>(k), 0)));
    CHECK_FALSE(monicCheck(m, e, k));
  }
  CHECK(monicCheck(m, LevelFunction::indicator(m.alphabet(), Word{}), 0));
}
