#include <doctest.h>

#include <random>

#include <Eigen/QR>

#include "ifsrep/cuntz.hpp"
#include "ifsrep/pvm.hpp"

using namespace ifsrep;

namespace {

template <typename Scalar>
bool same(const TruncatedOperator<Scalar>& a, const TruncatedOperator<Scalar>& b) {
  return a.sourceLevel() == b.sourceLevel() && a.targetLevel() == b.targetLevel() && (a - b).isZero();
}

// S_i e_f = e_{if}: column idx(f) at level k goes to row i N^k + idx(f).
RationalMatrix denseS(int n, int i, int k) {
  Eigen::Index dim = 1;
  for (int j = 0; j < k; ++j) dim *= n;
  RationalMatrix m = RationalMatrix::Zero(dim * n, dim);
  for (Eigen::Index c = 0; c < dim; ++c) m(i * dim + c, c) = 1;
  return m;
}

RepresentationModel<Rational> model(const char* name) { return RepresentationModel<Rational>::fromSystem(standardSystem(name)); }

RepresentationModel<Rational> uniform(int n) { return RepresentationModel<Rational>(WeightVector::uniform(n)); }

}  // namespace

TEST_CASE("level bases") {
  const auto m = model("cantor3");
  CHECK(levelBasis(m, 3).dimension == 8);
  const auto b0 = levelBasis(m, 0);
  CHECK(b0.dimension == 1);
  CHECK(b0.words == std::vector<Word>{Word{}});
  for (int k = 0; k <= 6; ++k) {
    const auto g = levelGram(m, k);
    CHECK(g == RationalMatrix::Identity(g.rows(), g.cols()));
  }
  const RepresentationModel<Rational> small(WeightVector::uniform(2), std::nullopt, 64);
  CHECK_THROWS_AS(small.dimension(7), std::length_error);
  CHECK_THROWS_AS(RepresentationModel<Rational>::fromSystem(standardSystem("julia", {0.125, 0.625})),
                  std::invalid_argument);
}

TEST_CASE("generators against a dense oracle") {
  for (int n : {2, 3}) {
    const auto m = uniform(n);
    for (int k = 0; k <= 4; ++k) {
      for (int i = 0; i < n; ++i) {
        const auto s = generatorS(m, i, k);
        CHECK(s.sourceLevel() == k);
        CHECK(s.targetLevel() == k + 1);
        CHECK(RationalMatrix(s.matrix().toDense()) == denseS(n, i, k));
        CHECK(same(generatorSAdjoint(m, i, k), s.adjoint()));
      }
    }
  }
  const auto m = uniform(2);
  // S_0 e_[] = e_[0].
  CHECK(generatorS(m, 0, 0).entry(0, 0) == 1);
  CHECK(generatorS(m, 0, 0).entry(1, 0) == 0);
  // e_[1,0] has index 2 at level 2.
  const auto s0 = generatorSAdjoint(m, 0, 1);
  const auto s1 = generatorSAdjoint(m, 1, 1);
  for (Eigen::Index r = 0; r < 2; ++r) CHECK(s0.entry(r, 2) == 0);
  CHECK(s1.entry(0, 2) == 1);
  CHECK(s1.entry(1, 2) == 0);
  // S_i S_i^* is multiplication by the indicator of the first-letter cylinder.
  for (int i = 0; i < 2; ++i) {
    CHECK(same(generatorS(m, i, 2) * generatorSAdjoint(m, i, 2), qCylinder(m, Word{i}, 3)));
  }
  CHECK(same(wordIsometry(m, Word{1, 0}, 3), generatorS(m, 1, 2) * generatorS(m, 0, 1)));
}

TEST_CASE("Cuntz relations hold exactly") {
  for (int n : {2, 3}) {
    const auto m = uniform(n);
    for (int k = 0; k <= 8; ++k) {
      if (n == 3 && k > 7) break;
      const auto r = verifyCuntzLevel(m, k);
      CHECK(r.pass);
      CHECK(r.exactlyZero);
      CHECK(r.deviation == 0.0);
    }
  }
  CHECK(verifyCuntzLevel(model("cantor3"), 5).pass);
  CHECK(verifyCuntzLevel(model("dyadic"), 8).exactlyZero);
  CHECK(verifyCuntzLevel(model("sierpinski"), 5).exactlyZero);

  const RepresentationModel<Cyclotomic> twisted(WeightVector::uniform(3), InfWordSpec::parse("(1)"));
  CHECK(twisted.phase(1) == Cyclotomic::rootOfUnity(Rational(1, 3)));
  for (int k = 0; k <= 5; ++k) {
    const auto r = verifyCuntzLevel(twisted, k);
    CHECK(r.pass);
    CHECK(r.exactlyZero);
  }
  const RepresentationModel<Rational> sign(WeightVector::uniform(2), InfWordSpec::parse("1(0)"));
  CHECK(sign.phase(1) == -1);
  CHECK(verifyCuntzLevel(sign, 5).exactlyZero);
  CHECK_THROWS_AS(RepresentationModel<Rational>(WeightVector::uniform(3), InfWordSpec::parse("(1)")).phase(1),
                  std::domain_error);

  const RepresentationModel<std::complex<double>> numeric(WeightVector::uniform(3), InfWordSpec::parse("(2)"));
  CHECK(verifyCuntzLevel(numeric, 4).pass);
}

TEST_CASE("word projections") {
  const auto m = uniform(2);
  const auto p0 = wordProjection(m, Word{0}, 2);
  CHECK(p0.diagonalEntries() == std::vector<Rational>{1, 1, 0, 0});
  CHECK((p0 * wordProjection(m, Word{1}, 2)).isZero());
  CHECK_THROWS(wordProjection(m, Word{}, 2));
  CHECK_THROWS(wordProjection(m, Word{0, 1, 1}, 2));

  const int k = 4;
  std::vector<Word> words;
  for (int l = 1; l <= k; ++l) {
    for (const auto& w : allWords(m.alphabet(), l)) words.push_back(w);
  }
  for (const auto& f : words) {
    const auto pf = wordProjection(m, f, k);
    CHECK(same(pf, qCylinder(m, f, k)));
    if (f.size() < static_cast<std::size_t>(k)) {
      CHECK(same(wordProjection(m, f.append(0), k) + wordProjection(m, f.append(1), k), pf));
    }
    for (const auto& g : words) {
      const auto pg = wordProjection(m, g, k);
      const auto prod = pf * pg;
      CHECK(same(prod, pg * pf));
      if (g.startsWith(f)) {
        CHECK(same(prod, pg));
      } else if (f.startsWith(g)) {
        CHECK(same(prod, pf));
      } else {
        CHECK(prod.isZero());
      }
    }
  }
}

TEST_CASE("the endomorphism beta") {
  const auto m = model("cantor3");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-5, 5);
  for (int k = 0; k <= 4; ++k) {
    const auto id = Op::identity(m.alphabet(), k);
    CHECK(same(beta(m, id), Op::identity(m.alphabet(), k + 1)));
    std::vector<Rational> a;
    std::vector<Rational> b;
    for (Eigen::Index j = 0; j < m.dimension(k); ++j) {
      a.emplace_back(num(rng), 3);
      b.emplace_back(num(rng), 7);
    }
    const auto t = Op::diagonal(m.alphabet(), k, a);
    const auto u = Op::diagonal(m.alphabet(), k, b);
    CHECK(same(beta(m, t * u), beta(m, t) * beta(m, u)));
    CHECK(same(beta(m, t.adjoint()), beta(m, t).adjoint()));
    for (const auto& f : allWords(m.alphabet(), k)) {
      if (k > 0) CHECK(same(beta(m, wordProjection(m, f, k)), qPreimage(m, f, k + 1)));
    }
  }
  CHECK(same(betaPower(m, Op::identity(m.alphabet(), 1), 3), Op::identity(m.alphabet(), 4)));
  CHECK_THROWS(beta(m, generatorS(m, 0, 1)));
}

TEST_CASE("fixed points of beta and the commutant") {
  const auto m = uniform(2);
  const int k = 3;
  int fixed = 0;
  for (int mask = 0; mask < 256; ++mask) {
    std::vector<Rational> d;
    for (int j = 0; j < 8; ++j) d.emplace_back((mask >> j) & 1);
    const auto t = Op::diagonal(m.alphabet(), k, d);
    const bool a = fixedByBeta(m, t);
    CHECK(a == commutesWithCoisometries(m, t));
    if (a) ++fixed;
    for (int l = 1; l <= k; ++l) {
      for (const auto& f : allWords(m.alphabet(), l)) {
        const auto p = wordProjection(m, f, k);
        CHECK(same(t * p, p * t));
      }
    }
  }
  // Only the scalars 0 and I survive.
  CHECK(fixed == 2);
}

TEST_CASE("invariant projection closure") {
  const auto m = model("cantor3");
  const auto p = wordProjection(m, Word{0}, 1);
  const auto closure = invariantProjectionClosure(m, p, 3);
  REQUIRE(closure.iterates.size() == 4);
  CHECK(closure.ranks[0] == 1);
  CHECK(closure.ranks[1] == 2);
  // beta(P) projects onto the second letter being 0, which does not contain e_[0].
  CHECK_FALSE(closure.leq[0]);
  CHECK_FALSE(closure.monotone);

  const auto id = invariantProjectionClosure(m, Op::identity(m.alphabet(), 1), 3);
  CHECK(id.monotone);
  for (const auto& it : id.iterates) CHECK(same(it, Op::identity(m.alphabet(), it.sourceLevel())));
  const auto zero = invariantProjectionClosure(m, Op::zero(m.alphabet(), 1, 1), 3);
  for (const auto& it : zero.iterates) CHECK(it.isZero());
  CHECK_THROWS(invariantProjectionClosure(m, Rational(2) * p, 2));
}

TEST_CASE("the unitary U_alpha") {
  const auto m = uniform(2);
  const auto id = uAlpha(m, Endomorphism::identity(), 3);
  CHECK(id.pass);
  CHECK(same(id.u, Op::identity(m.alphabet(), 4)));

  const RepresentationModel<Cyclotomic> c(WeightVector::uniform(3));
  const auto gauge = uAlpha(c, Endomorphism::gaugeAction(InfWordSpec::parse("(1)")), 2);
  CHECK(gauge.pass);
  CHECK(gauge.u.isDiagonal());
  const auto d = gauge.u.diagonalEntries();
  for (std::size_t j = 0; j < d.size(); ++j) {
    CHECK(d[j] == Cyclotomic::rootOfUnity(Rational(static_cast<long>(j / 9), 3)));
  }

  const RepresentationModel<std::complex<double>> z(WeightVector::uniform(2));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(8, 8);
  for (Eigen::Index r = 0; r < 8; ++r) {
    for (Eigen::Index s = 0; s < 8; ++s) a(r, s) = {g(rng), g(rng)};
  }
  const Eigen::MatrixXcd w = a.householderQr().householderQ();
  const auto inner = uAlpha(z, Endomorphism::inner(w), 3);
  CHECK(inner.pass);
  CHECK(inner.unitarityDeviation <= 1e-12);
  CHECK_THROWS_AS(uAlpha(z, Endomorphism::inner(2.0 * w), 3), std::invalid_argument);
  CHECK_THROWS_AS(uAlpha(m, Endomorphism::inner(w), 3), std::invalid_argument);
}
