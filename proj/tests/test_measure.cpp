#include <doctest.h>

#include <cmath>

#include "ifsrep/measure.hpp"

using namespace ifsrep;

namespace {

Rational binomial(int n, int k) {
  Rational out(1);
  for (int j = 1; j <= k; ++j) out = out * Rational(n - k + j) / Rational(j);
  return out;
}

// X = sum_k r^k T_k with T_k iid on the offsets, so kappa_n(X) = kappa_n(T) / (1 - r^n).
std::vector<Rational> cumulantMoments(const AffineSystem1D& s, int n) {
  const Rational r = s.map(0).a(0, 0);
  std::vector<Rational> digit(n + 1, Rational(0));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i < s.size(); ++i) digit[j] += s.weights()[i] * pow(s.map(i).t(0), j);
  }
  std::vector<Rational> kappaT(n + 1, Rational(0));
  for (int m = 1; m <= n; ++m) {
    Rational k = digit[m];
    for (int j = 1; j < m; ++j) k -= binomial(m - 1, j - 1) * kappaT[j] * digit[m - j];
    kappaT[m] = k;
  }
  std::vector<Rational> out(n + 1, Rational(0));
  out[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational v(0);
    for (int j = 0; j < m; ++j) v += binomial(m - 1, j) * (kappaT[m - j] / (1 - pow(r, m - j))) * out[j];
    out[m] = v;
  }
  return out;
}

AffineSystem1D fifths() {
  Box<1> unit;
  unit.lo(0) = 0;
  unit.hi(0) = 1;
  const WeightVector p({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  return AffineSystem1D({affine1D(Rational(1, 5), 0), affine1D(Rational(1, 5), Rational(2, 5)),
                         affine1D(Rational(1, 5), Rational(4, 5))},
                        p, unit, {});
}

// Level-k cell sums bracket F(x).
std::pair<Rational, Rational> cdfBracket(const IFSMeasure& m, const Rational& x, int k) {
  Rational lower(0);
  Rational upper(0);
  for (const auto& w : allWords(Alphabet(m.system().size()), k)) {
    const auto cell = m.system().cell(w);
    if (cell.hi(0) <= x) lower += m.cellMass(w);
    if (cell.lo(0) <= x) upper += m.cellMass(w);
  }
  return {lower, upper};
}

}  // namespace

TEST_CASE("moments") {
  const IFSMeasure dyadic(standardSystem("dyadic"));
  const IFSMeasure c3(standardSystem("cantor3"));
  const IFSMeasure c4(standardSystem("cantor4"));
  CHECK(dyadic.moment(1) == Rational(1, 2));
  CHECK(dyadic.moment(5) == Rational(1, 6));
  CHECK(c3.moment(1) == Rational(1, 2));
  CHECK(c3.moment(2) == Rational(3, 8));
  CHECK(c4.moment(1) == Rational(1, 3));
  CHECK(c3.moments(0) == std::vector<Rational>{Rational(1)});

  for (const auto& s : {standardSystem("dyadic").affine1D(), standardSystem("cantor3").affine1D(),
                        standardSystem("cantor4").affine1D(), fifths()}) {
    CHECK(IFSMeasure(s).moments(8) == cumulantMoments(s, 8));
  }
  CHECK_THROWS_AS(IFSMeasure(standardSystem("sierpinski")), std::invalid_argument);
  CHECK_THROWS_AS(IFSMeasure(standardSystem("julia", {0.125, 0.625})), std::invalid_argument);
}

TEST_CASE("moments are limits of level-k quadrature") {
  for (const char* name : {"dyadic", "cantor3", "cantor4"}) {
    const IFSMeasure m(standardSystem(name));
    const double r = m.system().maxRatio().convert_to<double>();
    for (int n = 1; n <= 3; ++n) {
      const double q = integrateLevelK(m, [n](double x) { return std::pow(x, n); }, 16);
      CHECK(std::abs(q - m.moment(n).convert_to<double>()) <= n * std::pow(r, 16));
    }
  }
}

TEST_CASE("cdf") {
  const IFSMeasure c3(standardSystem("cantor3"));
  const IFSMeasure c4(standardSystem("cantor4"));
  const IFSMeasure dyadic(standardSystem("dyadic"));
  CHECK(c4.cdf(Rational(1, 6)) == Rational(1, 2));
  CHECK(c4.cdf(Rational(2, 3)) == 1);
  CHECK(c3.cdf(Rational(1, 3)) == Rational(1, 2));
  CHECK(c3.cdf(Rational(1, 2)) == Rational(1, 2));
  CHECK(c3.cdf(Rational(-1)) == 0);
  CHECK(c3.cdf(Rational(3)) == 1);
  CHECK(c3.cdf(Rational(1, 4)) == Rational(1, 3));
  for (int j = 0; j <= 64; ++j) CHECK(dyadic.cdf(Rational(j, 64)) == Rational(j, 64));

  for (const IFSMeasure* m : {&c3, &c4}) {
    Rational prev(0);
    for (int j = 0; j <= 1000; ++j) {
      const Rational x(j, 1000);
      const Rational f = m->cdf(x);
      CHECK(f >= prev);
      prev = f;
      if (j % 37 == 0) {
        const auto [lo, hi] = cdfBracket(*m, x, 7);
        CHECK(lo <= f);
        CHECK(f <= hi);
      }
    }
  }
  for (int j = 334; j < 667; ++j) CHECK(c3.cdf(Rational(j, 1000)) == Rational(1, 2));
  for (int j = 167; j < 500; ++j) CHECK(c4.cdf(Rational(j, 1000)) == Rational(1, 2));

  const IFSMeasure f5(fifths());
  for (int j = 0; j <= 50; ++j) {
    const auto [lo, hi] = cdfBracket(f5, Rational(j, 50), 5);
    CHECK(lo <= f5.cdf(Rational(j, 50)));
    CHECK(f5.cdf(Rational(j, 50)) <= hi);
  }
}

TEST_CASE("cdf increments over support images equal cell masses") {
  for (const char* name : {"cantor3", "cantor4"}) {
    const IFSMeasure m(standardSystem(name));
    const auto& s = m.system();
    const Rational bottom = encodeExact(s, InfWordSpec::parse("(0)"))(0);
    const Rational top = encodeExact(s, InfWordSpec::parse("(1)"))(0);
    for (int k = 0; k <= 8; ++k) {
      for (const auto& w : allWords(Alphabet(2), k)) {
        RationalPoint<1> lo;
        RationalPoint<1> hi;
        lo(0) = bottom;
        hi(0) = top;
        const Rational a = s.applyWord(w, lo)(0);
        const Rational b = s.applyWord(w, hi)(0);
        CHECK(m.cdf(b) - m.cdf(a) == m.cellMass(w));
      }
    }
  }
}

TEST_CASE("fourier") {
  const IFSMeasure c4(standardSystem("cantor4"));
  const IFSMeasure c3(standardSystem("cantor3"));
  const IFSMeasure dyadic(standardSystem("dyadic"));
  CHECK(std::abs(fourier(c3, Rational(0)).value - 1.0) < 1e-15);
  const int spectrum[] = {0, 1, 4, 5, 16, 17, 20, 21};
  for (int a : spectrum) {
    for (int b : spectrum) {
      if (a != b) CHECK(std::abs(fourier(c4, Rational(a - b)).value) <= 1e-10);
    }
  }
  for (int n = 1; n <= 20; ++n) CHECK(std::abs(fourier(dyadic, Rational(n)).value) <= 1e-10);

  // Quadrature oracle: |e(xi x) - e(xi y)| <= 2 pi |xi| |x - y|.
  for (const IFSMeasure* m : {&c3, &c4}) {
    const double r = m->system().maxRatio().convert_to<double>();
    for (const Rational xi : {Rational(1, 3), Rational(1), Rational(5, 2), Rational(-7)}) {
      const auto f = fourier(*m, xi);
      CHECK(f.tailBound < 1e-12);
      const double x = xi.convert_to<double>();
      const auto q = integrateLevelKComplex(
          *m, [x](double t) { return std::polar(1.0, 2.0 * M_PI * x * t); }, 14);
      CHECK(std::abs(f.value - q) <= 2.0 * M_PI * std::abs(x) * std::pow(r, 14));
    }
  }
  CHECK(std::abs(fourierFixed(c4, Rational(3), 40).value - fourier(c4, Rational(3)).value) < 1e-12);
  CHECK_THROWS_AS(fourier(IFSMeasure(AffineSystem1D(
                              {affine1D(Rational(1, 2), 0), affine1D(Rational(1, 3), Rational(2, 3))},
                              WeightVector::uniform(2), standardSystem("dyadic").affine1D().domain(), {})),
                          Rational(1)),
                  std::domain_error);
}

TEST_CASE("level-k quadrature") {
  const IFSMeasure c3(standardSystem("cantor3"));
  const IFSMeasure dyadic(standardSystem("dyadic"));
  CHECK(integrateLevelK(c3, [](double) { return 1.0; }, 6) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(integrateLevelK(c3, [](double x) { return x; }, 20) - 0.5) <= std::pow(3.0, -20));
  CHECK(std::abs(integrateLevelK(dyadic, [](double x) { return x * x; }, 20) - 1.0 / 3.0) <= 2.0 * std::pow(2.0, -20));
}

TEST_CASE("boundary limit") {
  const IFSMeasure c3(standardSystem("cantor3"));
  const std::vector<Rational> fx{Rational(0), Rational(1)};
  for (int k = 0; k <= 10; ++k) {
    const auto zero = boundaryLimitExact(c3, fx, InfWordSpec::parse("(0)"), k);
    CHECK(zero.target == 0);
    CHECK(zero.value == c3.moment(1) / pow(Rational(3), k));
    const auto one = boundaryLimitExact(c3, fx, InfWordSpec::parse("(1)"), k);
    CHECK(one.target == 1);
    CHECK(one.residual == Rational(1, 2) / pow(Rational(3), k));
  }
  const auto omega = InfWordSpec::parse("1(01)");
  Rational prev = boundaryLimitExact(c3, fx, omega, 1).residual;
  for (int k = 2; k <= 15; ++k) {
    const auto b = boundaryLimitExact(c3, fx, omega, k);
    CHECK(b.residual <= (Rational(1, 3) + Rational(1, 20)) * prev);
    prev = b.residual;
    if (k <= 8) {
      const auto approx = boundaryLimit(c3, [](double x) { return x; }, omega, k, 12);
      CHECK(std::abs(approx.value - b.value.convert_to<double>()) <= std::pow(3.0, -12 - k) + 1e-15);
    }
  }
  // Quadratic f.
  const std::vector<Rational> fx2{Rational(1), Rational(-2), Rational(3)};
  const auto q = boundaryLimitExact(c3, fx2, InfWordSpec::parse("(1)"), 6);
  CHECK(q.target == 2);
  CHECK(abs(q.value - q.target) <= Rational(4) / pow(Rational(3), 6));
  CHECK(evaluatePolynomial(fx2, Rational(1, 2)) == Rational(3, 4));
}
