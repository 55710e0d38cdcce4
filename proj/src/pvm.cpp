#include "ifsrep/pvm.hpp"

#include <type_traits>

namespace ifsrep {

namespace {

template <typename Scalar>
Rational rationalValue(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return s;
  } else if constexpr (std::is_same_v<Scalar, Cyclotomic>) {
    return s.toRational();
  } else {
    if (s.imag() != 0.0) throw std::domain_error("expected a real diagonal entry");
    return Rational(s.real());
  }
}

template <typename Scalar>
TruncatedOperator<Scalar> selectWords(const RepresentationModel<Scalar>& model, int k, auto&& keep) {
  model.dimension(k);
  const auto words = allWords(model.alphabet(), k);
  std::vector<Scalar> d(words.size(), Scalar(0));
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (keep(words[i])) d[i] = Scalar(1);
  }
  return TruncatedOperator<Scalar>::diagonal(model.alphabet(), k, d);
}

}  // namespace

LevelFunction LevelFunction::constant(const Alphabet& alphabet, int level, const Rational& value) {
  return {level, std::vector<Rational>(levelDimension(alphabet, level, SIZE_MAX), value)};
}

LevelFunction LevelFunction::indicator(const Alphabet& alphabet, const Word& f) {
  f.validate(alphabet);
  LevelFunction out = constant(alphabet, static_cast<int>(f.size()), Rational(0));
  out.values[f.index(alphabet)] = 1;
  return out;
}

LevelFunction LevelFunction::lift(const Alphabet& alphabet) const {
  LevelFunction out{level + 1, {}};
  out.values.reserve(values.size() * static_cast<std::size_t>(alphabet.n));
  for (const auto& v : values) {
    for (int j = 0; j < alphabet.n; ++j) out.values.push_back(v);
  }
  return out;
}

LevelFunction LevelFunction::liftTo(const Alphabet& alphabet, int target) const {
  if (target < level) throw std::invalid_argument("cannot lower the level of a function table");
  LevelFunction out = *this;
  while (out.level < target) out = out.lift(alphabet);
  return out;
}

template <typename Scalar>
TruncatedOperator<Scalar> qCylinder(const RepresentationModel<Scalar>& model, const Word& f, int k) {
  f.validate(model.alphabet());
  if (f.size() > static_cast<std::size_t>(k)) throw std::invalid_argument("level too small for the cylinder word");
  return selectWords(model, k, [&](const Word& g) { return g.startsWith(f); });
}

template <typename Scalar>
TruncatedOperator<Scalar> qPreimage(const RepresentationModel<Scalar>& model, const Word& f, int k) {
  f.validate(model.alphabet());
  if (f.size() + 1 > static_cast<std::size_t>(k)) throw std::invalid_argument("level too small for the preimage");
  return selectWords(model, k, [&](const Word& g) { return g.tail().startsWith(f); });
}

template <typename Scalar>
TruncatedOperator<Scalar> qFunctional(const RepresentationModel<Scalar>& model, const LevelFunction& f, int k) {
  if (f.values.size() != levelDimension(model.alphabet(), f.level, SIZE_MAX)) {
    throw std::invalid_argument("function table has the wrong length");
  }
  model.dimension(k);
  const LevelFunction lifted = f.liftTo(model.alphabet(), k);
  std::vector<Scalar> d;
  d.reserve(lifted.values.size());
  for (const auto& v : lifted.values) d.push_back(ScalarOps<Scalar>::fromRational(v));
  return TruncatedOperator<Scalar>::diagonal(model.alphabet(), k, d);
}

template <typename Scalar>
Rational expectation(const RepresentationModel<Scalar>& model, const LevelFunction& psi,
                     const TruncatedOperator<Scalar>& t) {
  if (!t.isDiagonal()) throw std::invalid_argument("expectation needs a diagonal operator");
  const LevelFunction v = psi.liftTo(model.alphabet(), t.sourceLevel());
  const auto d = t.diagonalEntries();
  Rational total(0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (v.values[i] == 0 || ScalarOps<Scalar>::isZero(d[i])) continue;
    const Word f = Word::fromIndex(i, v.level, model.alphabet());
    total += v.values[i] * v.values[i] * model.weights().product(f) * rationalValue(d[i]);
  }
  return total;
}

template <typename Scalar>
Rational markovTransition(const RepresentationModel<Scalar>& model, const LevelFunction& psi, int k, int i, int j) {
  if (k < 1) throw std::invalid_argument("Markov step must be at least 1");
  const int level = std::max(psi.level, k + 1);
  auto numerator = betaPower(model, wordProjection(model, Word{i, j}, 2), k - 1);
  auto denominator = betaPower(model, wordProjection(model, Word{i}, 1), k - 1);
  numerator = numerator.liftBy(level - numerator.sourceLevel());
  denominator = denominator.liftBy(level - denominator.sourceLevel());
  const Rational den = expectation(model, psi, denominator);
  if (den == 0) throw std::domain_error("undefined conditional: zero denominator in the transition probability");
  return expectation(model, psi, numerator) / den;
}

template <typename Scalar>
RationalMatrix markovMatrix(const RepresentationModel<Scalar>& model, const LevelFunction& psi, int k) {
  const int n = model.alphabet().n;
  RationalMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = markovTransition(model, psi, k, i, j);
  }
  return out;
}

template <typename Scalar>
std::vector<Rational> scalarMeasure(const RepresentationModel<Scalar>& model, const LevelFunction& psi, int k) {
  const int level = std::max(psi.level, k);
  const Rational norm = expectation(model, psi, TruncatedOperator<Scalar>::identity(model.alphabet(), level));
  if (norm == 0) throw std::domain_error("scalar measure of the zero vector");
  std::vector<Rational> out;
  for (const auto& f : allWords(model.alphabet(), k)) {
    out.push_back(expectation(model, psi, qCylinder(model, f, k).liftBy(level - k)) / norm);
  }
  return out;
}

template <typename Scalar>
AtomReport atomMass(const RepresentationModel<Scalar>& model, const InfWordSpec& omega, int k) {
  if (k < 1) throw std::invalid_argument("atom level must be at least 1");
  omega.validate(model.alphabet());
  AtomReport report;
  const auto one = LevelFunction::constant(model.alphabet(), 0);
  const auto q = qCylinder(model, omega.prefix(static_cast<std::size_t>(k)), k);
  report.rank = projectionRank(q);
  report.mass = expectation(model, one, q);
  report.monotone = true;
  for (int j = 1; j <= k; ++j) {
    report.masses.push_back(model.weights().product(omega.prefix(static_cast<std::size_t>(j))));
    if (j > 1) report.monotone = report.monotone && report.masses[static_cast<std::size_t>(j - 1)] <= report.masses[static_cast<std::size_t>(j - 2)];
  }
  report.atomPresent = model.weights().product(omega.period()) == 1;
  return report;
}

template <typename Scalar>
CovarianceReport covarianceChecks(const RepresentationModel<Scalar>& model, const Word& f, int i, int k, double tol) {
  if (f.empty()) throw std::invalid_argument("covariance checks need a non-empty word");
  if (f.size() + 1 > static_cast<std::size_t>(k)) throw std::invalid_argument("covariance checks need |f| + 1 <= k");
  CovarianceReport report;
  auto track = [&](const TruncatedOperator<Scalar>& a, const TruncatedOperator<Scalar>& b, const char* name) {
    report.deviation = std::max(report.deviation, maxDeviation(a, b));
    bool ok = agrees(a, b, tol);
    if (!ok && report.failing.empty()) report.failing = name;
    return ok;
  };

  const auto q_low = qCylinder(model, f, k - 1);
  auto sum = TruncatedOperator<Scalar>::zero(model.alphabet(), k, k);
  for (int j = 0; j < model.alphabet().n; ++j) sum = sum + qCylinder(model, f.prepend(j), k);
  const auto b = beta(model, q_low);
  const bool b1 = track(b, qPreimage(model, f, k), "beta(Q(E_f)) = Q(sigma^-1 E_f)");
  const bool b2 = track(b, sum, "beta(Q(E_f)) = sum_j Q(E_jf)");
  report.betaPreimage = b1 && b2;

  const auto s = generatorS(model, i, k - 1);
  report.intertwine = track(s * q_low, qCylinder(model, f.prepend(i), k) * s, "S_i Q(E_f) = Q(E_if) S_i");

  const auto adj = s.adjoint();
  const auto lhs = adj * qCylinder(model, f, k);
  const auto rhs = f[0] == i ? qCylinder(model, f.tail(), k - 1) * adj
                             : TruncatedOperator<Scalar>::zero(model.alphabet(), k, k - 1);
  report.adjointIntertwine = track(lhs, rhs, "S_i^* Q(E_f) = delta Q(E_sigma f) S_i^*");
  report.pass = report.betaPreimage && report.intertwine && report.adjointIntertwine;
  return report;
}

template <typename Scalar>
bool monicCheck(const RepresentationModel<Scalar>& model, const LevelFunction& psi0, int k) {
  if (psi0.level > k) throw std::invalid_argument("psi0 must live at a level <= k");
  const auto psi = psi0.liftTo(model.alphabet(), k);
  model.dimension(k);
  const auto words = allWords(model.alphabet(), k);
  const auto n = static_cast<Eigen::Index>(words.size());
  // Gram matrix of Q(E_f) psi: sum over h in E_f cap E_g of psi(h)^2 p_h.
  RationalMatrix gram = RationalMatrix::Zero(n, n);
  bool diagonal = true;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      auto meet = cylinderIntersect(Cylinder{words[static_cast<std::size_t>(a)]}, Cylinder{words[static_cast<std::size_t>(b)]});
      if (!meet) continue;
      const auto& h = meet->base;
      const Rational& v = psi.values[h.index(model.alphabet())];
      gram(a, b) = v * v * model.weights().product(h);
      if (a != b && gram(a, b) != 0) diagonal = false;
    }
  }
  Eigen::Index rank = 0;
  if (diagonal) {
    for (Eigen::Index a = 0; a < n; ++a) rank += gram(a, a) != 0 ? 1 : 0;
  } else {
    rank = exactRank(gram);
  }
  return rank == n;
}

#define IFSREP_INSTANTIATE_PVM(S)                                                                              \
  template TruncatedOperator<S> qCylinder(const RepresentationModel<S>&, const Word&, int);                    \
  template TruncatedOperator<S> qPreimage(const RepresentationModel<S>&, const Word&, int);                    \
  template TruncatedOperator<S> qFunctional(const RepresentationModel<S>&, const LevelFunction&, int);         \
  template Rational expectation(const RepresentationModel<S>&, const LevelFunction&, const TruncatedOperator<S>&); \
  template Rational markovTransition(const RepresentationModel<S>&, const LevelFunction&, int, int, int);      \
  template RationalMatrix markovMatrix(const RepresentationModel<S>&, const LevelFunction&, int);              \
  template std::vector<Rational> scalarMeasure(const RepresentationModel<S>&, const LevelFunction&, int);      \
  template AtomReport atomMass(const RepresentationModel<S>&, const InfWordSpec&, int);                        \
  template CovarianceReport covarianceChecks(const RepresentationModel<S>&, const Word&, int, int, double);    \
  template bool monicCheck(const RepresentationModel<S>&, const LevelFunction&, int);

IFSREP_INSTANTIATE_PVM(Rational)
IFSREP_INSTANTIATE_PVM(Cyclotomic)
IFSREP_INSTANTIATE_PVM(std::complex<double>)

#undef IFSREP_INSTANTIATE_PVM

}  // namespace ifsrep
