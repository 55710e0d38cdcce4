#include "ifsrep/cuntz.hpp"

#include <cmath>
#include <type_traits>

namespace ifsrep {

template <typename Scalar>
RepresentationModel<Scalar>::RepresentationModel(WeightVector weights, std::optional<InfWordSpec> gauge,
                                                 std::size_t cap)
    : alphabet_(weights.size()), weights_(std::move(weights)), gauge_(std::move(gauge)), cap_(cap) {
  if (gauge_) gauge_->validate(alphabet_);
  for (int i = 0; i < alphabet_.n; ++i) phase(i);
}

template <typename Scalar>
RepresentationModel<Scalar> RepresentationModel<Scalar>::fromSystem(const IFSSystem& system,
                                                                    std::optional<InfWordSpec> gauge, std::size_t cap) {
  if (const auto* s = std::get_if<AffineSystem1D>(&system.kind)) return {s->weights(), std::move(gauge), cap};
  if (const auto* s = std::get_if<AffineSystem2D>(&system.kind)) return {s->weights(), std::move(gauge), cap};
  throw std::invalid_argument("non-affine system: '" + system.name + "' has no exact representation model");
}

template <typename Scalar>
Scalar RepresentationModel<Scalar>::phase(int i) const {
  if (!gauge_) return Scalar(1);
  return ScalarOps<Scalar>::fromTurn(gaugeTurn(*gauge_, Word{i}, alphabet_));
}

template <typename Scalar>
LevelBasis levelBasis(const RepresentationModel<Scalar>& model, int k) {
  LevelBasis basis;
  basis.level = k;
  basis.dimension = model.dimension(k);
  basis.words = allWords(model.alphabet(), k);
  return basis;
}

template <typename Scalar>
RationalMatrix levelGram(const RepresentationModel<Scalar>& model, int k) {
  model.dimension(k);
  const auto words = allWords(model.alphabet(), k);
  const auto n = static_cast<Eigen::Index>(words.size());
  RationalMatrix gram = RationalMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto& f = words[static_cast<std::size_t>(a)];
      const auto& g = words[static_cast<std::size_t>(b)];
      auto meet = cylinderIntersect(Cylinder{f}, Cylinder{g});
      if (!meet) continue;
      Rational root;
      if (!exactSqrt(model.weights().product(f) * model.weights().product(g), root)) {
        throw std::domain_error("irrational normalization in the Gram matrix");
      }
      gram(a, b) = cylinderMeasure(*meet, model.weights()) / root;
    }
  }
  return gram;
}

template <typename Scalar>
TruncatedOperator<Scalar> generatorS(const RepresentationModel<Scalar>& model, int i, int k) {
  if (!model.alphabet().contains(i)) throw std::invalid_argument("generator index outside the alphabet");
  if (k < 0) throw std::invalid_argument("level must be non-negative");
  model.dimension(k + 1);
  const Eigen::Index n = model.dimension(k);
  const Scalar phase = model.phase(i);
  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) triplets.emplace_back(i * n + c, c, phase);
  typename TruncatedOperator<Scalar>::Matrix m(n * model.alphabet().n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return {model.alphabet(), k, k + 1, std::move(m)};
}

template <typename Scalar>
TruncatedOperator<Scalar> generatorSAdjoint(const RepresentationModel<Scalar>& model, int i, int k) {
  return generatorS(model, i, k).adjoint();
}

template <typename Scalar>
TruncatedOperator<Scalar> wordIsometry(const RepresentationModel<Scalar>& model, const Word& f, int k) {
  f.validate(model.alphabet());
  const int m = static_cast<int>(f.size());
  if (m > k) throw std::invalid_argument("word longer than the level");
  auto s = TruncatedOperator<Scalar>::identity(model.alphabet(), k - m);
  for (int pos = m - 1; pos >= 0; --pos) {
    s = generatorS(model, f[static_cast<std::size_t>(pos)], s.targetLevel()) * s;
  }
  return s;
}

template <typename Scalar>
TruncatedOperator<Scalar> wordProjection(const RepresentationModel<Scalar>& model, const Word& f, int k) {
  if (f.empty()) throw std::invalid_argument("P_f is not defined for the empty word (P_empty = 0 convention)");
  if (f.size() > static_cast<std::size_t>(k)) throw std::invalid_argument("word longer than the level");
  model.dimension(k);
  auto s = wordIsometry(model, f, k);
  return s * s.adjoint();
}

template <typename Scalar>
TruncatedOperator<Scalar> beta(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t) {
  if (!t.isSquare()) throw std::invalid_argument("beta needs a square operator");
  const int k = t.sourceLevel();
  auto out = TruncatedOperator<Scalar>::zero(model.alphabet(), k + 1, k + 1);
  model.dimension(k + 1);
  for (int i = 0; i < model.alphabet().n; ++i) {
    auto s = generatorS(model, i, k);
    out = out + s * t * s.adjoint();
  }
  return out;
}

template <typename Scalar>
TruncatedOperator<Scalar> betaPower(const RepresentationModel<Scalar>& model, TruncatedOperator<Scalar> t, int j) {
  if (j < 0) throw std::invalid_argument("beta power must be non-negative");
  for (int s = 0; s < j; ++s) t = beta(model, t);
  return t;
}

template <typename Scalar>
CuntzReport verifyCuntzLevel(const RepresentationModel<Scalar>& model, int k, double tol) {
  CuntzReport report;
  report.level = k;
  report.pass = true;
  const int n = model.alphabet().n;
  std::vector<TruncatedOperator<Scalar>> s;
  for (int i = 0; i < n; ++i) s.push_back(generatorS(model, i, k));
  const auto id_k = TruncatedOperator<Scalar>::identity(model.alphabet(), k);
  const auto id_k1 = TruncatedOperator<Scalar>::identity(model.alphabet(), k + 1);

  auto record = [&](const TruncatedOperator<Scalar>& lhs, const TruncatedOperator<Scalar>& rhs, int i, int j,
                    const char* relation) {
    report.deviation = std::max(report.deviation, maxDeviation(lhs, rhs));
    if (report.pass && !agrees(lhs, rhs, tol)) {
      report.pass = false;
      report.failingPair = std::make_pair(i, j);
      report.failingRelation = relation;
    }
  };
  for (int i = 0; i < n; ++i) {
    const auto adj = s[static_cast<std::size_t>(i)].adjoint();
    for (int j = 0; j < n; ++j) {
      const auto expected = i == j ? id_k : TruncatedOperator<Scalar>::zero(model.alphabet(), k, k);
      record(adj * s[static_cast<std::size_t>(j)], expected, i, j, "S_i^* S_j = delta_ij I");
    }
  }
  auto sum = TruncatedOperator<Scalar>::zero(model.alphabet(), k + 1, k + 1);
  for (const auto& si : s) sum = sum + si * si.adjoint();
  record(sum, id_k1, -1, -1, "sum_i S_i S_i^* = I");
  report.exactlyZero = report.deviation == 0.0 && report.pass;
  return report;
}

template <typename Scalar>
TruncatedOperator<Scalar> embedCompression(const RepresentationModel<Scalar>& model,
                                           const TruncatedOperator<Scalar>& t) {
  if (!t.isSquare()) throw std::invalid_argument("embedding needs a square operator");
  const int n = model.alphabet().n;
  model.dimension(t.sourceLevel() + 1);
  std::vector<std::vector<Scalar>> factor(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      auto root = ScalarOps<Scalar>::sqrtOf(model.weights()[static_cast<std::size_t>(j)] *
                                            model.weights()[static_cast<std::size_t>(l)]);
      if (!root) throw std::domain_error("level embedding has irrational entries for these weights");
      factor[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = *root;
    }
  }
  std::vector<Eigen::Triplet<Scalar>> triplets;
  t.forEachNonzero([&](Eigen::Index r, Eigen::Index c, const Scalar& v) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        triplets.emplace_back(r * n + j, c * n + l, factor[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] * v);
      }
    }
  });
  typename TruncatedOperator<Scalar>::Matrix m(t.matrix().rows() * n, t.matrix().cols() * n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return {model.alphabet(), t.sourceLevel() + 1, t.targetLevel() + 1, std::move(m)};
}

template <typename Scalar>
long projectionRank(const TruncatedOperator<Scalar>& p) {
  return std::lround(ScalarOps<Scalar>::toComplex(p.trace()).real());
}

template <typename Scalar>
ProjectionClosure<Scalar> invariantProjectionClosure(const RepresentationModel<Scalar>& model,
                                                     const TruncatedOperator<Scalar>& p, int maxIter, double tol) {
  if (!isProjection(p, tol)) throw std::invalid_argument("input is not an orthogonal projection");
  if (maxIter < 1) throw std::invalid_argument("maxIter must be at least 1");
  ProjectionClosure<Scalar> out;
  out.iterates.push_back(p);
  out.ranks.push_back(projectionRank(p));
  out.monotone = true;
  for (int j = 1; j <= maxIter; ++j) {
    const auto& previous = out.iterates.back();
    auto next = beta(model, previous);
    bool leq = projectionLeq(embedCompression(model, previous), next, tol);
    out.leq.push_back(leq);
    out.monotone = out.monotone && leq;
    out.ranks.push_back(projectionRank(next));
    out.iterates.push_back(std::move(next));
  }
  if (out.monotone) out.join = out.iterates.back();
  return out;
}

template <typename Scalar>
bool fixedByBeta(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t, double tol) {
  return agrees(beta(model, t), t.lift(), tol);
}

template <typename Scalar>
bool commutesWithCoisometries(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t,
                              double tol) {
  if (!t.isSquare()) throw std::invalid_argument("commutation test needs a square operator");
  const auto lifted = t.lift();
  for (int i = 0; i < model.alphabet().n; ++i) {
    const auto adj = generatorSAdjoint(model, i, t.sourceLevel());
    if (!agrees(adj * lifted, t * adj, tol)) return false;
  }
  return true;
}

namespace {

template <typename Scalar>
TruncatedOperator<Scalar> fromDense(const Alphabet& alphabet, int level, const Eigen::MatrixXcd& w) {
  if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
    typename TruncatedOperator<Scalar>::Matrix m = w.sparseView();
    return {alphabet, level, level, std::move(m)};
  } else {
    (void)alphabet;
    (void)level;
    (void)w;
    throw std::invalid_argument("inner endomorphisms need the complex model");
  }
}

template <typename Scalar>
TruncatedOperator<Scalar> cylinderOrIdentity(const RepresentationModel<Scalar>& model, const Word& f, int k) {
  if (f.empty()) return TruncatedOperator<Scalar>::identity(model.alphabet(), k);
  return wordProjection(model, f, k);
}

}  // namespace

template <typename Scalar>
TruncatedOperator<Scalar> applyEndomorphism(const RepresentationModel<Scalar>& model, const Endomorphism& alpha, int i,
                                            int k) {
  auto s = generatorS(model, i, k);
  switch (alpha.kind) {
    case Endomorphism::Kind::Identity:
      return s;
    case Endomorphism::Kind::Gauge: {
      if (!alpha.x) throw std::invalid_argument("gauge action needs a parameter x");
      return ScalarOps<Scalar>::fromTurn(gaugeTurn(*alpha.x, Word{i}, model.alphabet())) * s;
    }
    case Endomorphism::Kind::Inner: {
      const auto w = fromDense<Scalar>(model.alphabet(), k, alpha.w);
      return w.lift() * s * w.adjoint();
    }
  }
  throw std::invalid_argument("unknown endomorphism kind");
}

template <typename Scalar>
UAlphaReport<Scalar> uAlpha(const RepresentationModel<Scalar>& model, const Endomorphism& alpha, int k, double tol) {
  const Eigen::Index dim = model.dimension(k);
  model.dimension(k + 1);
  if (alpha.kind == Endomorphism::Kind::Inner) {
    if (alpha.w.rows() != dim || alpha.w.cols() != dim) throw std::invalid_argument("W must act on V_k");
    const double defect = (alpha.w.adjoint() * alpha.w - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (defect > tol) throw std::invalid_argument("non-unital alpha: W is not unitary");
  }
  const int n = model.alphabet().n;
  std::vector<TruncatedOperator<Scalar>> images;
  auto u = TruncatedOperator<Scalar>::zero(model.alphabet(), k + 1, k + 1);
  for (int i = 0; i < n; ++i) {
    images.push_back(applyEndomorphism(model, alpha, i, k));
    u = u + images.back() * generatorSAdjoint(model, i, k);
  }
  const auto id = TruncatedOperator<Scalar>::identity(model.alphabet(), k + 1);
  const auto uu = u.adjoint() * u;
  const auto uu2 = u * u.adjoint();
  UAlphaReport<Scalar> report{u, std::max(maxDeviation(uu, id), maxDeviation(uu2, id)), 0.0, false};
  bool ok = agrees(uu, id, tol) && agrees(uu2, id, tol);

  // Covariance on cylinder projections, shortest words first, within a budget.
  std::size_t budget = 1024;
  for (int len = 1; len <= k + 1 && budget > 0; ++len) {
    for (const auto& f : allWords(model.alphabet(), len)) {
      if (budget-- == 0) break;
      const auto lhs = u * cylinderOrIdentity(model, f, k + 1) * u.adjoint();
      const auto& a = images[static_cast<std::size_t>(f[0])];
      const auto rhs = a * cylinderOrIdentity(model, f.tail(), k) * a.adjoint();
      report.covarianceDeviation = std::max(report.covarianceDeviation, maxDeviation(lhs, rhs));
      ok = ok && agrees(lhs, rhs, tol);
    }
  }
  report.pass = ok;
  return report;
}

#define IFSREP_INSTANTIATE_CUNTZ(S)                                                                               \
  template class RepresentationModel<S>;                                                                          \
  template LevelBasis levelBasis(const RepresentationModel<S>&, int);                                             \
  template RationalMatrix levelGram(const RepresentationModel<S>&, int);                                          \
  template TruncatedOperator<S> generatorS(const RepresentationModel<S>&, int, int);                              \
  template TruncatedOperator<S> generatorSAdjoint(const RepresentationModel<S>&, int, int);                       \
  template TruncatedOperator<S> wordIsometry(const RepresentationModel<S>&, const Word&, int);                    \
  template TruncatedOperator<S> wordProjection(const RepresentationModel<S>&, const Word&, int);                  \
  template TruncatedOperator<S> beta(const RepresentationModel<S>&, const TruncatedOperator<S>&);                 \
  template TruncatedOperator<S> betaPower(const RepresentationModel<S>&, TruncatedOperator<S>, int);              \
  template CuntzReport verifyCuntzLevel(const RepresentationModel<S>&, int, double);                              \
  template TruncatedOperator<S> embedCompression(const RepresentationModel<S>&, const TruncatedOperator<S>&);     \
  template ProjectionClosure<S> invariantProjectionClosure(const RepresentationModel<S>&,                         \
                                                           const TruncatedOperator<S>&, int, double);             \
  template long projectionRank(const TruncatedOperator<S>&);                                                      \
  template bool fixedByBeta(const RepresentationModel<S>&, const TruncatedOperator<S>&, double);                  \
  template bool commutesWithCoisometries(const RepresentationModel<S>&, const TruncatedOperator<S>&, double);     \
  template TruncatedOperator<S> applyEndomorphism(const RepresentationModel<S>&, const Endomorphism&, int, int);  \
  template UAlphaReport<S> uAlpha(const RepresentationModel<S>&, const Endomorphism&, int, double);

IFSREP_INSTANTIATE_CUNTZ(Rational)
IFSREP_INSTANTIATE_CUNTZ(Cyclotomic)
IFSREP_INSTANTIATE_CUNTZ(std::complex<double>)

#undef IFSREP_INSTANTIATE_CUNTZ

}  // namespace ifsrep
