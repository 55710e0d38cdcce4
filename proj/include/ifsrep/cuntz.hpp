#pragma once

// Finite truncations of the Cuntz representation on L^2(mu). The level-k
// space V_k is spanned by e_f = chi_{tau_f(M)} / sqrt(mu(tau_f(M))), |f| = k,
// and S_i e_f = phase_i e_{if}. All operators carry their source and target
// levels; products check that the levels line up.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ifsrep/ifs.hpp"
#include "ifsrep/operator.hpp"

namespace ifsrep {

template <typename Scalar>
class RepresentationModel {
 public:
  /// With a gauge twist x, S_i picks up the phase <x, i> = e(x_1 i / N).
  RepresentationModel(WeightVector weights, std::optional<InfWordSpec> gauge = std::nullopt,
                      std::size_t cap = kDefaultLevelCap);
  /// Weights taken from an affine system; Julia systems are rejected.
  static RepresentationModel fromSystem(const IFSSystem& system, std::optional<InfWordSpec> gauge = std::nullopt,
                                        std::size_t cap = kDefaultLevelCap);

  const Alphabet& alphabet() const { return alphabet_; }
  const WeightVector& weights() const { return weights_; }
  const std::optional<InfWordSpec>& gauge() const { return gauge_; }
  std::size_t cap() const { return cap_; }

  Scalar phase(int i) const;
  /// N^k, throwing std::length_error above the cap.
  Eigen::Index dimension(int k) const { return levelSize(alphabet_, k, cap_); }

 private:
  Alphabet alphabet_;
  WeightVector weights_;
  std::optional<InfWordSpec> gauge_;
  std::size_t cap_;
};

using Op = TruncatedOperator<Rational>;
using CycOp = TruncatedOperator<Cyclotomic>;
using ComplexOp = TruncatedOperator<std::complex<double>>;

struct LevelBasis {
  int level = 0;
  Eigen::Index dimension = 1;
  std::vector<Word> words;
};

template <typename Scalar>
LevelBasis levelBasis(const RepresentationModel<Scalar>& model, int k);

/// <e_f, e_g> in L^2(mu) from cylinder masses: mu(E_f cap E_g) / sqrt(mu(E_f) mu(E_g)).
template <typename Scalar>
RationalMatrix levelGram(const RepresentationModel<Scalar>& model, int k);

/// S_i : V_k -> V_{k+1}.
template <typename Scalar>
TruncatedOperator<Scalar> generatorS(const RepresentationModel<Scalar>& model, int i, int k);

/// S_i^* : V_{k+1} -> V_k.
template <typename Scalar>
TruncatedOperator<Scalar> generatorSAdjoint(const RepresentationModel<Scalar>& model, int i, int k);

/// S_f = S_{f_1} ... S_{f_m} : V_{k-m} -> V_k.
template <typename Scalar>
TruncatedOperator<Scalar> wordIsometry(const RepresentationModel<Scalar>& model, const Word& f, int k);

/// P_f = S_f S_f^* on V_k. The empty word is rejected (P_empty = 0 by convention).
template <typename Scalar>
TruncatedOperator<Scalar> wordProjection(const RepresentationModel<Scalar>& model, const Word& f, int k);

/// beta(T) = sum_i S_i T S_i^*, mapping operators on V_k to operators on V_{k+1}.
template <typename Scalar>
TruncatedOperator<Scalar> beta(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t);

template <typename Scalar>
TruncatedOperator<Scalar> betaPower(const RepresentationModel<Scalar>& model, TruncatedOperator<Scalar> t, int j);

struct CuntzReport {
  bool pass = false;
  int level = 0;
  /// Largest entry of S_i^* S_j - delta_ij I and of sum_i S_i S_i^* - I.
  double deviation = 0.0;
  bool exactlyZero = false;
  std::optional<std::pair<int, int>> failingPair;
  std::string failingRelation;
};

/// S_i^* S_j = delta_ij I on V_k and sum_i S_i S_i^* = I on V_{k+1}.
template <typename Scalar>
CuntzReport verifyCuntzLevel(const RepresentationModel<Scalar>& model, int k, double tol = 1e-12);

/// E T E^* on V_{k+1}, where E : V_k -> V_{k+1} is the inclusion
/// e_f -> sum_j sqrt(p_j) e_{fj}. Throws std::domain_error when an entry
/// sqrt(p_j p_l) is irrational and the scalar type is exact.
template <typename Scalar>
TruncatedOperator<Scalar> embedCompression(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t);

template <typename Scalar>
struct ProjectionClosure {
  /// beta^j(P) for j = 0..maxIter; iterate j lives on V_{k+j}.
  std::vector<TruncatedOperator<Scalar>> iterates;
  /// leq[j-1]: iterate j-1, embedded one level up, is below iterate j.
  std::vector<bool> leq;
  std::vector<long> ranks;
  bool monotone = false;
  /// The last iterate when the chain increases; nullopt otherwise.
  std::optional<TruncatedOperator<Scalar>> join;
};

template <typename Scalar>
ProjectionClosure<Scalar> invariantProjectionClosure(const RepresentationModel<Scalar>& model,
                                                     const TruncatedOperator<Scalar>& p, int maxIter,
                                                     double tol = 1e-12);

/// Round(trace) of a projection.
template <typename Scalar>
long projectionRank(const TruncatedOperator<Scalar>& p);

/// beta(T) = T (x) I, the truncated form of beta(T) = T for multiplication operators.
template <typename Scalar>
bool fixedByBeta(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t, double tol = 1e-12);

/// S_i^* (T (x) I) = T S_i^* for every i.
template <typename Scalar>
bool commutesWithCoisometries(const RepresentationModel<Scalar>& model, const TruncatedOperator<Scalar>& t,
                              double tol = 1e-12);

/// An endomorphism given by its action on the generators.
struct Endomorphism {
  enum class Kind { Identity, Gauge, Inner };
  Kind kind = Kind::Identity;
  /// Gauge parameter.
  std::optional<InfWordSpec> x;
  /// Inner: a unitary W on V_k; alpha(S_i) = (W (x) I) S_i W^*.
  Eigen::MatrixXcd w;

  static Endomorphism identity() { return {}; }
  static Endomorphism gaugeAction(InfWordSpec x) { return {Kind::Gauge, std::move(x), {}}; }
  static Endomorphism inner(Eigen::MatrixXcd w) { return {Kind::Inner, std::nullopt, std::move(w)}; }
};

template <typename Scalar>
struct UAlphaReport {
  /// U = sum_i alpha(S_i) S_i^* on V_{k+1}.
  TruncatedOperator<Scalar> u;
  double unitarityDeviation = 0.0;
  /// Largest mismatch in U Q(E_f) U^* = alpha(S_{f_1}) Q(E_{sigma f}) alpha(S_{f_1})^*.
  double covarianceDeviation = 0.0;
  bool pass = false;
};

/// alpha(S_i) : V_k -> V_{k+1}.
template <typename Scalar>
TruncatedOperator<Scalar> applyEndomorphism(const RepresentationModel<Scalar>& model, const Endomorphism& alpha, int i,
                                            int k);

/// Inner endomorphisms need Scalar = std::complex<double> and a unitary W
/// (to 1e-12); anything else throws std::invalid_argument.
template <typename Scalar>
UAlphaReport<Scalar> uAlpha(const RepresentationModel<Scalar>& model, const Endomorphism& alpha, int k,
                            double tol = 1e-12);

}  // namespace ifsrep
