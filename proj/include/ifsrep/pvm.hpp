#pragma once

// The projection-valued measure Q on cylinder sets of the path space,
// restricted to the truncation levels, and the scalar measures
// <psi, Q(.) psi> it induces.

#include <optional>
#include <string>
#include <vector>

#include "ifsrep/cuntz.hpp"

namespace ifsrep {

/// A function of the first `level` letters, tabulated in word-index order.
/// Vectors of V_k are given this way: the table psi stands for
/// sum_f psi(f) chi_{E_f}, so <psi, phi> = sum_f conj(psi(f)) phi(f) p_f.
struct LevelFunction {
  int level = 0;
  std::vector<Rational> values;

  static LevelFunction constant(const Alphabet& alphabet, int level, const Rational& value = Rational(1));
  /// chi_{E_f} at level |f|.
  static LevelFunction indicator(const Alphabet& alphabet, const Word& f);
  /// The same function viewed at level + 1.
  LevelFunction lift(const Alphabet& alphabet) const;
  LevelFunction liftTo(const Alphabet& alphabet, int target) const;
  const Rational& operator()(std::size_t index) const { return values[index]; }
};

/// Q(E_f) on V_k, built directly as the diagonal selecting words with
/// prefix f. Q(E_empty) = I.
template <typename Scalar>
TruncatedOperator<Scalar> qCylinder(const RepresentationModel<Scalar>& model, const Word& f, int k);

/// Q(sigma^{-1} E_f) on V_k: words whose tail starts with f. Needs |f| + 1 <= k.
template <typename Scalar>
TruncatedOperator<Scalar> qPreimage(const RepresentationModel<Scalar>& model, const Word& f, int k);

/// Q^{(k)}(F) = sum_{|I|=k} F(I) S_I S_I^* for a level-l table F, l <= k.
template <typename Scalar>
TruncatedOperator<Scalar> qFunctional(const RepresentationModel<Scalar>& model, const LevelFunction& f, int k);

/// <psi, T psi> for a diagonal T at the level of psi (psi is lifted if lower).
template <typename Scalar>
Rational expectation(const RepresentationModel<Scalar>& model, const LevelFunction& psi,
                     const TruncatedOperator<Scalar>& t);

/// <psi, beta^{k-1}(S_i S_j S_j^* S_i^*) psi> / <psi, beta^{k-1}(S_i S_i^*) psi>.
/// psi must live at level >= k+1 (lower levels are lifted). A zero
/// denominator throws std::domain_error.
template <typename Scalar>
Rational markovTransition(const RepresentationModel<Scalar>& model, const LevelFunction& psi, int k, int i, int j);

template <typename Scalar>
RationalMatrix markovMatrix(const RepresentationModel<Scalar>& model, const LevelFunction& psi, int k);

/// mu_psi(E_f) for |f| = k, normalized by <psi, psi>.
template <typename Scalar>
std::vector<Rational> scalarMeasure(const RepresentationModel<Scalar>& model, const LevelFunction& psi, int k);

struct AtomReport {
  long rank = 0;
  Rational mass;
  /// <1, Q(E_{omega|j}) 1> for j = 1..k.
  std::vector<Rational> masses;
  bool monotone = false;
  /// Masses bounded below along the word; never true for positive weights
  /// unless a whole period carries weight 1.
  bool atomPresent = false;
};

template <typename Scalar>
AtomReport atomMass(const RepresentationModel<Scalar>& model, const InfWordSpec& omega, int k);

struct CovarianceReport {
  bool pass = false;
  /// beta(Q(E_f)) = Q(sigma^{-1} E_f) = sum_j Q(E_{jf})
  bool betaPreimage = false;
  /// S_i Q(E_f) = Q(E_{if}) S_i
  bool intertwine = false;
  /// S_i^* Q(E_f) = delta_{i f_1} Q(E_{sigma f}) S_i^*
  bool adjointIntertwine = false;
  double deviation = 0.0;
  std::string failing;
};

/// Needs 1 <= |f| and |f| + 1 <= k.
template <typename Scalar>
CovarianceReport covarianceChecks(const RepresentationModel<Scalar>& model, const Word& f, int i, int k,
                                  double tol = 1e-12);

/// True iff {Q(E_f) psi0 : |f| = k} spans V_k.
template <typename Scalar>
bool monicCheck(const RepresentationModel<Scalar>& model, const LevelFunction& psi0, int k);

}  // namespace ifsrep
