#pragma once

// Square densities phi sqrt(dmu) over finite atomic measures on a
// one-dimensional domain: inner products through a common dominating
// measure, the Cuntz isometries induced by an IFS, the absolute continuity
// lattice, conditional expectations and the gradient dF / dmu.
//
// Atomic measures live on the half-open domain [lo, hi), where the branch
// images partition exactly and sigma is an exact left inverse.

#include <map>
#include <utility>
#include <vector>

#include "ifsrep/ifs.hpp"
#include "ifsrep/surd.hpp"

namespace ifsrep {

class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Atoms at equal points are merged; weights must be positive.
  explicit DiscreteMeasure(const std::vector<std::pair<Rational, Rational>>& atoms);

  const std::map<Rational, Rational>& atoms() const { return atoms_; }
  bool contains(const Rational& x) const { return atoms_.count(x) != 0; }
  /// 0 off the support.
  Rational weight(const Rational& x) const;
  Rational total() const;
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  friend DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);
  DiscreteMeasure scaled(const Rational& c) const;
  /// mu o map^{-1}.
  DiscreteMeasure pushforward(const AffineMap<1>& map) const;
  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::map<Rational, Rational> atoms_;
};

/// dmu/dlambda on the support of lambda. Throws std::domain_error unless mu << lambda.
std::map<Rational, Rational> radonNikodym(const DiscreteMeasure& mu, const DiscreteMeasure& lambda);

/// The class of phi sqrt(dmu). Support points where phi vanishes are pruned.
class SquareDensityVector {
 public:
  SquareDensityVector() = default;
  /// Every point of `phi` must be an atom of `mu`; atoms without a value count as phi = 0.
  SquareDensityVector(const DiscreteMeasure& mu, const std::map<Rational, Surd>& phi);

  const DiscreteMeasure& carrier() const { return mu_; }
  const std::map<Rational, Surd>& values() const { return phi_; }
  /// x -> phi(x) sqrt(mu({x})); two representatives define the same class
  /// iff these coincide.
  std::map<Rational, Surd> coordinates() const;
  bool isZero() const { return phi_.empty(); }

 private:
  DiscreteMeasure mu_;
  std::map<Rational, Surd> phi_;
};

bool sameClass(const SquareDensityVector& v, const SquareDensityVector& w);

/// int phi psi sqrt(dmu/dlambda) sqrt(dnu/dlambda) dlambda with lambda = mu + nu.
Surd innerProduct(const SquareDensityVector& v, const SquareDensityVector& w);
/// The same with an explicit dominating measure lambda.
Surd innerProduct(const SquareDensityVector& v, const SquareDensityVector& w, const DiscreteMeasure& lambda);

/// (phi sqrt(dmu/dlambda) + psi sqrt(dnu/dlambda), lambda), lambda = mu + nu.
SquareDensityVector addClasses(const SquareDensityVector& v, const SquareDensityVector& w);
SquareDensityVector negate(const SquareDensityVector& v);
/// (phi / sqrt(c), c mu): another representative of the same class.
SquareDensityVector rescaleRepresentative(const SquareDensityVector& v, const Rational& c);

/// S_i v = (phi o sigma, mu o tau_i^{-1}).
SquareDensityVector inducedIsometry(const AffineSystem1D& system, int i, const SquareDensityVector& v);
/// S_i^* v = (phi o tau_i, mu restricted to the half-open cell tau_i(M), pulled back by sigma).
SquareDensityVector inducedCoisometry(const AffineSystem1D& system, int i, const SquareDensityVector& v);
/// sum_i S_i S_i^* v.
SquareDensityVector rangeProjectionSum(const AffineSystem1D& system, const SquareDensityVector& v);

/// d(mu o tau_i^{-1}) / d(lambda o tau_i^{-1}) = (dmu/dlambda) o sigma on the support of lambda o tau_i^{-1}.
bool radonNikodymRuleHolds(const AffineSystem1D& system, int i, const DiscreteMeasure& mu,
                           const DiscreteMeasure& lambda);

enum class Continuity { Equivalent, MuLlNu, NuLlMu, Singular, None };

const char* toString(Continuity c);

/// Classification by support inclusion.
Continuity absoluteContinuityLattice(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
/// The same classification read off from H(mu) and H(nu) through inner products alone.
Continuity subspaceRelation(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// A finite probability space with random variables given by their values at each sample point.
struct SampleSpace {
  std::vector<Rational> weights;
};

/// x -> E(f o Y1 | Y2 = x) on the range of Y2.
std::map<Rational, Rational> conditionalExpectation(const SampleSpace& omega, const std::vector<Rational>& y1,
                                                    const std::vector<Rational>& y2,
                                                    const std::map<Rational, Rational>& f);

/// (<T2^* T1 f, g>_{L^2(mu_2)}, <T1 f, T2 g>_{L^2(P)}) with mu_2 = P o Y2^{-1}.
std::pair<Rational, Rational> adjointFactorization(const SampleSpace& omega, const std::vector<Rational>& y1,
                                                   const std::vector<Rational>& y2,
                                                   const std::map<Rational, Rational>& f,
                                                   const std::map<Rational, Rational>& g);

/// Level-k path space with product weights, and the encoding w -> tau_w(anchor).
std::pair<SampleSpace, std::vector<Rational>> levelEncoding(const AffineSystem1D& system, int k);
/// The first letter of each level-k word, as a random variable.
std::vector<Rational> firstLetter(const Alphabet& alphabet, int k);

/// Atoms at the level-k cell anchors tau_w(anchor) with weights p_w.
DiscreteMeasure cylinderApproximation(const AffineSystem1D& system, int k);

/// A right-continuous step function F(x) = sum_{t <= x} jump(t), F(0) = 0 normalization.
struct BVStep {
  std::map<Rational, Rational> jumps;

  Rational operator()(const Rational& x) const;
  Rational totalVariation() const;
  BVStep scaled(const Rational& c) const;
};

/// The distribution function of mu.
BVStep distributionFunction(const DiscreteMeasure& mu);

/// dF/dmu on the support of mu. A jump off the support throws std::domain_error.
std::map<Rational, Rational> gradientMu(const BVStep& f, const DiscreteMeasure& mu);

/// sum_{t <= x} grad(t) mu({t}).
Rational reconstruct(const std::map<Rational, Rational>& gradient, const DiscreteMeasure& mu, const Rational& x);

/// (int phi dF, <phi, grad_mu F>_{L^2(mu)}).
std::pair<Rational, Rational> gradientAdjointPair(const BVStep& f, const DiscreteMeasure& mu,
                                                  const std::map<Rational, Rational>& phi);

}  // namespace ifsrep
