#pragma once

// The self-similar measure mu = sum_i p_i mu o tau_i^{-1} of a one-dimensional
// affine IFS: exact moments and CDF, Fourier transform as a truncated
// infinite product, level-k quadrature and the boundary limit of
// integrals of f o tau_{omega|k}.

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "ifsrep/ifs.hpp"

namespace ifsrep {

class IFSMeasure {
 public:
  explicit IFSMeasure(AffineSystem1D system);
  /// Throws std::invalid_argument("non-affine system ...") for planar or Julia systems.
  explicit IFSMeasure(const IFSSystem& system);

  const AffineSystem1D& system() const { return system_; }
  const WeightVector& weights() const { return system_.weights(); }

  /// m_0, ..., m_n exactly.
  std::vector<Rational> moments(int n) const;
  Rational moment(int n) const { return moments(n).back(); }

  /// mu([lo, x]), exact. Clamps to 0 below the domain and 1 above it.
  Rational cdf(const Rational& x) const;

  /// mu(tau_f(M)) = p_f.
  Rational cellMass(const Word& f) const { return weights().product(f); }

  /// Common contraction ratio; throws std::domain_error("unequal ratios") otherwise.
  Rational commonRatio() const;

 private:
  AffineSystem1D system_;
};

struct FourierValue {
  std::complex<double> value;
  int factors = 0;
  /// Bound on |truncated product - full product|.
  double tailBound = 0.0;
};

/// mu^(xi) = int e(xi x) dmu(x) = prod_{k>=0} sum_i p_i e(xi t_i r^k).
/// The factor count is the smallest one whose tail bound is below `tol`.
FourierValue fourier(const IFSMeasure& m, const Rational& xi, double tol = 1e-12);
/// The same product cut after exactly `factors` factors.
FourierValue fourierFixed(const IFSMeasure& m, const Rational& xi, int factors);

/// sum_{|w|=k} p_w f(tau_w(anchor)), summed in lexicographic word order.
double integrateLevelK(const IFSMeasure& m, const std::function<double(double)>& f, int k);
std::complex<double> integrateLevelKComplex(const IFSMeasure& m, const std::function<std::complex<double>(double)>& f,
                                     int k);

struct BoundaryLimit {
  double value = 0.0;
  double target = 0.0;
  double residual = 0.0;
};

/// value = int f o tau_{omega|k} dmu by level-`quadratureDepth` quadrature,
/// target = f(Y(omega)).
BoundaryLimit boundaryLimit(const IFSMeasure& m, const std::function<double(double)>& f, const InfWordSpec& omega,
                            int k, int quadratureDepth = 14);

struct ExactBoundaryLimit {
  Rational value;
  Rational target;
  Rational residual;
};

/// The same for a polynomial f = sum_j c_j x^j, evaluated exactly through the moments.
ExactBoundaryLimit boundaryLimitExact(const IFSMeasure& m, const std::vector<Rational>& coefficients,
                                      const InfWordSpec& omega, int k);

/// Evaluates sum_j c_j x^j.
Rational evaluatePolynomial(const std::vector<Rational>& coefficients, const Rational& x);

}  // namespace ifsrep
