#pragma once

// Boundary kernels on the disk: the product kernel K4 of the quarter Cantor
// measure with its spectrum Lambda, the operator K on finite-spectrum
// polynomials, and the Herglotz-based kernel K3 of the middle-third measure.
//
// e(x) = exp(2 pi i x), mu^(n) = int e(n x) dmu(x).

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "ifsrep/measure.hpp"

namespace ifsrep {

using Complex = std::complex<double>;

/// e(x) = exp(2 pi i x).
Complex unitCircle(double x);

/// Lambda_d = { sum_{n<d} eps_n 4^n : eps_n in {0,1} }, sorted. 0 <= d <= 16.
std::vector<long long> spectrumExpand(int d);

struct KernelValue {
  Complex value;
  int factors = 0;
  /// Bound on |value - limit|.
  double tailBound = 0.0;
};

/// Largest |z| for which K4 is evaluated.
inline constexpr double kDefaultDiskCap = 0.95;

/// Smallest factor count whose tail bound at |z| = radius is below tol.
/// Throws std::domain_error when radius >= cap or no count up to 64 suffices.
int k4FactorsFor(double radius, double tol, double cap = kDefaultDiskCap);

/// prod_{n<K} (1 + (conj(e(x)) z)^{4^n}) with tail bound
/// |partial| (exp(|z|^{4^K} / (1 - |z|)) - 1).
KernelValue k4Eval(Complex z, double x, int factors, double cap = kDefaultDiskCap);
/// The same with the factor count chosen for `tol`.
KernelValue k4EvalTol(Complex z, double x, double tol = 1e-12, double cap = kDefaultDiskCap);

/// sum_{lambda in Lambda_d} z^lambda e(-lambda x).
Complex k4Series(Complex z, double x, int d);

/// K^C(z, w) = prod_{n<K} (1 + (z conj(w))^{4^n}).
Complex kComplex(Complex z, Complex w, int factors = 24);

/// The quarter Cantor measure with maps x/4 and x/4 + 1/2.
IFSMeasure quarterCantor();
/// The middle-third Cantor measure with maps x/3 and x/3 + 2/3.
IFSMeasure thirdCantor();

/// mu4^(n) for integers, memoized per difference.
class FourierCache {
 public:
  explicit FourierCache(int factors = 40) : measure_(quarterCantor()), factors_(factors) {}
  Complex operator()(long long n);

 private:
  IFSMeasure measure_;
  int factors_;
  std::map<long long, Complex> cache_;
};

/// max |mu4^(lambda - lambda')| over distinct pairs of Lambda_d.
double spectralOrthogonality(int d, int factors = 40);

struct ReproduceReport {
  /// <K(z,.), K(w,.)> in L^2(mu4) through the Lambda_d expansion.
  Complex pairing;
  Complex target;
  double residual = 0.0;
};

/// Needs |z|, |w| <= 0.9.
ReproduceReport reproduceCheck(Complex z, Complex w, int d, FourierCache& cache);
ReproduceReport reproduceCheck(Complex z, Complex w, int d);

/// Smallest eigenvalue of [K^C(z_i, z_j)].
double kernelGramMinEigenvalue(const std::vector<Complex>& points);

/// Coefficients c_lambda of f = sum c_lambda e(lambda .), lambda >= 0.
using SpectralPolynomial = std::map<long long, Complex>;

/// f(x).
Complex spectralEval(const SpectralPolynomial& f, double x);
/// (K f)(z) = sum c_lambda z^lambda.
Complex kOperatorApply(const SpectralPolynomial& f, Complex z);

struct RecoveryReport {
  double residual = 0.0;
  /// sum |c_lambda| (1 - r^lambda)
  double bound = 0.0;
  bool pass = false;
};

/// |(K f)(r e(x)) - f(x)| against the termwise bound.
RecoveryReport boundaryRecovery(const SpectralPolynomial& f, double x, double r);

/// | ||T_mu h||^2_{L^2(mu4)} - sum |c|^2 | for h = sum c_lambda z^lambda, computed
/// through mu4^ on coefficient differences.
double tMuIsometryDefect(const SpectralPolynomial& h, FourierCache& cache);

/// H(z) = 1 + 2 sum_{n=1}^T (1 - n/(T+1)) conj(mu3^(n)) z^n and b = (H - 1)/(H + 1).
class HerglotzInner {
 public:
  /// T >= 64.
  explicit HerglotzInner(int order);

  int order() const { return order_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  Complex h(Complex z) const;
  /// Throws std::domain_error when Re H(z) <= 0.
  Complex b(Complex z) const;
  /// b at radius 1 - 1/T along the ray through e(x).
  Complex boundaryB(double x) const;

 private:
  int order_;
  std::vector<Complex> coefficients_;
};

struct K3Value {
  Complex value;
  /// |K3 at radius 1 - 1/T - K3 at radius 1 - 2/T|; not a bound.
  double errorEstimate = 0.0;
};

/// (1 - b(z) conj(b(e(x)))) / (1 - z conj(e(x))). Needs |z| <= 0.9.
K3Value k3Eval(const HerglotzInner& b, Complex z, double x);

/// Level-k quadrature of |K3(z, .)|^2 against mu3.
double k3SquareNorm(const HerglotzInner& b, Complex z, int level);

struct K3Reproduction {
  Complex pairing;
  /// (1 - b(z) conj(b(w))) / (1 - z conj(w))
  Complex candidate;
  double residual = 0.0;
};

/// Reported only: the companion kernel of K3 is not known in closed form.
K3Reproduction k3Reproduction(const HerglotzInner& b, Complex z, Complex w, int level);

}  // namespace ifsrep
