#include "ifsrep/boundary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ifsrep {

namespace {

constexpr double kReproduceRadius = 0.9;

/// z^{4^n} for n < count.
std::vector<Complex> quarticPowers(Complex z, int count) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  Complex p = z;
  for (int n = 0; n < count; ++n) {
    out.push_back(p);
    p *= p;
    p *= p;
  }
  return out;
}

/// z^lambda for lambda in Lambda_d, from the base-4 digits.
std::vector<Complex> spectralPowers(Complex z, const std::vector<long long>& lambda, int d) {
  const auto base = quarticPowers(z, d);
  std::vector<Complex> out;
  out.reserve(lambda.size());
  for (long long l : lambda) {
    Complex v(1.0, 0.0);
    for (int n = 0; l != 0; ++n, l >>= 2) {
      if (l & 1) v *= base[static_cast<std::size_t>(n)];
    }
    out.push_back(v);
  }
  return out;
}

IFSMeasure cantorMeasure(const char* name) { return IFSMeasure(standardSystem(name)); }

void requireInnerDisk(Complex z, const char* what) {
  if (std::abs(z) > kReproduceRadius) {
    throw std::domain_error(std::string(what) + " needs |z| <= 0.9");
  }
}

}  // namespace

Complex unitCircle(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

std::vector<long long> spectrumExpand(int d) {
  if (d < 0 || d > 16) throw std::invalid_argument("spectrum depth must lie in [0, 16]");
  std::vector<long long> out;
  out.reserve(std::size_t{1} << d);
  for (long long mask = 0; mask < (1LL << d); ++mask) {
    long long lambda = 0;
    for (int n = 0; n < d; ++n) {
      if (mask & (1LL << n)) lambda += 1LL << (2 * n);
    }
    out.push_back(lambda);
  }
  // Binary digits read in base 4 preserve the order of the masks.
  return out;
}

int k4FactorsFor(double radius, double tol, double cap) {
  if (radius > cap) throw std::domain_error("|z| too close to 1 for the configured disk cap");
  if (radius == 0.0) return 0;
  double partial = 1.0;
  double q = radius;
  for (int k = 0; k <= 64; ++k) {
    if (partial * std::expm1(q / (1.0 - radius)) < tol) return k;
    partial *= 1.0 + q;
    q = q * q * q * q;
  }
  throw std::domain_error("|z| too close to 1 for the requested tolerance");
}

KernelValue k4Eval(Complex z, double x, int factors, double cap) {
  const double radius = std::abs(z);
  if (radius > cap) throw std::domain_error("|z| too close to 1 for the configured disk cap");
  if (factors < 0) throw std::invalid_argument("factor count must be non-negative");
  KernelValue out{{1.0, 0.0}, factors, 0.0};
  Complex u = std::conj(unitCircle(x)) * z;
  double q = radius;
  for (int n = 0; n < factors; ++n) {
    out.value *= 1.0 + u;
    u *= u;
    u *= u;
    q = q * q * q * q;
  }
  out.tailBound = radius == 0.0 ? 0.0 : std::abs(out.value) * std::expm1(q / (1.0 - radius));
  return out;
}

KernelValue k4EvalTol(Complex z, double x, double tol, double cap) {
  return k4Eval(z, x, k4FactorsFor(std::abs(z), tol, cap), cap);
}

Complex k4Series(Complex z, double x, int d) {
  const auto lambda = spectrumExpand(d);
  const auto powers = spectralPowers(z * std::conj(unitCircle(x)), lambda, d);
  Complex total;
  for (const auto& p : powers) total += p;
  return total;
}

Complex kComplex(Complex z, Complex w, int factors) {
  Complex value(1.0, 0.0);
  Complex u = z * std::conj(w);
  for (int n = 0; n < factors; ++n) {
    value *= 1.0 + u;
    u *= u;
    u *= u;
  }
  return value;
}

IFSMeasure quarterCantor() { return cantorMeasure("cantor4"); }
IFSMeasure thirdCantor() { return cantorMeasure("cantor3"); }

Complex FourierCache::operator()(long long n) {
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  const Complex v = fourierFixed(measure_, Rational(n), factors_).value;
  cache_.emplace(n, v);
  return v;
}

double spectralOrthogonality(int d, int factors) {
  const auto lambda = spectrumExpand(d);
  FourierCache cache(factors);
  double worst = 0.0;
  for (long long a : lambda) {
    for (long long b : lambda) {
      if (a != b) worst = std::max(worst, std::abs(cache(a - b)));
    }
  }
  return worst;
}

ReproduceReport reproduceCheck(Complex z, Complex w, int d, FourierCache& cache) {
  requireInnerDisk(z, "reproduceCheck");
  requireInnerDisk(w, "reproduceCheck");
  const auto lambda = spectrumExpand(d);
  const auto zp = spectralPowers(z, lambda, d);
  const auto wp = spectralPowers(std::conj(w), lambda, d);
  ReproduceReport out;
  // int K(z,x) conj(K(w,x)) dmu = sum z^a conj(w)^b int e(-a x) e(b x) dmu.
  for (std::size_t a = 0; a < lambda.size(); ++a) {
    Complex row;
    for (std::size_t b = 0; b < lambda.size(); ++b) row += wp[b] * cache(lambda[b] - lambda[a]);
    out.pairing += zp[a] * row;
  }
  out.target = kComplex(z, w);
  out.residual = std::abs(out.pairing - out.target);
  return out;
}

ReproduceReport reproduceCheck(Complex z, Complex w, int d) {
  FourierCache cache;
  return reproduceCheck(z, w, d, cache);
}

double kernelGramMinEigenvalue(const std::vector<Complex>& points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) throw std::invalid_argument("empty point set");
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(i, j) = kComplex(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Complex spectralEval(const SpectralPolynomial& f, double x) {
  Complex total;
  for (const auto& [lambda, c] : f) total += c * unitCircle(static_cast<double>(lambda) * x);
  return total;
}

Complex kOperatorApply(const SpectralPolynomial& f, Complex z) {
  Complex total;
  for (const auto& [lambda, c] : f) {
    if (lambda < 0) throw std::invalid_argument("negative frequency in a Hardy-space polynomial");
    total += c * std::pow(z, static_cast<double>(lambda));
  }
  return total;
}

RecoveryReport boundaryRecovery(const SpectralPolynomial& f, double x, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("radius must lie in (0, 1)");
  RecoveryReport out;
  out.residual = std::abs(kOperatorApply(f, r * unitCircle(x)) - spectralEval(f, x));
  for (const auto& [lambda, c] : f) out.bound += std::abs(c) * (1.0 - std::pow(r, static_cast<double>(lambda)));
  // Rounding in the two evaluations is far below the termwise bound except
  // for constant f, where both sides are zero up to a few ulps.
  out.pass = out.residual <= out.bound + 1e-12;
  return out;
}

double tMuIsometryDefect(const SpectralPolynomial& h, FourierCache& cache) {
  Complex norm;
  double coefficients = 0.0;
  for (const auto& [a, ca] : h) {
    coefficients += std::norm(ca);
    for (const auto& [b, cb] : h) norm += ca * std::conj(cb) * cache(a - b);
  }
  return std::abs(norm - coefficients);
}

HerglotzInner::HerglotzInner(int order) : order_(order) {
  if (order < 64) throw std::invalid_argument("Herglotz order must be at least 64");
  const IFSMeasure mu = thirdCantor();
  coefficients_.reserve(static_cast<std::size_t>(order));
  for (int n = 1; n <= order; ++n) {
    const double fejer = 1.0 - static_cast<double>(n) / (order + 1);
    coefficients_.push_back(2.0 * fejer * std::conj(fourier(mu, Rational(n), 1e-14).value));
  }
}

Complex HerglotzInner::h(Complex z) const {
  Complex total;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) total = (total + *it) * z;
  return 1.0 + total;
}

Complex HerglotzInner::b(Complex z) const {
  const Complex value = h(z);
  if (value.real() <= 0.0) throw std::domain_error("Re H <= 0: Herglotz order too small");
  return (value - 1.0) / (value + 1.0);
}

Complex HerglotzInner::boundaryB(double x) const { return b((1.0 - 1.0 / order_) * unitCircle(x)); }

K3Value k3Eval(const HerglotzInner& b, Complex z, double x) {
  requireInnerDisk(z, "k3Eval");
  const Complex ex = unitCircle(x);
  const Complex bz = b.b(z);
  const Complex denominator = 1.0 - z * std::conj(ex);
  auto at = [&](double r) { return (1.0 - bz * std::conj(b.b(r * ex))) / denominator; };
  K3Value out;
  out.value = at(1.0 - 1.0 / b.order());
  out.errorEstimate = std::abs(out.value - at(1.0 - 2.0 / b.order()));
  return out;
}

double k3SquareNorm(const HerglotzInner& b, Complex z, int level) {
  return integrateLevelK(thirdCantor(), [&](double x) { return std::norm(k3Eval(b, z, x).value); }, level);
}

K3Reproduction k3Reproduction(const HerglotzInner& b, Complex z, Complex w, int level) {
  requireInnerDisk(w, "k3Reproduction");
  K3Reproduction out;
  out.pairing = integrateLevelKComplex(
      thirdCantor(), [&](double x) { return k3Eval(b, z, x).value * std::conj(k3Eval(b, w, x).value); }, level);
  out.candidate = (1.0 - b.b(z) * std::conj(b.b(w))) / (1.0 - z * std::conj(w));
  out.residual = std::abs(out.pairing - out.candidate);
  return out;
}

}  // namespace ifsrep
