#include "ifsrep/measure.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace ifsrep {

namespace {

constexpr std::size_t kCdfChainCap = 1u << 20;
constexpr std::size_t kQuadratureCap = std::size_t(1) << 26;

Rational binomial(int n, int k) {
  Rational c(1);
  for (int i = 1; i <= k; ++i) c = c * Rational(n - k + i) / Rational(i);
  return c;
}

/// Coefficients of f(a x + b) given those of f.
std::vector<Rational> composeAffine(const std::vector<Rational>& c, const Rational& a, const Rational& b) {
  std::vector<Rational> out(c.size(), Rational(0));
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    const int n = static_cast<int>(j);
    for (int i = 0; i <= n; ++i) {
      out[static_cast<std::size_t>(i)] += c[j] * binomial(n, i) * pow(a, i) * pow(b, n - i);
    }
  }
  return out;
}

}  // namespace

IFSMeasure::IFSMeasure(AffineSystem1D system) : system_(std::move(system)) {}

IFSMeasure::IFSMeasure(const IFSSystem& system) : system_(system.affine1D()) {}

std::vector<Rational> IFSMeasure::moments(int n) const {
  if (n < 0) throw std::invalid_argument("moment degree must be non-negative");
  std::vector<Rational> m(static_cast<std::size_t>(n) + 1, Rational(0));
  m[0] = 1;
  for (int d = 1; d <= n; ++d) {
    Rational rhs(0);
    Rational diagonal(1);
    for (int i = 0; i < system_.size(); ++i) {
      const Rational& p = system_.weights()[static_cast<std::size_t>(i)];
      const Rational& r = system_.map(i).a(0, 0);
      const Rational& t = system_.map(i).t(0);
      diagonal -= p * pow(r, d);
      for (int j = 0; j < d; ++j) rhs += p * binomial(d, j) * pow(r, j) * pow(t, d - j) * m[static_cast<std::size_t>(j)];
    }
    m[static_cast<std::size_t>(d)] = rhs / diagonal;
  }
  return m;
}

Rational IFSMeasure::cdf(const Rational& x) const {
  const Rational lo = system_.domain().lo(0);
  const Rational hi = system_.domain().hi(0);
  if (x < lo) return Rational(0);
  if (x >= hi) return Rational(1);
  for (const auto& map : system_.maps()) {
    if (map.a(0, 0) <= 0) throw std::domain_error("cdf needs orientation-preserving maps");
  }

  // F(y) = constant + coefficient * F(child); the half-open images are
  // disjoint, so each state has at most one child and the descent is a chain
  // that either stops or becomes periodic.
  struct State {
    Rational y;
    Rational constant;
    Rational coefficient;
    std::optional<Rational> child;
  };
  std::vector<State> chain;
  std::map<Rational, std::size_t> seen;
  Rational y = x;
  std::optional<std::size_t> cycle_start;
  while (true) {
    if (auto it = seen.find(y); it != seen.end()) {
      cycle_start = it->second;
      break;
    }
    if (chain.size() >= kCdfChainCap) throw std::length_error("cdf descent did not terminate");
    seen.emplace(y, chain.size());
    State s{y, Rational(0), Rational(0), std::nullopt};
    for (int i = 0; i < system_.size(); ++i) {
      const auto& map = system_.map(i);
      const Rational& p = system_.weights()[static_cast<std::size_t>(i)];
      const Rational image_lo = map.a(0, 0) * lo + map.t(0);
      const Rational image_hi = map.a(0, 0) * hi + map.t(0);
      if (y >= image_hi) {
        s.constant += p;
      } else if (y >= image_lo) {
        s.coefficient = p;
        s.child = (y - map.t(0)) / map.a(0, 0);
      }
    }
    chain.push_back(s);
    if (!s.child) break;
    y = *s.child;
  }

  const std::size_t m = chain.size();
  std::vector<Rational> value(m + 1, Rational(0));
  if (cycle_start) {
    Rational accumulated(0);
    Rational factor(1);
    for (std::size_t s = *cycle_start; s < m; ++s) {
      accumulated += factor * chain[s].constant;
      factor *= chain[s].coefficient;
    }
    value[m] = accumulated / (Rational(1) - factor);
  }
  // value[m] is F at the cycle start, or unused when the chain stopped.
  for (std::size_t s = m; s-- > 0;) {
    value[s] = chain[s].constant + (chain[s].child ? chain[s].coefficient * value[s + 1] : Rational(0));
  }
  return value[0];
}

Rational IFSMeasure::commonRatio() const {
  const Rational r = system_.map(0).a(0, 0);
  for (const auto& map : system_.maps()) {
    if (map.a(0, 0) != r) throw std::domain_error("unequal ratios: the product formula needs a common ratio");
  }
  return r;
}

namespace {

std::complex<double> fourierFactor(const IFSMeasure& m, const Rational& xi, const Rational& scale) {
  std::complex<double> factor{0.0, 0.0};
  const auto& system = m.system();
  for (int i = 0; i < system.size(); ++i) {
    Rational turn = fractionalPart(xi * system.map(i).t(0) * scale);
    factor += toDouble(system.weights()[static_cast<std::size_t>(i)]) * unitPhase(turn);
  }
  return factor;
}

double fourierTail(const IFSMeasure& m, const Rational& xi, int factors) {
  const auto& system = m.system();
  double max_offset = 0.0;
  for (const auto& map : system.maps()) max_offset = std::max(max_offset, std::abs(toDouble(map.t(0))));
  const double r = std::abs(toDouble(m.commonRatio()));
  const double s = 2.0 * std::numbers::pi * std::abs(toDouble(xi)) * max_offset * std::pow(r, factors) / (1.0 - r);
  return std::expm1(s);
}

}  // namespace

FourierValue fourierFixed(const IFSMeasure& m, const Rational& xi, int factors) {
  if (factors < 0) throw std::invalid_argument("factor count must be non-negative");
  const Rational r = m.commonRatio();
  FourierValue out{{1.0, 0.0}, factors, 0.0};
  Rational scale(1);
  for (int k = 0; k < factors; ++k) {
    out.value *= fourierFactor(m, xi, scale);
    scale *= r;
  }
  out.tailBound = fourierTail(m, xi, factors);
  return out;
}

FourierValue fourier(const IFSMeasure& m, const Rational& xi, double tol) {
  m.commonRatio();
  int factors = 0;
  while (fourierTail(m, xi, factors) >= tol) {
    if (++factors > 10000) throw std::domain_error("fourier product does not reach the requested tolerance");
  }
  return fourierFixed(m, xi, factors);
}

namespace {

template <typename Value, typename Fn>
Value integrateImpl(const IFSMeasure& m, const Fn& f, int k) {
  const auto& system = m.system();
  if (k < 0) throw std::invalid_argument("quadrature depth must be non-negative");
  levelDimension(system.alphabet(), k, kQuadratureCap);
  std::vector<double> ratio;
  std::vector<double> offset;
  std::vector<double> weight;
  for (int i = 0; i < system.size(); ++i) {
    ratio.push_back(toDouble(system.map(i).a(0, 0)));
    offset.push_back(toDouble(system.map(i).t(0)));
    weight.push_back(toDouble(system.weights()[static_cast<std::size_t>(i)]));
  }
  const double anchor = toDouble(system.anchor()(0));
  Value total{};
  // Depth-first over words in lexicographic order.
  auto visit = [&](auto&& self, int depth, double a, double b, double w) -> void {
    if (depth == k) {
      total += w * f(a * anchor + b);
      return;
    }
    for (std::size_t i = 0; i < ratio.size(); ++i) self(self, depth + 1, a * ratio[i], a * offset[i] + b, w * weight[i]);
  };
  visit(visit, 0, 1.0, 0.0, 1.0);
  return total;
}

}  // namespace

double integrateLevelK(const IFSMeasure& m, const std::function<double(double)>& f, int k) {
  return integrateImpl<double>(m, f, k);
}

std::complex<double> integrateLevelKComplex(const IFSMeasure& m, const std::function<std::complex<double>(double)>& f,
                                     int k) {
  return integrateImpl<std::complex<double>>(m, f, k);
}

BoundaryLimit boundaryLimit(const IFSMeasure& m, const std::function<double(double)>& f, const InfWordSpec& omega,
                            int k, int quadratureDepth) {
  if (m.system().maxRatio() >= 1) throw std::domain_error("non-tight system");
  if (k < 0) throw std::invalid_argument("depth must be non-negative");
  omega.validate(m.system().alphabet());
  const AffineMap<1> word = m.system().wordMap(omega.prefix(static_cast<std::size_t>(k)));
  const double a = toDouble(word.a(0, 0));
  const double b = toDouble(word.t(0));
  BoundaryLimit out;
  out.value = integrateLevelK(m, [&](double x) { return f(a * x + b); }, quadratureDepth);
  out.target = f(toDouble(encodeExact(m.system(), omega)(0)));
  out.residual = std::abs(out.value - out.target);
  return out;
}

Rational evaluatePolynomial(const std::vector<Rational>& coefficients, const Rational& x) {
  Rational value(0);
  for (std::size_t j = coefficients.size(); j-- > 0;) value = value * x + coefficients[j];
  return value;
}

ExactBoundaryLimit boundaryLimitExact(const IFSMeasure& m, const std::vector<Rational>& coefficients,
                                      const InfWordSpec& omega, int k) {
  if (m.system().maxRatio() >= 1) throw std::domain_error("non-tight system");
  if (k < 0) throw std::invalid_argument("depth must be non-negative");
  omega.validate(m.system().alphabet());
  const AffineMap<1> word = m.system().wordMap(omega.prefix(static_cast<std::size_t>(k)));
  const auto composed = composeAffine(coefficients, word.a(0, 0), word.t(0));
  const auto moments = m.moments(static_cast<int>(coefficients.empty() ? 0 : coefficients.size() - 1));
  ExactBoundaryLimit out;
  out.value = 0;
  for (std::size_t j = 0; j < composed.size(); ++j) out.value += composed[j] * moments[j];
  out.target = evaluatePolynomial(coefficients, encodeExact(m.system(), omega)(0));
  out.residual = out.value - out.target;
  if (out.residual < 0) out.residual = -out.residual;
  return out;
}

}  // namespace ifsrep
