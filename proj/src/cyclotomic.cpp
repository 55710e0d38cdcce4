#include "ifsrep/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace ifsrep {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient of a by monic-or-not b, assuming exact divisibility.
Poly divideExact(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  Poly q(a.size() - db, Rational(0));
  for (std::size_t i = a.size(); i-- > db;) {
    Rational c = a[i] / b.back();
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

// Reduce p (in powers of zeta_n) modulo zeta^n = 1 and then modulo Phi_n.
Poly reduce(const Poly& p, int n) {
  Poly folded(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) folded[i % static_cast<std::size_t>(n)] += p[i];
  const Poly& phi = cyclotomicPolynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = folded.size(); i-- > deg;) {
    Rational c = folded[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) folded[i - deg + j] -= c * phi[j];
  }
  folded.resize(deg);
  return folded;
}

}  // namespace

const std::vector<Rational>& cyclotomicPolynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, Poly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Poly p(static_cast<std::size_t>(n) + 1, Rational(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divideExact(p, cyclotomicPolynomial(d));
  }
  trim(p);
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(const Rational& value) : order_(1), coeffs_{value} {}

Cyclotomic::Cyclotomic(int order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
  normalize();
}

Cyclotomic Cyclotomic::rootOfUnity(const Rational& turn) {
  Rational t = fractionalPart(turn);
  int order = denominator(t).convert_to<int>();
  int power = numerator(t).convert_to<int>();
  Poly p(static_cast<std::size_t>(power) + 1, Rational(0));
  p[static_cast<std::size_t>(power)] = 1;
  return Cyclotomic(order, std::move(p));
}

void Cyclotomic::normalize() {
  coeffs_ = reduce(coeffs_, order_);
  bool rational = true;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) {
      rational = false;
      break;
    }
  }
  if (rational) {
    Rational c = coeffs_.empty() ? Rational(0) : coeffs_[0];
    order_ = 1;
    coeffs_ = {c};
  }
}

Cyclotomic Cyclotomic::liftedTo(int order) const {
  if (order == order_) return *this;
  const int step = order / order_;
  Poly p(static_cast<std::size_t>(order), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * static_cast<std::size_t>(step)] = coeffs_[i];
  return Cyclotomic(order, std::move(p));
}

bool Cyclotomic::isZero() const { return order_ == 1 && coeffs_[0] == 0; }

bool Cyclotomic::isRational() const { return order_ == 1; }

Rational Cyclotomic::toRational() const {
  if (!isRational()) throw std::domain_error("cyclotomic value is not rational");
  return coeffs_[0];
}

std::complex<double> Cyclotomic::toComplex() const {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    sum += toDouble(coeffs_[i]) * unitPhase(Rational(static_cast<long>(i), order_));
  }
  return sum;
}

Cyclotomic Cyclotomic::conj() const {
  if (order_ == 1) return *this;
  Poly p(static_cast<std::size_t>(order_), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::size_t j = (static_cast<std::size_t>(order_) - i) % static_cast<std::size_t>(order_);
    p[j] += coeffs_[i];
  }
  return Cyclotomic(order_, std::move(p));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  if (order_ == 1 && other.order_ == 1) {
    coeffs_[0] += other.coeffs_[0];
    return *this;
  }
  const int order = std::lcm(order_, other.order_);
  Cyclotomic a = liftedTo(order);
  Cyclotomic b = other.liftedTo(order);
  Poly p(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) p[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) p[i] += b.coeffs_[i];
  *this = Cyclotomic(order, std::move(p));
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  Cyclotomic negated = other;
  for (auto& c : negated.coeffs_) c = -c;
  return *this += negated;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  if (order_ == 1 && other.order_ == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  if (other.order_ == 1) {
    for (auto& c : coeffs_) c *= other.coeffs_[0];
    normalize();
    return *this;
  }
  if (order_ == 1) {
    Rational s = coeffs_[0];
    *this = other;
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }
  const int order = std::lcm(order_, other.order_);
  Cyclotomic a = liftedTo(order);
  Cyclotomic b = other.liftedTo(order);
  Poly p(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  *this = Cyclotomic(order, std::move(p));
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& divisor) {
  if (divisor == 0) throw std::domain_error("division by zero");
  for (auto& c : coeffs_) c /= divisor;
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  return (a - b).isZero();
}

}  // namespace ifsrep
