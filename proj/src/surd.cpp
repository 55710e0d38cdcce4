#include "ifsrep/surd.hpp"

#include <cmath>
#include <sstream>

namespace ifsrep {

void squarefreeDecompose(const Integer& n, Integer& square_root_part, Integer& squarefree_part) {
  if (n <= 0) throw std::domain_error("squarefree decomposition needs a positive integer");
  Integer rest = n;
  square_root_part = 1;
  squarefree_part = 1;
  for (unsigned long p = 2; p < 1000000UL; p = (p == 2 ? 3 : p + 2)) {
    Integer pp = Integer(p) * p;
    if (pp > rest) break;
    int multiplicity = 0;
    while (rest % p == 0) {
      rest /= p;
      ++multiplicity;
    }
    for (int i = 0; i < multiplicity / 2; ++i) square_root_part *= p;
    if (multiplicity % 2 == 1) squarefree_part *= p;
  }
  Integer r = boost::multiprecision::sqrt(rest);
  if (r * r == rest) {
    square_root_part *= r;
  } else {
    squarefree_part *= rest;
  }
}

Surd::Surd(const Rational& value) {
  if (value != 0) terms_.emplace(Integer(1), value);
}

Surd Surd::sqrt(const Rational& q) {
  if (q < 0) throw std::domain_error("square root of a negative rational");
  Surd result;
  if (q == 0) return result;
  // sqrt(a/b) = sqrt(a*b) / b
  Integer a = numerator(q);
  Integer b = denominator(q);
  Integer outside;
  Integer inside;
  squarefreeDecompose(a * b, outside, inside);
  result.terms_.emplace(inside, Rational(outside, b));
  return result;
}

bool Surd::isRational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational Surd::toRational() const {
  if (!isRational()) throw std::domain_error("surd value is irrational: " + str());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double Surd::toDouble() const {
  double sum = 0.0;
  for (const auto& [radicand, coeff] : terms_) {
    sum += ifsrep::toDouble(coeff) * std::sqrt(radicand.convert_to<double>());
  }
  return sum;
}

std::string Surd::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [radicand, coeff] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << toString(coeff);
    if (radicand != 1) out << "*sqrt(" << radicand.str() << ")";
  }
  return out.str();
}

void Surd::addTerm(const Integer& radicand, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(radicand, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Surd& Surd::operator+=(const Surd& other) {
  for (const auto& [radicand, coeff] : other.terms_) addTerm(radicand, coeff);
  return *this;
}

Surd& Surd::operator-=(const Surd& other) {
  for (const auto& [radicand, coeff] : other.terms_) addTerm(radicand, -coeff);
  return *this;
}

Surd& Surd::operator*=(const Surd& other) {
  Surd product;
  for (const auto& [ra, ca] : terms_) {
    for (const auto& [rb, cb] : other.terms_) {
      // For squarefree a, b with g = gcd(a, b): sqrt(a) sqrt(b) = g sqrt((a/g)(b/g)),
      // and (a/g)(b/g) is again squarefree.
      Integer g = boost::multiprecision::gcd(ra, rb);
      product.addTerm((ra / g) * (rb / g), ca * cb * Rational(g));
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

Surd& Surd::operator/=(const Rational& divisor) {
  if (divisor == 0) throw std::domain_error("division by zero");
  for (auto& [radicand, coeff] : terms_) coeff /= divisor;
  return *this;
}

}  // namespace ifsrep
