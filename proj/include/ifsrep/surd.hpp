#pragma once

#include <map>
#include <string>

#include "ifsrep/exact.hpp"

namespace ifsrep {

/// A real number of the form sum_j c_j * sqrt(d_j) with rational c_j and
/// distinct squarefree positive integers d_j.
///
/// Square roots of distinct squarefree integers are linearly independent over
/// Q, so the reduced term map is a canonical form and equality is exact. The
/// set is closed under +, -, * and division by rationals, which is all the
/// square-density arithmetic needs.
class Surd {
 public:
  Surd() = default;
  Surd(int value) : Surd(Rational(value)) {}
  Surd(const Rational& value);

  /// sqrt(q) for q >= 0. Throws std::domain_error for negative q.
  static Surd sqrt(const Rational& q);

  const std::map<Integer, Rational>& terms() const { return terms_; }

  bool isZero() const { return terms_.empty(); }
  bool isRational() const;
  /// Throws std::domain_error unless isRational().
  Rational toRational() const;
  double toDouble() const;
  std::string str() const;

  Surd& operator+=(const Surd& other);
  Surd& operator-=(const Surd& other);
  Surd& operator*=(const Surd& other);
  Surd& operator/=(const Rational& divisor);

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Rational& b) { return a /= b; }
  friend Surd operator-(const Surd& a) { return Surd() - a; }

  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

 private:
  void addTerm(const Integer& radicand, const Rational& coeff);

  std::map<Integer, Rational> terms_;
};

/// Splits a positive integer n into s^2 * r with r squarefree.
/// Trial division covers factors below 10^6; a cofactor above that is kept
/// whole unless it is itself a perfect square.
void squarefreeDecompose(const Integer& n, Integer& square_root_part, Integer& squarefree_part);

}  // namespace ifsrep
