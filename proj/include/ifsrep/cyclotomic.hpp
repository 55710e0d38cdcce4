#pragma once

#include <complex>
#include <vector>

#include "ifsrep/exact.hpp"

namespace ifsrep {

/// An element of the cyclotomic field Q(zeta_n), zeta_n = e^{i 2 pi / n}.
///
/// Stored in the power basis 1, zeta, ..., zeta^{phi(n)-1}, reduced modulo the
/// n-th cyclotomic polynomial, so equality is coefficientwise. Values of
/// different orders are lifted to the lcm of the orders before combining.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(Rational(0)) {}
  Cyclotomic(int value) : Cyclotomic(Rational(value)) {}
  Cyclotomic(const Rational& value);

  /// e^{i 2 pi turn} for a rational turn.
  static Cyclotomic rootOfUnity(const Rational& turn);

  int order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool isZero() const;
  bool isRational() const;
  /// Throws std::domain_error unless isRational().
  Rational toRational() const;
  std::complex<double> toComplex() const;

  Cyclotomic conj() const;

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic& operator/=(const Rational& divisor);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& b) { return a /= b; }
  friend Cyclotomic operator-(const Cyclotomic& a) { return Cyclotomic(0) - a; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  Cyclotomic(int order, std::vector<Rational> coeffs);
  Cyclotomic liftedTo(int order) const;
  void normalize();

  int order_ = 1;
  std::vector<Rational> coeffs_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<Rational>& cyclotomicPolynomial(int n);

inline Cyclotomic conj(const Cyclotomic& z) { return z.conj(); }

}  // namespace ifsrep

namespace Eigen {

template <>
struct NumTraits<ifsrep::Cyclotomic> : GenericNumTraits<ifsrep::Cyclotomic> {
  using Real = ifsrep::Cyclotomic;
  using NonInteger = ifsrep::Cyclotomic;
  using Literal = ifsrep::Cyclotomic;
  using Nested = ifsrep::Cyclotomic;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 80,
    MulCost = 200
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
