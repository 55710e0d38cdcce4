#pragma once

// Exact scalar types shared by every module, plus the Eigen glue that lets
// them sit inside dense and sparse Eigen containers.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

namespace ifsrep {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parseRational(std::string_view text);

/// "num/den" in lowest terms, or "num" when the denominator is 1.
std::string toString(const Rational& q);

inline double toDouble(const Rational& q) { return q.convert_to<double>(); }

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// q^e for a possibly negative exponent.
Rational pow(const Rational& q, int e);

/// Fractional part in [0, 1).
Rational fractionalPart(const Rational& q);

/// The exact square root of q when q is the square of a rational.
bool exactSqrt(const Rational& q, Rational& root);

/// e^{i 2 pi turn}; exact for quarter turns.
std::complex<double> unitPhase(const Rational& turn);
std::complex<double> unitPhase(double turn);

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Rank by Gaussian elimination in exact arithmetic.
Eigen::Index exactRank(RationalMatrix m);

}  // namespace ifsrep

namespace Eigen {

template <>
struct NumTraits<ifsrep::Rational> : GenericNumTraits<ifsrep::Rational> {
  using Real = ifsrep::Rational;
  using NonInteger = ifsrep::Rational;
  using Literal = ifsrep::Rational;
  using Nested = ifsrep::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 60
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
