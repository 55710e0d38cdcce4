#include "ifsrep/exact.hpp"

#include <cmath>
#include <numbers>

namespace ifsrep {

Rational parseRational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed.empty()) throw std::invalid_argument("empty rational literal");

  auto parseInt = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("malformed rational: " + std::string(text));
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed rational: " + std::string(text));
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("malformed rational: " + std::string(text));
    }
    return Integer(std::string(s.front() == '+' ? s.substr(1) : s));
  };

  auto slash = trimmed.find('/');
  if (slash == std::string_view::npos) return Rational(parseInt(trimmed));
  Integer num = parseInt(trimmed.substr(0, slash));
  Integer den = parseInt(trimmed.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(num, den);
}

std::string toString(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational pow(const Rational& q, int e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("negative power of zero");
    return pow(Rational(1) / q, -e);
  }
  Rational result(1);
  Rational base = q;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Rational fractionalPart(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

bool exactSqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer rn = boost::multiprecision::sqrt(n);
  Integer rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd);
  return true;
}

std::complex<double> unitPhase(const Rational& turn) {
  Rational t = fractionalPart(turn);
  if (t == 0) return {1.0, 0.0};
  if (t == Rational(1, 4)) return {0.0, 1.0};
  if (t == Rational(1, 2)) return {-1.0, 0.0};
  if (t == Rational(3, 4)) return {0.0, -1.0};
  return unitPhase(toDouble(t));
}

std::complex<double> unitPhase(double turn) {
  double angle = 2.0 * std::numbers::pi * turn;
  return {std::cos(angle), std::sin(angle)};
}

Eigen::Index exactRank(RationalMatrix m) {
  Eigen::Index rank = 0;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(rank));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (m(r, col) == 0) continue;
      Rational factor = m(r, col) / m(rank, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= factor * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace ifsrep
