#pragma once

// Rectangular operators between truncation levels V_k of the cylinder bases.
// Rows and columns are indexed by words in lexicographic order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "ifsrep/cyclotomic.hpp"
#include "ifsrep/exact.hpp"
#include "ifsrep/symbolic.hpp"

namespace ifsrep {

inline constexpr std::size_t kDefaultLevelCap = 65536;

template <typename Scalar>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational fromRational(const Rational& q) { return q; }
  /// Only the phases +1 and -1 are rational.
  static Rational fromTurn(const Rational& turn) {
    Rational t = fractionalPart(turn);
    if (t == 0) return Rational(1);
    if (t == Rational(1, 2)) return Rational(-1);
    throw std::domain_error("phase e(" + toString(turn) + ") is not rational; use a cyclotomic or complex model");
  }
  static Rational conj(const Rational& q) { return q; }
  static bool isZero(const Rational& q) { return q == 0; }
  static double magnitude(const Rational& q) { return std::abs(toDouble(q)); }
  static std::complex<double> toComplex(const Rational& q) { return {toDouble(q), 0.0}; }
  static std::optional<Rational> sqrtOf(const Rational& q) {
    Rational root;
    if (exactSqrt(q, root)) return root;
    return std::nullopt;
  }
  static std::string str(const Rational& q) { return toString(q); }
};

template <>
struct ScalarOps<Cyclotomic> {
  static constexpr bool exact = true;
  static Cyclotomic fromRational(const Rational& q) { return Cyclotomic(q); }
  static Cyclotomic fromTurn(const Rational& turn) { return Cyclotomic::rootOfUnity(turn); }
  static Cyclotomic conj(const Cyclotomic& z) { return z.conj(); }
  static bool isZero(const Cyclotomic& z) { return z.isZero(); }
  static double magnitude(const Cyclotomic& z) { return std::abs(z.toComplex()); }
  static std::complex<double> toComplex(const Cyclotomic& z) { return z.toComplex(); }
  static std::optional<Cyclotomic> sqrtOf(const Rational& q) {
    Rational root;
    if (exactSqrt(q, root)) return Cyclotomic(root);
    return std::nullopt;
  }
  /// "c" for rationals, "c@j/n" for c e(j/n), otherwise the power-basis coefficients.
  static std::string str(const Cyclotomic& z) {
    if (z.isRational()) return toString(z.toRational());
    const int n = z.order();
    for (int j = 1; j < n; ++j) {
      Cyclotomic unrotated = z * Cyclotomic::rootOfUnity(Rational(-j, n));
      if (unrotated.isRational()) return toString(unrotated.toRational()) + "@" + toString(Rational(j, n));
    }
    std::ostringstream out;
    out << "zeta" << n << "[";
    for (std::size_t i = 0; i < z.coefficients().size(); ++i) {
      out << (i ? "," : "") << toString(z.coefficients()[i]);
    }
    out << "]";
    return out.str();
  }
};

template <>
struct ScalarOps<std::complex<double>> {
  using C = std::complex<double>;
  static constexpr bool exact = false;
  static C fromRational(const Rational& q) { return {toDouble(q), 0.0}; }
  static C fromTurn(const Rational& turn) { return unitPhase(turn); }
  static C conj(const C& z) { return std::conj(z); }
  static bool isZero(const C& z) { return z == C{}; }
  static double magnitude(const C& z) { return std::abs(z); }
  static C toComplex(const C& z) { return z; }
  static std::optional<C> sqrtOf(const Rational& q) { return C{std::sqrt(toDouble(q)), 0.0}; }
  static std::string str(const C& z) {
    std::ostringstream out;
    out.precision(17);
    out << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return out.str();
  }
};

/// N^k, or std::length_error above the cap.
inline Eigen::Index levelSize(const Alphabet& alphabet, int level, std::size_t cap = kDefaultLevelCap) {
  return static_cast<Eigen::Index>(levelDimension(alphabet, level, cap));
}

/// A linear map V_source -> V_target stored as an N^target x N^source sparse matrix.
template <typename Scalar>
class TruncatedOperator {
 public:
  using Matrix = Eigen::SparseMatrix<Scalar>;
  using Ops = ScalarOps<Scalar>;

  TruncatedOperator(Alphabet alphabet, int source, int target, Matrix m)
      : alphabet_(alphabet), source_(source), target_(target), m_(std::move(m)) {
    if (source < 0 || target < 0) throw std::invalid_argument("levels must be non-negative");
    if (m_.rows() != levelSize(alphabet_, target_, SIZE_MAX) || m_.cols() != levelSize(alphabet_, source_, SIZE_MAX)) {
      throw std::invalid_argument("matrix shape does not match the levels");
    }
  }

  static TruncatedOperator zero(Alphabet alphabet, int source, int target) {
    Matrix m(levelSize(alphabet, target, SIZE_MAX), levelSize(alphabet, source, SIZE_MAX));
    return {alphabet, source, target, std::move(m)};
  }

  static TruncatedOperator identity(Alphabet alphabet, int level) {
    std::vector<Scalar> d(static_cast<std::size_t>(levelSize(alphabet, level, SIZE_MAX)), Scalar(1));
    return diagonal(alphabet, level, d);
  }

  static TruncatedOperator diagonal(Alphabet alphabet, int level, const std::vector<Scalar>& d) {
    const Eigen::Index n = levelSize(alphabet, level, SIZE_MAX);
    if (static_cast<Eigen::Index>(d.size()) != n) throw std::invalid_argument("diagonal has the wrong length");
    std::vector<Eigen::Triplet<Scalar>> triplets;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!Ops::isZero(d[static_cast<std::size_t>(i)])) triplets.emplace_back(i, i, d[static_cast<std::size_t>(i)]);
    }
    Matrix m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return {alphabet, level, level, std::move(m)};
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int sourceLevel() const { return source_; }
  int targetLevel() const { return target_; }
  const Matrix& matrix() const { return m_; }
  bool isSquare() const { return source_ == target_; }

  Scalar entry(Eigen::Index row, Eigen::Index col) const { return m_.coeff(row, col); }

  /// Conjugate transpose; swaps the levels.
  TruncatedOperator adjoint() const {
    Matrix t = m_.transpose();
    for (Eigen::Index c = 0; c < t.outerSize(); ++c) {
      for (typename Matrix::InnerIterator it(t, c); it; ++it) it.valueRef() = Ops::conj(it.value());
    }
    return {alphabet_, target_, source_, std::move(t)};
  }

  friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.source_ != b.target_ || !(a.alphabet_ == b.alphabet_)) {
      throw std::invalid_argument("level mismatch in operator product: V_" + std::to_string(b.target_) +
                                  " fed into an operator on V_" + std::to_string(a.source_));
    }
    Matrix m = a.m_ * b.m_;
    return TruncatedOperator(a.alphabet_, b.source_, a.target_, std::move(m)).pruned();
  }

  friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
    a.requireSameShape(b);
    Matrix m = a.m_ + b.m_;
    return TruncatedOperator(a.alphabet_, a.source_, a.target_, std::move(m)).pruned();
  }

  friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
    a.requireSameShape(b);
    Matrix m = a.m_ - b.m_;
    return TruncatedOperator(a.alphabet_, a.source_, a.target_, std::move(m)).pruned();
  }

  friend TruncatedOperator operator*(const Scalar& s, const TruncatedOperator& a) {
    Matrix m = a.m_;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
      for (typename Matrix::InnerIterator it(m, c); it; ++it) it.valueRef() = s * it.value();
    }
    return TruncatedOperator(a.alphabet_, a.source_, a.target_, std::move(m)).pruned();
  }

  /// Drops stored entries that are exactly zero.
  TruncatedOperator pruned() const {
    std::vector<Eigen::Triplet<Scalar>> triplets;
    forEachNonzero([&](Eigen::Index r, Eigen::Index c, const Scalar& v) { triplets.emplace_back(r, c, v); });
    Matrix m(m_.rows(), m_.cols());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return {alphabet_, source_, target_, std::move(m)};
  }

  template <typename Fn>
  void forEachNonzero(Fn&& fn) const {
    for (Eigen::Index c = 0; c < m_.outerSize(); ++c) {
      for (typename Matrix::InnerIterator it(m_, c); it; ++it) {
        if (!Ops::isZero(it.value())) fn(it.row(), it.col(), it.value());
      }
    }
  }

  bool isZero() const {
    bool zero = true;
    forEachNonzero([&](Eigen::Index, Eigen::Index, const Scalar&) { zero = false; });
    return zero;
  }

  bool isDiagonal() const {
    if (!isSquare()) return false;
    bool diag = true;
    forEachNonzero([&](Eigen::Index r, Eigen::Index c, const Scalar&) { diag = diag && r == c; });
    return diag;
  }

  std::vector<Scalar> diagonalEntries() const {
    std::vector<Scalar> d(static_cast<std::size_t>(std::min(m_.rows(), m_.cols())), Scalar(0));
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = m_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    }
    return d;
  }

  Scalar trace() const {
    Scalar t(0);
    for (const auto& v : diagonalEntries()) t += v;
    return t;
  }

  /// Largest entry modulus; 0 exactly for the zero operator.
  double maxAbs() const {
    double best = 0.0;
    forEachNonzero([&](Eigen::Index, Eigen::Index, const Scalar& v) { best = std::max(best, Ops::magnitude(v)); });
    return best;
  }

  /// T (x) I_N : V_{source+1} -> V_{target+1}, the same operator acting on
  /// the first letters and ignoring the last.
  TruncatedOperator lift() const {
    const Eigen::Index n = alphabet_.n;
    std::vector<Eigen::Triplet<Scalar>> triplets;
    forEachNonzero([&](Eigen::Index r, Eigen::Index c, const Scalar& v) {
      for (Eigen::Index j = 0; j < n; ++j) triplets.emplace_back(r * n + j, c * n + j, v);
    });
    Matrix m(m_.rows() * n, m_.cols() * n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return {alphabet_, source_ + 1, target_ + 1, std::move(m)};
  }

  /// Lifts until both levels are raised by `steps`.
  TruncatedOperator liftBy(int steps) const {
    TruncatedOperator out = *this;
    for (int s = 0; s < steps; ++s) out = out.lift();
    return out;
  }

  bool sameShape(const TruncatedOperator& other) const {
    return alphabet_ == other.alphabet_ && source_ == other.source_ && target_ == other.target_;
  }

 private:
  void requireSameShape(const TruncatedOperator& other) const {
    if (!sameShape(other)) throw std::invalid_argument("level mismatch in operator sum");
  }

  Alphabet alphabet_;
  int source_;
  int target_;
  Matrix m_;
};

/// Max entry modulus of a - b; level mismatch throws.
template <typename Scalar>
double maxDeviation(const TruncatedOperator<Scalar>& a, const TruncatedOperator<Scalar>& b) {
  return (a - b).maxAbs();
}

/// Exact equality for exact scalars; within `tol` for floating ones.
template <typename Scalar>
bool agrees(const TruncatedOperator<Scalar>& a, const TruncatedOperator<Scalar>& b, double tol = 1e-12) {
  if constexpr (ScalarOps<Scalar>::exact) {
    return (a - b).isZero();
  } else {
    return maxDeviation(a, b) <= tol;
  }
}

/// P = P* = P^2.
template <typename Scalar>
bool isProjection(const TruncatedOperator<Scalar>& p, double tol = 1e-12) {
  return p.isSquare() && agrees(p, p.adjoint(), tol) && agrees(p * p, p, tol);
}

/// P <= Q for projections on the same level: QP = P, equivalently |Ph| <= |Qh| for all h.
template <typename Scalar>
bool projectionLeq(const TruncatedOperator<Scalar>& p, const TruncatedOperator<Scalar>& q, double tol = 1e-12) {
  return agrees(q * p, p, tol);
}

}  // namespace ifsrep
