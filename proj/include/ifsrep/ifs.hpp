#pragma once

// Contractive iterated function systems: exact affine systems in one and two
// dimensions, the Julia inverse-branch system, the encoding map Y and the
// sampling routines that draw from the IFS measure.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "ifsrep/exact.hpp"
#include "ifsrep/symbolic.hpp"

namespace ifsrep {

template <int Dim>
using RationalPoint = Eigen::Matrix<Rational, Dim, 1>;

/// x -> A x + t with rational entries.
template <int Dim>
struct AffineMap {
  using Point = RationalPoint<Dim>;
  using Linear = Eigen::Matrix<Rational, Dim, Dim>;

  Linear a;
  Point t;

  Point apply(const Point& x) const { return a * x + t; }
  /// Max-row-sum operator norm, the Lipschitz constant in the max-norm.
  Rational norm() const;
  /// this o other
  AffineMap compose(const AffineMap& other) const { return {a * other.a, a * other.t + t}; }
  static AffineMap identity();
};

/// x -> ratio * x + offset.
AffineMap<1> affine1D(const Rational& ratio, const Rational& offset);

/// Branch z -> sign * sqrt(z - c) of the inverse of z -> z^2 + c.
struct ComplexSqrtBranch {
  int sign = 1;
  std::complex<double> c;

  std::complex<double> apply(std::complex<double> z) const { return double(sign) * std::sqrt(z - c); }
};

using ContractionMap = std::variant<AffineMap<1>, AffineMap<2>, ComplexSqrtBranch>;

/// Axis-aligned box; an interval when Dim == 1.
template <int Dim>
struct Box {
  RationalPoint<Dim> lo;
  RationalPoint<Dim> hi;

  /// Diameter in the max-norm.
  Rational diameter() const;
  RationalPoint<Dim> midpoint() const { return (lo + hi) / Rational(2); }
  bool contains(const RationalPoint<Dim>& x) const;
};

/// How the left inverse sigma of the branches is evaluated.
/// With a multiplier m, sigma(x) = m * x mod 1 componentwise (the table
/// systems on the unit interval and square). Without one, sigma is the
/// piecewise inverse of the branch whose half-open image cell holds x.
struct ShiftRule {
  std::optional<Rational> multiplier;
};

template <int Dim>
class AffineSystem {
 public:
  using Point = RationalPoint<Dim>;

  /// Throws std::invalid_argument for a non-contractive map, a map that does
  /// not send the domain into itself, or a size mismatch with the weights.
  AffineSystem(std::vector<AffineMap<Dim>> maps, WeightVector weights, Box<Dim> domain, ShiftRule shift);

  int size() const { return static_cast<int>(maps_.size()); }
  Alphabet alphabet() const { return Alphabet(size()); }
  const std::vector<AffineMap<Dim>>& maps() const { return maps_; }
  const AffineMap<Dim>& map(int i) const { return maps_.at(static_cast<std::size_t>(i)); }
  const WeightVector& weights() const { return weights_; }
  const Box<Dim>& domain() const { return domain_; }
  const ShiftRule& shiftRule() const { return shift_; }

  /// Largest contraction ratio over the maps, in the max-norm.
  Rational maxRatio() const;
  Point anchor() const { return domain_.midpoint(); }

  /// tau_f = tau_{f_1} o ... o tau_{f_k} as a single affine map.
  AffineMap<Dim> wordMap(const Word& f) const;
  Point applyWord(const Word& f, const Point& x) const { return wordMap(f).apply(x); }
  /// tau_f(M).
  Box<Dim> cell(const Word& f) const;
  /// sigma(x).
  Point shift(const Point& x) const;

 private:
  std::vector<AffineMap<Dim>> maps_;
  WeightVector weights_;
  Box<Dim> domain_;
  ShiftRule shift_;
};

using AffineSystem1D = AffineSystem<1>;
using AffineSystem2D = AffineSystem<2>;

/// z -> +-sqrt(z - c) with sigma(z) = z^2 + c.
struct JuliaSystem {
  std::complex<double> c;

  std::vector<ComplexSqrtBranch> branches() const { return {{+1, c}, {-1, c}}; }
  std::complex<double> shift(std::complex<double> z) const { return z * z + c; }
};

struct IFSSystem {
  std::string name;
  std::variant<AffineSystem1D, AffineSystem2D, JuliaSystem> kind;

  int size() const;
  /// Throw std::invalid_argument("non-affine system") for other kinds.
  const AffineSystem1D& affine1D() const;
  const AffineSystem2D& affine2D() const;
  bool isAffine() const { return !std::holds_alternative<JuliaSystem>(kind); }
};

/// dyadic, cantor3, cantor4, sierpinski, or julia (which needs c != 0).
IFSSystem standardSystem(std::string_view name, std::complex<double> c = {});

/// A ball in the max-norm holding tau_{omega|k}(M) and Y(omega).
template <int Dim>
struct EncodedBall {
  RationalPoint<Dim> center;
  Rational radius;

  bool containsBall(const EncodedBall& inner) const;
};

/// center = tau_{omega|k}(anchor), radius = r^k diam(M) / (2 (1 - r)).
/// The radius keeps successive balls nested and is at most r^k diam(M)
/// whenever r <= 1/2.
template <int Dim>
EncodedBall<Dim> encodePoint(const AffineSystem<Dim>& system, const InfWordSpec& w, int k);

/// Y(omega) exactly, for eventually periodic omega: tau_pre applied to the
/// fixed point of tau_per.
template <int Dim>
RationalPoint<Dim> encodeExact(const AffineSystem<Dim>& system, const InfWordSpec& w);

struct IntertwineReport {
  bool pass = false;
  /// |tau_b(center_k(omega)) - center_k(b omega)| in the max-norm.
  Rational residual;
  /// r^k diam(M)
  Rational bound;
  /// tau_b(Y(omega)) == Y(b omega) in exact arithmetic.
  bool exactAgreement = false;
};

template <int Dim>
IntertwineReport intertwineCheck(const AffineSystem<Dim>& system, int b, const InfWordSpec& w, int k);

struct PointSet {
  enum class Kind { Real1D, Real2D, Complex };
  Kind kind = Kind::Real1D;
  /// One row per point; one column for 1D sets, two otherwise (re, im for complex sets).
  Eigen::MatrixXd points;

  Eigen::Index size() const { return points.rows(); }
};

struct SamplingOptions {
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  std::size_t burnin = 128;
  /// Each worker draws count/workers points from its own stream seeded by
  /// (seed, worker index); chunks are concatenated in worker order.
  unsigned workers = 1;
};

PointSet chaosGame(const IFSSystem& system, const SamplingOptions& options);
PointSet juliaInverseOrbit(std::complex<double> c, const SamplingOptions& options);

/// Seeds worker `stream` of a splittable family rooted at `seed`.
std::uint64_t splitSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ifsrep
