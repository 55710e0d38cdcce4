#include "ifsrep/ifs.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace ifsrep {

namespace {

Rational absRational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

template <int Dim>
Eigen::Matrix<Rational, Dim, 1> solveLinear(const Eigen::Matrix<Rational, Dim, Dim>& m,
                                            const Eigen::Matrix<Rational, Dim, 1>& rhs) {
  if constexpr (Dim == 1) {
    if (m(0, 0) == 0) throw std::domain_error("singular affine fixed-point system");
    Eigen::Matrix<Rational, 1, 1> x;
    x(0) = rhs(0) / m(0, 0);
    return x;
  } else {
    Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (det == 0) throw std::domain_error("singular affine fixed-point system");
    Eigen::Matrix<Rational, 2, 1> x;
    x(0) = (rhs(0) * m(1, 1) - m(0, 1) * rhs(1)) / det;
    x(1) = (m(0, 0) * rhs(1) - rhs(0) * m(1, 0)) / det;
    return x;
  }
}

template <int Dim>
Rational maxNorm(const RationalPoint<Dim>& v) {
  Rational best(0);
  for (int i = 0; i < Dim; ++i) best = std::max(best, absRational(v(i)));
  return best;
}

template <int Dim>
Box<Dim> imageBox(const AffineMap<Dim>& map, const Box<Dim>& box) {
  Box<Dim> out{map.apply(box.lo), map.apply(box.lo)};
  for (int corner = 0; corner < (1 << Dim); ++corner) {
    RationalPoint<Dim> p;
    for (int i = 0; i < Dim; ++i) p(i) = (corner >> i) & 1 ? box.hi(i) : box.lo(i);
    RationalPoint<Dim> q = map.apply(p);
    for (int i = 0; i < Dim; ++i) {
      out.lo(i) = std::min(out.lo(i), q(i));
      out.hi(i) = std::max(out.hi(i), q(i));
    }
  }
  return out;
}

template <int Dim>
bool interiorsOverlap(const Box<Dim>& a, const Box<Dim>& b) {
  for (int i = 0; i < Dim; ++i) {
    if (std::min(a.hi(i), b.hi(i)) <= std::max(a.lo(i), b.lo(i))) return false;
  }
  return true;
}

// Half-open membership, closed at the outer edge of the domain.
template <int Dim>
bool inHalfOpenCell(const Box<Dim>& cell, const Box<Dim>& domain, const RationalPoint<Dim>& x) {
  for (int i = 0; i < Dim; ++i) {
    if (x(i) < cell.lo(i)) return false;
    if (x(i) > cell.hi(i)) return false;
    if (x(i) == cell.hi(i) && cell.hi(i) != domain.hi(i)) return false;
  }
  return true;
}

}  // namespace

template <int Dim>
Rational AffineMap<Dim>::norm() const {
  Rational best(0);
  for (int r = 0; r < Dim; ++r) {
    Rational row(0);
    for (int c = 0; c < Dim; ++c) row += absRational(a(r, c));
    best = std::max(best, row);
  }
  return best;
}

template <int Dim>
AffineMap<Dim> AffineMap<Dim>::identity() {
  AffineMap m;
  m.a = Linear::Identity();
  m.t = Point::Zero();
  return m;
}

AffineMap<1> affine1D(const Rational& ratio, const Rational& offset) {
  AffineMap<1> m;
  m.a(0, 0) = ratio;
  m.t(0) = offset;
  return m;
}

template <int Dim>
Rational Box<Dim>::diameter() const {
  return maxNorm<Dim>(hi - lo);
}

template <int Dim>
bool Box<Dim>::contains(const RationalPoint<Dim>& x) const {
  for (int i = 0; i < Dim; ++i) {
    if (x(i) < lo(i) || x(i) > hi(i)) return false;
  }
  return true;
}

template <int Dim>
AffineSystem<Dim>::AffineSystem(std::vector<AffineMap<Dim>> maps, WeightVector weights, Box<Dim> domain,
                                ShiftRule shift)
    : maps_(std::move(maps)), weights_(std::move(weights)), domain_(std::move(domain)), shift_(std::move(shift)) {
  if (maps_.size() < 2) throw std::invalid_argument("an IFS needs at least two maps");
  if (static_cast<int>(maps_.size()) != weights_.size()) {
    throw std::invalid_argument("number of maps and weights differ");
  }
  for (int i = 0; i < Dim; ++i) {
    if (domain_.hi(i) <= domain_.lo(i)) throw std::invalid_argument("degenerate domain");
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].norm() >= 1) {
      throw std::invalid_argument("non-contractive map " + std::to_string(i) + " (ratio " +
                                  toString(maps_[i].norm()) + ")");
    }
    Box<Dim> image = imageBox(maps_[i], domain_);
    if (!domain_.contains(image.lo) || !domain_.contains(image.hi)) {
      throw std::invalid_argument("map " + std::to_string(i) + " does not send the domain into itself");
    }
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    for (std::size_t j = i + 1; j < maps_.size(); ++j) {
      if (interiorsOverlap(imageBox(maps_[i], domain_), imageBox(maps_[j], domain_))) {
        throw std::invalid_argument("branch images " + std::to_string(i) + " and " + std::to_string(j) +
                                    " overlap in more than a boundary");
      }
    }
  }
}

template <int Dim>
Rational AffineSystem<Dim>::maxRatio() const {
  Rational best(0);
  for (const auto& m : maps_) best = std::max(best, m.norm());
  return best;
}

template <int Dim>
AffineMap<Dim> AffineSystem<Dim>::wordMap(const Word& f) const {
  AffineMap<Dim> result = AffineMap<Dim>::identity();
  for (int letter : f) {
    if (letter < 0 || letter >= size()) throw std::invalid_argument("letter outside the IFS alphabet");
    result = result.compose(maps_[static_cast<std::size_t>(letter)]);
  }
  return result;
}

template <int Dim>
Box<Dim> AffineSystem<Dim>::cell(const Word& f) const {
  return imageBox(wordMap(f), domain_);
}

template <int Dim>
typename AffineSystem<Dim>::Point AffineSystem<Dim>::shift(const Point& x) const {
  if (shift_.multiplier) {
    Point y;
    for (int i = 0; i < Dim; ++i) y(i) = fractionalPart(*shift_.multiplier * x(i));
    return y;
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (inHalfOpenCell(imageBox(maps_[i], domain_), domain_, x)) {
      return solveLinear<Dim>(maps_[i].a, x - maps_[i].t);
    }
  }
  throw std::domain_error("point lies outside every branch image");
}

template struct AffineMap<1>;
template struct AffineMap<2>;
template struct Box<1>;
template struct Box<2>;
template class AffineSystem<1>;
template class AffineSystem<2>;

int IFSSystem::size() const {
  return std::visit(
      [](const auto& s) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, JuliaSystem>) {
          return 2;
        } else {
          return s.size();
        }
      },
      kind);
}

const AffineSystem1D& IFSSystem::affine1D() const {
  if (auto* s = std::get_if<AffineSystem1D>(&kind)) return *s;
  throw std::invalid_argument("non-affine system: '" + name + "' is not a one-dimensional affine IFS");
}

const AffineSystem2D& IFSSystem::affine2D() const {
  if (auto* s = std::get_if<AffineSystem2D>(&kind)) return *s;
  throw std::invalid_argument("non-affine system: '" + name + "' is not a planar affine IFS");
}

IFSSystem standardSystem(std::string_view name, std::complex<double> c) {
  auto unitInterval = [] {
    Box<1> box;
    box.lo(0) = 0;
    box.hi(0) = 1;
    return box;
  };
  auto twoMap = [&](int scale, const Rational& second_offset) {
    std::vector<AffineMap<1>> maps{affine1D(Rational(1, scale), 0), affine1D(Rational(1, scale), second_offset)};
    return AffineSystem1D(std::move(maps), WeightVector::uniform(2), unitInterval(), ShiftRule{Rational(scale)});
  };

  if (name == "dyadic") return {"dyadic", twoMap(2, Rational(1, 2))};
  if (name == "cantor3") return {"cantor3", twoMap(3, Rational(2, 3))};
  if (name == "cantor4") return {"cantor4", twoMap(4, Rational(2, 4))};
  if (name == "sierpinski") {
    auto map = [](const Rational& tx, const Rational& ty) {
      AffineMap<2> m;
      m.a = AffineMap<2>::Linear::Identity() / Rational(2);
      m.t << tx, ty;
      return m;
    };
    Box<2> square;
    square.lo << 0, 0;
    square.hi << 1, 1;
    return {"sierpinski", AffineSystem2D({map(0, 0), map(Rational(1, 2), 0), map(0, Rational(1, 2))},
                                         WeightVector::uniform(3), square, ShiftRule{Rational(2)})};
  }
  if (name == "julia") {
    if (c == std::complex<double>{}) throw std::invalid_argument("julia system needs c != 0");
    return {"julia", JuliaSystem{c}};
  }
  throw std::invalid_argument("unknown system name: " + std::string(name));
}

template <int Dim>
bool EncodedBall<Dim>::containsBall(const EncodedBall& inner) const {
  return maxNorm<Dim>(inner.center - center) + inner.radius <= radius;
}

template <int Dim>
EncodedBall<Dim> encodePoint(const AffineSystem<Dim>& system, const InfWordSpec& w, int k) {
  if (k < 1) throw std::invalid_argument("encoding depth must be at least 1");
  w.validate(system.alphabet());
  const Rational r = system.maxRatio();
  EncodedBall<Dim> ball;
  ball.center = system.applyWord(w.prefix(static_cast<std::size_t>(k)), system.anchor());
  ball.radius = pow(r, k) * system.domain().diameter() / (Rational(2) * (Rational(1) - r));
  return ball;
}

template <int Dim>
RationalPoint<Dim> encodeExact(const AffineSystem<Dim>& system, const InfWordSpec& w) {
  w.validate(system.alphabet());
  AffineMap<Dim> cycle = system.wordMap(w.period());
  using Linear = typename AffineMap<Dim>::Linear;
  RationalPoint<Dim> fixed = solveLinear<Dim>(Linear::Identity() - cycle.a, cycle.t);
  return system.applyWord(w.preperiod(), fixed);
}

template <int Dim>
IntertwineReport intertwineCheck(const AffineSystem<Dim>& system, int b, const InfWordSpec& w, int k) {
  if (!system.alphabet().contains(b)) throw std::invalid_argument("letter outside the IFS alphabet");
  IntertwineReport report;
  const auto lhs = system.map(b).apply(encodePoint(system, w, k).center);
  const auto rhs = encodePoint(system, w.prepend(b), k).center;
  report.residual = maxNorm<Dim>(lhs - rhs);
  report.bound = pow(system.maxRatio(), k) * system.domain().diameter();
  report.pass = report.residual <= report.bound;
  report.exactAgreement = system.map(b).apply(encodeExact(system, w)) == encodeExact(system, w.prepend(b));
  return report;
}

template struct EncodedBall<1>;
template struct EncodedBall<2>;
template EncodedBall<1> encodePoint(const AffineSystem<1>&, const InfWordSpec&, int);
template EncodedBall<2> encodePoint(const AffineSystem<2>&, const InfWordSpec&, int);
template RationalPoint<1> encodeExact(const AffineSystem<1>&, const InfWordSpec&);
template RationalPoint<2> encodeExact(const AffineSystem<2>&, const InfWordSpec&);
template IntertwineReport intertwineCheck(const AffineSystem<1>&, int, const InfWordSpec&, int);
template IntertwineReport intertwineCheck(const AffineSystem<2>&, int, const InfWordSpec&, int);

std::uint64_t splitSeed(std::uint64_t seed, std::uint64_t stream) {
  // SplitMix64 finalizer over (seed, stream).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

template <typename Worker>
void runWorkers(const SamplingOptions& options, Worker&& worker) {
  if (options.count == 0) throw std::invalid_argument("sample count must be positive");
  const unsigned workers = std::max(1u, options.workers);
  const std::size_t base = options.count / workers;
  const std::size_t extra = options.count % workers;
  std::vector<std::thread> threads;
  std::size_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t chunk = base + (w < extra ? 1 : 0);
    if (workers == 1) {
      worker(w, begin, chunk);
    } else {
      threads.emplace_back([&worker, w, begin, chunk] { worker(w, begin, chunk); });
    }
    begin += chunk;
  }
  for (auto& t : threads) t.join();
}

template <int Dim>
PointSet affineChaosGame(const AffineSystem<Dim>& system, const SamplingOptions& options) {
  std::vector<Eigen::Matrix<double, Dim, Dim>> linear;
  std::vector<Eigen::Matrix<double, Dim, 1>> offset;
  std::vector<double> weights;
  for (int i = 0; i < system.size(); ++i) {
    linear.push_back(system.map(i).a.unaryExpr([](const Rational& q) { return toDouble(q); }));
    offset.push_back(system.map(i).t.unaryExpr([](const Rational& q) { return toDouble(q); }));
    weights.push_back(toDouble(system.weights()[static_cast<std::size_t>(i)]));
  }
  const Eigen::Matrix<double, Dim, 1> start = system.anchor().unaryExpr([](const Rational& q) { return toDouble(q); });

  PointSet out;
  out.kind = Dim == 1 ? PointSet::Kind::Real1D : PointSet::Kind::Real2D;
  out.points.resize(static_cast<Eigen::Index>(options.count), Dim);
  runWorkers(options, [&](unsigned worker, std::size_t begin, std::size_t chunk) {
    std::mt19937_64 rng(splitSeed(options.seed, worker));
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    Eigen::Matrix<double, Dim, 1> x = start;
    for (std::size_t step = 0; step < options.burnin + chunk; ++step) {
      int i = pick(rng);
      x = linear[static_cast<std::size_t>(i)] * x + offset[static_cast<std::size_t>(i)];
      if (step >= options.burnin) out.points.row(static_cast<Eigen::Index>(begin + step - options.burnin)) = x.transpose();
    }
  });
  return out;
}

}  // namespace

PointSet juliaInverseOrbit(std::complex<double> c, const SamplingOptions& options) {
  if (c == std::complex<double>(0.0, 0.0)) throw std::invalid_argument("julia parameter c must be nonzero");
  const JuliaSystem system{c};
  const auto branches = system.branches();
  PointSet out;
  out.kind = PointSet::Kind::Complex;
  out.points.resize(static_cast<Eigen::Index>(options.count), 2);
  runWorkers(options, [&](unsigned worker, std::size_t begin, std::size_t chunk) {
    std::mt19937_64 rng(splitSeed(options.seed, worker));
    std::bernoulli_distribution coin(0.5);
    std::complex<double> z{1.0, 0.0};
    for (std::size_t step = 0; step < options.burnin + chunk; ++step) {
      z = branches[coin(rng) ? 1 : 0].apply(z);
      if (step >= options.burnin) {
        auto row = static_cast<Eigen::Index>(begin + step - options.burnin);
        out.points(row, 0) = z.real();
        out.points(row, 1) = z.imag();
      }
    }
  });
  return out;
}

PointSet chaosGame(const IFSSystem& system, const SamplingOptions& options) {
  return std::visit(
      [&](const auto& s) -> PointSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, JuliaSystem>) {
          return juliaInverseOrbit(s.c, options);
        } else {
          return affineChaosGame(s, options);
        }
      },
      system.kind);
}

}  // namespace ifsrep
