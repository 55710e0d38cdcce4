#include "ifsrep/density.hpp"

#include <set>

namespace ifsrep {

namespace {

void requireHalfOpenDomain(const AffineSystem1D& system, const DiscreteMeasure& mu) {
  const Rational& lo = system.domain().lo(0);
  const Rational& hi = system.domain().hi(0);
  for (const auto& [x, w] : mu.atoms()) {
    if (x < lo || x >= hi) {
      throw std::invalid_argument("atom " + toString(x) + " outside the half-open domain [" + toString(lo) + ", " +
                                  toString(hi) + ")");
    }
  }
}

bool inHalfOpenCell(const AffineSystem1D& system, int i, const Rational& y) {
  const Box<1> cell = system.cell(Word{i});
  return y >= cell.lo(0) && y < cell.hi(0);
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(const std::vector<std::pair<Rational, Rational>>& atoms) {
  for (const auto& [x, w] : atoms) {
    if (w <= 0) throw std::invalid_argument("atom weights must be positive");
    atoms_[x] += w;
  }
}

Rational DiscreteMeasure::weight(const Rational& x) const {
  auto it = atoms_.find(x);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational DiscreteMeasure::total() const {
  Rational sum(0);
  for (const auto& [x, w] : atoms_) sum += w;
  return sum;
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  DiscreteMeasure out = a;
  for (const auto& [x, w] : b.atoms_) out.atoms_[x] += w;
  return out;
}

DiscreteMeasure DiscreteMeasure::scaled(const Rational& c) const {
  if (c <= 0) throw std::invalid_argument("measure scale must be positive");
  DiscreteMeasure out;
  for (const auto& [x, w] : atoms_) out.atoms_[x] = w * c;
  return out;
}

DiscreteMeasure DiscreteMeasure::pushforward(const AffineMap<1>& map) const {
  DiscreteMeasure out;
  for (const auto& [x, w] : atoms_) {
    RationalPoint<1> p;
    p(0) = x;
    out.atoms_[map.apply(p)(0)] += w;
  }
  return out;
}

std::map<Rational, Rational> radonNikodym(const DiscreteMeasure& mu, const DiscreteMeasure& lambda) {
  for (const auto& [x, w] : mu.atoms()) {
    if (!lambda.contains(x)) throw std::domain_error("not absolutely continuous: atom " + toString(x));
  }
  std::map<Rational, Rational> out;
  for (const auto& [x, w] : lambda.atoms()) out[x] = mu.weight(x) / w;
  return out;
}

SquareDensityVector::SquareDensityVector(const DiscreteMeasure& mu, const std::map<Rational, Surd>& phi) {
  std::vector<std::pair<Rational, Rational>> kept;
  for (const auto& [x, value] : phi) {
    if (!mu.contains(x)) throw std::invalid_argument("value given at " + toString(x) + " outside the carrier");
    if (value.isZero()) continue;
    phi_[x] = value;
    kept.emplace_back(x, mu.weight(x));
  }
  mu_ = DiscreteMeasure(kept);
}

std::map<Rational, Surd> SquareDensityVector::coordinates() const {
  std::map<Rational, Surd> out;
  for (const auto& [x, value] : phi_) out[x] = value * Surd::sqrt(mu_.weight(x));
  return out;
}

bool sameClass(const SquareDensityVector& v, const SquareDensityVector& w) { return v.coordinates() == w.coordinates(); }

Surd innerProduct(const SquareDensityVector& v, const SquareDensityVector& w) {
  return innerProduct(v, w, v.carrier() + w.carrier());
}

Surd innerProduct(const SquareDensityVector& v, const SquareDensityVector& w, const DiscreteMeasure& lambda) {
  const auto dv = radonNikodym(v.carrier(), lambda);
  const auto dw = radonNikodym(w.carrier(), lambda);
  Surd total;
  for (const auto& [x, phi] : v.values()) {
    auto it = w.values().find(x);
    if (it == w.values().end()) continue;
    total += phi * it->second * Surd::sqrt(dv.at(x)) * Surd::sqrt(dw.at(x)) * Surd(lambda.weight(x));
  }
  return total;
}

SquareDensityVector addClasses(const SquareDensityVector& v, const SquareDensityVector& w) {
  const DiscreteMeasure lambda = v.carrier() + w.carrier();
  const auto dv = radonNikodym(v.carrier(), lambda);
  const auto dw = radonNikodym(w.carrier(), lambda);
  std::map<Rational, Surd> values;
  for (const auto& [x, phi] : v.values()) values[x] += phi * Surd::sqrt(dv.at(x));
  for (const auto& [x, psi] : w.values()) values[x] += psi * Surd::sqrt(dw.at(x));
  return SquareDensityVector(lambda, values);
}

SquareDensityVector negate(const SquareDensityVector& v) {
  std::map<Rational, Surd> values;
  for (const auto& [x, phi] : v.values()) values[x] = -phi;
  return SquareDensityVector(v.carrier(), values);
}

SquareDensityVector rescaleRepresentative(const SquareDensityVector& v, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("rescaling constant must be positive");
  const Surd factor = Surd::sqrt(Rational(1) / c);
  std::map<Rational, Surd> values;
  for (const auto& [x, phi] : v.values()) values[x] = phi * factor;
  return SquareDensityVector(v.carrier().scaled(c), values);
}

SquareDensityVector inducedIsometry(const AffineSystem1D& system, int i, const SquareDensityVector& v) {
  requireHalfOpenDomain(system, v.carrier());
  const auto& map = system.map(i);
  const DiscreteMeasure pushed = v.carrier().pushforward(map);
  std::map<Rational, Surd> values;
  for (const auto& [y, w] : pushed.atoms()) {
    RationalPoint<1> p;
    p(0) = y;
    const Rational x = system.shift(p)(0);
    auto it = v.values().find(x);
    if (it == v.values().end()) throw std::logic_error("sigma is not a left inverse of tau_i at " + toString(y));
    values[y] = it->second;
  }
  return SquareDensityVector(pushed, values);
}

SquareDensityVector inducedCoisometry(const AffineSystem1D& system, int i, const SquareDensityVector& v) {
  requireHalfOpenDomain(system, v.carrier());
  const auto& map = system.map(i);
  std::vector<std::pair<Rational, Rational>> atoms;
  std::map<Rational, Surd> values;
  for (const auto& [y, phi] : v.values()) {
    if (!inHalfOpenCell(system, i, y)) continue;
    const Rational x = (y - map.t(0)) / map.a(0, 0);
    atoms.emplace_back(x, v.carrier().weight(y));
    values[x] = phi;
  }
  return SquareDensityVector(DiscreteMeasure(atoms), values);
}

SquareDensityVector rangeProjectionSum(const AffineSystem1D& system, const SquareDensityVector& v) {
  SquareDensityVector total;
  for (int i = 0; i < system.size(); ++i) {
    total = addClasses(total, inducedIsometry(system, i, inducedCoisometry(system, i, v)));
  }
  return total;
}

bool radonNikodymRuleHolds(const AffineSystem1D& system, int i, const DiscreteMeasure& mu,
                           const DiscreteMeasure& lambda) {
  requireHalfOpenDomain(system, lambda);
  const auto before = radonNikodym(mu, lambda);
  const auto after = radonNikodym(mu.pushforward(system.map(i)), lambda.pushforward(system.map(i)));
  for (const auto& [y, ratio] : after) {
    RationalPoint<1> p;
    p(0) = y;
    auto it = before.find(system.shift(p)(0));
    if (it == before.end() || it->second != ratio) return false;
  }
  return true;
}

const char* toString(Continuity c) {
  switch (c) {
    case Continuity::Equivalent:
      return "equivalent";
    case Continuity::MuLlNu:
      return "mu<<nu";
    case Continuity::NuLlMu:
      return "nu<<mu";
    case Continuity::Singular:
      return "singular";
    case Continuity::None:
      return "none";
  }
  return "none";
}

namespace {

Continuity classify(bool mu_in_nu, bool nu_in_mu, bool orthogonal) {
  if (mu_in_nu && nu_in_mu) return Continuity::Equivalent;
  if (mu_in_nu) return Continuity::MuLlNu;
  if (nu_in_mu) return Continuity::NuLlMu;
  if (orthogonal) return Continuity::Singular;
  return Continuity::None;
}

/// Unit vectors delta_x / sqrt(mu({x})) sqrt(dmu), one per atom.
std::vector<SquareDensityVector> atomBasis(const DiscreteMeasure& mu) {
  std::vector<SquareDensityVector> basis;
  for (const auto& [x, w] : mu.atoms()) {
    basis.emplace_back(DiscreteMeasure({{x, w}}), std::map<Rational, Surd>{{x, Surd::sqrt(Rational(1) / w)}});
  }
  return basis;
}

/// Every vector of `a` has full norm inside span(b); also reports whether all pairings vanish.
bool containedIn(const std::vector<SquareDensityVector>& a, const std::vector<SquareDensityVector>& b, bool& orthogonal) {
  bool contained = true;
  for (const auto& u : a) {
    Surd projected;
    for (const auto& e : b) {
      Surd c = innerProduct(u, e);
      if (!c.isZero()) orthogonal = false;
      projected += c * c;
    }
    if (projected != innerProduct(u, u)) contained = false;
  }
  return contained;
}

}  // namespace

Continuity absoluteContinuityLattice(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  bool mu_in_nu = true;
  bool nu_in_mu = true;
  bool disjoint = true;
  for (const auto& [x, w] : mu.atoms()) {
    if (nu.contains(x)) {
      disjoint = false;
    } else {
      mu_in_nu = false;
    }
  }
  for (const auto& [x, w] : nu.atoms()) {
    if (!mu.contains(x)) nu_in_mu = false;
  }
  return classify(mu_in_nu, nu_in_mu, disjoint);
}

Continuity subspaceRelation(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const auto a = atomBasis(mu);
  const auto b = atomBasis(nu);
  bool orthogonal = true;
  const bool mu_in_nu = containedIn(a, b, orthogonal);
  const bool nu_in_mu = containedIn(b, a, orthogonal);
  return classify(mu_in_nu, nu_in_mu, orthogonal);
}

namespace {

void checkSampleSpace(const SampleSpace& omega, const std::vector<Rational>& y1, const std::vector<Rational>& y2) {
  if (y1.size() != omega.weights.size() || y2.size() != omega.weights.size()) {
    throw std::invalid_argument("random variables must have one value per sample point");
  }
  for (const auto& w : omega.weights) {
    if (w <= 0) throw std::invalid_argument("sample weights must be positive");
  }
}

const Rational& lookup(const std::map<Rational, Rational>& f, const Rational& x) {
  auto it = f.find(x);
  if (it == f.end()) throw std::invalid_argument("function table has no value at " + toString(x));
  return it->second;
}

}  // namespace

std::map<Rational, Rational> conditionalExpectation(const SampleSpace& omega, const std::vector<Rational>& y1,
                                                    const std::vector<Rational>& y2,
                                                    const std::map<Rational, Rational>& f) {
  checkSampleSpace(omega, y1, y2);
  std::map<Rational, Rational> mass;
  std::map<Rational, Rational> sum;
  for (std::size_t s = 0; s < omega.weights.size(); ++s) {
    mass[y2[s]] += omega.weights[s];
    sum[y2[s]] += omega.weights[s] * lookup(f, y1[s]);
  }
  std::map<Rational, Rational> out;
  for (const auto& [x, m] : mass) {
    if (m == 0) throw std::domain_error("fiber of Y2 with zero weight");
    out[x] = sum[x] / m;
  }
  return out;
}

std::pair<Rational, Rational> adjointFactorization(const SampleSpace& omega, const std::vector<Rational>& y1,
                                                   const std::vector<Rational>& y2,
                                                   const std::map<Rational, Rational>& f,
                                                   const std::map<Rational, Rational>& g) {
  const auto conditional = conditionalExpectation(omega, y1, y2, f);
  std::map<Rational, Rational> mu2;
  Rational rhs(0);
  for (std::size_t s = 0; s < omega.weights.size(); ++s) {
    mu2[y2[s]] += omega.weights[s];
    rhs += omega.weights[s] * lookup(f, y1[s]) * lookup(g, y2[s]);
  }
  Rational lhs(0);
  for (const auto& [x, m] : mu2) lhs += m * conditional.at(x) * lookup(g, x);
  return {lhs, rhs};
}

std::pair<SampleSpace, std::vector<Rational>> levelEncoding(const AffineSystem1D& system, int k) {
  SampleSpace omega;
  std::vector<Rational> values;
  for (const auto& w : allWords(system.alphabet(), k)) {
    omega.weights.push_back(system.weights().product(w));
    values.push_back(system.applyWord(w, system.anchor())(0));
  }
  return {omega, values};
}

std::vector<Rational> firstLetter(const Alphabet& alphabet, int k) {
  if (k < 1) throw std::invalid_argument("first letter needs k >= 1");
  std::vector<Rational> values;
  for (const auto& w : allWords(alphabet, k)) values.emplace_back(w[0]);
  return values;
}

DiscreteMeasure cylinderApproximation(const AffineSystem1D& system, int k) {
  auto [omega, values] = levelEncoding(system, k);
  std::vector<std::pair<Rational, Rational>> atoms;
  for (std::size_t s = 0; s < values.size(); ++s) atoms.emplace_back(values[s], omega.weights[s]);
  return DiscreteMeasure(atoms);
}

Rational BVStep::operator()(const Rational& x) const {
  Rational total(0);
  for (auto it = jumps.begin(); it != jumps.end() && it->first <= x; ++it) total += it->second;
  return total;
}

Rational BVStep::totalVariation() const {
  Rational total(0);
  for (const auto& [t, j] : jumps) total += j < 0 ? Rational(-j) : j;
  return total;
}

BVStep BVStep::scaled(const Rational& c) const {
  BVStep out;
  for (const auto& [t, j] : jumps) out.jumps[t] = j * c;
  return out;
}

BVStep distributionFunction(const DiscreteMeasure& mu) {
  BVStep out;
  for (const auto& [x, w] : mu.atoms()) out.jumps[x] = w;
  return out;
}

std::map<Rational, Rational> gradientMu(const BVStep& f, const DiscreteMeasure& mu) {
  for (const auto& [t, j] : f.jumps) {
    if (j != 0 && !mu.contains(t)) {
      throw std::domain_error("not absolutely continuous: F jumps at " + toString(t) + " outside the support");
    }
  }
  std::map<Rational, Rational> out;
  for (const auto& [x, w] : mu.atoms()) {
    auto it = f.jumps.find(x);
    out[x] = it == f.jumps.end() ? Rational(0) : it->second / w;
  }
  return out;
}

Rational reconstruct(const std::map<Rational, Rational>& gradient, const DiscreteMeasure& mu, const Rational& x) {
  Rational total(0);
  for (const auto& [t, w] : mu.atoms()) {
    if (t > x) break;
    auto it = gradient.find(t);
    if (it != gradient.end()) total += it->second * w;
  }
  return total;
}

std::pair<Rational, Rational> gradientAdjointPair(const BVStep& f, const DiscreteMeasure& mu,
                                                  const std::map<Rational, Rational>& phi) {
  const auto gradient = gradientMu(f, mu);
  Rational lhs(0);
  for (const auto& [t, j] : f.jumps) {
    auto it = phi.find(t);
    if (it != phi.end()) lhs += it->second * j;
  }
  Rational rhs(0);
  for (const auto& [x, w] : mu.atoms()) {
    auto it = phi.find(x);
    if (it != phi.end()) rhs += it->second * gradient.at(x) * w;
  }
  return {lhs, rhs};
}

}  // namespace ifsrep
