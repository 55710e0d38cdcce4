#include "ifsrep/symbolic.hpp"

#include <numeric>
#include <stdexcept>

namespace ifsrep {

Alphabet::Alphabet(int size) : n(size) {
  if (size < 2) throw std::invalid_argument("alphabet needs at least two letters");
}

Word Word::parse(std::string_view digits) {
  std::vector<int> letters;
  letters.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("word literal must be a digit string");
    letters.push_back(c - '0');
  }
  return Word(std::move(letters));
}

Word Word::fromIndex(std::size_t index, int length, const Alphabet& alphabet) {
  std::vector<int> letters(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(alphabet.n));
    index /= static_cast<std::size_t>(alphabet.n);
  }
  return Word(std::move(letters));
}

std::string Word::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (int letter : letters_) {
    if (letter > 9) throw std::invalid_argument("digit-string form needs letters below 10");
    out.push_back(static_cast<char>('0' + letter));
  }
  return out;
}

Word Word::prefix(std::size_t k) const {
  if (k > letters_.size()) throw std::out_of_range("prefix longer than word");
  return Word(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k)));
}

Word Word::tail() const {
  if (letters_.empty()) return {};
  return Word(std::vector<int>(letters_.begin() + 1, letters_.end()));
}

bool Word::startsWith(const Word& f) const {
  if (f.size() > size()) return false;
  return std::equal(f.begin(), f.end(), begin());
}

Word Word::concat(const Word& g) const {
  std::vector<int> letters = letters_;
  letters.insert(letters.end(), g.begin(), g.end());
  return Word(std::move(letters));
}

Word Word::prepend(int letter) const {
  std::vector<int> letters;
  letters.reserve(size() + 1);
  letters.push_back(letter);
  letters.insert(letters.end(), begin(), end());
  return Word(std::move(letters));
}

Word Word::append(int letter) const {
  std::vector<int> letters = letters_;
  letters.push_back(letter);
  return Word(std::move(letters));
}

std::size_t Word::index(const Alphabet& alphabet) const {
  std::size_t idx = 0;
  for (int letter : letters_) idx = idx * static_cast<std::size_t>(alphabet.n) + static_cast<std::size_t>(letter);
  return idx;
}

void Word::validate(const Alphabet& alphabet) const {
  for (int letter : letters_) {
    if (!alphabet.contains(letter)) {
      throw std::invalid_argument("letter " + std::to_string(letter) + " outside alphabet of size " +
                                  std::to_string(alphabet.n));
    }
  }
}

InfWordSpec::InfWordSpec(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw std::invalid_argument("period of an infinite word must be non-empty");
}

InfWordSpec InfWordSpec::parse(std::string_view text) {
  auto open = text.find('(');
  auto close = text.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close != text.size() - 1 ||
      close < open) {
    throw std::invalid_argument("infinite word literal must look like pre(per)");
  }
  return InfWordSpec(Word::parse(text.substr(0, open)), Word::parse(text.substr(open + 1, close - open - 1)));
}

std::string InfWordSpec::str() const { return pre_.str() + "(" + per_.str() + ")"; }

int InfWordSpec::letterAt(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

Word InfWordSpec::prefix(std::size_t k) const {
  std::vector<int> letters(k);
  for (std::size_t i = 0; i < k; ++i) letters[i] = letterAt(i);
  return Word(std::move(letters));
}

InfWordSpec InfWordSpec::shift() const {
  if (!pre_.empty()) return InfWordSpec(pre_.tail(), per_);
  std::vector<int> rotated(per_.begin() + 1, per_.end());
  rotated.push_back(per_[0]);
  return InfWordSpec(Word(), Word(std::move(rotated)));
}

InfWordSpec InfWordSpec::prepend(int letter) const { return InfWordSpec(pre_.prepend(letter), per_); }

bool InfWordSpec::sameExpansion(const InfWordSpec& other) const { return !commonPrefixLength(*this, other); }

void InfWordSpec::validate(const Alphabet& alphabet) const {
  pre_.validate(alphabet);
  per_.validate(alphabet);
}

std::optional<std::size_t> commonPrefixLength(const InfWordSpec& a, const InfWordSpec& b) {
  // Beyond both preperiods the pair of letters is periodic with period lcm.
  const std::size_t horizon = std::max(a.preperiod().size(), b.preperiod().size()) +
                              std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < horizon; ++i) {
    if (a.letterAt(i) != b.letterAt(i)) return i;
  }
  return std::nullopt;
}

Rational metricDN(const InfWordSpec& a, const InfWordSpec& b, const Alphabet& alphabet) {
  a.validate(alphabet);
  b.validate(alphabet);
  auto k = commonPrefixLength(a, b);
  if (!k) return Rational(0);
  return pow(Rational(alphabet.n), -static_cast<int>(*k));
}

WeightVector::WeightVector(std::vector<Rational> weights) : p(std::move(weights)) {
  if (p.size() < 2) throw std::invalid_argument("weight vector needs at least two entries");
  Rational total(0);
  for (const auto& w : p) {
    if (w <= 0) throw std::invalid_argument("weights must be positive");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("weights must sum to 1, got " + toString(total));
}

WeightVector WeightVector::uniform(int n) {
  return WeightVector(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)));
}

Rational WeightVector::product(const Word& f) const {
  Rational result(1);
  for (int letter : f) {
    if (letter < 0 || letter >= size()) throw std::invalid_argument("letter outside weight vector");
    result *= p[static_cast<std::size_t>(letter)];
  }
  return result;
}

Rational cylinderMeasure(const Cylinder& c, const WeightVector& p) { return p.product(c.base); }

std::optional<Cylinder> cylinderIntersect(const Cylinder& a, const Cylinder& b) {
  if (b.base.startsWith(a.base)) return b;
  if (a.base.startsWith(b.base)) return a;
  return std::nullopt;
}

InfWordSpec groupAdd(const InfWordSpec& x, const InfWordSpec& y, const Alphabet& alphabet) {
  const std::size_t pre = std::max(x.preperiod().size(), y.preperiod().size());
  const std::size_t per = std::lcm(x.period().size(), y.period().size());
  std::vector<int> pre_letters(pre);
  std::vector<int> per_letters(per);
  for (std::size_t i = 0; i < pre; ++i) pre_letters[i] = (x.letterAt(i) + y.letterAt(i)) % alphabet.n;
  for (std::size_t i = 0; i < per; ++i) per_letters[i] = (x.letterAt(pre + i) + y.letterAt(pre + i)) % alphabet.n;
  return InfWordSpec(Word(std::move(pre_letters)), Word(std::move(per_letters)));
}

Word groupAdd(const Word& x, const Word& y, const Alphabet& alphabet) {
  const std::size_t len = std::max(x.size(), y.size());
  std::vector<int> letters(len);
  for (std::size_t i = 0; i < len; ++i) {
    int a = i < x.size() ? x[i] : 0;
    int b = i < y.size() ? y[i] : 0;
    letters[i] = (a + b) % alphabet.n;
  }
  return Word(std::move(letters));
}

Rational dualityTurn(const InfWordSpec& x, const Word& y, const Alphabet& alphabet) {
  x.validate(alphabet);
  y.validate(alphabet);
  long sum = 0;
  for (std::size_t k = 0; k < y.size(); ++k) sum += static_cast<long>(x.letterAt(k)) * y[k];
  return fractionalPart(Rational(sum, alphabet.n));
}

std::complex<double> dualityPairing(const InfWordSpec& x, const Word& y, const Alphabet& alphabet) {
  return unitPhase(dualityTurn(x, y, alphabet));
}

Rational gaugeTurn(const InfWordSpec& x, const Word& y, const Alphabet& alphabet) {
  x.validate(alphabet);
  y.validate(alphabet);
  long sum = 0;
  for (int letter : y) sum += static_cast<long>(x.letterAt(0)) * letter;
  return fractionalPart(Rational(sum, alphabet.n));
}

std::complex<double> gaugeCharacter(const InfWordSpec& x, const Word& y, const Alphabet& alphabet) {
  return unitPhase(gaugeTurn(x, y, alphabet));
}

std::vector<Word> allWords(const Alphabet& alphabet, int k) {
  std::size_t count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<std::size_t>(alphabet.n);
  std::vector<Word> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) words.push_back(Word::fromIndex(i, k, alphabet));
  return words;
}

std::size_t levelDimension(const Alphabet& alphabet, int k, std::size_t cap) {
  if (k < 0) throw std::invalid_argument("level must be non-negative");
  std::size_t dim = 1;
  for (int i = 0; i < k; ++i) {
    dim *= static_cast<std::size_t>(alphabet.n);
    if (dim > cap) {
      throw std::length_error("level " + std::to_string(k) + " exceeds the configured dimension cap of " +
                              std::to_string(cap));
    }
  }
  return dim;
}

}  // namespace ifsrep
