#pragma once

// Finite and eventually periodic infinite words over Z_N, cylinder sets,
// the N-adic ultrametric and the duality pairing between finite and infinite
// words. Letters are 0..N-1.

#include <complex>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifsrep/exact.hpp"

namespace ifsrep {

struct Alphabet {
  int n = 2;

  explicit Alphabet(int size);
  bool contains(int letter) const { return letter >= 0 && letter < n; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// A finite word. The empty word stands for the whole path space in the
/// measure context.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) {}
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  /// Comma-free digit string, e.g. "0120".
  static Word parse(std::string_view digits);
  /// The word whose level-`length` lexicographic index is `index`.
  static Word fromIndex(std::size_t index, int length, const Alphabet& alphabet);

  std::string str() const;
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word prefix(std::size_t k) const;
  /// Drops the first letter.
  Word tail() const;
  bool startsWith(const Word& f) const;
  Word concat(const Word& g) const;
  Word prepend(int letter) const;
  Word append(int letter) const;

  /// Lexicographic index among words of the same length, first letter most
  /// significant. This is the row/column order of every level-k operator.
  std::size_t index(const Alphabet& alphabet) const;

  /// Throws std::invalid_argument if any letter is outside the alphabet.
  void validate(const Alphabet& alphabet) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

/// preperiod . period . period . ...; the computable stand-in for a point of
/// the infinite path space.
class InfWordSpec {
 public:
  InfWordSpec(Word preperiod, Word period);

  /// "pre(per)", e.g. "01(20)" or "(1)".
  static InfWordSpec parse(std::string_view text);

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return per_; }
  std::string str() const;

  int letterAt(std::size_t i) const;
  Word prefix(std::size_t k) const;

  /// sigma: drops the first letter.
  InfWordSpec shift() const;
  /// Inserts `letter` in front.
  InfWordSpec prepend(int letter) const;

  bool isPurelyPeriodic() const { return pre_.empty(); }
  /// True iff both specs expand to the same infinite word.
  bool sameExpansion(const InfWordSpec& other) const;

  void validate(const Alphabet& alphabet) const;

 private:
  Word pre_;
  Word per_;
};

/// Length of the longest common prefix, or nullopt if the expansions agree.
std::optional<std::size_t> commonPrefixLength(const InfWordSpec& a, const InfWordSpec& b);

/// N^{-k} with k the common prefix length; 0 iff the expansions agree.
Rational metricDN(const InfWordSpec& a, const InfWordSpec& b, const Alphabet& alphabet);

struct WeightVector {
  std::vector<Rational> p;

  explicit WeightVector(std::vector<Rational> weights);
  static WeightVector uniform(int n);

  int size() const { return static_cast<int>(p.size()); }
  const Rational& operator[](std::size_t i) const { return p[i]; }
  /// p_{f_1} ... p_{f_k}
  Rational product(const Word& f) const;
};

struct Cylinder {
  Word base;
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

Rational cylinderMeasure(const Cylinder& c, const WeightVector& p);

/// E_f intersected with E_g: the longer cylinder when one base is a prefix of
/// the other, otherwise empty.
std::optional<Cylinder> cylinderIntersect(const Cylinder& a, const Cylinder& b);

/// Componentwise sum mod N of two eventually periodic words.
InfWordSpec groupAdd(const InfWordSpec& x, const InfWordSpec& y, const Alphabet& alphabet);
/// Componentwise sum mod N of finite words, the shorter padded with zeros.
Word groupAdd(const Word& x, const Word& y, const Alphabet& alphabet);

/// The exact turn t in [0,1) with <x, y> = e^{i 2 pi t}:
/// t = sum_k x_k y_k / N mod 1.
Rational dualityTurn(const InfWordSpec& x, const Word& y, const Alphabet& alphabet);
std::complex<double> dualityPairing(const InfWordSpec& x, const Word& y, const Alphabet& alphabet);

/// Turn of the scalar by which the gauge automorphism alpha(x) rescales S_y.
/// alpha(x) sends each generator S_i to <x, i> S_i, so S_y picks up the
/// product over its letters.
Rational gaugeTurn(const InfWordSpec& x, const Word& y, const Alphabet& alphabet);
std::complex<double> gaugeCharacter(const InfWordSpec& x, const Word& y, const Alphabet& alphabet);

/// All words of length k in lexicographic (index) order.
std::vector<Word> allWords(const Alphabet& alphabet, int k);

/// N^k, throwing std::length_error when it would exceed `cap`.
std::size_t levelDimension(const Alphabet& alphabet, int k, std::size_t cap);

}  // namespace ifsrep
