#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "detourlab/scalar.hpp"
#include "detourlab/word.hpp"

namespace detourlab {

/// Exact-rational noncommutative polynomial in the letters d, delta with a
/// central scalar J. Canonical form: a map (word, J-power) -> coefficient
/// with no zero coefficients; words are kept reduced by d^2 = delta^2 = 0.
class OperatorPoly {
 public:
  using Key = std::pair<OperatorWord, int>;
  using TermMap = std::map<Key, Rational>;

  OperatorPoly() = default;

  static OperatorPoly zero() { return OperatorPoly(); }
  static OperatorPoly identity() { return term(OperatorWord::identity(), 0, 1); }
  static OperatorPoly letter_d() { return term(OperatorWord::d(), 0, 1); }
  static OperatorPoly letter_delta() { return term(OperatorWord::delta(), 0, 1); }
  static OperatorPoly d_delta() { return term(OperatorWord::d_delta(), 0, 1); }
  static OperatorPoly delta_d() { return term(OperatorWord::delta_d(), 0, 1); }
  static OperatorPoly J(int power = 1) {
    return term(OperatorWord::identity(), power, 1);
  }
  static OperatorPoly term(const OperatorWord& w, int jpow, Rational coeff) {
    OperatorPoly p;
    if (coeff != 0) p.terms_[{w, jpow}] = std::move(coeff);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, c);
    return *this;
  }
  OperatorPoly& operator-=(const OperatorPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, -c);
    return *this;
  }
  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) {
    return a += b;
  }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) {
    return a -= b;
  }
  OperatorPoly operator-() const {
    OperatorPoly p;
    for (const auto& [key, c] : terms_) p.terms_[key] = -c;
    return p;
  }

  friend OperatorPoly operator*(const Rational& s, const OperatorPoly& p) {
    OperatorPoly q;
    if (s == 0) return q;
    for (const auto& [key, c] : p.terms_) q.terms_[key] = s * c;
    return q;
  }

  /// Composition a*b: a acts after b. J is central, words concatenate and
  /// collapse to zero across a repeated letter.
  friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
    OperatorPoly p;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        std::optional<OperatorWord> w = word_multiply(ka.first, kb.first);
        if (!w) continue;
        p.add_term({*w, ka.second + kb.second}, ca * cb);
      }
    return p;
  }

  /// Multiply by the central scalar J (raises every J-power by `power`).
  OperatorPoly times_J(int power = 1) const {
    OperatorPoly p;
    for (const auto& [key, c] : terms_) p.terms_[{key.first, key.second + power}] = c;
    return p;
  }

  bool operator==(const OperatorPoly& o) const { return terms_ == o.terms_; }

  /// Net form-degree shift if every term agrees, nullopt on a mixed poly.
  std::optional<int> uniform_net_degree() const {
    std::optional<int> deg;
    for (const auto& [key, c] : terms_) {
      const int nd = key.first.net_degree();
      if (!deg) deg = nd;
      else if (*deg != nd) return std::nullopt;
    }
    return deg;
  }

  /// Stable text form: terms "coeff * J^m * word" sorted by word then m.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.str();
      if (key.second > 0) os << " * J^" << key.second;
      os << " * " << key.first.str();
    }
    return os.str();
  }

 private:
  void add_term(const Key& key, const Rational& c) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (c != 0) terms_[key] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  TermMap terms_;
};

/// prod_{i=1}^{m} (E + 2i(n - 2k - i + 1)/n * J) expanded to canonical form;
/// identity for m <= 0. E is normally the composite d∘delta or delta∘d.
inline OperatorPoly factored_bracket(int n, int k, int m, const OperatorPoly& E) {
  OperatorPoly acc = OperatorPoly::identity();
  for (int i = 1; i <= m; ++i) {
    OperatorPoly factor = E + Rational(2L * i * (n - 2 * k - i + 1), n) * OperatorPoly::J();
    acc = factor * acc;
  }
  return acc;
}

}  // namespace detourlab
