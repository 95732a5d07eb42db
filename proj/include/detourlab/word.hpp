#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace detourlab {

enum class Letter : int { d = 0, delta = 1 };

inline Letter other(Letter l) { return l == Letter::d ? Letter::delta : Letter::d; }

/// A word in the letters {d, delta} subject to d*d = delta*delta = 0; the
/// surviving words alternate, so (first letter, length) encodes them all.
/// Length 0 is the identity word.
class OperatorWord {
 public:
  OperatorWord() = default;

  static OperatorWord identity() { return OperatorWord(); }
  static OperatorWord d() { return OperatorWord(Letter::d, 1); }
  static OperatorWord delta() { return OperatorWord(Letter::delta, 1); }
  /// The composite d∘delta (apply delta first).
  static OperatorWord d_delta() { return OperatorWord(Letter::d, 2); }
  /// The composite delta∘d.
  static OperatorWord delta_d() { return OperatorWord(Letter::delta, 2); }
  static OperatorWord alternating(Letter first, int len) {
    return len == 0 ? OperatorWord() : OperatorWord(first, len);
  }

  int length() const { return len_; }
  bool is_identity() const { return len_ == 0; }
  Letter first() const {
    if (len_ == 0) throw std::logic_error("OperatorWord: identity has no letters");
    return first_;
  }
  Letter last() const { return len_ % 2 == 1 ? first() : other(first()); }

  /// Net form-degree shift of the action (each d raises by 1, delta lowers).
  int net_degree() const {
    if (len_ % 2 == 0) return 0;
    return first_ == Letter::d ? 1 : -1;
  }

  /// Word concatenation a*b (b acts first); nullopt when the seam repeats a
  /// letter and the product collapses to zero.
  friend std::optional<OperatorWord> word_multiply(const OperatorWord& a,
                                                   const OperatorWord& b) {
    if (a.len_ == 0) return b;
    if (b.len_ == 0) return a;
    if (a.last() == b.first()) return std::nullopt;
    return OperatorWord(a.first_, a.len_ + b.len_);
  }

  bool operator==(const OperatorWord& o) const {
    return len_ == o.len_ && (len_ == 0 || first_ == o.first_);
  }

  /// Lexicographic order on the letter strings (d < delta, prefix first).
  std::strong_ordering operator<=>(const OperatorWord& o) const {
    const int fa = len_ == 0 ? -1 : static_cast<int>(first_);
    const int fb = o.len_ == 0 ? -1 : static_cast<int>(o.first_);
    if (fa != fb) return fa <=> fb;
    return len_ <=> o.len_;
  }

  std::string str() const {
    if (len_ == 0) return "id";
    std::string s;
    Letter l = first_;
    for (int i = 0; i < len_; ++i, l = other(l)) s += (l == Letter::d ? "d" : "δ");
    return s;
  }

 private:
  OperatorWord(Letter first, int len) : first_(first), len_(len) {
    if (len < 0) throw std::invalid_argument("OperatorWord: negative length");
  }

  Letter first_ = Letter::d;
  int len_ = 0;
};

}  // namespace detourlab
