#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cayley {

/// Generator letters. In hashing, bit 0 maps to A and bit 1 maps to B.
enum class Letter : std::uint8_t { A, B };

inline char to_char(Letter l) { return l == Letter::A ? 'A' : 'B'; }
inline Letter other(Letter l) { return l == Letter::A ? Letter::B : Letter::A; }

struct Run {
  Letter letter;
  mpz_class exponent;

  bool operator==(const Run& o) const { return letter == o.letter && exponent == o.exponent; }
};

/// A group word over {A, B} in run form. Always freely reduced: adjacent runs
/// have distinct letters and no exponent is zero.
class GenWord {
 public:
  GenWord() = default;
  GenWord(std::initializer_list<Run> runs);
  explicit GenWord(const std::vector<Run>& runs);

  /// Multiplies the word on the right by letter^exponent, merging and
  /// cancelling as needed.
  void append(Letter letter, const mpz_class& exponent);

  const std::vector<Run>& runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }

  /// Sum of absolute exponents.
  mpz_class length() const;
  bool is_positive() const;
  bool has_negative_exponent() const;

  GenWord inverse() const;

  bool operator==(const GenWord& o) const { return runs_ == o.runs_; }

  friend GenWord operator*(GenWord lhs, const GenWord& rhs) {
    for (const auto& r : rhs.runs_) lhs.append(r.letter, r.exponent);
    return lhs;
  }

 private:
  std::vector<Run> runs_;
};

/// Parses the caret grammar ("B A^3 B^2 A", "A^-2 B") and the compact form
/// ("ABab", lowercase meaning exponent -1). Throws ParseError.
GenWord parse_word(std::string_view text);

/// Caret form with single spaces; exponent 1 is omitted. The empty word
/// formats as "".
std::string format_word(const GenWord& w);

}  // namespace cayley
