#include "cayley/word.hpp"

#include <cctype>

#include "cayley/error.hpp"

namespace cayley {

GenWord::GenWord(std::initializer_list<Run> runs) {
  for (const auto& r : runs) append(r.letter, r.exponent);
}

GenWord::GenWord(const std::vector<Run>& runs) {
  for (const auto& r : runs) append(r.letter, r.exponent);
}

void GenWord::append(Letter letter, const mpz_class& exponent) {
  if (exponent == 0) return;
  if (runs_.empty() || runs_.back().letter != letter) {
    runs_.push_back({letter, exponent});
    return;
  }
  runs_.back().exponent += exponent;
  if (runs_.back().exponent == 0) {
    // The runs on either side of the cancelled one now touch; they carry the
    // same letter and are merged in turn.
    runs_.pop_back();
    if (runs_.size() >= 2 && runs_[runs_.size() - 2].letter == runs_.back().letter) {
      Run last = std::move(runs_.back());
      runs_.pop_back();
      append(last.letter, last.exponent);
    }
  }
}

mpz_class GenWord::length() const {
  mpz_class n = 0;
  for (const auto& r : runs_) n += abs(r.exponent);
  return n;
}

bool GenWord::is_positive() const {
  for (const auto& r : runs_) {
    if (r.exponent < 0) return false;
  }
  return true;
}

bool GenWord::has_negative_exponent() const { return !is_positive(); }

GenWord GenWord::inverse() const {
  GenWord w;
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.runs_.push_back({it->letter, -it->exponent});
  return w;
}

GenWord parse_word(std::string_view text) {
  GenWord w;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    Letter letter;
    bool inverted = false;
    switch (ch) {
      case 'A': letter = Letter::A; break;
      case 'B': letter = Letter::B; break;
      case 'a': letter = Letter::A; inverted = true; break;
      case 'b': letter = Letter::B; inverted = true; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", i);
    }
    ++i;
    mpz_class exponent = 1;
    if (i < n && text[i] == '^') {
      const std::size_t exp_pos = ++i;
      std::size_t start = i;
      if (i < n && text[i] == '-') ++i;
      const std::size_t digits = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == digits) throw ParseError("expected exponent digits after '^'", exp_pos);
      exponent = mpz_class(std::string(text.substr(start, i - start)));
      if (exponent == 0) throw ParseError("zero exponent", exp_pos);
    }
    w.append(letter, inverted ? mpz_class(-exponent) : exponent);
  }
  return w;
}

std::string format_word(const GenWord& w) {
  std::string out;
  for (const auto& r : w.runs()) {
    if (!out.empty()) out += ' ';
    out += to_char(r.letter);
    if (r.exponent != 1) {
      out += '^';
      out += r.exponent.get_str();
    }
  }
  return out;
}

}  // namespace cayley
