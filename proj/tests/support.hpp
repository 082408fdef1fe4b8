#pragma once

// Independent oracles and seeded generators shared by the test files. The
// oracle multiplies plain 2x2 arrays letter by letter and never touches the
// library's Mat2 column operations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cayley/matrix.hpp"
#include "cayley/word.hpp"

namespace testing {

using Quad = std::array<mpz_class, 4>;

inline Quad mul(const Quad& x, const Quad& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

inline Quad identity() { return {1, 0, 0, 1}; }

// One letter at a time: A^e = product of |e| copies of A or A^-1.
inline Quad oracle_eval(const std::vector<std::pair<char, long>>& letters, long k) {
  Quad acc = identity();
  for (auto [ch, e] : letters) {
    long step = e > 0 ? k : -k;
    Quad g = ch == 'A' ? Quad{1, step, 0, 1} : Quad{1, 0, step, 1};
    for (long i = 0; i < (e > 0 ? e : -e); ++i) acc = mul(acc, g);
  }
  return acc;
}

inline Quad oracle_eval_string(const std::string& positive_letters, long k) {
  std::vector<std::pair<char, long>> v;
  for (char c : positive_letters) v.emplace_back(c, 1);
  return oracle_eval(v, k);
}

inline Quad mod_quad(Quad q, const mpz_class& p) {
  for (auto& x : q) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return q;
}

inline Quad to_quad(const cayley::IntMat& m) { return m.entries(); }
inline Quad to_quad(const cayley::FpMat& m) { return m.entries(); }

inline std::vector<std::pair<char, long>> letters_of(const cayley::GenWord& w) {
  std::vector<std::pair<char, long>> v;
  for (const auto& r : w.runs()) v.emplace_back(cayley::to_char(r.letter), r.exponent.get_si());
  return v;
}

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64 gen;
};

// Random freely reduced signed word of exactly `length` letters, as a
// letter-by-letter sequence (so the library's run merging is exercised).
inline cayley::GenWord random_reduced_word(Rng& rng, long length) {
  cayley::GenWord w;
  int prev = -1;  // index into {A, a, B, b}
  for (long i = 0; i < length; ++i) {
    int g;
    do {
      g = static_cast<int>(rng.uniform(0, 3));
    } while (prev >= 0 && (g ^ 1) == prev);
    prev = g;
    w.append(g < 2 ? cayley::Letter::A : cayley::Letter::B, (g & 1) ? -1 : 1);
  }
  return w;
}

inline cayley::GenWord random_positive_word(Rng& rng, long total) {
  cayley::GenWord w;
  long left = total;
  cayley::Letter l = rng.coin() ? cayley::Letter::A : cayley::Letter::B;
  while (left > 0) {
    long e = rng.uniform(1, std::min<long>(left, 1 + rng.uniform(0, 40)));
    w.append(l, e);
    left -= e;
    l = cayley::other(l);
  }
  return w;
}

inline std::string random_bits(Rng& rng, std::size_t n) {
  std::string s(n, '0');
  for (auto& c : s) c = rng.coin() ? '1' : '0';
  return s;
}

inline std::string bits_to_letters(const std::string& bits) {
  std::string s = bits;
  for (auto& c : s) c = c == '0' ? 'A' : 'B';
  return s;
}

}  // namespace testing
