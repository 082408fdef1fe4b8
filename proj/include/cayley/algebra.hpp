#pragma once

#include "cayley/matrix.hpp"
#include "cayley/word.hpp"

namespace cayley {

/// Generator parameter k of the pair A(k) = (1 k; 0 1), B(k) = (1 0; k 1).
/// k >= 1; the pair generates a free group once k*k >= 4 and a free monoid
/// for every k >= 1.
using GenParam = unsigned long;

namespace detail {
void check_generator_args(GenParam k, const IntegerRing&);
void check_generator_args(GenParam k, const PrimeField& f);
}  // namespace detail

/// A(k) or B(k), reduced in `ring`. For F_p requires p > k.
template <typename Ring>
Mat2<Ring> generator(Letter letter, GenParam k, Ring ring = Ring{}) {
  detail::check_generator_args(k, ring);
  mpz_class kk(k);
  return letter == Letter::A ? Mat2<Ring>(1, kk, 0, 1, std::move(ring))
                             : Mat2<Ring>(1, 0, kk, 1, std::move(ring));
}

/// letter(k)^e via the closed form of a unipotent power.
template <typename Ring>
Mat2<Ring> generator_power(Letter letter, const mpz_class& e, GenParam k, Ring ring = Ring{}) {
  detail::check_generator_args(k, ring);
  mpz_class t = e * k;
  return letter == Letter::A ? Mat2<Ring>(1, t, 0, 1, std::move(ring))
                             : Mat2<Ring>(1, 0, t, 1, std::move(ring));
}

/// m <- m * letter(k)^e, as a single column operation.
template <typename Ring>
void right_multiply_power(Mat2<Ring>& m, Letter letter, const mpz_class& e, GenParam k) {
  mpz_class t = e * k;
  if (letter == Letter::A) {
    m.add_col1_to_col2(t);
  } else {
    m.add_col2_to_col1(t);
  }
}

/// Left-to-right product of the word's runs with generators A(k), B(k).
template <typename Ring>
Mat2<Ring> evaluate(const GenWord& w, GenParam k, Ring ring = Ring{}) {
  detail::check_generator_args(k, ring);
  Mat2<Ring> m(std::move(ring));
  for (const auto& run : w.runs()) right_multiply_power(m, run.letter, run.exponent, k);
  return m;
}

/// Membership test for the subgroup generated by A(2), B(2): det 1, both
/// diagonal entries = 1 (mod 4), both off-diagonal entries even.
bool sanov_form_check(const IntMat& m);

}  // namespace cayley
