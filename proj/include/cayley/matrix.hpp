#pragma once

#include <array>
#include <memory>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "cayley/error.hpp"

namespace cayley {

/// The ring of exact (arbitrary precision) integers.
class IntegerRing {
 public:
  mpz_class reduce(mpz_class x) const { return x; }
  bool operator==(const IntegerRing&) const noexcept { return true; }
  std::string name() const { return "Z"; }
};

/// The prime field F_p. Entries are kept as canonical representatives in
/// [0, p-1]. Construction runs a probabilistic primality test whose error
/// probability is below 2^-128; copies share the validated modulus.
class PrimeField {
 public:
  explicit PrimeField(const mpz_class& p);

  const mpz_class& modulus() const noexcept { return *p_; }

  mpz_class reduce(const mpz_class& x) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p_->get_mpz_t());
    return r;
  }

  bool operator==(const PrimeField& other) const noexcept {
    return p_ == other.p_ || *p_ == *other.p_;
  }

  std::string name() const { return "F_" + p_->get_str(); }

 private:
  std::shared_ptr<const mpz_class> p_;
};

/// A 2x2 matrix (a b; c d) over `Ring`, stored row-major.
template <typename Ring>
class Mat2 {
 public:
  explicit Mat2(Ring ring = Ring{}) : Mat2(1, 0, 0, 1, std::move(ring)) {}

  Mat2(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d,
       Ring ring = Ring{})
      : ring_(std::move(ring)),
        e_{ring_.reduce(a), ring_.reduce(b), ring_.reduce(c), ring_.reduce(d)} {}

  static Mat2 identity(Ring ring = Ring{}) { return Mat2(std::move(ring)); }

  const mpz_class& a() const noexcept { return e_[0]; }
  const mpz_class& b() const noexcept { return e_[1]; }
  const mpz_class& c() const noexcept { return e_[2]; }
  const mpz_class& d() const noexcept { return e_[3]; }
  const std::array<mpz_class, 4>& entries() const noexcept { return e_; }
  const Ring& ring() const noexcept { return ring_; }

  mpz_class det() const { return ring_.reduce(e_[0] * e_[3] - e_[1] * e_[2]); }
  bool is_identity() const { return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1; }

  /// Largest entry (signed comparison).
  const mpz_class& max_entry() const {
    const mpz_class* best = &e_[0];
    for (const auto& x : e_) {
      if (x > *best) best = &x;
    }
    return *best;
  }

  /// M * (1 t; 0 1): adds t times column 1 to column 2.
  void add_col1_to_col2(const mpz_class& t) {
    e_[1] = ring_.reduce(e_[1] + t * e_[0]);
    e_[3] = ring_.reduce(e_[3] + t * e_[2]);
  }

  /// M * (1 0; t 1): adds t times column 2 to column 1.
  void add_col2_to_col1(const mpz_class& t) {
    e_[0] = ring_.reduce(e_[0] + t * e_[1]);
    e_[2] = ring_.reduce(e_[2] + t * e_[3]);
  }

  bool operator==(const Mat2& other) const { return ring_ == other.ring_ && e_ == other.e_; }

 private:
  Ring ring_;
  std::array<mpz_class, 4> e_;
};

using IntMat = Mat2<IntegerRing>;
using FpMat = Mat2<PrimeField>;

template <typename Ring>
Mat2<Ring> operator*(const Mat2<Ring>& m, const Mat2<Ring>& n) {
  if (!(m.ring() == n.ring())) {
    throw RingMismatch("cannot multiply matrices over " + m.ring().name() + " and " +
                       n.ring().name());
  }
  return Mat2<Ring>(m.a() * n.a() + m.b() * n.c(), m.a() * n.b() + m.b() * n.d(),
                    m.c() * n.a() + m.d() * n.c(), m.c() * n.b() + m.d() * n.d(), m.ring());
}

/// Inverse of a determinant-one matrix via the adjugate.
template <typename Ring>
Mat2<Ring> sl2_inverse(const Mat2<Ring>& m) {
  if (m.det() != 1) {
    throw InvalidArgument("sl2_inverse: determinant is not 1");
  }
  return Mat2<Ring>(m.d(), -m.b(), -m.c(), m.a(), m.ring());
}

/// Reduces an integer matrix into F_p.
inline FpMat reduce_mod(const IntMat& m, const PrimeField& field) {
  return FpMat(m.a(), m.b(), m.c(), m.d(), field);
}

template <typename Ring>
std::ostream& operator<<(std::ostream& os, const Mat2<Ring>& m) {
  return os << '(' << m.a() << ',' << m.b() << ';' << m.c() << ',' << m.d() << ')';
}

}  // namespace cayley
