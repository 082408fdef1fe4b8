#include "cayley/primes.hpp"

#include <cctype>
#include <string>

#include "cayley/error.hpp"
#include "cayley/matrix.hpp"

namespace cayley {

namespace {

// GMP runs BPSW plus (reps - 24) Miller-Rabin rounds; 64 reps keeps the
// error below 4^-64.
constexpr int kPrimalityReps = 64;

bool all_digits(std::string_view s, int base) {
  if (s.empty()) return false;
  for (char ch : s) {
    const auto u = static_cast<unsigned char>(ch);
    if (base == 10 ? !std::isdigit(u) : !std::isxdigit(u)) return false;
  }
  return true;
}

mpz_class parse_plain(std::string_view s, std::string_view whole) {
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    if (!all_digits(s.substr(2), 16)) throw InvalidArgument("malformed hex integer: " + std::string(whole));
    return mpz_class(std::string(s.substr(2)), 16);
  }
  if (!all_digits(s, 10)) throw InvalidArgument("malformed integer: " + std::string(whole));
  return mpz_class(std::string(s), 10);
}

}  // namespace

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityReps) > 0;
}

mpz_class next_prime(const mpz_class& n) {
  if (n <= 2) return 2;
  if (is_probable_prime(n)) return n;
  mpz_class r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  while (!is_probable_prime(r)) mpz_nextprime(r.get_mpz_t(), r.get_mpz_t());
  return r;
}

mpz_class parse_integer(std::string_view text) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return parse_plain(text, text);
  const mpz_class base = parse_plain(text.substr(0, caret), text);
  const mpz_class exp = parse_plain(text.substr(caret + 1), text);
  if (exp > 1u << 20) throw InvalidArgument("exponent too large: " + std::string(text));
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return r;
}

mpz_class parse_prime(std::string_view text) {
  constexpr std::string_view near = "near:";
  mpz_class p;
  if (text.substr(0, near.size()) == near) {
    p = next_prime(parse_integer(text.substr(near.size())));
  } else {
    p = parse_integer(text);
  }
  if (!is_probable_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
  return p;
}

PrimeField::PrimeField(const mpz_class& p) {
  if (!is_probable_prime(p)) throw InvalidArgument("field modulus " + p.get_str() + " is not prime");
  p_ = std::make_shared<const mpz_class>(p);
}

}  // namespace cayley

namespace cayley {

std::optional<mpz_class> sqrt_mod(const mpz_class& n, const mpz_class& q) {
  mpz_class a;
  mpz_fdiv_r(a.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
  if (a == 0) return mpz_class(0);
  if (mpz_legendre(a.get_mpz_t(), q.get_mpz_t()) != 1) return std::nullopt;

  auto powm = [&q](const mpz_class& b, const mpz_class& e) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
    return r;
  };

  // q - 1 = odd * 2^s
  mpz_class odd = q - 1;
  unsigned long s = 0;
  while (mpz_even_p(odd.get_mpz_t())) {
    odd >>= 1;
    ++s;
  }
  if (s == 1) return powm(a, (q + 1) / 4);

  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), q.get_mpz_t()) != -1) ++z;

  mpz_class c = powm(z, odd);
  mpz_class x = powm(a, (odd + 1) / 2);
  mpz_class t = powm(a, odd);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % q;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % q;
    x = x * b % q;
    c = b * b % q;
    t = t * c % q;
    m = i;
  }
  return x;
}

}  // namespace cayley
