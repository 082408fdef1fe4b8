#pragma once

#include <optional>
#include <string_view>

#include <gmpxx.h>

namespace cayley {

/// Miller-Rabin/BPSW test with false-positive probability below 2^-128.
bool is_probable_prime(const mpz_class& n);

/// Smallest probable prime >= n.
mpz_class next_prime(const mpz_class& n);

/// Parses an integer written as decimal, 0x-prefixed hex, or "b^e".
mpz_class parse_integer(std::string_view text);

/// Parses a prime: any integer form accepted by parse_integer, or
/// "near:<integer>" meaning the smallest prime >= that integer. Throws
/// InvalidArgument when the result is not prime.
mpz_class parse_prime(std::string_view text);

}  // namespace cayley

namespace cayley {

/// A square root of n modulo the odd prime q (Tonelli-Shanks), or nullopt
/// when n is a quadratic non-residue.
std::optional<mpz_class> sqrt_mod(const mpz_class& n, const mpz_class& q);

}  // namespace cayley
