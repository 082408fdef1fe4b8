#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace cayley {

struct FactorBudget {
  unsigned long trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 200'000;
};

/// Complete prime factorization of n > 0 (with multiplicity, ascending), or
/// nullopt if a composite cofactor survives trial division and the rho burst.
std::optional<std::vector<mpz_class>> factorize(const mpz_class& n, const FactorBudget& budget = {});

/// The divisor of n closest to sqrt(n) from below, given n's factorization.
mpz_class balanced_divisor(const mpz_class& n, const std::vector<mpz_class>& primes);

}  // namespace cayley
