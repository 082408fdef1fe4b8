#include "cayley/factor.hpp"

#include <algorithm>
#include <map>

#include "cayley/primes.hpp"

namespace cayley {

namespace {

// Pollard-Brent rho. Returns a nontrivial factor of the odd composite n, or
// 0 once the iteration budget is spent.
mpz_class rho(const mpz_class& n, std::uint64_t budget) {
  for (unsigned long c = 1; c < 20 && budget > 0; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto f = [&](const mpz_class& v) {
      mpz_class t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(m, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += steps;
        budget = budget > steps ? budget - steps : 0;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

bool split(const mpz_class& n, std::vector<mpz_class>& out, std::uint64_t& budget) {
  if (n == 1) return true;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return true;
  }
  const mpz_class d = rho(n, budget);
  if (d == 0) return false;
  return split(d, out, budget) && split(n / d, out, budget);
}

}  // namespace

std::optional<std::vector<mpz_class>> factorize(const mpz_class& n, const FactorBudget& budget) {
  std::vector<mpz_class> primes;
  if (n < 1) return std::nullopt;
  mpz_class rest = n;
  for (unsigned long d = 2; d <= budget.trial_bound; d += (d == 2 ? 1 : 2)) {
    if (mpz_class(d) * d > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      primes.emplace_back(d);
      rest /= d;
    }
  }
  std::uint64_t rho_budget = budget.rho_iterations;
  if (!split(rest, primes, rho_budget)) return std::nullopt;
  std::sort(primes.begin(), primes.end());
  return primes;
}

mpz_class balanced_divisor(const mpz_class& n, const std::vector<mpz_class>& primes) {
  std::map<mpz_class, unsigned> powers;
  for (const auto& q : primes) ++powers[q];
  std::vector<mpz_class> divisors{1};
  for (const auto& [q, e] : powers) {
    const std::size_t base = divisors.size();
    mpz_class qk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      qk *= q;
      for (std::size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * qk);
    }
  }
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  mpz_class best = 1;
  for (const auto& d : divisors) {
    if (d <= root && d > best) best = d;
  }
  return best;
}

}  // namespace cayley
