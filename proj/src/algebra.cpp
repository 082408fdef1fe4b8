#include "cayley/algebra.hpp"

namespace cayley {

namespace detail {

void check_generator_args(GenParam k, const IntegerRing&) {
  if (k < 1) throw InvalidArgument("generator parameter k must be >= 1");
}

void check_generator_args(GenParam k, const PrimeField& f) {
  if (k < 1) throw InvalidArgument("generator parameter k must be >= 1");
  if (f.modulus() <= k) {
    throw InvalidArgument("generator parameter k must be smaller than p");
  }
}

}  // namespace detail

bool sanov_form_check(const IntMat& m) {
  auto mod = [](const mpz_class& x, unsigned long n) { return mpz_fdiv_ui(x.get_mpz_t(), n); };
  return m.det() == 1 && mod(m.a(), 4) == 1 && mod(m.d(), 4) == 1 && mod(m.b(), 2) == 0 &&
         mod(m.c(), 2) == 0;
}

}  // namespace cayley
