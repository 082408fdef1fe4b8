#include "cayley/lifting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <tuple>
#include <vector>

#include "cayley/primes.hpp"

namespace cayley::attack {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_odd_prime(const mpz_class& p) {
  if (p == 2) throw InvalidArgument("p = 2 is not supported; p must be an odd prime");
  if (p < 2 || !is_probable_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(gmp_randinit_mt) {
    state_.seed(mpz_class(std::to_string(seed)));
  }

  /// Uniform in [lo, hi].
  mpz_class uniform(const mpz_class& lo, const mpz_class& hi) {
    return lo + state_.get_z_range(hi - lo + 1);
  }

 private:
  gmp_randclass state_;
};

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntMat lift_matrix(const mpz_class& p, const std::array<mpz_class, 4>& k) {
  return IntMat(1 + k[0] * p, k[1] * p, k[2] * p, 1 + k[3] * p);
}

// Draws balanced Sanov-form lifts. With lambda = -4 mu the determinant
// condition becomes k1 + k4 = 4 mu p and k2 k3 = k1 k4 + 4 mu; fixing
// k2 = 2q for a prime q turns it into k1^2 - 4 mu p k1 - 4 mu = 0 (mod q).
// Each prime q is reused for several draws, which vary mu, the root and the
// representative of k1.
class BalancedSampler {
 public:
  BalancedSampler(const mpz_class& p, Rng& rng) : p_(p), rng_(rng) {}

  /// One draw, or nullopt when the draw is rejected.
  std::optional<IdentityLift> next() {
    if (uses_left_ == 0) {
      q_ = next_prime(rng_.uniform(p_ / 2 + 1, 2 * p_));
      const mpz_class two = 2, four = 4;
      mpz_invert(inv2_.get_mpz_t(), two.get_mpz_t(), q_.get_mpz_t());
      mpz_invert(inv4_.get_mpz_t(), four.get_mpz_t(), q_.get_mpz_t());
      uses_left_ = kDrawsPerPrime;
    }
    --uses_left_;
    if (q_ == p_ || q_ < 3) {
      uses_left_ = 0;
      return std::nullopt;
    }

    const mpz_class mu = rng_.uniform(1, 4);
    const auto root = sqrt_mod(16 * mu * mu * p_ * p_ + 16 * mu, q_);
    if (!root) return std::nullopt;
    const mpz_class signed_root = rng_.uniform(0, 1) == 0 ? *root : mpz_class(-*root);
    const mpz_class r = mod((4 * mu * p_ + signed_root) * inv2_, q_);

    // k1 = r (mod q), k1 = 0 (mod 4), 0 < k1 < 4 mu p.
    const mpz_class span = 4 * mu * p_;
    mpz_class k1 = 4 * mod(r * inv4_, q_);
    if (k1 == 0 || k1 >= span) return std::nullopt;
    k1 += 4 * q_ * rng_.uniform(0, (span - 1 - k1) / (4 * q_));

    const mpz_class k4 = span - k1;
    const mpz_class num = k1 * k4 + 4 * mu;
    const mpz_class k2 = 2 * q_;
    if (!mpz_divisible_p(num.get_mpz_t(), k2.get_mpz_t())) {
      throw Error("balanced lift: k2 does not divide k1 k4 + 4 mu");
    }
    IdentityLift lift{p_, {k1, k2, num / k2, k4}, IntMat{}};
    lift.matrix = lift_matrix(p_, lift.k);
    return lift;
  }

 private:
  static constexpr unsigned kDrawsPerPrime = 16;
  const mpz_class& p_;
  Rng& rng_;
  mpz_class q_, inv2_, inv4_;
  unsigned uses_left_ = 0;
};

IdentityLift plain_lift(const mpz_class& p, Rng& rng, const FactorBudget& budget, unsigned attempts) {
  for (unsigned attempt = 0; attempt < attempts; ++attempt) {
    const mpz_class lambda = rng.uniform(1, 4);
    const mpz_class k1 = rng.uniform(1, lambda * p - 1);
    const mpz_class k4 = lambda * p - k1;
    const mpz_class n = lambda + k1 * k4;
    const auto primes = factorize(n, budget);
    if (!primes) continue;
    const mpz_class d = balanced_divisor(n, *primes);
    if (d == 1) continue;
    IdentityLift lift{p, {k1, n / d, d, k4}, IntMat{}};
    lift.matrix = lift_matrix(p, lift.k);
    return lift;
  }
  throw BudgetExhausted("plain lift: no factorable k2 k3 within " + std::to_string(attempts) +
                        " attempts for p = " + p.get_str());
}

unsigned residue_index(const std::array<int, 4>& r) { return r[0] + 4 * r[1] + 16 * r[2] + 64 * r[3]; }

std::array<int, 4> residues(const IntMat& m) {
  std::array<int, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) r[i] = static_cast<int>(mpz_fdiv_ui(m.entries()[i].get_mpz_t(), 4));
  return r;
}

bool sanov_mod4(const std::array<int, 4>& m, const std::array<int, 4>& s) {
  auto md = [](int x) { return ((x % 4) + 4) % 4; };
  const int a = md(m[0] * s[0] + m[1] * s[2]);
  const int b = md(m[0] * s[1] + m[1] * s[3]);
  const int c = md(m[2] * s[0] + m[3] * s[2]);
  const int d = md(m[2] * s[1] + m[3] * s[3]);
  return a == 1 && d == 1 && b % 2 == 0 && c % 2 == 0;
}

// Correction for every residue class in SL2(Z/4), indexed by residue_index.
const std::vector<std::optional<std::array<int, 4>>>& correction_table() {
  static const auto table = [] {
    std::vector<std::array<int, 4>> candidates;
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b)
        for (int c = -5; c <= 5; ++c)
          for (int d = -5; d <= 5; ++d)
            if (a * d - b * c == 1) candidates.push_back({a, b, c, d});
    auto order = [](const std::array<int, 4>& s) {
      int mx = 0, sum = 0;
      for (int x : s) {
        mx = std::max(mx, std::abs(x));
        sum += std::abs(x);
      }
      return std::make_tuple(mx, sum, s);
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const auto& x, const auto& y) { return order(x) < order(y); });

    std::vector<std::optional<std::array<int, 4>>> t(256);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            if (((a * d - b * c) % 4 + 4) % 4 != 1) continue;
            const std::array<int, 4> r{a, b, c, d};
            for (const auto& s : candidates) {
              if (sanov_mod4(r, s)) {
                t[residue_index(r)] = s;
                break;
              }
            }
          }
    return t;
  }();
  return table;
}

}  // namespace

IdentityLift constrained_lift(const mpz_class& p, const mpz_class& s) {
  require_odd_prime(p);
  if (s < 1 || s >= p) throw InvalidArgument("constrained lift needs 1 <= s <= p - 1");
  IdentityLift lift{p, {4 * s, 2 * (4 * s * (p - s) + 1), 2, 4 * (p - s)}, IntMat{}};
  lift.matrix = lift_matrix(p, lift.k);
  return lift;
}

IdentityLift find_identity_lift(const mpz_class& p, LiftMode mode, std::uint64_t seed,
                                const FactorBudget& budget, unsigned attempts) {
  require_odd_prime(p);
  Rng rng(seed);
  switch (mode) {
    case LiftMode::sanov_constrained:
      return constrained_lift(p, rng.uniform(1, p - 1));
    case LiftMode::sanov_balanced: {
      BalancedSampler sampler(p, rng);
      for (;;) {
        if (auto lift = sampler.next()) return *lift;
      }
    }
    case LiftMode::plain:
      return plain_lift(p, rng, budget, attempts);
  }
  throw InvalidArgument("unknown lift mode");
}

GenWord euclidean_factor(const IntMat& m) {
  if (m.det() != 1) throw InvalidArgument("euclidean_factor: determinant is not 1");
  for (const auto& x : m.entries()) {
    if (x < 0) throw NotPositiveWord("matrix has a negative entry");
  }
  mpz_class a = m.a(), b = m.b(), c = m.c(), d = m.d();
  std::vector<Run> reversed;
  while (!(a == 1 && b == 0 && c == 0 && d == 1)) {
    mpz_class q;
    if (b >= a && d >= c) {
      // Last run is A^q: column 2 = column 2' + q column 1.
      q = b / a;
      if (c != 0) q = std::min(q, mpz_class(d / c));
      b -= q * a;
      d -= q * c;
      reversed.push_back({Letter::A, q});
    } else if (a >= b && c >= d) {
      q = c / d;
      if (b != 0) q = std::min(q, mpz_class(a / b));
      a -= q * b;
      c -= q * d;
      reversed.push_back({Letter::B, q});
    } else {
      throw NotPositiveWord("matrix is not a product of positive powers of A(1), B(1)");
    }
    if (q == 0) throw NotPositiveWord("matrix is not a product of positive powers of A(1), B(1)");
  }
  GenWord w;
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) w.append(it->letter, it->exponent);
  return w;
}

CorrectionEntry sanov_correction(const IntMat& m) {
  if (m.det() != 1) throw InvalidArgument("sanov_correction: determinant is not 1");
  const auto r = residues(m);
  if (sanov_form_check(m)) return {r, IntMat{}};
  const auto& s = correction_table()[residue_index(r)];
  if (!s) throw Error("no correction with entries in [-5, 5] for this residue class");
  return {r, IntMat((*s)[0], (*s)[1], (*s)[2], (*s)[3])};
}

namespace {

// Nearest-even Euclid on the first row (a odd, b even): right-multiplying by
// A(2)^q adds 2q a to b, by B(2)^q adds 2q b to a. Each step leaves a
// remainder strictly smaller in absolute value than the divisor, so the row
// reaches (1, 0). Returns nullopt once the word length exceeds `cap`.
std::optional<GenWord> reduce_sanov_form(const IntMat& m, const std::optional<mpz_class>& cap) {
  mpz_class a = m.a(), b = m.b(), c = m.c(), d = m.d();
  mpz_class quot, rem, divisor, tmp, length = 0;
  std::vector<Run> peeled;

  // x <- x - Q (2y) with |x| < |y| afterwards; partner <- partner - Q (2 z).
  auto step = [&](mpz_class& x, const mpz_class& y, mpz_class& partner, const mpz_class& z) {
    mpz_mul_2exp(divisor.get_mpz_t(), y.get_mpz_t(), 1);
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
    if (mpz_cmpabs(rem.get_mpz_t(), y.get_mpz_t()) > 0) {
      mpz_add_ui(quot.get_mpz_t(), quot.get_mpz_t(), 1);
      mpz_sub(rem.get_mpz_t(), rem.get_mpz_t(), divisor.get_mpz_t());
    }
    mpz_swap(x.get_mpz_t(), rem.get_mpz_t());
    mpz_mul_2exp(tmp.get_mpz_t(), z.get_mpz_t(), 1);
    mpz_submul(partner.get_mpz_t(), quot.get_mpz_t(), tmp.get_mpz_t());
    // The applied power is A(2)^q or B(2)^q with q = -quot.
    mpz_neg(quot.get_mpz_t(), quot.get_mpz_t());
  };

  while (mpz_sgn(b.get_mpz_t()) != 0) {
    if (mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) > 0) {
      step(a, b, c, d);
      peeled.push_back({Letter::B, quot});
    } else {
      step(b, a, d, c);
      peeled.push_back({Letter::A, quot});
    }
    if (cap) {
      mpz_abs(tmp.get_mpz_t(), quot.get_mpz_t());
      length += tmp;
      if (length > *cap) return std::nullopt;
    }
  }
  if (a != 1 || d != 1) throw Error("sanov_reduce: reduction did not reach a lower unipotent");
  // m X_1 ... X_r = B(2)^(c/2), so m = B(2)^(c/2) X_r^-1 ... X_1^-1.
  GenWord w;
  w.append(Letter::B, c / 2);
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) w.append(it->letter, -it->exponent);
  if (cap && w.length() > *cap) return std::nullopt;
  return w;
}

}  // namespace

GenWord sanov_reduce(const IntMat& m) {
  if (!sanov_form_check(m)) throw NotInSanovSubgroup("matrix is not in the group generated by A(2), B(2)");
  return *reduce_sanov_form(m, std::nullopt);
}

GenWord rewrite_a1b1_to_a2b2(const GenWord& w) {
  const IntMat m = evaluate<IntegerRing>(w, 1);
  if (!sanov_form_check(m)) {
    throw NotInSanovSubgroup("word evaluates outside the group generated by A(2), B(2)");
  }
  return sanov_reduce(m);
}

bool verify_relation(const GenWord& word, const mpz_class& p, GenParam k) {
  return evaluate(word, k, PrimeField(p)).is_identity();
}

Relation build_group_relation(const mpz_class& p, std::uint64_t seed, const RelationOptions& options) {
  const auto start = Clock::now();
  require_odd_prime(p);
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, p.get_mpz_t());
  const double log2p = std::log2(mant) + static_cast<double>(exp);
  const mpz_class target(std::floor(options.slope * log2p + options.offset));

  Rng rng(seed);
  BalancedSampler sampler(p, rng);
  Relation best;
  best.p = p;
  best.k = 2;
  best.seed = seed;
  for (unsigned drawn = 0; drawn < options.max_candidates;) {
    auto lift = sampler.next();
    if (!lift) continue;
    ++drawn;
    best.candidates = drawn;
    // Later candidates only matter if strictly shorter than the best so far.
    std::optional<mpz_class> cap;
    if (!best.word.empty()) cap = best.length - 1;
    auto u = reduce_sanov_form(lift->matrix, cap);
    if (!u) continue;
    best.length = u->length();
    best.word = std::move(*u);
    best.lift = std::move(*lift);
    if (best.length <= target) break;
  }
  if (best.word.empty()) throw Error("build_group_relation produced an empty word");
  best.verified = verify_relation(best.word, p, 2);
  if (!best.verified) throw Error("build_group_relation: relation failed verification mod p");
  best.elapsed_ms = ms_since(start);
  return best;
}

CorrectionPipelineResult correction_pipeline(const mpz_class& p, std::uint64_t seed, const FactorBudget& budget) {
  const auto start = Clock::now();
  CorrectionPipelineResult out;
  out.seed = seed;
  out.lift = find_identity_lift(p, LiftMode::plain, seed, budget);
  out.a1b1_word = euclidean_factor(out.lift.matrix);
  out.correction = sanov_correction(out.lift.matrix).s;
  out.word = sanov_reduce(out.lift.matrix * out.correction);
  const PrimeField field(p);
  out.word_mod_p = evaluate(out.word, 2, field);
  out.matches_correction = *out.word_mod_p == reduce_mod(out.correction, field);
  out.elapsed_ms = ms_since(start);
  return out;
}

namespace {

nlohmann::json big(const mpz_class& x) {
  if (mpz_fits_slong_p(x.get_mpz_t())) return x.get_si();
  return x.get_str();
}

nlohmann::json matrix_json(const IntMat& m) {
  return nlohmann::json::array({m.a().get_str(), m.b().get_str(), m.c().get_str(), m.d().get_str()});
}

nlohmann::json lift_json(const IdentityLift& lift) {
  return {{"k", nlohmann::json::array({lift.k[0].get_str(), lift.k[1].get_str(), lift.k[2].get_str(),
                                       lift.k[3].get_str()})},
          {"matrix", matrix_json(lift.matrix)}};
}

}  // namespace

nlohmann::json Relation::to_json() const {
  return {{"p", p.get_str()},
          {"k", k},
          {"word", format_word(word)},
          {"length", big(length)},
          {"verified", verified},
          {"seed", seed},
          {"candidates", candidates},
          {"lift", lift_json(lift)},
          {"timings", {{"total_ms", elapsed_ms}}}};
}

nlohmann::json CorrectionPipelineResult::to_json() const {
  return {{"p", lift.p.get_str()},
          {"k", 2},
          {"seed", seed},
          {"lift", lift_json(lift)},
          {"a1b1_word", format_word(a1b1_word)},
          {"a1b1_length", big(a1b1_word.length())},
          {"correction", matrix_json(correction)},
          {"word", format_word(word)},
          {"length", big(word.length())},
          {"word_mod_p", nlohmann::json::array({word_mod_p->a().get_str(), word_mod_p->b().get_str(),
                                                word_mod_p->c().get_str(), word_mod_p->d().get_str()})},
          {"word_equals_correction_mod_p", matches_correction},
          {"timings", {{"total_ms", elapsed_ms}}}};
}

}  // namespace cayley::attack
