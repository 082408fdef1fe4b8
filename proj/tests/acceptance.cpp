// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Limits and tolerances are pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cayley/girth.hpp"
#include "cayley/hasher.hpp"
#include "cayley/lifting.hpp"
#include "cayley/primes.hpp"
#include "support.hpp"

using namespace cayley;
using testing::Quad;

namespace {

constexpr double kHashLimitMs = 1.0;
constexpr double kRecurrenceLimitMs = 1000.0;
constexpr double kGirthBoundLimitMs = 1000.0;
constexpr double kExtremalityLimitMs = 120'000.0;
constexpr double kBfsLimitMs = 300'000.0;
constexpr double kRelationLimitMs = 120'000.0;
constexpr double kRoundTripLimitMs = 60'000.0;
constexpr double kCorrectionLimitMs = 10'000.0;
constexpr double kCrossGeneratorLimitMs = 1.0;

constexpr long kBoundK2Lo = 200, kBoundK2Hi = 203;
constexpr long kBoundK3Lo = 147, kBoundK3Hi = 149;
constexpr double kLengthSlope = 4.0, kLengthOffset = 16.0;
constexpr int kSeeds = 100;

using Clock = std::chrono::steady_clock;

int failures = 0;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::ostringstream failed;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      failed << "\n    failed: " << what;
      ok = false;
    }
  }
};

void criterion(int id, const char* name, double limit_ms, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.failed << "\n    exception: " << e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (ms >= limit_ms) {
    o.ok = false;
    o.failed << "\n    failed: over time limit";
  }
  if (!o.ok) ++failures;
  std::printf("[%s] %d %s (%.3f ms, limit %.0f ms) %s%s\n", o.ok ? "PASS" : "FAIL", id, name, ms, limit_ms,
              o.detail.str().c_str(), o.failed.str().c_str());
  std::fflush(stdout);
}

mpz_class pow2(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::vector<long> first_odd_primes(std::size_t n) {
  std::vector<long> out;
  for (long q = 3; out.size() < n; q += 2) {
    if (is_probable_prime(q)) out.push_back(q);
  }
  return out;
}

int mod4(const mpz_class& x) { return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), 4)); }

}  // namespace

int main() {
  criterion(1, "hash of bits 1000110 is B A^3 B^2 A; (25,56;54,20) at p=101, k=2", kHashLimitMs, [](Outcome& o) {
    HashParams params(101, 2);
    const Digest d = hash_bits(params, "1000110");
    const Quad expected = testing::mod_quad(testing::oracle_eval({{'B', 1}, {'A', 3}, {'B', 2}, {'A', 1}}, 2), 101);
    o.require(expected == Quad{25, 56, 54, 20}, "oracle value");
    o.require(testing::to_quad(d.value()) == expected, "digest value");
    o.detail << "digest " << d.hex();
  });

  criterion(2, "C(2)^n and C(3)^n obey a_n = 6a_{n-1} - a_{n-2} and a_n = 11a_{n-1} - a_{n-2}, n <= 40",
            kRecurrenceLimitMs, [](Outcome& o) {
              for (GenParam k : {2ul, 3ul}) {
                const long t = k == 2 ? 6 : 11;
                const auto seq = girth::growth_sequence(k, 40);
                o.require(girth::satisfies_recurrence(seq), "library recurrence check");
                Quad prev = testing::identity();
                Quad cur = testing::oracle_eval_string("AB", static_cast<long>(k));
                for (std::size_t n = 1; n <= 40; ++n) {
                  o.require(testing::to_quad(seq.terms[n - 1]) == cur, "term " + std::to_string(n));
                  Quad next;
                  for (int i = 0; i < 4; ++i) next[i] = t * cur[i] - prev[i];
                  prev = cur;
                  cur = next;
                }
              }
              const auto c3 = girth::growth_sequence(3, 2);
              o.require(c3.terms[0].a() == 10 && c3.terms[1].a() == 109, "a_1, a_2 for k=3");
              o.require(c3.terms[0].b() == 3 && c3.terms[1].b() == 33, "b_1, b_2 for k=3");
            });

  criterion(3, "girth bounds at the smallest prime >= 2^256: k=2 in [200,203], k=3 in [147,149]", kGirthBoundLimitMs,
            [](Outcome& o) {
              const mpz_class p = next_prime(pow2(256));
              const long b2 = static_cast<long>(girth::girth_lower_bound(p, 2));
              const long b3 = static_cast<long>(girth::girth_lower_bound(p, 3));
              o.require(b2 >= kBoundK2Lo && b2 <= kBoundK2Hi, "k=2 bound");
              o.require(b3 >= kBoundK3Lo && b3 <= kBoundK3Hi, "k=3 bound");
              o.detail << "p = 2^256 + " << mpz_class(p - pow2(256)).get_str() << "; k=2 bound " << b2
                       << " (estimate " << girth::closed_form_estimate(p, 2) << "), k=3 bound " << b3
                       << " (estimate " << girth::closed_form_estimate(p, 3) << ")";
            });

  criterion(4, "alternating words maximize entries and row sums, all 2^n words, n <= 14, k in {2,3}",
            kExtremalityLimitMs, [](Outcome& o) {
              std::uint64_t words = 0;
              for (GenParam k : {2ul, 3ul}) {
                for (std::size_t n = 1; n <= 14; ++n) {
                  const auto r = girth::alternation_extremality_check(k, n);
                  words += r.words_checked;
                  o.require(r.holds, "k=" + std::to_string(k) + " n=" + std::to_string(n) + " counterexample " +
                                         (r.counterexample ? format_word(*r.counterexample) : ""));
                }
              }
              o.detail << words << " words checked";
            });

  criterion(5, "BFS over the first 25 odd primes, k=2: no collision at or below the bound, verified witness above",
            kBfsLimitMs, [](Outcome& o) {
              std::ostringstream lengths;
              for (long p : first_odd_primes(25)) {
                const auto rep = girth::bfs_exact_girth(p, 2);
                const auto bound = girth::girth_lower_bound(p, 2);
                if (!rep.exact_girth) {
                  // No collision up to the cap is consistent with the bound.
                  o.require(*rep.searched_length >= bound, "p=" + std::to_string(p) + " searched too little");
                  lengths << p << ":none ";
                  continue;
                }
                o.require(*rep.exact_girth > bound, "p=" + std::to_string(p) + " collision within bound");
                const auto& [u, v] = *rep.witness;
                const Quad hu = testing::mod_quad(testing::oracle_eval(testing::letters_of(u), 2), p);
                const Quad hv = testing::mod_quad(testing::oracle_eval(testing::letters_of(v), 2), p);
                o.require(u.is_positive() && v.is_positive() && !(u == v) && hu == hv,
                          "p=" + std::to_string(p) + " witness");
                lengths << p << ":" << bound << "<" << *rep.exact_girth << " ";
              }
              o.detail << "bound<collision " << lengths.str();
            });

  criterion(6, "100 seeded relations per p in {5, 101, 1009, 64-bit, 256-bit}: verified, negative exponent, "
               "length <= 4 log2 p + 16",
            kRelationLimitMs, [](Outcome& o) {
              const std::vector<std::pair<std::string, mpz_class>> primes{
                  {"5", 5}, {"101", 101}, {"1009", 1009}, {"nextprime(2^63)", next_prime(pow2(63))},
                  {"nextprime(2^255)", next_prime(pow2(255))}};
              std::vector<double> xs, ys;
              for (const auto& [label, p] : primes) {
                long exp2 = 0;
                const double mant = mpz_get_d_2exp(&exp2, p.get_mpz_t());
                const double log2p = static_cast<double>(exp2) + std::log2(mant);
                const double limit = kLengthSlope * log2p + kLengthOffset;
                int verified = 0, negative = 0, within = 0;
                double sum = 0, worst = 0;
                std::vector<std::uint64_t> positive_seeds;
                for (int seed = 1; seed <= kSeeds; ++seed) {
                  const auto rel = attack::build_group_relation(p, static_cast<std::uint64_t>(seed));
                  // Independent check: letter-by-letter product over Z, then mod p.
                  const Quad value = testing::mod_quad(testing::oracle_eval(testing::letters_of(rel.word), 2), p);
                  if (!rel.word.empty() && value == Quad{1, 0, 0, 1}) ++verified;
                  if (rel.word.has_negative_exponent()) {
                    ++negative;
                  } else {
                    positive_seeds.push_back(static_cast<std::uint64_t>(seed));
                  }
                  const double len = rel.length.get_d();
                  if (len <= limit) ++within;
                  sum += len;
                  worst = std::max(worst, len);
                }
                const double mean = sum / kSeeds;
                xs.push_back(log2p);
                ys.push_back(mean);
                o.require(verified == kSeeds, "p=" + label + " verification");
                o.require(negative == kSeeds, "p=" + label + " negative exponent in " + std::to_string(negative) +
                                                  "/" + std::to_string(kSeeds));
                o.require(within == kSeeds, "p=" + label + " length bound");
                o.detail << "\n    p=" << label << ": verified " << verified << "/" << kSeeds << ", negative exponent "
                         << negative << "/" << kSeeds << ", mean length " << mean << ", max " << worst
                         << ", max/log2p " << worst / log2p << ", limit " << limit;
                if (!positive_seeds.empty()) {
                  o.detail << ", positive relations at seeds";
                  for (auto s : positive_seeds) o.detail << ' ' << s;
                }
              }
              // Least-squares fit of mean length against log2 p.
              const double n = static_cast<double>(xs.size());
              double sx = 0, sy = 0, sxx = 0, sxy = 0;
              for (std::size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
              }
              const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
              o.detail << "\n    fit: mean length = " << slope << " log2 p + " << (sy - slope * sx) / n;
            });

  criterion(7, "euclidean_factor and sanov_reduce invert evaluation on 1000 random words each", kRoundTripLimitMs,
            [](Outcome& o) {
              testing::Rng rng(7);
              int ok_factor = 0, ok_reduce = 0;
              for (int i = 0; i < 1000; ++i) {
                const auto w = testing::random_positive_word(rng, rng.uniform(1, 1000));
                const IntMat m = evaluate<IntegerRing>(w, 1);
                if (testing::to_quad(m) == testing::oracle_eval(testing::letters_of(w), 1) &&
                    attack::euclidean_factor(m) == w)
                  ++ok_factor;
                const auto u = testing::random_reduced_word(rng, rng.uniform(0, 24));
                const IntMat n = evaluate<IntegerRing>(u, 2);
                if (testing::to_quad(n) == testing::oracle_eval(testing::letters_of(u), 2) &&
                    attack::sanov_reduce(n) == u)
                  ++ok_reduce;
              }
              o.require(ok_factor == 1000, "euclidean_factor round trip");
              o.require(ok_reduce == 1000, "sanov_reduce round trip");
              o.detail << "factor " << ok_factor << "/1000, reduce " << ok_reduce << "/1000";
            });

  criterion(8, "correction S for the 14 listed residue classes: |entries| <= 5, det 1, M S in Sanov form",
            kCorrectionLimitMs, [](Outcome& o) {
              std::ifstream in(std::string(CAYLEY_DATA_DIR) + "/correction_fixtures.json");
              o.require(static_cast<bool>(in), "fixture file");
              const auto doc = nlohmann::json::parse(in);
              testing::Rng rng(8);
              int checked = 0;
              std::ostringstream unrealizable;
              for (const auto& rec : doc.at("classes")) {
                const auto res = rec.at("residue").get<std::array<int, 4>>();
                const auto listed = rec.at("listed_s").get<std::array<long, 4>>();
                const int id = rec.at("case").get<int>();
                // The listed S must satisfy the mod-4 condition on the residue itself.
                auto r = [&](int i) { return ((res[i] % 4) + 4) % 4; };
                const long pa = r(0) * listed[0] + r(1) * listed[2], pb = r(0) * listed[1] + r(1) * listed[3];
                const long pc = r(2) * listed[0] + r(3) * listed[2], pd = r(2) * listed[1] + r(3) * listed[3];
                o.require(((pa % 4) + 4) % 4 == 1 && ((pd % 4) + 4) % 4 == 1 && pb % 2 == 0 && pc % 2 == 0,
                          "case " + std::to_string(id) + " listed S mod 4");
                const int det = ((res[0] * res[3] - res[1] * res[2]) % 4 + 4) % 4;
                if (det != 1) {
                  o.require(rec.at("lifted_s").is_null(), "case " + std::to_string(id) + " should be unrealizable");
                  unrealizable << " " << id << " (residue det = " << det << " mod 4)";
                  continue;
                }
                for (int i = 0; i < 10; ++i) {
                  IntMat m(IntegerRing{});
                  for (;;) {
                    m = evaluate<IntegerRing>(testing::random_reduced_word(rng, rng.uniform(4, 30)), 1);
                    if (rng.coin()) m = m * IntMat(-1, 0, 0, -1, IntegerRing{});
                    if (std::array<int, 4>{mod4(m.a()), mod4(m.b()), mod4(m.c()), mod4(m.d())} == res) break;
                  }
                  const auto entry = attack::sanov_correction(m);
                  bool small = true;
                  for (const auto& x : entry.s.entries()) small = small && abs(x) <= 5;
                  o.require(small && entry.s.det() == 1 && sanov_form_check(m * entry.s),
                            "case " + std::to_string(id) + " correction");
                  ++checked;
                }
              }
              o.detail << checked << " matrices corrected; no det-1 matrix exists in case" << unrealizable.str();
            });

  criterion(9, "(A(1)B(1))^3 = A(2) B(2)^-1 A(2)^-1 B(2); the quoted length-8 word gives (241,64;64,17)",
            kCrossGeneratorLimitMs, [](Outcome& o) {
              const Quad lhs = testing::oracle_eval_string("ABABAB", 1);
              const Quad rhs = testing::oracle_eval({{'A', 1}, {'B', -1}, {'A', -1}, {'B', 1}}, 2);
              const Quad quoted = testing::oracle_eval({{'A', 2}, {'B', -2}, {'A', -2}, {'B', 2}}, 2);
              o.require(lhs == Quad{13, 8, 8, 5} && lhs == rhs, "verified identity");
              o.require(quoted == Quad{241, 64, 64, 17} && quoted != lhs, "quoted word mismatch");
              const GenWord w = attack::rewrite_a1b1_to_a2b2(parse_word("A B A B A B"));
              o.require(format_word(w) == "A B^-1 A^-1 B", "library rewrite");
            });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
