#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cayley/algebra.hpp"

namespace cayley::girth {

/// C(k) = A(k) B(k) = (k^2+1, k; k, 1).
IntMat cn_matrix(GenParam k);

/// Powers C(k)^1 .. C(k)^n and their largest entries.
struct GrowthSequence {
  GenParam k;
  std::vector<IntMat> terms;
  std::vector<mpz_class> max_entries;
};

GrowthSequence growth_sequence(GenParam k, std::size_t n);

/// True iff every entry sequence of the powers obeys
/// x_n = (k^2+2) x_{n-1} - x_{n-2}, seeded with C^0 = I.
bool satisfies_recurrence(const GrowthSequence& seq);

/// Largest root of t^2 - (k^2+2) t + 1, the growth rate of C(k)^n.
long double growth_rate(GenParam k);

/// Closed-form real solutions for the (1,1) and (1,2) entries of C(k)^n.
struct ClosedFormEntries {
  long double a;
  long double b;
};
ClosedFormEntries closed_form_entries(GenParam k, unsigned n);

/// Largest matrix entry over all positive words of length m in A(k), B(k),
/// realized by the alternating words ABAB... and BABA.... Requires k >= 2.
mpz_class max_entry_at_length(GenParam k, std::size_t m);

/// Largest m with max_entry_at_length(k, m) < p: no two distinct positive
/// words of length <= m collide mod p. Exact integer arithmetic. Requires p
/// prime and k >= 2.
std::size_t girth_lower_bound(const mpz_class& p, GenParam k);

/// 2 log_lambda(p) with lambda = growth_rate(k). Diagnostic only.
double closed_form_estimate(const mpz_class& p, GenParam k);

struct ExtremalityResult {
  bool holds = true;
  std::uint64_t words_checked = 0;
  mpz_class alternating_max_entry;
  mpz_class alternating_max_row_sum;
  std::optional<GenWord> counterexample;
};

/// Exhaustive check over all 2^n positive words of length n that no word has
/// a larger entry, or a larger row sum, than the alternating words. Throws
/// InvalidArgument if k < 2, n == 0 or n > cap.
ExtremalityResult alternation_extremality_check(GenParam k, std::size_t n, std::size_t cap = 16);

struct BfsOptions {
  std::size_t length_cap = 48;
  unsigned long max_prime = 1024;
  std::size_t node_limit = std::size_t{1} << 25;
};

struct GirthReport {
  mpz_class p;
  GenParam k = 0;
  std::optional<std::size_t> guaranteed_length;
  std::optional<double> estimate;
  /// Length of the longer word in the shortest collision found by BFS.
  std::optional<std::size_t> exact_girth;
  std::optional<std::pair<GenWord, GenWord>> witness;
  /// Set when BFS ran; the largest word length it explored.
  std::optional<std::size_t> searched_length;

  nlohmann::json to_json() const;
};

/// Breadth-first search of the monoid Cayley graph of <A(k), B(k)> mod p from
/// the identity, stopping at the first revisited element. Within a level,
/// words are expanded in lexicographic order with A < B, so the witness is
/// deterministic. Throws ResourceGuard when p exceeds options.max_prime or
/// the node count would exceed options.node_limit.
GirthReport bfs_exact_girth(const mpz_class& p, GenParam k, const BfsOptions& options = {});

/// Bound and estimate (k >= 2), plus BFS when `bfs` is given.
GirthReport analyze(const mpz_class& p, GenParam k, const std::optional<BfsOptions>& bfs = std::nullopt);

}  // namespace cayley::girth
