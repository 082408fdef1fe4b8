#include "cayley/girth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "cayley/primes.hpp"

namespace cayley::girth {

namespace {

void require_k2(GenParam k) {
  if (k < 2) throw InvalidArgument("alternation bounds need k >= 2");
}

long double log_of(const mpz_class& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(static_cast<long double>(mant)) + static_cast<long double>(exp) * std::log(2.0L);
}

mpz_class max_row_sum(const IntMat& m) { return std::max(m.a() + m.b(), m.c() + m.d()); }

// Both alternating words of the current length, extended one letter at a time.
class AlternatingPair {
 public:
  explicit AlternatingPair(GenParam k) : k_(k) {}

  void extend() {
    const Letter next_a = (length_ % 2 == 0) ? Letter::A : Letter::B;
    right_multiply_power(from_a_, next_a, 1, k_);
    right_multiply_power(from_b_, other(next_a), 1, k_);
    ++length_;
  }

  mpz_class max_entry() const { return std::max(from_a_.max_entry(), from_b_.max_entry()); }
  mpz_class max_row_sum() const { return std::max(girth::max_row_sum(from_a_), girth::max_row_sum(from_b_)); }

 private:
  GenParam k_;
  std::size_t length_ = 0;
  IntMat from_a_, from_b_;
};

struct ExhaustiveSweep {
  GenParam k;
  std::size_t n;
  const mpz_class& max_entry;
  const mpz_class& max_row;
  std::vector<Letter> letters;
  ExtremalityResult& result;

  void run(const IntMat& m) {
    if (letters.size() == n) {
      ++result.words_checked;
      if (result.holds && (m.max_entry() > max_entry || max_row_sum(m) > max_row)) {
        result.holds = false;
        GenWord w;
        for (auto l : letters) w.append(l, 1);
        result.counterexample = std::move(w);
      }
      return;
    }
    for (Letter l : {Letter::A, Letter::B}) {
      IntMat next = m;
      right_multiply_power(next, l, 1, k);
      letters.push_back(l);
      run(next);
      letters.pop_back();
    }
  }
};

GenWord word_from_letters(const std::string& s) {
  GenWord w;
  for (char ch : s) w.append(ch == 'A' ? Letter::A : Letter::B, 1);
  return w;
}

}  // namespace

IntMat cn_matrix(GenParam k) {
  return generator<IntegerRing>(Letter::A, k) * generator<IntegerRing>(Letter::B, k);
}

GrowthSequence growth_sequence(GenParam k, std::size_t n) {
  GrowthSequence seq{k, {}, {}};
  const IntMat c = cn_matrix(k);
  IntMat power;
  for (std::size_t i = 1; i <= n; ++i) {
    power = power * c;
    seq.max_entries.push_back(power.max_entry());
    seq.terms.push_back(power);
  }
  return seq;
}

bool satisfies_recurrence(const GrowthSequence& seq) {
  const mpz_class t = mpz_class(seq.k) * seq.k + 2;
  const IntMat id;
  for (std::size_t i = 1; i < seq.terms.size(); ++i) {
    const IntMat& prev2 = i >= 2 ? seq.terms[i - 2] : id;
    const IntMat& prev1 = seq.terms[i - 1];
    for (std::size_t e = 0; e < 4; ++e) {
      if (seq.terms[i].entries()[e] != t * prev1.entries()[e] - prev2.entries()[e]) return false;
    }
  }
  return true;
}

long double growth_rate(GenParam k) {
  const long double t = static_cast<long double>(k) * k + 2;
  return (t + std::sqrt(t * t - 4)) / 2;
}

ClosedFormEntries closed_form_entries(GenParam k, unsigned n) {
  const long double t = static_cast<long double>(k) * k + 2;
  const long double root_disc = std::sqrt(t * t - 4);
  const long double up = std::pow((t + root_disc) / 2, static_cast<long double>(n));
  const long double down = std::pow((t - root_disc) / 2, static_cast<long double>(n));
  const long double kk = static_cast<long double>(k);
  return {(up + down) / 2 + kk * kk / (2 * root_disc) * (up - down), kk / root_disc * (up - down)};
}

mpz_class max_entry_at_length(GenParam k, std::size_t m) {
  require_k2(k);
  if (m == 0) throw InvalidArgument("word length must be >= 1");
  AlternatingPair alt(k);
  for (std::size_t i = 0; i < m; ++i) alt.extend();
  return alt.max_entry();
}

std::size_t girth_lower_bound(const mpz_class& p, GenParam k) {
  require_k2(k);
  if (!is_probable_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
  // Length 0 (the empty word) has max entry 1 < p.
  AlternatingPair alt(k);
  std::size_t m = 0;
  for (;;) {
    alt.extend();
    if (alt.max_entry() >= p) return m;
    ++m;
  }
}

double closed_form_estimate(const mpz_class& p, GenParam k) {
  require_k2(k);
  return static_cast<double>(2 * log_of(p) / std::log(growth_rate(k)));
}

ExtremalityResult alternation_extremality_check(GenParam k, std::size_t n, std::size_t cap) {
  require_k2(k);
  if (n == 0) throw InvalidArgument("word length must be >= 1");
  if (n > cap) {
    throw InvalidArgument("length " + std::to_string(n) + " exceeds the exhaustive cap " + std::to_string(cap));
  }
  AlternatingPair alt(k);
  for (std::size_t i = 0; i < n; ++i) alt.extend();
  ExtremalityResult result;
  result.alternating_max_entry = alt.max_entry();
  result.alternating_max_row_sum = alt.max_row_sum();
  ExhaustiveSweep sweep{k, n, result.alternating_max_entry, result.alternating_max_row_sum, {}, result};
  sweep.letters.reserve(n);
  sweep.run(IntMat{});
  return result;
}

GirthReport bfs_exact_girth(const mpz_class& p, GenParam k, const BfsOptions& options) {
  if (k < 1) throw InvalidArgument("generator parameter k must be >= 1");
  if (p > options.max_prime || p >= 65536) {
    throw ResourceGuard("exact BFS refused: p = " + p.get_str() + " exceeds the guard " +
                        std::to_string(options.max_prime) +
                        " (|SL2(F_p)| ~ p^3 states must fit in memory)");
  }
  if (!is_probable_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
  if (p <= k) throw InvalidArgument("BFS needs p > k");

  const std::uint64_t q = p.get_ui();
  const std::uint64_t kk = k % q;

  struct Node {
    std::uint32_t parent;
    Letter letter;
    std::array<std::uint32_t, 4> m;
  };
  auto key = [q](const std::array<std::uint32_t, 4>& m) {
    return ((std::uint64_t{m[0]} * q + m[1]) * q + m[2]) * q + m[3];
  };

  GirthReport report;
  report.p = p;
  report.k = k;
  if (k >= 2) {
    report.guaranteed_length = girth_lower_bound(p, k);
    report.estimate = closed_form_estimate(p, k);
  }

  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  nodes.push_back({0, Letter::A, {1, 0, 0, 1}});
  seen.emplace(key(nodes[0].m), 0);

  auto word_of = [&nodes](std::uint32_t idx) {
    std::string s;
    while (idx != 0) {
      s += to_char(nodes[idx].letter);
      idx = nodes[idx].parent;
    }
    std::reverse(s.begin(), s.end());
    return s;
  };

  std::size_t level_begin = 0;
  for (std::size_t level = 1; level <= options.length_cap; ++level) {
    const std::size_t level_end = nodes.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter l : {Letter::A, Letter::B}) {
        const auto& m = nodes[i].m;
        std::array<std::uint32_t, 4> next = m;
        if (l == Letter::A) {
          next[1] = static_cast<std::uint32_t>((m[1] + kk * m[0]) % q);
          next[3] = static_cast<std::uint32_t>((m[3] + kk * m[2]) % q);
        } else {
          next[0] = static_cast<std::uint32_t>((m[0] + kk * m[1]) % q);
          next[2] = static_cast<std::uint32_t>((m[2] + kk * m[3]) % q);
        }
        const auto [it, inserted] = seen.emplace(key(next), static_cast<std::uint32_t>(nodes.size()));
        if (!inserted) {
          report.exact_girth = level;
          report.searched_length = level;
          report.witness = std::make_pair(word_from_letters(word_of(it->second)),
                                          word_from_letters(word_of(static_cast<std::uint32_t>(i)) + to_char(l)));
          return report;
        }
        if (nodes.size() >= options.node_limit) {
          throw ResourceGuard("exact BFS exceeded the node limit of " + std::to_string(options.node_limit));
        }
        nodes.push_back({static_cast<std::uint32_t>(i), l, next});
      }
    }
    level_begin = level_end;
  }
  report.searched_length = options.length_cap;
  return report;
}

GirthReport analyze(const mpz_class& p, GenParam k, const std::optional<BfsOptions>& bfs) {
  if (bfs) return bfs_exact_girth(p, k, *bfs);
  GirthReport report;
  report.p = p;
  report.k = k;
  report.guaranteed_length = girth_lower_bound(p, k);
  report.estimate = closed_form_estimate(p, k);
  return report;
}

nlohmann::json GirthReport::to_json() const {
  nlohmann::json j;
  j["p"] = p.get_str();
  j["k"] = k;
  if (guaranteed_length) j["guaranteed_length"] = *guaranteed_length;
  if (estimate) j["estimate"] = *estimate;
  if (searched_length) j["searched_length"] = *searched_length;
  if (exact_girth) j["exact_girth"] = *exact_girth;
  if (witness) {
    j["witness_u"] = format_word(witness->first);
    j["witness_v"] = format_word(witness->second);
  }
  return j;
}

}  // namespace cayley::girth
