#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include <json.hpp>

#include "cayley/algebra.hpp"
#include "cayley/factor.hpp"

namespace cayley::attack {

/// Integer matrix (1 + k1 p, k2 p; k3 p, 1 + k4 p) with determinant exactly 1
/// and all k_i > 0, hence congruent to the identity mod p.
struct IdentityLift {
  mpz_class p;
  std::array<mpz_class, 4> k;
  IntMat matrix;
};

enum class LiftMode {
  /// Closed form in one random parameter s; Sanov form, but with k3 = 2 its
  /// A(2), B(2) word carries an exponent of order p.
  sanov_constrained,
  /// Sanov form with all k_i of order p, solved through a quadratic
  /// congruence modulo a random prime. Word length O(log p) in practice.
  sanov_balanced,
  /// Positive lift found by factoring k2 k3 = lambda + k1 k4. Desk scale only.
  plain,
};

/// The closed-form constrained lift for a given s in [1, p-1]:
/// k = (4s, 2(4s(p-s)+1), 2, 4(p-s)).
IdentityLift constrained_lift(const mpz_class& p, const mpz_class& s);

/// Draws a lift of the requested kind; reproducible for a fixed seed.
/// Throws InvalidArgument for p = 2 or composite p, and BudgetExhausted when
/// plain mode cannot factor within `budget` after `attempts` resamples.
IdentityLift find_identity_lift(const mpz_class& p, LiftMode mode, std::uint64_t seed,
                                const FactorBudget& budget = {}, unsigned attempts = 64);

/// Unique positive word w over A(1), B(1) with evaluate(w, 1) = m, found by
/// Euclidean peeling of whole runs. Throws NotPositiveWord when m has a
/// negative entry or is otherwise outside the monoid, InvalidArgument when
/// det(m) != 1.
GenWord euclidean_factor(const IntMat& m);

/// A small matrix S (|entries| <= 5, det 1) with m S in Sanov form. The
/// choice depends only on m mod 4 and is the smallest candidate in the order
/// (max |entry|, sum |entry|, lexicographic); S = I if m is already in form.
struct CorrectionEntry {
  std::array<int, 4> residue;
  IntMat s;
};
CorrectionEntry sanov_correction(const IntMat& m);

/// Unique freely reduced signed word u over A(2), B(2) with evaluate(u, 2) = m.
/// Throws NotInSanovSubgroup if m fails sanov_form_check.
GenWord sanov_reduce(const IntMat& m);

/// evaluate(w, 1) rewritten as a word in A(2), B(2). Throws
/// NotInSanovSubgroup when the value is outside that subgroup.
GenWord rewrite_a1b1_to_a2b2(const GenWord& w);

/// evaluate(word, k) == I over F_p.
bool verify_relation(const GenWord& word, const mpz_class& p, GenParam k);

struct RelationOptions {
  /// Candidates are drawn until one reduces to at most
  /// slope * log2(p) + offset letters, or the budget runs out, in which case
  /// the shortest seen is returned.
  double slope = 4.0;
  double offset = 16.0;
  unsigned max_candidates = 4096;
};

struct Relation {
  GenWord word;
  mpz_class p;
  GenParam k = 2;
  bool verified = false;
  mpz_class length;
  std::uint64_t seed = 0;
  unsigned candidates = 0;
  IdentityLift lift;
  double elapsed_ms = 0;

  nlohmann::json to_json() const;
};

/// A relation w(A(2), B(2)) = 1 over F_p built from a balanced Sanov-form
/// identity lift. The returned word is nonempty and verified.
Relation build_group_relation(const mpz_class& p, std::uint64_t seed, const RelationOptions& options = {});

/// The lift-then-correct route: plain lift M, its A(1), B(1) factorization,
/// a correction S with M S in Sanov form, and u = sanov_reduce(M S). Since
/// M = I mod p, u evaluates to S (not I) over F_p.
struct CorrectionPipelineResult {
  IdentityLift lift;
  GenWord a1b1_word;
  IntMat correction;
  GenWord word;
  std::optional<FpMat> word_mod_p;
  bool matches_correction = false;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  nlohmann::json to_json() const;
};

CorrectionPipelineResult correction_pipeline(const mpz_class& p, std::uint64_t seed, const FactorBudget& budget = {});

}  // namespace cayley::attack
