#ifndef DMF_FACTOR_HPP
#define DMF_FACTOR_HPP

#include <variant>

#include "dmf/drinfeld.hpp"
#include "dmf/poly.hpp"

namespace dmf {

/// Raised when a randomized stage exceeds its retry budget. Should not occur
/// at the recommended parameters; surfaced as a diagnostic (CLI exit code 2).
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Multiset of (monic irreducible, multiplicity) pairs, canonically sorted by
/// (degree, coefficients), together with the unit making the input monic.
class Factorization {
 public:
  Factorization(const Field* f, Fe unit) : f_(f), unit_(std::move(unit)) {}
  explicit Factorization(const Field* f) : f_(f), unit_(f->one()) {}

  void add(const Poly& factor, int multiplicity);
  void merge(const Factorization& o, int multiplicity_scale = 1);

  const std::vector<std::pair<Poly, int>>& factors() const { return factors_; }
  const Fe& unit() const { return unit_; }
  void set_unit(Fe u) { unit_ = std::move(u); }
  const Field* field() const { return f_; }

  /// unit * prod factor^mult.
  Poly product() const;
  /// Smallest factor degree; throws if empty.
  int smallest_degree() const;
  bool same_multiset(const Factorization& o) const;

 private:
  const Field* f_;
  Fe unit_;
  std::vector<std::pair<Poly, int>> factors_;
};

enum class Algo { Classical, DrinfeldChi, DrinfeldOrder, DrinfeldBerlekamp, Hybrid };

struct FactorConfig {
  Algo algo = Algo::Hybrid;
  int order_trials = kDefaultOrderTrials;
  int estimate_trials = 8;    // min over this many estimates before resolving
  int estimate_budget = 64;   // estimation attempts per cofactor
  int split_budget = 128;     // splitter attempts per recursion node
};

/// Counters reported in CLI output; purely observational.
struct FactorStats {
  long estimator_calls = 0;
  long order_calls = 0;
  long splitter_retries = 0;
  long extension_lifts = 0;
  int max_recursion_depth = 0;
};

// -- degree estimation (Drinfeld paths need h monic squarefree, q odd) -------

struct Estimate {
  enum Kind { Value, Factor, Retry } kind;
  int s_hat = 0;       // valid when kind == Value
  Poly found_factor;   // valid when kind == Factor
};

/// Algorithm with a random rank-2 module and exact chi: n - deg(h - chi).
/// Output >= ceil(s_h/2) always; equals it with probability >= 1/4 when
/// sqrt(q) >= 2n.
Estimate estimate_half_degree_chi(const Poly& h, Rng& rng);

/// Order-based variant: Ord(alpha) for random nonzero alpha, gated on
/// deg(Ord) = deg(h).
Estimate estimate_half_degree_order(const Poly& h, int order_trials, Rng& rng);

/// Deterministic Carlitz-module estimate; exact s_h when the number of
/// minimal-degree factors is not divisible by the characteristic.
int carlitz_estimate(const Poly& h);

/// Tests s = 2*s_hat - 1 then s = 2*s_hat for a nontrivial gcd(t^{q^s} - t, h);
/// nullopt when both are trivial (estimate was too large; caller re-estimates).
std::optional<int> resolve_smallest_degree(const Poly& h, int s_hat);

// -- extraction --------------------------------------------------------------

/// Splits a product of distinct same-degree irreducibles. Odd q uses
/// Cantor-Zassenhaus power maps; q = 2^k uses the additive trace map.
std::vector<Poly> equal_degree_split(const Poly& g, int s, Rng& rng);

/// All irreducible factors of degree s (s must be the smallest factor degree)
/// plus the cofactor; nullopt when the gcd is trivial or validation fails.
std::optional<std::pair<std::vector<Poly>, Poly>> extract_factors_of_degree(
    const Poly& h, int s, Rng& rng);

// -- Drinfeld-Berlekamp splitter ---------------------------------------------

struct SplitRetry {};
using SplitResult = std::variant<std::pair<Poly, Poly>, FoundFactor, SplitRetry>;

/// One splitter round: random module and alpha, f = gcd(t^q - t, Ord(alpha)),
/// candidate factor gcd(h, phi_{Ord/f}(alpha)). When the order is entirely a
/// product of linears, a single linear factor is divided out instead.
SplitResult drinfeld_berlekamp_split(const Poly& h, const FactorConfig& cfg,
                                     Rng& rng, FactorStats* stats = nullptr);

/// Complete factorization of monic squarefree h by recursive splitting.
Factorization drinfeld_berlekamp_factor(const Poly& h, const FactorConfig& cfg,
                                        Rng& rng, FactorStats* stats = nullptr);

// -- complete pipelines ------------------------------------------------------

/// Classical baseline: squarefree + distinct-degree + equal-degree. Any q.
Factorization classical_factor(const Poly& h, Rng& rng);

/// Degree-estimation pipeline on monic squarefree h: optional classical phase
/// for degrees up to ceil(n^{2/3}), then repeated
/// {estimate, resolve, extract} rounds on the cofactor.
Factorization factor_squarefree_drinfeld(const Poly& h, const FactorConfig& cfg,
                                         Rng& rng, FactorStats* stats = nullptr);

/// Lift to F_{q^c} for the smallest prime c with q^c >= (2n)^2, factor there,
/// and descend: rational factors directly, conjugate orbits via per-degree
/// products and equal-degree splitting over F_q.
Factorization factor_via_extension(const Poly& h, const FactorConfig& cfg,
                                   Rng& rng, FactorStats* stats = nullptr);

/// Top-level dispatcher: normalizes to monic, decomposes into squarefree
/// parts, routes each part to the selected algorithm (automatically through
/// factor_via_extension when sqrt(q) < 2 deg), merges multiplicities.
Factorization factor(const Poly& h, const FactorConfig& cfg, Rng& rng,
                     FactorStats* stats = nullptr);

/// Smallest m with m^3 >= n^2 (the hybrid phase-1 degree threshold).
int hybrid_threshold(int n);

}  // namespace dmf

#endif
