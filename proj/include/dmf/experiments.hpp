#ifndef DMF_EXPERIMENTS_HPP
#define DMF_EXPERIMENTS_HPP

#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "dmf/factor.hpp"

namespace dmf {

using Rational = boost::multiprecision::cpp_rational;

/// Partition of d recording the multiset of irreducible-factor degrees
/// (the cycle type of a Frobenius-style permutation).
struct CycleType {
  std::vector<int> parts;  // weakly decreasing, positive

  static CycleType from_parts(std::vector<int> parts);
  /// Degrees with multiplicity of a squarefree-or-not factorization.
  static CycleType of_factorization(const Factorization& f);

  int d() const;
  std::map<int, int> multiplicities() const;  // j -> m_j
  std::string to_string() const;              // "3+1+1"

  bool operator==(const CycleType& o) const { return parts == o.parts; }
  bool operator<(const CycleType& o) const { return parts < o.parts; }
};

/// P(lambda) = 1 / prod_j j^{m_j} m_j!  (fraction of S_d with this cycle type).
Rational cycle_type_probability(const CycleType& lambda);

/// All partitions of d in decreasing lexicographic order.
std::vector<CycleType> all_partitions(int d);

/// Tabulated outcome of a statistical run. Serializes to key=value text and
/// JSON; cells are kept sorted by label for bit-for-bit reproducibility.
struct CensusReport {
  struct Cell {
    std::string label;
    long count = 0;
    double frequency = 0.0;
    double reference = 0.0;  // expected frequency where defined, else 0
  };

  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // insertion order
  long trials = 0;
  std::vector<Cell> cells;
  std::vector<std::pair<std::string, double>> metrics;
  bool in_regime = false;
  std::string regime_note;

  void param(const std::string& k, const std::string& v) { params.push_back({k, v}); }
  void metric(const std::string& k, double v) { metrics.push_back({k, v}); }
  double metric_value(const std::string& k) const;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

struct ExperimentOptions {
  long trials = 500;
  int threads = 1;
  bool exhaustive = false;
  long exhaustive_budget = 2'000'000;  // max interval size in exhaustive mode
  int order_trials = kDefaultOrderTrials;
};

/// Factors every g = f + a (deg a <= m) with the classical baseline and
/// compares cycle-type frequencies against P(lambda). Sampling mode draws
/// opt.trials uniform a instead.
CensusReport interval_census(const Poly& f, int m, const ExperimentOptions& opt,
                             Rng& rng);

/// Success = chi-based estimate equals ceil(s_h/2) with a fresh random module
/// per trial; asserts the estimate is never below that floor.
CensusReport success_rate_alg1(const Poly& h, int s_h, const ExperimentOptions& opt,
                               Rng& rng);

/// Fraction of uniform modules phi mod p with phi(F_p) cyclic, tested both via
/// module_structure and the gcd criterion (they must agree on every trial).
CensusReport cyclicity_rate(const Poly& p, const ExperimentOptions& opt, Rng& rng);

/// Per-prime divide rate of the Drinfeld-Berlekamp splitter output over
/// non-Retry trials; factors is the known factor list of squarefree h.
CensusReport split_balance(const Poly& h, const std::vector<Poly>& factors,
                           const ExperimentOptions& opt, Rng& rng);

/// Joint empirical distribution of (a, eps) over random modules mod p;
/// exhaustive mode enumerates all q^d (q^d - 1) modules.
CensusReport trace_census(const Poly& p, const ExperimentOptions& opt, Rng& rng);

}  // namespace dmf

#endif
