#include "dmf/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace dmf {

namespace {

double to_double(const BigInt& x) { return x.convert_to<double>(); }

double bernoulli_stderr(double rate, long trials) {
  if (trials <= 0) return 0.0;
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

/// Residue mod a degree-d modulus from a base-q digit index.
Poly residue_from_index(const Field* f, const std::vector<Fe>& elems, long idx,
                        int d) {
  std::vector<Fe> c;
  c.reserve(d);
  const long q = static_cast<long>(elems.size());
  for (int i = 0; i < d; ++i) {
    c.push_back(elems[idx % q]);
    idx /= q;
  }
  return Poly::from_coeffs(f, std::move(c));
}

/// Run chunks [begin, end) of [0, total) on `threads` workers.
void run_chunks(long total, int threads,
                const std::function<void(long, long, int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || total < 2L * threads) {
    fn(0, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mutex;
  const long per = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long b = t * per, e = std::min(total, b + per);
    if (b >= e) break;
    pool.emplace_back([&, b, e, t] {
      try {
        fn(b, e, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// Norm of a residue recomputed from first principles as the product of the
/// Frobenius conjugates x^{q^i} mod p (independent of residue_norm).
Fe conjugate_product_norm(const Poly& p, const Poly& x) {
  const Field* f = p.field();
  Poly conj = x % p;
  Poly prod = Poly::one(f);
  for (int i = 0; i < p.degree(); ++i) {
    prod = mulmod(prod, conj, p);
    conj = powmod(conj, f->q(), p);
  }
  if (prod.degree() > 0) throw std::logic_error("norm product not constant");
  return prod.is_zero() ? f->zero() : prod.coeff(0);
}

}  // namespace

// -- CycleType ----------------------------------------------------------------

CycleType CycleType::from_parts(std::vector<int> parts) {
  for (int p : parts)
    if (p < 1) throw std::invalid_argument("partition parts must be positive");
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return CycleType{std::move(parts)};
}

CycleType CycleType::of_factorization(const Factorization& f) {
  std::vector<int> parts;
  for (const auto& [p, m] : f.factors())
    for (int i = 0; i < m; ++i) parts.push_back(p.degree());
  return from_parts(std::move(parts));
}

int CycleType::d() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::map<int, int> CycleType::multiplicities() const {
  std::map<int, int> m;
  for (int p : parts) ++m[p];
  return m;
}

std::string CycleType::to_string() const {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(parts[i]);
  }
  return s;
}

Rational cycle_type_probability(const CycleType& lambda) {
  BigInt denom = 1;
  for (const auto& [j, mj] : lambda.multiplicities()) {
    for (int i = 0; i < mj; ++i) denom *= j;
    for (int i = 2; i <= mj; ++i) denom *= i;
  }
  return Rational(1, denom);
}

std::vector<CycleType> all_partitions(int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  std::vector<CycleType> out;
  std::vector<int> cur;
  // decreasing-lex enumeration with bounded largest part
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(CycleType{cur});
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

// -- CensusReport -------------------------------------------------------------

double CensusReport::metric_value(const std::string& k) const {
  for (const auto& [key, v] : metrics)
    if (key == k) return v;
  throw std::out_of_range("no metric " + k);
}

std::string CensusReport::to_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "experiment=" << name << '\n';
  for (const auto& [k, v] : params) os << k << '=' << v << '\n';
  os << "trials=" << trials << '\n';
  os << "in_regime=" << (in_regime ? "true" : "false") << '\n';
  if (!regime_note.empty()) os << "regime_note=" << regime_note << '\n';
  for (const auto& c : cells)
    os << "cell." << c.label << ".count=" << c.count << '\n'
       << "cell." << c.label << ".frequency=" << c.frequency << '\n'
       << "cell." << c.label << ".reference=" << c.reference << '\n';
  for (const auto& [k, v] : metrics) os << "metric." << k << '=' << v << '\n';
  return os.str();
}

nlohmann::json CensusReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = name;
  nlohmann::json jp = nlohmann::json::object();
  for (const auto& [k, v] : params) jp[k] = v;
  j["params"] = jp;
  j["trials"] = trials;
  j["in_regime"] = in_regime;
  j["regime_note"] = regime_note;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells)
    j["cells"].push_back({{"label", c.label},
                          {"count", c.count},
                          {"frequency", c.frequency},
                          {"reference", c.reference}});
  nlohmann::json jm = nlohmann::json::object();
  for (const auto& [k, v] : metrics) jm[k] = v;
  j["metrics"] = jm;
  return j;
}

// -- interval_census ----------------------------------------------------------

CensusReport interval_census(const Poly& f, int m, const ExperimentOptions& opt,
                             Rng& rng) {
  const Field* fld = f.field();
  const int d = f.degree();
  if (!f.is_monic() || m < 2 || d <= m)
    throw std::invalid_argument("need f monic with deg f > m >= 2");
  const BigInt interval_size = boost::multiprecision::pow(fld->q(), static_cast<unsigned>(m + 1));
  long total;
  if (opt.exhaustive) {
    if (interval_size > opt.exhaustive_budget)
      throw std::invalid_argument("interval exceeds the exhaustive budget");
    total = interval_size.convert_to<long>();
  } else {
    total = opt.trials;
  }

  const std::vector<CycleType> partitions = all_partitions(d);
  std::vector<Fe> elems = fld->all_elements();
  const int nthreads = std::max(1, opt.threads);
  std::vector<std::map<std::string, long>> tallies(nthreads);

  run_chunks(total, nthreads, [&](long b, long e, int tid) {
    Rng local = rng.split(static_cast<std::uint64_t>(tid) + 1);
    auto& tally = tallies[tid];
    for (long i = b; i < e; ++i) {
      Poly a;
      if (opt.exhaustive) {
        a = residue_from_index(fld, elems, i, m + 1);
      } else {
        Rng trial = rng.split(static_cast<std::uint64_t>(i) + 1);
        a = random_poly_below(fld, m + 1, trial);
      }
      Factorization fac = classical_factor(f + a, local);
      ++tally[CycleType::of_factorization(fac).to_string()];
    }
  });

  std::map<std::string, long> counts;
  for (const auto& t : tallies)
    for (const auto& [k, v] : t) counts[k] += v;

  CensusReport rep;
  rep.name = "interval-census";
  rep.param("q", fld->q().str());
  rep.param("f", f.to_string());
  rep.param("m", std::to_string(m));
  rep.param("mode", opt.exhaustive ? "exhaustive" : "sample");
  rep.trials = total;
  double max_abs = 0.0, max_rel = 0.0;
  long count_sum = 0;
  for (const CycleType& lam : partitions) {
    CensusReport::Cell c;
    c.label = lam.to_string();
    auto it = counts.find(c.label);
    c.count = (it == counts.end()) ? 0 : it->second;
    count_sum += c.count;
    c.frequency = static_cast<double>(c.count) / static_cast<double>(total);
    c.reference = cycle_type_probability(lam).convert_to<double>();
    max_abs = std::max(max_abs, std::abs(c.frequency - c.reference));
    max_rel = std::max(max_rel, std::abs(c.frequency - c.reference) / c.reference);
    rep.cells.push_back(std::move(c));
  }
  if (count_sum != total) throw std::logic_error("census counts do not sum to trials");
  rep.metric("max_abs_deviation", max_abs);
  rep.metric("max_rel_deviation", max_rel);
  rep.metric("band_half_width", 1.0 / std::sqrt(to_double(fld->q())));
  // near-uniformity band holds for log q >= 3 d log d
  rep.in_regime =
      std::log(to_double(fld->q())) >= 3.0 * d * std::log(static_cast<double>(d));
  rep.regime_note = rep.in_regime ? "log q >= 3 d log d"
                                  : "exploratory: below the log q >= 3 d log d regime";
  return rep;
}

// -- success_rate_alg1 --------------------------------------------------------

CensusReport success_rate_alg1(const Poly& h, int s_h, const ExperimentOptions& opt,
                               Rng& rng) {
  const Field* fld = h.field();
  if (fld->q_even()) throw std::invalid_argument("q must be odd");
  const int n = h.degree();
  const int target = (s_h + 1) / 2;  // ceil(s_h / 2)
  const int nthreads = std::max(1, opt.threads);
  // per-thread counts: success, overestimate, retry
  std::vector<std::array<long, 3>> tallies(nthreads, std::array<long, 3>{0, 0, 0});

  run_chunks(opt.trials, nthreads, [&](long b, long e, int tid) {
    auto& t = tallies[tid];
    for (long i = b; i < e; ++i) {
      Rng trial = rng.split(static_cast<std::uint64_t>(i) + 1);
      Estimate est = estimate_half_degree_chi(h, trial);
      if (est.kind != Estimate::Value) {
        ++t[2];  // degenerate draws count as failures
        continue;
      }
      if (est.s_hat < target)
        throw std::logic_error("estimate fell below ceil(s_h/2)");
      ++(est.s_hat == target ? t[0] : t[1]);
    }
  });

  long success = 0, high = 0, retry = 0;
  for (const auto& t : tallies) {
    success += t[0];
    high += t[1];
    retry += t[2];
  }
  const double rate = static_cast<double>(success) / static_cast<double>(opt.trials);

  CensusReport rep;
  rep.name = "success-rate";
  rep.param("q", fld->q().str());
  rep.param("h", h.to_string());
  rep.param("s_h", std::to_string(s_h));
  rep.trials = opt.trials;
  rep.cells = {{"success", success, rate, 0.25},
               {"overestimate", high,
                static_cast<double>(high) / static_cast<double>(opt.trials), 0.0},
               {"retry", retry,
                static_cast<double>(retry) / static_cast<double>(opt.trials), 0.0}};
  rep.metric("rate", rate);
  rep.metric("stderr", bernoulli_stderr(rate, opt.trials));
  rep.metric("bound", 0.25);
  rep.in_regime = fld->q() >= BigInt(2 * n) * (2 * n);
  rep.regime_note = rep.in_regime ? "sqrt(q) >= 2n"
                                  : "exploratory: sqrt(q) < 2n";
  return rep;
}

// -- cyclicity_rate -----------------------------------------------------------

CensusReport cyclicity_rate(const Poly& p, const ExperimentOptions& opt, Rng& rng) {
  const Field* fld = p.field();
  if (fld->q_even()) throw std::invalid_argument("q must be odd");
  if (!is_irreducible(p)) throw std::invalid_argument("p must be irreducible");
  const int d = p.degree();
  const int nthreads = std::max(1, opt.threads);
  std::vector<long> cyclic_tally(nthreads, 0);

  run_chunks(opt.trials, nthreads, [&](long b, long e, int tid) {
    for (long i = b; i < e; ++i) {
      Rng trial = rng.split(static_cast<std::uint64_t>(i) + 1);
      Poly g = random_poly_below(fld, d, trial);
      Poly delta;
      do {
        delta = random_poly_below(fld, d, trial);
      } while (delta.is_zero());
      DrinfeldModule phi = DrinfeldModule::rank2(g, delta);
      ModuleStructure ms = module_structure(p, phi);
      // cross-check against the discriminant gcd criterion: the gcd is an
      // upper bound on m (they can differ when End(phi) exceeds A[pi], where
      // the exact module is cyclic but the gcd is not 1), so the sound checks
      // are divisibility and the implication gcd = 1 => cyclic
      TraceData td = trace_data(p, phi);
      Poly disc = td.a * td.a - p * Poly::constant(fld->from_int(4) * td.eps);
      if (!disc.is_zero()) {
        Poly m_ref = gcd(largest_square_divisor(disc),
                         td.a - Poly::constant(fld->from_int(2)));
        if (!(m_ref % ms.m).is_zero())
          throw std::logic_error("module structure exceeds the gcd bound");
        if (m_ref.is_one() && !ms.cyclic())
          throw std::logic_error("gcd criterion contradicts cyclicity");
      }
      if (ms.cyclic()) ++cyclic_tally[tid];
    }
  });

  long cyclic = 0;
  for (long c : cyclic_tally) cyclic += c;
  const double rate = static_cast<double>(cyclic) / static_cast<double>(opt.trials);
  const double bound =
      1.0 - (d + 0.5) / (2.0 * (to_double(fld->q()) - 1.0));

  CensusReport rep;
  rep.name = "cyclicity";
  rep.param("q", fld->q().str());
  rep.param("p", p.to_string());
  rep.trials = opt.trials;
  rep.cells = {{"cyclic", cyclic, rate, bound},
               {"noncyclic", opt.trials - cyclic, 1.0 - rate, 0.0}};
  rep.metric("rate", rate);
  rep.metric("stderr", bernoulli_stderr(rate, opt.trials));
  rep.metric("bound", bound);
  rep.in_regime = true;
  rep.regime_note = "bound 1 - (d + 1/2)/(2(q-1)) holds for all odd q";
  return rep;
}

// -- split_balance ------------------------------------------------------------

CensusReport split_balance(const Poly& h, const std::vector<Poly>& factors,
                           const ExperimentOptions& opt, Rng& rng) {
  const Field* fld = h.field();
  if (fld->q_even()) throw std::invalid_argument("q must be odd");
  FactorConfig cfg;
  cfg.order_trials = opt.order_trials;
  const int nthreads = std::max(1, opt.threads);
  struct Tally {
    std::vector<long> divides;
    long non_retry = 0, retry = 0;
  };
  std::vector<Tally> tallies(nthreads, Tally{std::vector<long>(factors.size(), 0)});

  run_chunks(opt.trials, nthreads, [&](long b, long e, int tid) {
    Tally& t = tallies[tid];
    for (long i = b; i < e; ++i) {
      Rng trial = rng.split(static_cast<std::uint64_t>(i) + 1);
      SplitResult sr = drinfeld_berlekamp_split(h, cfg, trial);
      Poly out;
      if (auto* pr = std::get_if<std::pair<Poly, Poly>>(&sr))
        out = pr->first;
      else if (auto* ff = std::get_if<FoundFactor>(&sr))
        out = ff->factor;
      else {
        ++t.retry;
        continue;
      }
      ++t.non_retry;
      for (size_t j = 0; j < factors.size(); ++j)
        if ((out % factors[j]).is_zero()) ++t.divides[j];
    }
  });

  long non_retry = 0, retry = 0;
  std::vector<long> divides(factors.size(), 0);
  for (const Tally& t : tallies) {
    non_retry += t.non_retry;
    retry += t.retry;
    for (size_t j = 0; j < factors.size(); ++j) divides[j] += t.divides[j];
  }

  CensusReport rep;
  rep.name = "split-balance";
  rep.param("q", fld->q().str());
  rep.param("h", h.to_string());
  rep.trials = opt.trials;
  double min_rate = 1.0, max_rate = 0.0;
  for (size_t j = 0; j < factors.size(); ++j) {
    const double r = non_retry > 0
                         ? static_cast<double>(divides[j]) / static_cast<double>(non_retry)
                         : 0.0;
    min_rate = std::min(min_rate, r);
    max_rate = std::max(max_rate, r);
    rep.cells.push_back({factors[j].to_string(), divides[j], r, 0.0});
  }
  rep.metric("non_retry", static_cast<double>(non_retry));
  rep.metric("retry_fraction",
             static_cast<double>(retry) / static_cast<double>(opt.trials));
  rep.metric("min_rate", min_rate);
  rep.metric("max_rate", max_rate);
  const int n = h.degree();
  rep.in_regime = std::log(to_double(fld->q())) >= 5.0 * n * std::log(std::max(2.0, static_cast<double>(n)));
  rep.regime_note = rep.in_regime ? "log q >= 5 n log n"
                                  : "exploratory: below the log q >= 5 n log n regime";
  return rep;
}

// -- trace_census -------------------------------------------------------------

CensusReport trace_census(const Poly& p, const ExperimentOptions& opt, Rng& rng) {
  const Field* fld = p.field();
  if (fld->q_even()) throw std::invalid_argument("q must be odd");
  if (!is_irreducible(p)) throw std::invalid_argument("p must be irreducible");
  const int d = p.degree();
  const BigInt qd = boost::multiprecision::pow(fld->q(), static_cast<unsigned>(d));
  long total;
  if (opt.exhaustive) {
    const BigInt n_modules = qd * (qd - 1);
    if (n_modules > opt.exhaustive_budget)
      throw std::invalid_argument("module count exceeds the exhaustive budget");
    total = n_modules.convert_to<long>();
  } else {
    total = opt.trials;
  }
  std::vector<Fe> elems = fld->all_elements();
  const long qd_long = opt.exhaustive ? qd.convert_to<long>() : 0;

  std::map<std::string, long> counts;
  long disc_full_degree = 0;
  for (long i = 0; i < total; ++i) {
    Poly g, delta;
    if (opt.exhaustive) {
      g = residue_from_index(fld, elems, i / (qd_long - 1), d);
      delta = residue_from_index(fld, elems, 1 + i % (qd_long - 1), d);
    } else {
      Rng trial = rng.split(static_cast<std::uint64_t>(i) + 1);
      g = random_poly_below(fld, d, trial);
      do {
        delta = random_poly_below(fld, d, trial);
      } while (delta.is_zero());
    }
    TraceData td = trace_data(p, DrinfeldModule::rank2(g, delta));
    if (2 * td.a.degree() > d) throw std::logic_error("trace degree bound violated");
    // eps cross-check from an independently computed norm
    Fe norm = conjugate_product_norm(p, delta);
    Fe sign = (d % 2 == 0) ? fld->one() : -fld->one();
    if (td.eps * sign * norm != fld->one())
      throw std::logic_error("eps disagrees with conjugate-product norm");
    Poly disc = td.a * td.a - p * Poly::constant(fld->from_int(4) * td.eps);
    if (disc.degree() == d) ++disc_full_degree;
    ++counts["a=" + td.a.to_string() + ";eps=" + td.eps.to_string()];
  }

  CensusReport rep;
  rep.name = "trace-census";
  rep.param("q", fld->q().str());
  rep.param("p", p.to_string());
  rep.param("mode", opt.exhaustive ? "exhaustive" : "sample");
  rep.trials = total;
  double min_freq = 1.0, max_freq = 0.0;
  for (const auto& [label, count] : counts) {
    const double freq = static_cast<double>(count) / static_cast<double>(total);
    min_freq = std::min(min_freq, freq);
    max_freq = std::max(max_freq, freq);
    rep.cells.push_back({label, count, freq, 0.0});
  }
  rep.metric("cells", static_cast<double>(counts.size()));
  rep.metric("min_cell_frequency", min_freq);
  rep.metric("max_cell_frequency", max_freq);
  rep.metric("disc_full_degree_fraction",
             static_cast<double>(disc_full_degree) / static_cast<double>(total));
  rep.in_regime = true;
  rep.regime_note = "distributional reference values are not asserted";
  return rep;
}

}  // namespace dmf
