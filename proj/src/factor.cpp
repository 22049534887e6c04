#include "dmf/factor.hpp"

#include <algorithm>
#include <map>

namespace dmf {

namespace {

Poly x_minus_t(const Poly& x, const Poly& h) {
  return (x - Poly::t(h.field())) % h;
}

/// gcd with the convention that a zero difference means "all of h".
Poly gcd_or_all(const Poly& d, const Poly& h) {
  return d.is_zero() ? h : gcd(d, h);
}

bool is_proper_divisor(const Poly& d, const Poly& h) {
  return d.degree() >= 1 && d.degree() < h.degree();
}

bool small_prime(unsigned m) {
  if (m < 2) return false;
  for (unsigned d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

/// Distinct-degree decomposition of monic squarefree f: pairs
/// (product of all irreducible factors of degree d, d), plus the unfactored
/// cofactor when max_degree cuts the sweep short.
std::pair<std::vector<std::pair<Poly, int>>, Poly> ddf(const Poly& f,
                                                       int max_degree) {
  std::vector<std::pair<Poly, int>> out;
  Poly w = f;
  if (w.degree() < 1) return {out, w};
  Poly xq = powmod(Poly::t(f.field()), f.field()->q(), w);
  Poly xpow = xq;
  bool full_sweep = true;
  for (int d = 1; 2 * d <= w.degree(); ++d) {
    if (d > max_degree) {
      full_sweep = false;
      break;
    }
    if (d > 1) xpow = modcompose(xpow, xq, w);
    Poly g = gcd_or_all(x_minus_t(xpow, w), w);
    if (g.degree() >= 1) {
      out.push_back({g, d});
      w = w / g;
      if (w.degree() < 1) break;
      xpow = xpow % w;
      xq = xq % w;
    }
  }
  if (w.degree() >= 1 && full_sweep) {
    // cofactor surviving the full sweep is irreducible
    out.push_back({w, w.degree()});
    w = Poly::one(f.field());
  }
  return {out, w};
}

}  // namespace

// -- Factorization ------------------------------------------------------------

void Factorization::add(const Poly& factor, int multiplicity) {
  if (!factor.is_monic() || factor.degree() < 1)
    throw std::invalid_argument("factors must be monic nonconstant");
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), factor,
      [](const std::pair<Poly, int>& a, const Poly& b) { return Poly::cmp(a.first, b) < 0; });
  if (it != factors_.end() && it->first == factor)
    it->second += multiplicity;
  else
    factors_.insert(it, {factor, multiplicity});
}

void Factorization::merge(const Factorization& o, int multiplicity_scale) {
  for (const auto& [p, m] : o.factors()) add(p, m * multiplicity_scale);
  Fe u = o.unit();
  for (int i = 0; i < multiplicity_scale; ++i) unit_ *= u;
}

Poly Factorization::product() const {
  Poly r = Poly::constant(unit_);
  for (const auto& [p, m] : factors_)
    for (int i = 0; i < m; ++i) r = r * p;
  return r;
}

int Factorization::smallest_degree() const {
  if (factors_.empty()) throw std::logic_error("empty factorization");
  int s = factors_.front().first.degree();
  for (const auto& [p, m] : factors_) s = std::min(s, p.degree());
  return s;
}

bool Factorization::same_multiset(const Factorization& o) const {
  return unit_ == o.unit_ && factors_ == o.factors_;
}

// -- estimation ---------------------------------------------------------------

Estimate estimate_half_degree_chi(const Poly& h, Rng& rng) {
  DrinfeldContext ctx = DrinfeldContext::make(h);
  auto drawn = new_random(ctx, rng);
  if (auto* ff = std::get_if<FoundFactor>(&drawn))
    return {Estimate::Factor, 0, ff->factor};
  const Poly diff = h - chi(ctx, std::get<DrinfeldModule>(drawn));
  if (diff.is_zero()) return {Estimate::Retry, 0, {}};
  return {Estimate::Value, h.degree() - diff.degree(), {}};
}

Estimate estimate_half_degree_order(const Poly& h, int order_trials, Rng& rng) {
  DrinfeldContext ctx = DrinfeldContext::make(h);
  auto drawn = new_random(ctx, rng);
  if (auto* ff = std::get_if<FoundFactor>(&drawn))
    return {Estimate::Factor, 0, ff->factor};
  const DrinfeldModule& phi = std::get<DrinfeldModule>(drawn);
  const Poly alpha = random_nonzero_residue(h, rng);
  const Poly r = order_of(ctx, phi, alpha, order_trials, rng);
  if (r.degree() != h.degree()) return {Estimate::Retry, 0, {}};
  const Poly diff = h - r;
  if (diff.is_zero()) return {Estimate::Retry, 0, {}};
  return {Estimate::Value, h.degree() - diff.degree(), {}};
}

int carlitz_estimate(const Poly& h) {
  DrinfeldContext ctx = DrinfeldContext::make(h);
  const Poly diff = h - chi(ctx, DrinfeldModule::carlitz(h.field()));
  if (diff.is_zero()) return h.degree();
  return h.degree() - diff.degree();
}

std::optional<int> resolve_smallest_degree(const Poly& h, int s_hat) {
  if (s_hat < 1) throw std::invalid_argument("s_hat must be >= 1");
  const int n = h.degree();
  const Poly xq = powmod(Poly::t(h.field()), h.field()->q(), h);
  std::vector<Poly> xs{xq};  // xs[i] = t^{q^{i+1}} mod h
  auto hits = [&](int s) {
    while (static_cast<int>(xs.size()) < s) xs.push_back(modcompose(xs.back(), xq, h));
    return gcd_or_all(x_minus_t(xs[static_cast<size_t>(s - 1)], h), h).degree() >= 1;
  };
  for (int s : {2 * s_hat - 1, 2 * s_hat}) {
    if (s > n) break;
    if (!hits(s)) continue;
    // a hit caused by factors of a degree properly dividing s means the
    // estimate overshot: report inconsistency so the caller re-estimates
    for (int d = 1; d <= s / 2; ++d)
      if (s % d == 0 && hits(d)) return std::nullopt;
    return s;
  }
  return std::nullopt;
}

// -- extraction ---------------------------------------------------------------

std::vector<Poly> equal_degree_split(const Poly& g, int s, Rng& rng) {
  const Field* f = g.field();
  if (s < 1 || !g.is_monic()) throw std::invalid_argument("bad equal-degree input");
  std::vector<Poly> out;
  if (g.degree() < 1) return out;
  long budget = 64 + 16L * g.degree();
  std::vector<Poly> stack{g};
  const BigInt e = (boost::multiprecision::pow(f->q(), static_cast<unsigned>(s)) - 1) / 2;
  const unsigned trace_len = f->k() * static_cast<unsigned>(s);
  while (!stack.empty()) {
    Poly cur = std::move(stack.back());
    stack.pop_back();
    if (cur.degree() == s) {
      out.push_back(std::move(cur));
      continue;
    }
    for (;;) {
      if (--budget < 0) throw BudgetExhausted("equal-degree split budget exhausted");
      Poly r = random_poly_below(f, cur.degree(), rng);
      if (r.is_zero()) continue;
      Poly d = gcd(r, cur);
      if (!is_proper_divisor(d, cur)) {
        if (f->q_even()) {
          // additive trace map sum r^{2^i}, i < k*s
          Poly tr = r, sq = r;
          for (unsigned i = 1; i < trace_len; ++i) {
            sq = mulmod(sq, sq, cur);
            tr = tr + sq;
          }
          d = gcd_or_all(tr % cur, cur);
        } else {
          d = gcd_or_all((powmod(r, e, cur) - Poly::one(f)) % cur, cur);
        }
      }
      if (is_proper_divisor(d, cur)) {
        stack.push_back(cur / d);
        stack.push_back(std::move(d));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Poly& a, const Poly& b) { return Poly::cmp(a, b) < 0; });
  return out;
}

std::optional<std::pair<std::vector<Poly>, Poly>> extract_factors_of_degree(
    const Poly& h, int s, Rng& rng) {
  if (s < 1 || s > h.degree()) return std::nullopt;
  const Poly xs = frobenius_iterate(h, static_cast<unsigned>(s));
  const Poly g = gcd_or_all(x_minus_t(xs, h), h);
  if (g.degree() < 1 || g.degree() % s != 0) return std::nullopt;
  std::vector<Poly> pieces;
  try {
    pieces = equal_degree_split(g, s, rng);
  } catch (const BudgetExhausted&) {
    return std::nullopt;  // s was not the true smallest degree
  }
  for (const Poly& p : pieces)
    if (p.degree() != s || (s > 1 && !is_irreducible(p))) return std::nullopt;
  return std::make_pair(std::move(pieces), h / g);
}

// -- Drinfeld-Berlekamp -------------------------------------------------------

SplitResult drinfeld_berlekamp_split(const Poly& h, const FactorConfig& cfg,
                                     Rng& rng, FactorStats* stats) {
  const Field* f = h.field();
  DrinfeldContext ctx = DrinfeldContext::make(h);
  auto drawn = new_random(ctx, rng);
  if (auto* ff = std::get_if<FoundFactor>(&drawn)) return *ff;
  const DrinfeldModule& phi = std::get<DrinfeldModule>(drawn);
  const Poly alpha = random_nonzero_residue(h, rng);
  if (stats) ++stats->order_calls;
  const Poly r = order_of(ctx, phi, alpha, cfg.order_trials, rng);
  if (r.degree() < 1) return SplitRetry{};
  // f_lin = product of the linear factors of the order
  const Poly xq_r = powmod(Poly::t(f), f->q(), r);
  const Poly f_lin = gcd_or_all(x_minus_t(xq_r, r), r);
  if (f_lin.is_one()) return SplitRetry{};
  Poly a;
  if (f_lin == r.monic()) {
    // the whole order is a product of linears; dividing out all of them
    // would leave nothing, so divide out a single linear factor instead
    if (f_lin.degree() == 1) return SplitRetry{};
    std::vector<Poly> roots;
    try {
      roots = equal_degree_split(f_lin, 1, rng);
    } catch (const BudgetExhausted&) {
      return SplitRetry{};
    }
    const Poly& ell = roots[rng.below(roots.size())];
    a = r / ell;
  } else {
    a = r / f_lin;
  }
  const Poly w = phi_a(ctx, phi, a, alpha);
  const Poly d = gcd_or_all(w, h);
  if (!is_proper_divisor(d, h)) return SplitRetry{};
  return std::make_pair(d, h / d);
}

Factorization drinfeld_berlekamp_factor(const Poly& h, const FactorConfig& cfg,
                                        Rng& rng, FactorStats* stats) {
  const Field* f = h.field();
  Factorization out(f);
  std::vector<std::pair<Poly, int>> work{{h, 0}};  // (piece, depth)
  while (!work.empty()) {
    auto [w, depth] = std::move(work.back());
    work.pop_back();
    if (stats) stats->max_recursion_depth = std::max(stats->max_recursion_depth, depth);
    if (w.degree() < 1) continue;
    if (w.degree() == 1 || is_irreducible(w)) {
      out.add(w, 1);
      continue;
    }
    bool split_done = false;
    for (int attempt = 0; attempt < cfg.split_budget; ++attempt) {
      SplitResult sr = drinfeld_berlekamp_split(w, cfg, rng, stats);
      if (auto* pr = std::get_if<std::pair<Poly, Poly>>(&sr)) {
        work.push_back({pr->first, depth + 1});
        work.push_back({pr->second, depth + 1});
        split_done = true;
        break;
      }
      if (auto* ff = std::get_if<FoundFactor>(&sr)) {
        work.push_back({ff->factor, depth + 1});
        work.push_back({w / ff->factor, depth + 1});
        split_done = true;
        break;
      }
      if (stats) ++stats->splitter_retries;
    }
    if (!split_done) throw BudgetExhausted("splitter budget exhausted");
  }
  return out;
}

// -- pipelines ----------------------------------------------------------------

int hybrid_threshold(int n) {
  int m = 1;
  while (static_cast<long long>(m) * m * m < static_cast<long long>(n) * n) ++m;
  return m;
}

namespace {

/// DDF + equal-degree split of a monic squarefree polynomial. Any q.
void classical_squarefree_into(Factorization& out, const Poly& part, int mult,
                               Rng& rng) {
  auto [bands, rest] = ddf(part, part.degree());
  if (rest.degree() >= 1) throw std::logic_error("ddf left a cofactor");
  for (const auto& [g, d] : bands)
    for (Poly& p : equal_degree_split(g, d, rng)) out.add(p, mult);
}

}  // namespace

Factorization classical_factor(const Poly& h, Rng& rng) {
  if (h.degree() < 1) throw std::invalid_argument("input must be nonconstant");
  Factorization out(h.field(), h.leading());
  for (const auto& [part, mult] : squarefree_decomposition(h.monic()))
    classical_squarefree_into(out, part, mult, rng);
  return out;
}

Factorization factor_squarefree_drinfeld(const Poly& h, const FactorConfig& cfg,
                                         Rng& rng, FactorStats* stats) {
  const Field* f = h.field();
  if (h.degree() < 1 || !h.is_monic())
    throw std::invalid_argument("input must be monic nonconstant");
  Factorization out(f);
  std::vector<Poly> work;
  if (cfg.algo == Algo::Hybrid) {
    // phase 1: classical sweep over small degrees
    auto [bands, rest] = ddf(h, hybrid_threshold(h.degree()));
    for (const auto& [g, d] : bands)
      for (Poly& p : equal_degree_split(g, d, rng)) out.add(p, 1);
    if (rest.degree() >= 1) work.push_back(rest);
  } else {
    work.push_back(h);
  }
  const bool use_chi = cfg.algo == Algo::DrinfeldChi;
  while (!work.empty()) {
    Poly w = std::move(work.back());
    work.pop_back();
    if (w.degree() < 1) continue;
    if (w.degree() == 1 || is_irreducible(w)) {
      out.add(w, 1);
      continue;
    }
    int budget = cfg.estimate_budget;
    bool advanced = false;
    while (!advanced) {
      // min over a batch of estimates
      int s_hat = -1;
      for (int i = 0; i < cfg.estimate_trials && budget > 0; ) {
        --budget;
        if (stats) ++stats->estimator_calls;
        Estimate e = use_chi ? estimate_half_degree_chi(w, rng)
                             : estimate_half_degree_order(w, cfg.order_trials, rng);
        if (e.kind == Estimate::Factor) {
          work.push_back(e.found_factor);
          work.push_back(w / e.found_factor);
          advanced = true;
          break;
        }
        if (e.kind == Estimate::Retry) continue;
        s_hat = (s_hat < 0) ? e.s_hat : std::min(s_hat, e.s_hat);
        ++i;
      }
      if (advanced) break;
      if (s_hat < 0) throw BudgetExhausted("degree estimation budget exhausted");
      std::optional<int> s = resolve_smallest_degree(w, s_hat);
      if (s) {
        auto extracted = extract_factors_of_degree(w, *s, rng);
        if (extracted) {
          for (Poly& p : extracted->first) out.add(p, 1);
          if (extracted->second.degree() >= 1) work.push_back(extracted->second);
          advanced = true;
          break;
        }
      }
      if (budget <= 0) throw BudgetExhausted("degree estimation budget exhausted");
    }
  }
  return out;
}

namespace {

/// Coefficient embedding F_{p^k} -> F_{p^{kc}} via a root of the base modulus,
/// with an exact linear-algebra descent in the other direction.
struct FieldEmbedding {
  const Field* base;
  const Field* ext;
  std::vector<Fe> rho_pows;  // rho^0 .. rho^{k-1} in ext

  static FieldEmbedding make(const Field* base, unsigned c, Rng& rng) {
    FieldEmbedding em;
    em.base = base;
    em.ext = Field::extension(base->p(), base->k() * c);
    if (base->k() == 1) {
      em.rho_pows = {em.ext->one()};
      return em;
    }
    // root of the base modulus in the big field: split into linear factors
    std::vector<Fe> mc;
    for (std::uint64_t v : base->modulus()) mc.push_back(em.ext->from_int(v));
    Poly pm = Poly::from_coeffs(em.ext, std::move(mc));
    std::vector<Poly> linears = equal_degree_split(pm, 1, rng);
    Fe rho = -linears.front().coeff(0);
    for (const Poly& l : linears) {
      Fe cand = -l.coeff(0);
      if (Fe::cmp(cand, rho) < 0) rho = cand;  // canonical choice
    }
    em.rho_pows.assign(1, em.ext->one());
    for (unsigned i = 1; i < base->k(); ++i) em.rho_pows.push_back(em.rho_pows.back() * rho);
    return em;
  }

  Fe embed(const Fe& x) const {
    Fe r = ext->zero();
    for (unsigned i = 0; i < base->k(); ++i) {
      const std::uint64_t c = x.coeff(i);
      if (c) r += rho_pows[i] * ext->from_int(c);
    }
    return r;
  }

  Poly embed_poly(const Poly& a) const {
    std::vector<Fe> c;
    c.reserve(a.coeffs().size());
    for (const Fe& x : a.coeffs()) c.push_back(embed(x));
    return Poly::from_coeffs(ext, std::move(c));
  }

  std::optional<Fe> descend(const Fe& y) const {
    if (base->k() == 1) {
      for (unsigned i = 1; i < ext->k(); ++i)
        if (y.coeff(i)) return std::nullopt;
      return base->from_int(y.coeff(0));
    }
    const Field* fp = Field::prime(base->p());
    Mat m(fp, ext->k(), base->k());
    for (unsigned j = 0; j < base->k(); ++j)
      for (unsigned i = 0; i < ext->k(); ++i)
        m.at(i, j) = fp->from_int(rho_pows[j].coeff(i));
    std::vector<Fe> rhs;
    for (unsigned i = 0; i < ext->k(); ++i) rhs.push_back(fp->from_int(y.coeff(i)));
    auto sol = solve(m, rhs);
    if (!sol) return std::nullopt;
    std::vector<std::uint64_t> c;
    for (const Fe& x : *sol) c.push_back(x.as_int());
    return base->from_coeffs(c);
  }

  std::optional<Poly> descend_poly(const Poly& a) const {
    std::vector<Fe> c;
    c.reserve(a.coeffs().size());
    for (const Fe& x : a.coeffs()) {
      auto d = descend(x);
      if (!d) return std::nullopt;
      c.push_back(*d);
    }
    return Poly::from_coeffs(base, std::move(c));
  }
};

}  // namespace

Factorization factor_via_extension(const Poly& h, const FactorConfig& cfg,
                                   Rng& rng, FactorStats* stats) {
  const Field* base = h.field();
  const int n = h.degree();
  if (n < 1 || !h.is_monic())
    throw std::invalid_argument("input must be monic nonconstant");
  // smallest prime c with q^c >= (2n)^2
  const BigInt target = BigInt(2 * n) * (2 * n);
  unsigned c = 2;
  while (!small_prime(c) || boost::multiprecision::pow(base->q(), c) < target) ++c;
  if (stats) ++stats->extension_lifts;
  FieldEmbedding em = FieldEmbedding::make(base, c, rng);
  const Poly big_h = em.embed_poly(h);
  Factorization big = (cfg.algo == Algo::DrinfeldBerlekamp)
                          ? drinfeld_berlekamp_factor(big_h, cfg, rng, stats)
                          : factor_squarefree_drinfeld(big_h, cfg, rng, stats);
  Factorization out(base);
  std::map<int, Poly> orbit_products;  // big-field degree -> product of non-rational factors
  for (const auto& [p, mult] : big.factors()) {
    if (mult != 1) throw std::logic_error("squarefree input produced multiplicities");
    if (auto rational = em.descend_poly(p)) {
      out.add(*rational, 1);
      continue;
    }
    auto [it, fresh] = orbit_products.try_emplace(p.degree(), p);
    if (!fresh) it->second = it->second * p;
  }
  for (const auto& [e, prod] : orbit_products) {
    auto down = em.descend_poly(prod);
    if (!down) throw std::logic_error("conjugate orbit product failed to descend");
    // base factors in this bucket are irreducible of degree e*c
    for (Poly& p : equal_degree_split(*down, e * static_cast<int>(c), rng))
      out.add(p, 1);
  }
  return out;
}

Factorization factor(const Poly& h, const FactorConfig& cfg, Rng& rng,
                     FactorStats* stats) {
  const Field* f = h.field();
  if (h.is_zero() || h.degree() < 1)
    throw std::invalid_argument("input must be nonconstant");
  if (cfg.algo != Algo::Classical && f->q_even())
    throw std::invalid_argument("Drinfeld algorithms require odd q; use classical");
  Factorization out(f, h.leading());
  for (const auto& [part, mult] : squarefree_decomposition(h.monic())) {
    if (part.degree() < 1) continue;
    if (part.degree() == 1) {
      out.add(part, mult);
      continue;
    }
    if (cfg.algo == Algo::Classical) {
      Factorization pf(f);
      classical_squarefree_into(pf, part, 1, rng);
      out.merge(pf, mult);
      continue;
    }
    const BigInt needed = BigInt(2 * part.degree()) * (2 * part.degree());
    Factorization pf(f);
    if (f->q() < needed) {
      pf = factor_via_extension(part, cfg, rng, stats);
    } else if (cfg.algo == Algo::DrinfeldBerlekamp) {
      pf = drinfeld_berlekamp_factor(part, cfg, rng, stats);
    } else {
      pf = factor_squarefree_drinfeld(part, cfg, rng, stats);
    }
    out.merge(pf, mult);
  }
  return out;
}

}  // namespace dmf
