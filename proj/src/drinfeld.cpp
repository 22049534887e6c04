#include "dmf/drinfeld.hpp"

namespace dmf {

namespace {

void require_odd_q(const Field* f) {
  if (f->q_even())
    throw std::invalid_argument("Drinfeld operations require odd q");
}

std::vector<Fe> residue_to_vec(const Poly& r, int n) {
  std::vector<Fe> v(n, r.field()->zero());
  for (int i = 0; i <= r.degree(); ++i) v[i] = r.coeff(i);
  return v;
}

Poly vec_to_residue(const Field* f, const std::vector<Fe>& v) {
  return Poly::from_coeffs(f, v);
}

// Matrix whose column j is r^j mod h, i.e. the composition map f -> f(r) mod h.
Mat composition_matrix(const Poly& r, const Poly& h) {
  const int n = h.degree();
  Mat m(h.field(), static_cast<size_t>(n), static_cast<size_t>(n));
  Poly pw = Poly::one(h.field());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= pw.degree(); ++i) m.at(i, j) = pw.coeff(i);
    if (j + 1 < n) pw = mulmod(pw, r, h);
  }
  return m;
}

}  // namespace

DrinfeldContext DrinfeldContext::make(const Poly& h) {
  if (h.is_zero() || !h.is_monic() || h.degree() < 1)
    throw std::invalid_argument("context modulus must be monic of degree >= 1");
  Poly xq = powmod(Poly::t(h.field()), h.field()->q(), h);
  Poly xq2 = modcompose(xq, xq, h);
  Mat frob = composition_matrix(xq, h);
  Mat frob2 = composition_matrix(xq2, h);
  return DrinfeldContext{h, std::move(xq), std::move(xq2), std::move(frob),
                         std::move(frob2)};
}

Poly DrinfeldContext::tau(const Poly& beta) const {
  return vec_to_residue(field(), frob.apply(residue_to_vec(beta % h, n())));
}

Poly DrinfeldContext::tau2(const Poly& beta) const {
  return vec_to_residue(field(), frob2.apply(residue_to_vec(beta % h, n())));
}

std::variant<DrinfeldModule, FoundFactor> new_random(const DrinfeldContext& ctx,
                                                     Rng& rng) {
  require_odd_q(ctx.field());
  const int n = ctx.n();
  Poly g = random_poly_below(ctx.field(), n, rng);
  Poly delta;
  do {
    delta = random_poly_below(ctx.field(), n, rng);
  } while (delta.is_zero());
  Poly d = gcd(delta, ctx.h);
  if (!d.is_one()) return FoundFactor{d};
  return DrinfeldModule::rank2(std::move(g), std::move(delta));
}

Poly phi_t(const DrinfeldContext& ctx, const DrinfeldModule& phi, const Poly& beta) {
  if (beta.is_zero()) return beta;
  const Poly tb = mulmod(Poly::t(ctx.field()), beta, ctx.h);
  if (phi.rank == 1) return (tb + ctx.tau(beta)) % ctx.h;
  return (tb + mulmod(phi.g, ctx.tau(beta), ctx.h) +
          mulmod(phi.delta, ctx.tau2(beta), ctx.h)) %
         ctx.h;
}

Poly phi_a(const DrinfeldContext& ctx, const DrinfeldModule& phi, const Poly& a,
           const Poly& beta) {
  Poly acc = Poly::zero(ctx.field());
  Poly iter = beta % ctx.h;
  for (int i = 0; i <= a.degree(); ++i) {
    const Fe c = a.coeff(i);
    if (!c.is_zero()) acc = acc + iter * c;
    if (i < a.degree()) iter = phi_t(ctx, phi, iter);
  }
  return acc % ctx.h;
}

Mat action_matrix(const DrinfeldContext& ctx, const DrinfeldModule& phi) {
  const int n = ctx.n();
  Mat m(ctx.field(), n, n);
  Poly basis = Poly::one(ctx.field());
  for (int j = 0; j < n; ++j) {
    Poly img = phi_t(ctx, phi, basis);
    for (int i = 0; i <= img.degree(); ++i) m.at(i, j) = img.coeff(i);
    basis = basis.shifted(1) % ctx.h;
  }
  return m;
}

Poly chi(const DrinfeldContext& ctx, const DrinfeldModule& phi) {
  if (phi.rank == 2) require_odd_q(ctx.field());
  return charpoly(action_matrix(ctx, phi));
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

Poly order_of(const DrinfeldContext& ctx, const DrinfeldModule& phi,
              const Poly& alpha, int trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Field* f = ctx.field();
  const int n = ctx.n();
  if ((alpha % ctx.h).is_zero()) return Poly::one(f);
  // Krylov sequence phi_t^j(alpha), shared by all trials; 2n terms pin down
  // every projected minimal polynomial of degree <= n.
  std::vector<std::vector<Fe>> krylov;
  krylov.reserve(2 * n);
  Poly iter = alpha % ctx.h;
  for (int j = 0; j < 2 * n; ++j) {
    krylov.push_back(residue_to_vec(iter, n));
    if (j + 1 < 2 * n) iter = phi_t(ctx, phi, iter);
  }
  Poly result = Poly::one(f);
  for (int t = 0; t < trials; ++t) {
    std::vector<Fe> u = random_functional(f, n, rng);
    std::vector<Fe> seq;
    seq.reserve(krylov.size());
    for (const auto& v : krylov) seq.push_back(dot(u, v));
    result = lcm(result, berlekamp_massey(f, seq));
    if (result.degree() == n) break;  // cannot grow past deg(h); equals Ord
  }
  return result;
}

Poly annihilator(const DrinfeldContext& ctx, const DrinfeldModule& phi) {
  const Field* f = ctx.field();
  const int n = ctx.n();
  auto op = [&](const std::vector<Fe>& v) {
    return residue_to_vec(phi_t(ctx, phi, vec_to_residue(f, v)), n);
  };
  Poly ann = Poly::one(f);
  for (int j = 0; j < n; ++j) {
    std::vector<Fe> e(n, f->zero());
    e[j] = f->one();
    ann = lcm(ann, krylov_order(op, e, f));
    if (ann.degree() == n) break;
  }
  return ann;
}

Fe residue_norm(const Poly& p, const Poly& x) {
  const Field* f = p.field();
  Poly r = x % p;
  if (r.is_zero()) return f->zero();
  const int d = p.degree();
  BigInt e = (boost::multiprecision::pow(f->q(), static_cast<unsigned>(d)) - 1) /
             (f->q() - 1);
  Poly n = powmod(r, e, p);
  if (n.degree() > 0) throw std::logic_error("residue norm not a constant");
  return n.is_zero() ? f->zero() : n.coeff(0);
}

TraceData trace_data(const Poly& p, const DrinfeldModule& phi) {
  const Field* f = p.field();
  require_odd_q(f);
  if (phi.rank != 2) throw std::invalid_argument("trace data needs a rank-2 module");
  if (!is_irreducible(p)) throw std::invalid_argument("trace data needs p irreducible");
  const DrinfeldModule red = phi.reduced(p);
  if (!gcd(red.delta, p).is_one())
    throw std::invalid_argument("delta not invertible mod p");
  const int d = p.degree();
  DrinfeldContext ctx = DrinfeldContext::make(p);
  TraceData td;
  td.chi = chi(ctx, red);
  Fe norm = residue_norm(p, red.delta);
  Fe sign = (d % 2 == 0) ? f->one() : -f->one();
  td.eps = (sign * norm).inv();
  td.a = Poly::one(f) + (p - td.chi) * td.eps;
  td.b = p * td.eps;
  if (2 * td.a.degree() > d)
    throw std::logic_error("Frobenius trace degree bound violated");
  if (td.chi != p - (td.a - Poly::one(f)) * td.eps.inv())
    throw std::logic_error("trace data inconsistency");
  return td;
}

ModuleStructure module_structure(const Poly& p, const DrinfeldModule& phi) {
  const Field* f = p.field();
  require_odd_q(f);
  const DrinfeldModule red = phi.reduced(p);
  DrinfeldContext ctx = DrinfeldContext::make(p);
  ModuleStructure ms;
  ms.chi = chi(ctx, red);
  ms.ann = annihilator(ctx, red);
  auto [m, mr] = divrem(ms.chi, ms.ann);
  if (!mr.is_zero()) throw std::logic_error("Ann does not divide chi");
  ms.m = m.monic();
  auto [nn, nr] = divrem(ms.ann, ms.m);
  if (!nr.is_zero()) throw std::logic_error("m does not divide Ann");
  ms.n = nn.monic();
  return ms;
}

Poly random_nonzero_residue(const Poly& h, Rng& rng) {
  for (;;) {
    Poly r = random_poly_below(h.field(), h.degree(), rng);
    if (!r.is_zero()) return r;
  }
}

}  // namespace dmf
