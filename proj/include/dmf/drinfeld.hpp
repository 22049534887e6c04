#ifndef DMF_DRINFELD_HPP
#define DMF_DRINFELD_HPP

#include <variant>

#include "dmf/linalg.hpp"
#include "dmf/poly.hpp"

namespace dmf {

/// Precomputed data for the Drinfeld action on F_q[t]/(h): the modulus and the
/// Frobenius images t^q, t^{q^2} mod h.
struct DrinfeldContext {
  Poly h;
  Poly xq;    // t^q mod h
  Poly xq2;   // t^{q^2} mod h
  Mat frob;   // matrix of tau on the basis 1, t, ..., t^{n-1}
  Mat frob2;  // matrix of tau^2

  static DrinfeldContext make(const Poly& h);
  const Field* field() const { return h.field(); }
  int n() const { return h.degree(); }

  /// Frobenius tau(beta) = beta^q mod h as a matrix-vector product.
  Poly tau(const Poly& beta) const;
  Poly tau2(const Poly& beta) const;
};

/// phi_t = t + g*tau + delta*tau^2 (rank 2), or the Carlitz module
/// phi_t = t + tau (rank 1, g = 1, delta = 0).
struct DrinfeldModule {
  Poly g;      // g_phi mod h
  Poly delta;  // Delta_phi mod h
  int rank;    // 1 or 2

  static DrinfeldModule carlitz(const Field* f) {
    return {Poly::one(f), Poly::zero(f), 1};
  }
  static DrinfeldModule rank2(Poly g, Poly delta) {
    return {std::move(g), std::move(delta), 2};
  }

  /// Coefficients reduced modulo a divisor of the original modulus.
  DrinfeldModule reduced(const Poly& p) const {
    if (rank == 1) return carlitz(p.field());
    return rank2(g % p, delta % p);
  }
};

/// Nontrivial factor of h discovered as a side effect (gcd(delta, h) != 1).
struct FoundFactor {
  Poly factor;
};

/// Uniform random rank-2 module with deg g, deg delta < deg h, delta != 0.
/// Surfaces gcd(lift(delta), h) as a factor instead of constructing a module
/// with bad reduction.
std::variant<DrinfeldModule, FoundFactor> new_random(const DrinfeldContext& ctx,
                                                     Rng& rng);

/// phi_t(beta) = t*beta + g*tau(beta) + delta*tau^2(beta) mod h.
Poly phi_t(const DrinfeldContext& ctx, const DrinfeldModule& phi, const Poly& beta);

/// phi_a(beta) = sum_i a_i phi_t^i(beta): the image of a under the ring map.
Poly phi_a(const DrinfeldContext& ctx, const DrinfeldModule& phi, const Poly& a,
           const Poly& beta);

/// Matrix of phi_t on the monomial basis 1, t, ..., t^{n-1} of F_q[t]/(h).
Mat action_matrix(const DrinfeldContext& ctx, const DrinfeldModule& phi);

/// Euler-Poincare characteristic: the characteristic polynomial of phi_t.
Poly chi(const DrinfeldContext& ctx, const DrinfeldModule& phi);

/// Montecarlo order of alpha: lcm of Berlekamp-Massey minimal polynomials of
/// the projected sequences U(phi_t^j(alpha)) over `trials` random functionals.
/// Always divides Ord(alpha); equals it except with probability <= 2^-trials.
Poly order_of(const DrinfeldContext& ctx, const DrinfeldModule& phi,
              const Poly& alpha, int trials, Rng& rng);

/// Exact annihilator of phi(F_q[t]/(h)): lcm of the Krylov minimal polynomials
/// of the monomial basis vectors.
Poly annihilator(const DrinfeldContext& ctx, const DrinfeldModule& phi);

Poly lcm(const Poly& a, const Poly& b);

/// Frobenius charpoly data at a prime: P(X) = X^2 - a X + eps*p with
/// chi = p - (a - 1)/eps and deg a <= deg(p)/2.
struct TraceData {
  Poly a;    // Frobenius trace
  Fe eps;    // 1 / ((-1)^{deg p} Norm(delta))
  Poly chi;  // p - (a - 1)/eps
  Poly b;    // eps * p
};

/// Requires p irreducible, q odd, gcd(lift(delta), p) = 1, rank 2.
TraceData trace_data(const Poly& p, const DrinfeldModule& phi);

/// phi(F_p) = A/(m) + A/(m n) with chi = m^2 n and Ann = m n.
struct ModuleStructure {
  Poly m;
  Poly n;
  Poly ann;
  Poly chi;
  bool cyclic() const { return m.is_one(); }
};

ModuleStructure module_structure(const Poly& p, const DrinfeldModule& phi);

/// Residue norm from F_q[t]/(p) down to F_q: x^{(q^d - 1)/(q - 1)} mod p for
/// x != 0 (a constant), 0 for x = 0.
Fe residue_norm(const Poly& p, const Poly& x);

/// Random nonzero residue mod h.
Poly random_nonzero_residue(const Poly& h, Rng& rng);

constexpr int kDefaultOrderTrials = 20;

}  // namespace dmf

#endif
