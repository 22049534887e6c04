#ifndef DMF_POLY_HPP
#define DMF_POLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmf/field.hpp"
#include "dmf/rng.hpp"

namespace dmf {

/// Dense univariate polynomial over a finite field, coefficients low-to-high
/// with no trailing zeros. The zero polynomial has an empty coefficient vector
/// and degree() == -1; callers must branch on is_zero() before feeding the
/// degree into arithmetic.
class Poly {
 public:
  Poly() : f_(nullptr) {}
  explicit Poly(const Field* f) : f_(f) {}  // zero polynomial

  static Poly zero(const Field* f) { return Poly(f); }
  static Poly one(const Field* f) { return constant(f->one()); }
  static Poly t(const Field* f);
  static Poly constant(Fe c);
  static Poly from_coeffs(const Field* f, std::vector<Fe> coeffs);
  static Poly from_ints(const Field* f, const std::vector<std::uint64_t>& coeffs);

  const Field* field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  Fe leading() const;
  Fe coeff(int i) const;
  const std::vector<Fe>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Fe& s) const;
  bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Scale by the inverse of the leading coefficient.
  Poly monic() const;
  Poly derivative() const;
  Fe evaluate(const Fe& x) const;
  Poly shifted(int k) const;  // multiply by t^k

  /// (degree, then coefficients high-to-low): canonical sort order.
  static int cmp(const Poly& a, const Poly& b);

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  friend Poly mul_schoolbook(const Poly& a, const Poly& b);
  const Field* f_;
  std::vector<Fe> c_;
};

// -- ring operations ---------------------------------------------------------

/// a = q*b + r with deg r < deg b; throws on b = 0.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact or truncating quotient

/// Monic gcd; gcd(a, 0) = monic(a); throws on gcd(0, 0).
Poly gcd(Poly a, Poly b);
/// g = u*a + v*b with g the monic gcd.
struct Xgcd {
  Poly g, u, v;
};
Xgcd xgcd(const Poly& a, const Poly& b);

Poly mulmod(const Poly& a, const Poly& b, const Poly& h);
/// base^e mod h by binary exponentiation; h monic, deg h >= 1, e >= 0.
Poly powmod(const Poly& base, const BigInt& e, const Poly& h);
/// f(g) mod h by Horner; deg f, deg g < deg h.
Poly modcompose(const Poly& f, const Poly& g, const Poly& h);
/// t^{q^s} mod h: one Frobenius power then s-1 modular compositions.
Poly frobenius_iterate(const Poly& h, unsigned s);

// -- structure ---------------------------------------------------------------

/// h = prod parts[i].first ^ parts[i].second with the parts squarefree and
/// pairwise coprime; handles h' = 0 by p-th root extraction. h monic.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& h);

/// Rabin irreducibility test via iterated Frobenius. f monic nonconstant.
bool is_irreducible(const Poly& f);

/// Maximal monic f with f^2 | D.
Poly largest_square_divisor(const Poly& D);

// -- random generators -------------------------------------------------------

Poly random_poly_below(const Field* f, int degree_bound, Rng& rng);
Poly random_monic(const Field* f, int d, Rng& rng);
Poly random_monic_irreducible(const Field* f, int d, Rng& rng);

/// h = product of distinct random monic irreducibles with the requested degree
/// multiset; also returns the factors. Throws when a degree class has fewer
/// irreducibles than requested.
std::pair<Poly, std::vector<Poly>> random_squarefree_with_known_factors(
    const Field* f, const std::vector<int>& degree_profile, Rng& rng);

/// Number of monic irreducibles of degree d over F_q (exact, by Moebius).
BigInt count_monic_irreducibles(const BigInt& q, int d);

}  // namespace dmf

#endif
