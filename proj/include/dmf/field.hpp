#ifndef DMF_FIELD_HPP
#define DMF_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "dmf/rng.hpp"

namespace dmf {

using BigInt = boost::multiprecision::cpp_int;

class Fe;

/// F_{p^k}. Instances are interned and immortal, so elements may hold plain
/// pointers. k = 1 is the prime field; k > 1 carries a monic irreducible
/// modulus of degree k over F_p, coefficients low-to-high.
class Field {
 public:
  /// Prime field F_p. Throws if p is not prime.
  static const Field* prime(std::uint64_t p);

  /// Extension F_{p^k} with a deterministically generated modulus, cached per
  /// (p, k). The modulus is found by seeded random monic trial plus an
  /// irreducibility test, so it is reproducible across runs.
  static const Field* extension(std::uint64_t p, unsigned k);

  /// Extension with an explicit monic irreducible modulus (size k+1,
  /// low-to-high). Throws if the modulus is not monic irreducible over F_p.
  static const Field* extension(std::uint64_t p, unsigned k,
                                const std::vector<std::uint64_t>& modulus);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  const BigInt& q() const { return q_; }
  bool q_even() const { return p_ == 2; }

  Fe zero() const;
  Fe one() const;
  /// Element of the prime subfield from an integer residue.
  Fe from_int(std::uint64_t v) const;
  /// Element from coefficients over F_p, low-to-high, length <= k.
  Fe from_coeffs(const std::vector<std::uint64_t>& c) const;
  /// Uniform random element.
  Fe random(Rng& rng) const;
  /// All q elements, in lexicographic coefficient order. Only for small q.
  std::vector<Fe> all_elements() const;

  std::string describe() const;  // "F_101" or "F_3^2"

 private:
  Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus);

  friend class Fe;
  friend struct FieldInterner;
  std::uint64_t p_;
  unsigned k_;
  std::vector<std::uint64_t> modulus_;  // empty when k == 1
  BigInt q_;
};

/// Element of a finite field. Value type; the coefficient vector (over F_p,
/// reduced into [0, p)) is stored inline for small k.
class Fe {
 public:
  Fe() : f_(nullptr) {}

  const Field* field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Fe operator+(const Fe& o) const;
  Fe operator-(const Fe& o) const;
  Fe operator-() const;
  Fe operator*(const Fe& o) const;
  Fe operator/(const Fe& o) const { return *this * o.inv(); }
  Fe& operator+=(const Fe& o) { return *this = *this + o; }
  Fe& operator-=(const Fe& o) { return *this = *this - o; }
  Fe& operator*=(const Fe& o) { return *this = *this * o; }

  bool operator==(const Fe& o) const;
  bool operator!=(const Fe& o) const { return !(*this == o); }

  /// Multiplicative inverse; throws std::domain_error on zero.
  Fe inv() const;
  /// Square and multiply; e >= 0.
  Fe pow(const BigInt& e) const;

  /// Norm down to the prime subfield: x^{(p^k-1)/(p-1)}, with norm(0) = 0.
  /// Returns an element of Field::prime(p).
  Fe norm_to_prime() const;

  /// Frobenius p-th power inverse: y with y^p = x (unique in F_{p^k}).
  Fe pth_root() const;

  /// Coefficient of u^i in the F_p-representation.
  std::uint64_t coeff(unsigned i) const { return i < c_.size() ? c_[i] : 0; }

  /// Integer value; only valid for elements of the prime subfield.
  std::uint64_t as_int() const;

  /// Lexicographic order on coefficient vectors (for canonical sorting).
  static int cmp(const Fe& a, const Fe& b);

  std::string to_string() const;  // "7" or "1+2*u"

 private:
  friend class Field;
  using Coeffs = boost::container::small_vector<std::uint64_t, 2>;
  Fe(const Field* f, Coeffs c) : f_(f), c_(std::move(c)) {}

  void check_same(const Fe& o) const;

  const Field* f_;
  Coeffs c_;  // length k, reduced mod p
};

}  // namespace dmf

#endif
