#include "dmf/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace dmf {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invm(u64 a, u64 p) {
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  std::int64_t t = 0, nt = 1;
  u64 r = p, nr = a;
  while (nr != 0) {
    u64 qq = r / nr;
    std::int64_t tmp = t - static_cast<std::int64_t>(qq) * nt;
    t = nt;
    nt = tmp;
    u64 rr = r - qq * nr;
    r = nr;
    nr = rr;
  }
  if (r != 1) throw std::domain_error("not invertible");
  return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(p)) : static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % s == 0) return n == s;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powm(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulm(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// --- raw dense polynomials over F_p (low-to-high), used for the extension
// --- modulus machinery and element arithmetic; self-contained on purpose.

using RPoly = std::vector<u64>;

void rtrim(RPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly rmul(const RPoly& a, const RPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  RPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = addm(c[i + j], mulm(a[i], b[j], p), p);
  }
  rtrim(c);
  return c;
}

// remainder of a modulo m (any nonzero leading coefficient)
RPoly rmod(RPoly a, const RPoly& m, u64 p) {
  rtrim(a);
  const u64 linv = invm(m.back(), p);
  while (a.size() >= m.size()) {
    u64 lead = mulm(a.back(), linv, p);
    size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (size_t i = 0; i + 1 < m.size(); ++i)
        a[i + shift] = subm(a[i + shift], mulm(lead, m[i], p), p);
    }
    a.pop_back();
    rtrim(a);
  }
  return a;
}

RPoly rmulmod(const RPoly& a, const RPoly& b, const RPoly& m, u64 p) {
  return rmod(rmul(a, b, p), m, p);
}

RPoly rgcd(RPoly a, RPoly b, u64 p) {
  rtrim(a);
  rtrim(b);
  while (!b.empty()) {
    RPoly r = rmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    u64 s = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, s, p);
  }
  return a;
}

RPoly rpowmod(RPoly base, BigInt e, const RPoly& m, u64 p) {
  RPoly r = {1};
  base = rmod(std::move(base), m, p);
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = rmulmod(r, base, m, p);
    base = rmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

// Rabin: m (monic, degree k) irreducible over F_p iff t^{p^k} = t mod m and
// gcd(t^{p^{k/l}} - t, m) = 1 for every prime l | k.
bool r_irreducible(const RPoly& m, u64 p) {
  const unsigned k = static_cast<unsigned>(m.size()) - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  auto frob_pow = [&](unsigned s) {
    // t^{p^s} mod m
    RPoly x = {0, 1};
    BigInt e = 1;
    for (unsigned i = 0; i < s; ++i) e *= p;
    return rpowmod(x, e, m, p);
  };
  RPoly t = {0, 1};
  if (frob_pow(k) != rmod(t, m, p)) return false;
  std::vector<unsigned> primes;
  unsigned n = k;
  for (unsigned l = 2; l * l <= n; ++l) {
    if (n % l == 0) {
      primes.push_back(l);
      while (n % l == 0) n /= l;
    }
  }
  if (n > 1) primes.push_back(n);
  for (unsigned l : primes) {
    RPoly d = frob_pow(k / l);
    if (d.size() < 2) d.resize(2, 0);
    d[1] = subm(d[1], 1, p);  // t^{p^{k/l}} - t
    rtrim(d);
    if (rgcd(d, m, p).size() != 1) return false;
  }
  return true;
}

std::vector<u64> make_modulus(u64 p, unsigned k) {
  Rng rng(0x6d6f64756c757300ULL ^ (p * 1000003ULL + k));
  for (int tries = 0; tries < 100000; ++tries) {
    RPoly m(k + 1, 0);
    m[k] = 1;
    for (unsigned i = 0; i < k; ++i) m[i] = rng.below(p);
    if (r_irreducible(m, p)) return m;
  }
  throw std::runtime_error("failed to generate extension modulus");
}

struct FieldKey {
  u64 p;
  unsigned k;
  std::vector<u64> mod;
  bool operator<(const FieldKey& o) const {
    if (p != o.p) return p < o.p;
    if (k != o.k) return k < o.k;
    return mod < o.mod;
  }
};

std::map<FieldKey, std::unique_ptr<Field>>& registry() {
  static std::map<FieldKey, std::unique_ptr<Field>> r;
  return r;
}
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FieldInterner {
  static const Field* intern(u64 p, unsigned k, std::vector<u64> mod) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    FieldKey key{p, k, mod};
    auto& reg = registry();
    auto it = reg.find(key);
    if (it == reg.end()) {
      it = reg.emplace(std::move(key),
                       std::unique_ptr<Field>(new Field(p, k, std::move(mod))))
               .first;
    }
    return it->second.get();
  }
};

namespace {
const Field* intern(u64 p, unsigned k, std::vector<u64> mod) {
  return FieldInterner::intern(p, k, std::move(mod));
}
}  // namespace

Field::Field(u64 p, unsigned k, std::vector<u64> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  q_ = 1;
  for (unsigned i = 0; i < k_; ++i) q_ *= p_;
}

const Field* Field::prime(u64 p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
  if (p >= (1ull << 62)) throw std::invalid_argument("p too large");
  return intern(p, 1, {});
}

const Field* Field::extension(u64 p, unsigned k) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (k == 1) return prime(p);
  return intern(p, k, make_modulus(p, k));
}

const Field* Field::extension(u64 p, unsigned k, const std::vector<u64>& modulus) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
  if (k == 1 && modulus.empty()) return prime(p);
  if (modulus.size() != k + 1 || modulus[k] != 1)
    throw std::invalid_argument("modulus must be monic of degree k");
  for (u64 c : modulus)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  if (!r_irreducible(modulus, p))
    throw std::invalid_argument("modulus is not irreducible over F_p");
  return intern(p, k, modulus);
}

Fe Field::zero() const { return Fe(this, Fe::Coeffs(k_, 0)); }

Fe Field::one() const {
  Fe::Coeffs c(k_, 0);
  c[0] = 1 % p_;
  return Fe(this, std::move(c));
}

Fe Field::from_int(u64 v) const {
  Fe::Coeffs c(k_, 0);
  c[0] = v % p_;
  return Fe(this, std::move(c));
}

Fe Field::from_coeffs(const std::vector<u64>& in) const {
  if (in.size() > k_) throw std::invalid_argument("too many coefficients");
  Fe::Coeffs c(k_, 0);
  for (size_t i = 0; i < in.size(); ++i) c[i] = in[i] % p_;
  return Fe(this, std::move(c));
}

Fe Field::random(Rng& rng) const {
  Fe::Coeffs c(k_, 0);
  for (unsigned i = 0; i < k_; ++i) c[i] = rng.below(p_);
  return Fe(this, std::move(c));
}

std::vector<Fe> Field::all_elements() const {
  if (q_ > 1 << 20) throw std::invalid_argument("field too large to enumerate");
  std::vector<Fe> out;
  Fe::Coeffs c(k_, 0);
  const u64 n = static_cast<u64>(q_);
  for (u64 v = 0; v < n; ++v) {
    u64 x = v;
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = x % p_;
      x /= p_;
    }
    out.push_back(Fe(this, c));
  }
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (k_ > 1) os << "^" << k_;
  return os.str();
}

void Fe::check_same(const Fe& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
}

bool Fe::is_zero() const {
  for (u64 c : c_)
    if (c) return false;
  return true;
}

bool Fe::is_one() const {
  if (c_.empty() || c_[0] != 1 % f_->p_) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

Fe Fe::operator+(const Fe& o) const {
  check_same(o);
  Coeffs c = c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] = addm(c[i], o.c_[i], f_->p_);
  return Fe(f_, std::move(c));
}

Fe Fe::operator-(const Fe& o) const {
  check_same(o);
  Coeffs c = c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] = subm(c[i], o.c_[i], f_->p_);
  return Fe(f_, std::move(c));
}

Fe Fe::operator-() const {
  Coeffs c = c_;
  for (auto& x : c) x = x ? f_->p_ - x : 0;
  return Fe(f_, std::move(c));
}

Fe Fe::operator*(const Fe& o) const {
  check_same(o);
  const u64 p = f_->p_;
  if (f_->k_ == 1) return Fe(f_, Coeffs{mulm(c_[0], o.c_[0], p)});
  RPoly a(c_.begin(), c_.end()), b(o.c_.begin(), o.c_.end());
  RPoly r = rmod(rmul(a, b, p), f_->modulus_, p);
  Coeffs c(f_->k_, 0);
  for (size_t i = 0; i < r.size(); ++i) c[i] = r[i];
  return Fe(f_, std::move(c));
}

bool Fe::operator==(const Fe& o) const {
  if (f_ != o.f_) return false;
  return std::equal(c_.begin(), c_.end(), o.c_.begin());
}

Fe Fe::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  const u64 p = f_->p_;
  if (f_->k_ == 1) return Fe(f_, Coeffs{invm(c_[0], p)});
  // extended euclid on (rep, modulus) over F_p
  RPoly r0(f_->modulus_), r1(c_.begin(), c_.end());
  rtrim(r1);
  RPoly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // r0 = q r1 + r2 via repeated leading elimination; track s
    RPoly q;
    RPoly r2 = r0;
    rtrim(r2);
    if (r2.size() >= r1.size()) {
      q.assign(r2.size() - r1.size() + 1, 0);
      u64 linv = invm(r1.back(), p);
      while (r2.size() >= r1.size() && !r2.empty()) {
        u64 coef = mulm(r2.back(), linv, p);
        size_t shift = r2.size() - r1.size();
        q[shift] = addm(q[shift], coef, p);
        for (size_t i = 0; i < r1.size(); ++i)
          r2[i + shift] = subm(r2[i + shift], mulm(coef, r1[i], p), p);
        rtrim(r2);
      }
    }
    RPoly qs1 = rmul(q, s1, p);
    RPoly s2 = s0;
    if (s2.size() < qs1.size()) s2.resize(qs1.size(), 0);
    for (size_t i = 0; i < qs1.size(); ++i) s2[i] = subm(s2[i], qs1[i], p);
    rtrim(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is the gcd (a unit since the modulus is irreducible); s0 * rep = r0
  u64 scale = invm(r0[0], p);
  Coeffs c(f_->k_, 0);
  for (size_t i = 0; i < s0.size(); ++i) c[i] = mulm(s0[i], scale, p);
  return Fe(f_, std::move(c));
}

Fe Fe::pow(const BigInt& e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Fe base = *this;
  Fe r = f_->one();
  BigInt n = e;
  while (n > 0) {
    if (boost::multiprecision::bit_test(n, 0)) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Fe Fe::norm_to_prime() const {
  const Field* base = Field::prime(f_->p_);
  if (is_zero()) return base->zero();
  if (f_->k_ == 1) return *this;
  BigInt e = (f_->q_ - 1) / (f_->p_ - 1);
  Fe n = pow(e);
  return base->from_int(n.as_int());
}

Fe Fe::pth_root() const {
  if (f_->k_ == 1) return *this;  // x^p = x in F_p
  BigInt e = 1;
  for (unsigned i = 0; i + 1 < f_->k_; ++i) e *= f_->p_;
  return pow(e);  // x^{p^{k-1}}
}

std::uint64_t Fe::as_int() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) throw std::domain_error("element not in prime subfield");
  return c_.empty() ? 0 : c_[0];
}

int Fe::cmp(const Fe& a, const Fe& b) {
  a.check_same(b);
  // compare high coefficient first so order matches integer value p-adically
  for (size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
  }
  return 0;
}

std::string Fe::to_string() const {
  if (f_->k_ == 1) return std::to_string(c_.empty() ? 0 : c_[0]);
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << "+";
    if (i == 0) {
      os << c_[i];
    } else {
      if (c_[i] != 1) os << c_[i] << "*";
      os << "u";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace dmf
