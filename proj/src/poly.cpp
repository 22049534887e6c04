#include "dmf/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dmf {

namespace {
constexpr int kKaratsubaCutoff = 32;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::t(const Field* f) {
  Poly r(f);
  r.c_ = {f->zero(), f->one()};
  return r;
}

Poly Poly::constant(Fe c) {
  Poly r(c.field());
  if (!c.is_zero()) r.c_ = {std::move(c)};
  return r;
}

Poly Poly::from_coeffs(const Field* f, std::vector<Fe> coeffs) {
  Poly r(f);
  for (const Fe& c : coeffs)
    if (c.field() != f) throw std::invalid_argument("field mismatch");
  r.c_ = std::move(coeffs);
  r.trim();
  return r;
}

Poly Poly::from_ints(const Field* f, const std::vector<std::uint64_t>& coeffs) {
  std::vector<Fe> c;
  c.reserve(coeffs.size());
  for (std::uint64_t v : coeffs) c.push_back(f->from_int(v));
  return from_coeffs(f, std::move(c));
}

Fe Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero");
  return c_.back();
}

Fe Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return f_->zero();
  return c_[i];
}

Poly Poly::operator+(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
  Poly r(f_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
  Poly r(f_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r(f_);
  r.c_.reserve(c_.size());
  for (const Fe& c : c_) r.c_.push_back(-c);
  return r;
}

Poly mul_schoolbook(const Poly& a, const Poly& b) {
  Poly r(a.f_);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, a.f_->zero());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
  if (is_zero() || o.is_zero()) return Poly(f_);
  if (degree() < kKaratsubaCutoff || o.degree() < kKaratsubaCutoff)
    return mul_schoolbook(*this, o);
  // karatsuba
  size_t m = (std::max(c_.size(), o.c_.size()) + 1) / 2;
  auto split = [&](const Poly& p) {
    Poly lo(f_), hi(f_);
    for (size_t i = 0; i < p.c_.size(); ++i)
      (i < m ? lo.c_ : hi.c_).push_back(p.c_[i]);
    lo.trim();
    hi.trim();
    return std::pair<Poly, Poly>(lo, hi);
  };
  auto [a0, a1] = split(*this);
  auto [b0, b1] = split(o);
  Poly z0 = a0 * b0;
  Poly z2 = a1 * b1;
  Poly z1 = (a0 + a1) * (b0 + b1) - z0 - z2;
  return z0 + z1.shifted(static_cast<int>(m)) + z2.shifted(static_cast<int>(2 * m));
}

Poly Poly::operator*(const Fe& s) const {
  if (s.is_zero()) return Poly(f_);
  Poly r(f_);
  r.c_.reserve(c_.size());
  for (const Fe& c : c_) r.c_.push_back(c * s);
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) throw std::domain_error("monic of zero");
  if (is_monic()) return *this;
  return *this * leading().inv();
}

Poly Poly::derivative() const {
  Poly r(f_);
  for (size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(c_[i] * f_->from_int(static_cast<std::uint64_t>(i % f_->p())));
  r.trim();
  return r;
}

Fe Poly::evaluate(const Fe& x) const {
  Fe acc = f_->zero();
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r(f_);
  r.c_.assign(c_.size() + k, f_->zero());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
  return r;
}

int Poly::cmp(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i) {
    int c = Fe::cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c;
  }
  return 0;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const bool ext = f_->k() > 1;
  for (int i = degree(); i >= 0; --i) {
    const Fe c = coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << "+";
    first = false;
    std::string cs = c.to_string();
    bool wrap = ext && cs.find('+') != std::string::npos;
    if (i == 0) {
      if (wrap)
        os << "(" << cs << ")";
      else
        os << cs;
      continue;
    }
    if (!c.is_one()) {
      if (wrap)
        os << "(" << cs << ")*";
      else
        os << cs << "*";
    }
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const Field* f = a.field();
  if (f != b.field()) throw std::invalid_argument("field mismatch");
  if (a.degree() < b.degree()) return {Poly(f), a};
  const Fe linv = b.leading().inv();
  std::vector<Fe> rem(a.coeffs());
  std::vector<Fe> quot(a.degree() - b.degree() + 1, f->zero());
  for (int i = a.degree(); i >= b.degree(); --i) {
    Fe c = rem[i];
    if (c.is_zero()) continue;
    c *= linv;
    quot[i - b.degree()] = c;
    for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= c * b.coeff(j);
  }
  rem.resize(b.degree() < 0 ? 0 : b.degree(), f->zero());
  return {Poly::from_coeffs(f, std::move(quot)), Poly::from_coeffs(f, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }

Poly gcd(Poly a, Poly b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0)");
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Xgcd xgcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("xgcd(0, 0)");
  const Field* f = a.field();
  Poly r0 = a, r1 = b;
  Poly u0 = Poly::one(f), u1 = Poly::zero(f);
  Poly v0 = Poly::zero(f), v1 = Poly::one(f);
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r2);
    Poly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    Poly v2 = v0 - q * v1;
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  const Fe s = r0.leading().inv();
  return {r0 * s, u0 * s, v0 * s};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& h) { return (a * b) % h; }

Poly powmod(const Poly& base, const BigInt& e, const Poly& h) {
  if (h.is_zero() || h.degree() < 1 || !h.is_monic())
    throw std::invalid_argument("powmod modulus must be monic of degree >= 1");
  if (e < 0) throw std::invalid_argument("negative exponent");
  Poly b = base % h;
  Poly r = Poly::one(base.field()) % h;
  BigInt n = e;
  while (n > 0) {
    if (boost::multiprecision::bit_test(n, 0)) r = mulmod(r, b, h);
    b = mulmod(b, b, h);
    n >>= 1;
  }
  return r;
}

Poly modcompose(const Poly& f, const Poly& g, const Poly& h) {
  Poly acc(f.field());
  for (int i = f.degree(); i >= 0; --i) {
    acc = mulmod(acc, g, h) + Poly::constant(f.coeff(i));
  }
  return acc % h;
}

Poly frobenius_iterate(const Poly& h, unsigned s) {
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  Poly x1 = powmod(Poly::t(h.field()), h.field()->q(), h);
  Poly xi = x1;
  for (unsigned i = 1; i < s; ++i) xi = modcompose(xi, x1, h);
  return xi;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& h) {
  if (h.is_zero() || h.degree() < 1 || !h.is_monic())
    throw std::invalid_argument("squarefree decomposition needs monic nonconstant input");
  const Field* f = h.field();
  std::map<int, Poly> acc;  // multiplicity -> product of parts (merge across p-th roots)
  struct Item {
    Poly g;
    int mult;
  };
  std::vector<Item> work{{h, 1}};
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    Poly g = it.g;
    Poly gp = g.derivative();
    if (gp.is_zero()) {
      // g is a p-th power: coefficients at indices divisible by p, take p-th roots
      std::vector<Fe> c;
      for (int i = 0; i <= g.degree(); i += static_cast<int>(f->p()))
        c.push_back(g.coeff(i).pth_root());
      work.push_back({Poly::from_coeffs(f, std::move(c)),
                      it.mult * static_cast<int>(f->p())});
      continue;
    }
    Poly c = gcd(g, gp);
    Poly w = g / c;
    int i = 1;
    while (!w.is_one()) {
      Poly y = gcd(w, c);
      Poly z = w / y;
      if (!z.is_one()) {
        auto [pos, inserted] = acc.emplace(it.mult * i, z);
        if (!inserted) pos->second = pos->second * z;
      }
      w = std::move(y);
      c = c / w;
      ++i;
    }
    if (!c.is_one()) work.push_back({c, it.mult});
  }
  std::vector<std::pair<Poly, int>> out(acc.size(), {Poly(f), 0});
  size_t j = 0;
  for (auto& [mult, part] : acc) out[j++] = {part, mult};
  // sort by multiplicity then degree for a canonical order
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return Poly::cmp(a.first, b.first) < 0;
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.is_zero() || f.degree() < 1 || !f.is_monic())
    throw std::invalid_argument("irreducibility test needs monic nonconstant input");
  const int d = f.degree();
  if (d == 1) return true;
  const Poly t = Poly::t(f.field());
  // distinct-degree sweep: f of degree d is reducible iff it has an
  // irreducible factor of degree <= d/2, detected via gcd(t^{q^s} - t, f)
  const Poly x1 = powmod(t, f.field()->q(), f);
  Poly xs = x1;
  for (int s = 1; s <= d / 2; ++s) {
    Poly diff = xs - t;
    if (diff.is_zero()) return false;
    if (gcd(diff, f).degree() != 0) return false;
    if (s < d / 2) xs = modcompose(xs, x1, f);
  }
  return true;
}

Poly largest_square_divisor(const Poly& D) {
  if (D.is_zero()) throw std::invalid_argument("largest_square_divisor of zero");
  const Field* f = D.field();
  if (D.degree() == 0) return Poly::one(f);
  Poly result = Poly::one(f);
  for (const auto& [part, mult] : squarefree_decomposition(D.monic())) {
    for (int i = 0; i < mult / 2; ++i) result = result * part;
  }
  return result;
}

Poly random_poly_below(const Field* f, int degree_bound, Rng& rng) {
  std::vector<Fe> c;
  c.reserve(degree_bound);
  for (int i = 0; i < degree_bound; ++i) c.push_back(f->random(rng));
  return Poly::from_coeffs(f, std::move(c));
}

Poly random_monic(const Field* f, int d, Rng& rng) {
  if (d < 0) throw std::invalid_argument("degree must be >= 0");
  std::vector<Fe> c;
  c.reserve(d + 1);
  for (int i = 0; i < d; ++i) c.push_back(f->random(rng));
  c.push_back(f->one());
  return Poly::from_coeffs(f, std::move(c));
}

Poly random_monic_irreducible(const Field* f, int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  for (;;) {
    Poly cand = random_monic(f, d, rng);
    if (is_irreducible(cand)) return cand;
  }
}

BigInt count_monic_irreducibles(const BigInt& q, int d) {
  // (1/d) sum_{e | d} mu(d/e) q^e
  auto mu = [](int n) {
    int m = 1;
    for (int l = 2; l * l <= n; ++l) {
      if (n % l == 0) {
        n /= l;
        if (n % l == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  BigInt total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int m = mu(d / e);
    if (m == 0) continue;
    BigInt qe = boost::multiprecision::pow(q, static_cast<unsigned>(e));
    total += m > 0 ? qe : -qe;
  }
  return total / d;
}

std::pair<Poly, std::vector<Poly>> random_squarefree_with_known_factors(
    const Field* f, const std::vector<int>& degree_profile, Rng& rng) {
  std::map<int, int> wanted;
  for (int d : degree_profile) {
    if (d < 1) throw std::invalid_argument("degrees must be >= 1");
    wanted[d]++;
  }
  for (const auto& [d, count] : wanted) {
    if (count_monic_irreducibles(f->q(), d) < count)
      throw std::invalid_argument("degree profile exceeds irreducible count");
  }
  std::vector<Poly> factors;
  for (const auto& [d, count] : wanted) {
    std::vector<Poly> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      Poly cand = random_monic_irreducible(f, d, rng);
      bool dup = false;
      for (const Poly& c : chosen) dup = dup || c == cand;
      if (!dup) chosen.push_back(cand);
    }
    for (Poly& c : chosen) factors.push_back(std::move(c));
  }
  Poly h = Poly::one(f);
  for (const Poly& c : factors) h = h * c;
  std::sort(factors.begin(), factors.end(),
            [](const Poly& a, const Poly& b) { return Poly::cmp(a, b) < 0; });
  return {h, factors};
}

}  // namespace dmf
