#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmf/linalg.hpp"

using namespace dmf;

namespace {

Mat companion(const Poly& f) {
  const int n = f.degree();
  Mat m(f.field(), n, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i + 1, i) = f.field()->one();
  for (int i = 0; i < n; ++i) m.at(i, n - 1) = -f.coeff(i);
  return m;
}

Mat random_mat(const Field* f, size_t n, Rng& rng) {
  Mat m(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m.at(i, j) = f->random(rng);
  return m;
}

/// charpoly(M) evaluated at M by matrix Horner.
Mat eval_at_matrix(const Poly& p, const Mat& m) {
  const Field* f = m.field();
  Mat acc(f, m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    for (size_t d = 0; d < m.rows(); ++d) acc.at(d, d) += p.coeff(i);
  }
  return acc;
}

}  // namespace

TEST_CASE("charpoly of the identity") {
  const Field* f = Field::prime(5);
  Poly cp = charpoly(Mat::identity(f, 3));
  // (t-1)^3 = t^3 + 2t^2 + 3t + 4 over F_5
  CHECK(cp == Poly::from_ints(f, {4, 3, 2, 1}));
}

TEST_CASE("charpoly of a companion matrix is the polynomial") {
  const Field* f = Field::prime(7);
  Rng rng(3);
  for (int d : {1, 2, 4, 6}) {
    Poly p = random_monic(f, d, rng);
    CHECK(charpoly(companion(p)) == p);
  }
}

TEST_CASE("charpoly 2x2 hand example") {
  const Field* f = Field::prime(7);
  Mat m(f, 2, 2);
  m.at(0, 0) = f->from_int(1);
  m.at(0, 1) = f->from_int(2);
  m.at(1, 0) = f->from_int(3);
  m.at(1, 1) = f->from_int(4);
  // t^2 - (tr)t + det = t^2 - 5t + (4 - 6) = t^2 + 2t + 5 over F_7
  CHECK(charpoly(m) == Poly::from_ints(f, {5, 2, 1}));
}

TEST_CASE("Cayley-Hamilton on random matrices") {
  const Field* f = Field::prime(101);
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 1 + rng.below(8);
    Mat m = random_mat(f, n, rng);
    Poly cp = charpoly(m);
    CHECK(cp.degree() == static_cast<int>(n));
    CHECK(cp.is_monic());
    CHECK(eval_at_matrix(cp, m) == Mat(f, n, n));
  }
}

TEST_CASE("charpoly of block-diagonal is the product of blocks") {
  const Field* f = Field::prime(11);
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const size_t a = 1 + rng.below(4), b = 1 + rng.below(4);
    Mat ma = random_mat(f, a, rng), mb = random_mat(f, b, rng);
    Mat big(f, a + b, a + b);
    for (size_t i = 0; i < a; ++i)
      for (size_t j = 0; j < a; ++j) big.at(i, j) = ma.at(i, j);
    for (size_t i = 0; i < b; ++i)
      for (size_t j = 0; j < b; ++j) big.at(a + i, a + j) = mb.at(i, j);
    CHECK(charpoly(big) == charpoly(ma) * charpoly(mb));
  }
}

TEST_CASE("berlekamp_massey examples") {
  const Field* f5 = Field::prime(5);
  CHECK(berlekamp_massey(f5, std::vector<Fe>(6, f5->zero())).is_one());
  // s_j = 2^j mod 5: 1,2,4,3,1,2 -> t-2
  std::vector<Fe> pow2;
  for (std::uint64_t v : {1, 2, 4, 3, 1, 2}) pow2.push_back(f5->from_int(v));
  CHECK(berlekamp_massey(f5, pow2) == Poly::from_ints(f5, {3, 1}));

  const Field* f7 = Field::prime(7);
  std::vector<Fe> fib;
  for (std::uint64_t v : {0, 1, 1, 2, 3, 5, 1, 6}) fib.push_back(f7->from_int(v));
  CHECK(berlekamp_massey(f7, fib) == Poly::from_ints(f7, {6, 6, 1}));
}

TEST_CASE("berlekamp_massey recovers recurrences of known order") {
  const Field* f = Field::prime(101);
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int l = 1 + static_cast<int>(rng.below(6));
    Poly rec = random_monic(f, l, rng);
    // generate a sequence satisfying the recurrence given by rec
    std::vector<Fe> seq;
    for (int i = 0; i < l; ++i) seq.push_back(f->random(rng));
    for (int i = l; i < 2 * l + 2; ++i) {
      Fe next = f->zero();
      for (int j = 0; j < l; ++j) next -= rec.coeff(j) * seq[i - l + j];
      seq.push_back(next);
    }
    Poly mp = berlekamp_massey(f, seq);
    CHECK(mp.degree() <= l);
    // the recovered recurrence annihilates the sequence
    for (size_t i = mp.degree(); i < seq.size(); ++i) {
      Fe acc = f->zero();
      for (int j = 0; j <= mp.degree(); ++j)
        acc += mp.coeff(j) * seq[i - mp.degree() + j];
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("krylov_order basics") {
  const Field* f = Field::prime(7);
  auto ident = [](const std::vector<Fe>& v) { return v; };
  std::vector<Fe> zero(4, f->zero());
  CHECK(krylov_order(ident, zero, f).is_one());
  std::vector<Fe> v(4, f->zero());
  v[2] = f->from_int(3);
  CHECK(krylov_order(ident, v, f) == Poly::from_ints(f, {6, 1}));  // t - 1
}

TEST_CASE("krylov_order of a companion matrix cyclic vector") {
  const Field* f = Field::prime(11);
  Rng rng(19);
  for (int d : {2, 3, 5}) {
    Poly p = random_monic_irreducible(f, d, rng);
    Mat c = companion(p);
    auto apply = [&](const std::vector<Fe>& v) { return c.apply(v); };
    std::vector<Fe> e1(d, f->zero());
    e1[0] = f->one();
    CHECK(krylov_order(apply, e1, f) == p);
  }
}

TEST_CASE("projected minimal polynomial divides the Krylov one") {
  const Field* f = Field::prime(101);
  Rng rng(23);
  int equal = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const size_t n = 2 + rng.below(6);
    Mat m = random_mat(f, n, rng);
    std::vector<Fe> v;
    for (size_t i = 0; i < n; ++i) v.push_back(f->random(rng));
    auto apply = [&](const std::vector<Fe>& x) { return m.apply(x); };
    Poly exact = krylov_order(apply, v, f);
    std::vector<Fe> u = random_functional(f, n, rng);
    std::vector<Fe> seq;
    std::vector<Fe> w = v;
    for (size_t j = 0; j < 2 * n; ++j) {
      seq.push_back(dot(u, w));
      w = m.apply(w);
    }
    Poly proj = berlekamp_massey(f, seq);
    CHECK((exact % proj).is_zero());
    if (proj == exact) ++equal;
  }
  CHECK(equal >= 40);  // per-draw success probability is at least 1/2
}

TEST_CASE("solve exact linear systems") {
  const Field* f = Field::prime(13);
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    // build a consistent overdetermined system with unique solution
    const size_t cols = 2 + rng.below(3), rows = cols + rng.below(3);
    Mat m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m.at(i, j) = f->random(rng);
    std::vector<Fe> x;
    for (size_t j = 0; j < cols; ++j) x.push_back(f->random(rng));
    std::vector<Fe> rhs = m.apply(x);
    auto sol = solve(m, rhs);
    if (sol) {
      CHECK(m.apply(*sol) == rhs);
    } else {
      // only acceptable when the columns are dependent (solution not unique)
      std::vector<Fe> zero(rows, f->zero());
      auto kernel_probe = solve(m, zero);
      CHECK(!kernel_probe);
    }
  }
  // inconsistent system
  Mat m(f, 2, 1);
  m.at(0, 0) = f->one();
  m.at(1, 0) = f->zero();
  CHECK(!solve(m, {f->zero(), f->one()}));
}

TEST_CASE("random_functional determinism") {
  const Field* f = Field::prime(101);
  Rng a(55), b(55);
  CHECK(random_functional(f, 8, a) == random_functional(f, 8, b));
}
