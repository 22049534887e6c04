#include "dmf/linalg.hpp"

#include <algorithm>

namespace dmf {

Mat Mat::identity(const Field* f, size_t n) {
  Mat m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
  Mat r(f_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Fe& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

std::vector<Fe> Mat::apply(const std::vector<Fe>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
  std::vector<Fe> r(rows_, f_->zero());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

Poly charpoly(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("charpoly needs a square matrix, n >= 1");
  const Field* f = m.field();
  const size_t n = m.rows();
  Mat h = m;
  // similarity reduction to upper Hessenberg form
  for (size_t j = 0; j + 2 < n; ++j) {
    size_t pivot = j + 1;
    while (pivot < n && h.at(pivot, j).is_zero()) ++pivot;
    if (pivot == n) continue;
    if (pivot != j + 1) {
      for (size_t c = 0; c < n; ++c) std::swap(h.at(pivot, c), h.at(j + 1, c));
      for (size_t r = 0; r < n; ++r) std::swap(h.at(r, pivot), h.at(r, j + 1));
    }
    const Fe inv = h.at(j + 1, j).inv();
    for (size_t i = j + 2; i < n; ++i) {
      if (h.at(i, j).is_zero()) continue;
      const Fe factor = h.at(i, j) * inv;
      for (size_t c = 0; c < n; ++c) h.at(i, c) -= factor * h.at(j + 1, c);
      for (size_t r = 0; r < n; ++r) h.at(r, j + 1) += factor * h.at(r, i);
    }
  }
  // charpoly recurrence on the leading principal blocks of the Hessenberg form
  std::vector<Poly> p(n + 1, Poly(f));
  p[0] = Poly::one(f);
  const Poly t = Poly::t(f);
  for (size_t i = 1; i <= n; ++i) {
    p[i] = (t - Poly::constant(h.at(i - 1, i - 1))) * p[i - 1];
    Fe prod = f->one();
    for (size_t k = i - 1; k >= 1; --k) {
      prod *= h.at(k, k - 1);
      if (prod.is_zero()) break;
      const Fe& entry = h.at(k - 1, i - 1);
      if (!entry.is_zero()) p[i] = p[i] - p[k - 1] * (entry * prod);
    }
  }
  return p[n];
}

Poly berlekamp_massey(const Field* f, const std::vector<Fe>& seq) {
  const size_t n = seq.size();
  // connection polynomial c(x) = 1 + c_1 x + ... + c_L x^L with
  // s_j + sum_i c_i s_{j-i} = 0 for all valid j
  std::vector<Fe> c{f->one()}, b{f->one()};
  size_t l = 0, m = 1;
  Fe delta_prev = f->one();
  for (size_t i = 0; i < n; ++i) {
    Fe d = seq[i];
    for (size_t j = 1; j <= l && j <= i; ++j) d += c[j] * seq[i - j];
    if (d.is_zero()) {
      ++m;
      continue;
    }
    if (2 * l <= i) {
      std::vector<Fe> tmp = c;
      const Fe coef = d * delta_prev.inv();
      if (c.size() < b.size() + m) c.resize(b.size() + m, f->zero());
      for (size_t j = 0; j < b.size(); ++j) c[j + m] -= coef * b[j];
      l = i + 1 - l;
      b = std::move(tmp);
      delta_prev = d;
      m = 1;
    } else {
      const Fe coef = d * delta_prev.inv();
      if (c.size() < b.size() + m) c.resize(b.size() + m, f->zero());
      for (size_t j = 0; j < b.size(); ++j) c[j + m] -= coef * b[j];
      ++m;
    }
  }
  // minimal polynomial: reverse the connection polynomial at length l
  std::vector<Fe> mp(l + 1, f->zero());
  for (size_t j = 0; j <= l; ++j) mp[l - j] = j < c.size() ? c[j] : f->zero();
  return Poly::from_coeffs(f, std::move(mp));
}

Poly krylov_order(const std::function<std::vector<Fe>(const std::vector<Fe>&)>& apply,
                  const std::vector<Fe>& v, const Field* f) {
  const size_t n = v.size();
  // reduced basis rows plus the combination of Krylov vectors producing each
  struct Row {
    std::vector<Fe> vec;
    std::vector<Fe> combo;  // coefficients over t^i
    size_t pivot;
  };
  std::vector<Row> basis;
  std::vector<Fe> w = v;
  std::vector<Fe> combo;  // of current w: e_j
  for (size_t step = 0; step <= n; ++step) {
    combo.assign(step + 1, f->zero());
    combo[step] = f->one();
    std::vector<Fe> r = w;
    std::vector<Fe> rc = combo;
    for (const Row& row : basis) {
      const Fe c = r[row.pivot];  // copy: the loop below zeroes r[row.pivot]
      if (c.is_zero()) continue;
      for (size_t i = 0; i < n; ++i) r[i] -= c * row.vec[i];
      if (rc.size() < row.combo.size()) rc.resize(row.combo.size(), f->zero());
      for (size_t i = 0; i < row.combo.size(); ++i) rc[i] -= c * row.combo[i];
    }
    size_t pivot = n;
    for (size_t i = 0; i < n; ++i)
      if (!r[i].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      // dependence found: rc gives the minimal polynomial (monic by leading
      // combo coefficient 1 after normalization)
      Poly mp = Poly::from_coeffs(f, rc);
      return mp.is_zero() ? Poly::one(f) : mp.monic();
    }
    const Fe inv = r[pivot].inv();
    for (auto& x : r) x *= inv;
    for (auto& x : rc) x *= inv;
    basis.push_back({std::move(r), std::move(rc), pivot});
    w = apply(w);
  }
  throw std::logic_error("krylov_order: no dependence within n+1 steps");
}

std::vector<Fe> random_functional(const Field* f, size_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<Fe> u;
  u.reserve(n);
  for (size_t i = 0; i < n; ++i) u.push_back(f->random(rng));
  return u;
}

Fe dot(const std::vector<Fe>& a, const std::vector<Fe>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("dimension mismatch");
  Fe s = a[0].field()->zero();
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

std::optional<std::vector<Fe>> solve(const Mat& m, const std::vector<Fe>& rhs) {
  const Field* f = m.field();
  const size_t rows = m.rows(), cols = m.cols();
  if (rhs.size() != rows) throw std::invalid_argument("dimension mismatch");
  Mat a = m;
  std::vector<Fe> b = rhs;
  std::vector<size_t> pivot_row(cols, rows);
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pr = rank;
    while (pr < rows && a.at(pr, c).is_zero()) ++pr;
    if (pr == rows) continue;
    if (pr != rank) {
      for (size_t j = 0; j < cols; ++j) std::swap(a.at(pr, j), a.at(rank, j));
      std::swap(b[pr], b[rank]);
    }
    const Fe inv = a.at(rank, c).inv();
    for (size_t j = 0; j < cols; ++j) a.at(rank, j) *= inv;
    b[rank] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a.at(r, c).is_zero()) continue;
      const Fe factor = a.at(r, c);
      for (size_t j = 0; j < cols; ++j) a.at(r, j) -= factor * a.at(rank, j);
      b[r] -= factor * b[rank];
    }
    pivot_row[c] = rank;
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;  // inconsistent
  std::vector<Fe> x(cols, f->zero());
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_row[c] == rows) return std::nullopt;  // underdetermined
    x[c] = b[pivot_row[c]];
  }
  return x;
}

}  // namespace dmf
