#ifndef DMF_LINALG_HPP
#define DMF_LINALG_HPP

#include <functional>
#include <vector>

#include "dmf/poly.hpp"

namespace dmf {

/// Dense matrix over a finite field, row-major.
class Mat {
 public:
  Mat(const Field* f, size_t rows, size_t cols)
      : f_(f), rows_(rows), cols_(cols), e_(rows * cols, f->zero()) {}

  const Field* field() const { return f_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Fe& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Fe& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  static Mat identity(const Field* f, size_t n);
  Mat operator*(const Mat& o) const;
  std::vector<Fe> apply(const std::vector<Fe>& v) const;  // M * v
  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  const Field* f_;
  size_t rows_, cols_;
  std::vector<Fe> e_;
};

/// Monic characteristic polynomial det(tI - M) via Hessenberg reduction.
Poly charpoly(const Mat& m);

/// Monic minimal polynomial of the shortest linear recurrence generating the
/// sequence; the all-zero sequence yields 1.
Poly berlekamp_massey(const Field* f, const std::vector<Fe>& seq);

/// Exact monic minimal polynomial of v under the operator: Gaussian
/// elimination on the Krylov sequence v, Tv, T^2v, ...  v = 0 yields 1.
Poly krylov_order(const std::function<std::vector<Fe>(const std::vector<Fe>&)>& apply,
                  const std::vector<Fe>& v, const Field* f);

/// Uniform random linear functional with n coefficients.
std::vector<Fe> random_functional(const Field* f, size_t n, Rng& rng);

Fe dot(const std::vector<Fe>& a, const std::vector<Fe>& b);

/// Solve M x = rhs (rows >= cols, exact); returns nullopt if inconsistent or
/// the solution is not unique.
std::optional<std::vector<Fe>> solve(const Mat& m, const std::vector<Fe>& rhs);

}  // namespace dmf

#endif
