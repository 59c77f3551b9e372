#include "skewdiff/tridiagonal.hpp"

#include <stdexcept>

namespace skewdiff {

TridiagonalSystem combine(const TridiagonalSystem& a, double ca,
                          const TridiagonalSystem& b, double cb) {
  if (a.diag.size() != b.diag.size() || a.off.size() != b.off.size()) {
    throw std::invalid_argument("combine: size mismatch");
  }
  TridiagonalSystem r;
  r.role = MatrixRole::composite;
  r.diag.resize(a.diag.size());
  r.off.resize(a.off.size());
  for (std::size_t i = 0; i < a.diag.size(); ++i) {
    r.diag[i] = ca * a.diag[i] + cb * b.diag[i];
  }
  for (std::size_t i = 0; i < a.off.size(); ++i) {
    r.off[i] = ca * a.off[i] + cb * b.off[i];
  }
  return r;
}

std::vector<double> multiply(const TridiagonalSystem& m,
                             const std::vector<double>& x) {
  const std::size_t n = m.diag.size();
  if (x.size() != n) throw std::invalid_argument("multiply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = m.diag[i] * x[i];
    if (i > 0) v += m.off[i - 1] * x[i - 1];
    if (i + 1 < n) v += m.off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalSystem& m)
    : inv_pivot_(m.diag.size()), off_(m.off) {
  const std::size_t n = m.diag.size();
  if (n == 0) throw std::invalid_argument("factor: empty system");
  double pivot = m.diag[0];
  for (std::size_t i = 0;; ++i) {
    if (!(pivot > 0.0)) {
      throw std::runtime_error("factor: nonpositive pivot, matrix is not positive definite");
    }
    inv_pivot_[i] = 1.0 / pivot;
    if (i + 1 == n) break;
    pivot = m.diag[i + 1] - m.off[i] * m.off[i] * inv_pivot_[i];
  }
}

std::vector<double> TridiagonalFactor::solve(std::vector<double> rhs) const {
  const std::size_t n = inv_pivot_.size();
  if (rhs.size() != n) throw std::invalid_argument("solve: size mismatch");
  for (std::size_t i = 1; i < n; ++i) {
    rhs[i] -= off_[i - 1] * inv_pivot_[i - 1] * rhs[i - 1];
  }
  rhs[n - 1] *= inv_pivot_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - off_[i] * rhs[i + 1]) * inv_pivot_[i];
  }
  return rhs;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& m,
                                      std::vector<double> rhs) {
  return TridiagonalFactor(m).solve(std::move(rhs));
}

}  // namespace skewdiff
