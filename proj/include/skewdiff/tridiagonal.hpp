#pragma once

#include <vector>

namespace skewdiff {

enum class MatrixRole { unweighted_mass, mass, stiffness, composite };

// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct TridiagonalSystem {
  MatrixRole role = MatrixRole::composite;
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

// ca * a + cb * b, entry-wise; sizes must match.
TridiagonalSystem combine(const TridiagonalSystem& a, double ca,
                          const TridiagonalSystem& b, double cb);

std::vector<double> multiply(const TridiagonalSystem& m,
                             const std::vector<double>& x);

// Thomas factorization; valid for symmetric positive definite input and
// rejects nonpositive pivots (std::runtime_error).
class TridiagonalFactor {
 public:
  explicit TridiagonalFactor(const TridiagonalSystem& m);
  std::vector<double> solve(std::vector<double> rhs) const;

 private:
  std::vector<double> inv_pivot_;
  std::vector<double> off_;
};

std::vector<double> solve_tridiagonal(const TridiagonalSystem& m,
                                      std::vector<double> rhs);

}  // namespace skewdiff
