#pragma once

#include <vector>

namespace srf {

// General banded matrix with LU factorization under partial pivoting.
// Storage follows the usual band layout with kl extra rows for fill-in:
// entry (i, j) lives at ab[kl + ku + i - j][j].
class BandedMatrix {
public:
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }

  // Valid for |i - j| within the declared bands; zero-initialized.
  double& at(int i, int j);
  double at(int i, int j) const;

  // In-place factorization; throws SrfError(errc::singular_system) on a zero
  // pivot. The message carries a max/min pivot magnitude ratio as a cheap
  // conditioning indicator.
  void factor();

  // Solve with the factored matrix (forward/back substitution).
  void solve(std::vector<double>& b) const;

  // max|pivot| / min|pivot| of the factored matrix.
  double pivot_ratio() const;

private:
  int n_, kl_, ku_;
  bool factored_ = false;
  double pivot_ratio_cache_ = 0.0;
  std::vector<double> ab_;    // (2*kl + ku + 1) x n, column-major by row index
  std::vector<int> ipiv_;

  double& band(int r, int j) { return ab_[static_cast<size_t>(r) * n_ + j]; }
  double band(int r, int j) const { return ab_[static_cast<size_t>(r) * n_ + j]; }
};

}  // namespace srf
