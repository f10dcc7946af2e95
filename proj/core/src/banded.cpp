#include "srf/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srf/error.hpp"

namespace srf {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku),
      ab_(static_cast<size_t>(2 * kl + ku + 1) * n, 0.0),
      ipiv_(n, 0) {}

double& BandedMatrix::at(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
    throw SrfError(errc::domain, "banded entry outside band");
  return band(kl_ + ku_ + i - j, j);
}

double BandedMatrix::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
    return 0.0;
  return band(kl_ + ku_ + i - j, j);
}

void BandedMatrix::factor() {
  const int kv = kl_ + ku_;  // fill-in rows live above the ku band
  double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();

  for (int j = 0; j < n_; ++j) {
    const int km = std::min(kl_, n_ - 1 - j);  // active subdiagonal count
    // pivot search in column j, rows j..j+km
    int p = 0;
    double best = std::fabs(band(kv, j));
    for (int k = 1; k <= km; ++k) {
      const double cand = std::fabs(band(kv + k, j));
      if (cand > best) {
        best = cand;
        p = k;
      }
    }
    ipiv_[j] = j + p;
    if (best == 0.0)
      throw SrfError(errc::singular_system,
                     "singular velocity system: zero pivot at column " + std::to_string(j));
    pmax = std::max(pmax, best);
    pmin = std::min(pmin, best);

    const int jmax = std::min(n_ - 1, j + kv);  // rightmost column touched by row j
    if (p != 0) {
      for (int c = j; c <= jmax; ++c)
        std::swap(band(kv + (j - c), c), band(kv + (j + p - c), c));
    }
    const double inv = 1.0 / band(kv, j);
    for (int k = 1; k <= km; ++k) {
      const double m = band(kv + k, j) * inv;
      band(kv + k, j) = m;
      for (int c = j + 1; c <= jmax; ++c)
        band(kv + (j + k - c), c) -= m * band(kv + (j - c), c);
    }
  }
  factored_ = true;
  pivot_ratio_cache_ = pmax / pmin;
}

void BandedMatrix::solve(std::vector<double>& b) const {
  if (!factored_) throw SrfError(errc::singular_system, "solve before factor");
  const int kv = kl_ + ku_;
  // forward elimination with row swaps
  for (int j = 0; j < n_; ++j) {
    if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
    const int km = std::min(kl_, n_ - 1 - j);
    for (int k = 1; k <= km; ++k) b[j + k] -= band(kv + k, j) * b[j];
  }
  // back substitution
  for (int i = n_ - 1; i >= 0; --i) {
    const int jmax = std::min(n_ - 1, i + kv);
    double s = b[i];
    for (int j = i + 1; j <= jmax; ++j) s -= band(kv + (i - j), j) * b[j];
    b[i] = s / band(kv, i);
  }
}

double BandedMatrix::pivot_ratio() const { return pivot_ratio_cache_; }

}  // namespace srf
