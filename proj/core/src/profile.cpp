#include "srf/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace srf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

RadialProfile RadialProfile::sphere(double R0) {
  if (!(R0 > 0.0)) throw SrfError(errc::config, "sphere radius must be positive");
  RadialProfile p;
  p.kind_ = ProfileKind::sphere;
  p.R0_ = R0;
  return p;
}

RadialProfile RadialProfile::angenent_knopf(double R0, double A) {
  if (!(R0 > 0.0)) throw SrfError(errc::config, "profile scale must be positive");
  if (!(A > 0.0) || !(A < 0.5))
    throw SrfError(errc::config, "waist parameter must lie in (0, 0.5)");
  RadialProfile p;
  p.kind_ = ProfileKind::angenent_knopf;
  p.R0_ = R0;
  p.A_ = A;
  p.B_ = 16.0 * (0.5 - A) / (kPi * kPi);
  p.breaks_ = {-kPi / 4, kPi / 4};
  return p;
}

RadialProfile RadialProfile::cylinder(double rho0) {
  if (!(rho0 > 0.0)) throw SrfError(errc::config, "cylinder radius must be positive");
  RadialProfile p;
  p.kind_ = ProfileKind::cylinder;
  p.rho0_ = rho0;
  return p;
}

RadialProfile RadialProfile::sampled(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw SrfError(errc::config, "sampled profile needs at least 2 knots");
  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (!(knots[k].second > 0.0))
      throw SrfError(errc::config, "sampled profile values must be positive",
                     static_cast<long>(k));
    if (k > 0 && !(knots[k].first > knots[k - 1].first))
      throw SrfError(errc::config, "sampled profile positions must be strictly increasing",
                     static_cast<long>(k));
  }
  RadialProfile p;
  p.kind_ = ProfileKind::sampled;
  p.knots_ = std::move(knots);
  for (std::size_t k = 1; k + 1 < p.knots_.size(); ++k)
    p.breaks_.push_back(p.knots_[k].first);
  return p;
}

std::pair<double, double> RadialProfile::domain() const {
  switch (kind_) {
    case ProfileKind::sphere:
      return {-kPi / 2 * R0_, kPi / 2 * R0_};
    case ProfileKind::angenent_knopf:
      return {-kPi / 2, kPi / 2};
    case ProfileKind::cylinder:
      return {-std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
    case ProfileKind::sampled:
      return {knots_.front().first, knots_.back().first};
  }
  return {0.0, 0.0};
}

ProfileSample RadialProfile::eval(double x) const {
  const auto [lo, hi] = domain();
  const bool closed = kind_ == ProfileKind::sampled;
  if (closed ? (x < lo || x > hi) : !(x > lo && x < hi))
    throw SrfError(errc::domain, "position outside profile domain");
  switch (kind_) {
    case ProfileKind::sphere: {
      const double u = x / R0_;
      return {R0_ * std::cos(u), -std::sin(u), -std::cos(u) / R0_};
    }
    case ProfileKind::angenent_knopf: {
      if (std::fabs(x) >= kPi / 4)
        return {R0_ * std::cos(x), -R0_ * std::sin(x), -R0_ * std::cos(x)};
      const double w = std::sqrt(A_ + B_ * x * x);
      return {R0_ * w, R0_ * B_ * x / w, R0_ * A_ * B_ / (w * w * w)};
    }
    case ProfileKind::cylinder:
      return {rho0_, 0.0, 0.0};
    case ProfileKind::sampled: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                 [](double v, const auto& kn) { return v < kn.first; });
      const std::size_t hi_idx =
          std::min<std::size_t>(std::max<std::ptrdiff_t>(it - knots_.begin(), 1),
                                knots_.size() - 1);
      const auto& [x0, r0] = knots_[hi_idx - 1];
      const auto& [x1, r1] = knots_[hi_idx];
      const double m = (r1 - r0) / (x1 - x0);
      return {r0 + m * (x - x0), m, 0.0};
    }
  }
  throw SrfError(errc::domain, "invalid profile kind");
}

}  // namespace srf
