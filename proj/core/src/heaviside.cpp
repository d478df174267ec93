#include "plateopt/heaviside.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plateopt {

HeavisideProfile::HeavisideProfile(HeavisideKind kind, double epsilon) : kind_(kind), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("HeavisideProfile: epsilon must be positive and finite");
  }
}

double HeavisideProfile::value(double r) const noexcept {
  const double eps = epsilon_;
  if (kind_ == HeavisideKind::exponential) {
    // Only ever exponentiate non-positive arguments.
    return r >= 0.0 ? 1.0 - 0.5 * std::exp(-r / eps) : 0.5 * std::exp(r / eps);
  }
  if (r >= 0.0) return 1.0;
  if (r <= -eps) return 0.0;
  const double s = r + eps;
  return (eps * s * s - 2.0 * r * s * s) / (eps * eps * eps);
}

double HeavisideProfile::derivative(double r) const noexcept {
  const double eps = epsilon_;
  if (kind_ == HeavisideKind::exponential) {
    return 0.5 / eps * std::exp(-std::abs(r) / eps);
  }
  if (r >= 0.0 || r <= -eps) return 0.0;
  return -6.0 * r * (r + eps) / (eps * eps * eps);
}

double saturate(double r) noexcept { return r < 0.0 ? std::expm1(r) : -std::expm1(-r); }

HeavisideKind heaviside_kind_from_name(std::string_view name) {
  if (name == "exponential") return HeavisideKind::exponential;
  if (name == "polynomial") return HeavisideKind::polynomial;
  throw std::invalid_argument("unknown Heaviside profile '" + std::string(name) + "'");
}

std::string_view to_string(HeavisideKind kind) noexcept {
  return kind == HeavisideKind::exponential ? "exponential" : "polynomial";
}

}  // namespace plateopt
