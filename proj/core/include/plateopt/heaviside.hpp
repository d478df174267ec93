#pragma once

#include <string_view>

namespace plateopt {

enum class HeavisideKind { exponential, polynomial };

/// Regularized Heaviside step at a fixed width epsilon.
///
/// exponential: 1 - exp(-r/eps)/2 for r >= 0, exp(r/eps)/2 for r < 0. Smooth
///   on each side, C^1 at 0, derivative strictly positive everywhere.
/// polynomial:  1 for r >= 0, 0 for r <= -eps, and the cubic blend
///   (eps (r+eps)^2 - 2 r (r+eps)^2) / eps^3 in between. The derivative is
///   supported in (-eps, 0) only, so descent arguments that need a positive
///   derivative on all of D do not apply to it.
class HeavisideProfile {
 public:
  HeavisideProfile(HeavisideKind kind, double epsilon);

  [[nodiscard]] HeavisideKind kind() const noexcept { return kind_; }
  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

  [[nodiscard]] double value(double r) const noexcept;
  [[nodiscard]] double derivative(double r) const noexcept;

  /// True when the derivative is strictly positive on the whole real line.
  [[nodiscard]] bool strictly_increasing() const noexcept { return kind_ == HeavisideKind::exponential; }

 private:
  HeavisideKind kind_;
  double epsilon_;
};

/// Odd saturation map onto ]-1, 1[: -1 + e^r for r < 0, 1 - e^{-r} for r >= 0.
double saturate(double r) noexcept;

HeavisideKind heaviside_kind_from_name(std::string_view name);
std::string_view to_string(HeavisideKind kind) noexcept;

}  // namespace plateopt
