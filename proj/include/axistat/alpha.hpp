#pragma once

#include <string_view>

namespace axistat {

enum class Regime {
  Positive,         // alpha > 0
  NegTwoToZero,     // -2 < alpha < 0
  ExactNegTwo,      // alpha == -2
  NegFourToNegTwo,  // -4 < alpha < -2
  ExactNegFour,     // alpha == -4
  BelowNegFour,     // alpha < -4
};

std::string_view to_string(Regime r);

/// Exponent of the density |p|^alpha. Zero (the area functional) is rejected,
/// as are non-finite values. Regime boundaries use exact comparison.
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const noexcept { return value_; }
  Regime regime() const noexcept;

 private:
  double value_;
};

}  // namespace axistat
