#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace sae {

// A real number or one of the two infinities. Used for the Robin parameter
// (gamma = +inf is Dirichlet) and the domain-wall parameter eta.
class ExtendedReal {
 public:
  enum class Kind { Finite, PosInf, NegInf };

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : kind_(Kind::Finite), value_(v) {}  // NOLINT

  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }

  // Maps +-HUGE_VAL onto the infinite variants; NaN stays finite-NaN and is
  // rejected by callers.
  static ExtendedReal from_double(double v) {
    if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
    return ExtendedReal(v);
  }

  // Accepts plain numbers plus "inf", "+inf", "-inf", "infinity".
  static ExtendedReal parse(std::string_view text);

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  // Finite value; +-infinity for the infinite variants.
  constexpr double value() const {
    switch (kind_) {
      case Kind::PosInf:
        return std::numeric_limits<double>::infinity();
      case Kind::NegInf:
        return -std::numeric_limits<double>::infinity();
      default:
        return value_;
    }
  }

  std::string to_string() const;

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

}  // namespace sae
