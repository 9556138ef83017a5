#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mvapx {

/// Integer extended with -inf and +inf. Border functions use the infinite
/// values to mark an absent lower or upper border; no sentinel integers.
class ExtInt {
 public:
  constexpr ExtInt(std::int64_t value = 0) : kind_(Kind::kFinite), value_(value) {}

  static constexpr ExtInt neg_inf() { return ExtInt(Kind::kNegInf); }
  static constexpr ExtInt pos_inf() { return ExtInt(Kind::kPosInf); }

  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::kPosInf; }

  /// Throws Error(kInvalidInput) on an infinite value.
  std::int64_t value() const;

  /// +inf + -inf is undefined and throws.
  friend ExtInt operator+(ExtInt a, ExtInt b);
  friend ExtInt operator-(ExtInt a);
  friend ExtInt operator-(ExtInt a, ExtInt b) { return a + (-b); }

  friend constexpr auto operator<=>(const ExtInt&, const ExtInt&) = default;

  /// "-inf", "inf" or the decimal value.
  std::string to_string() const;
  static ExtInt parse(std::string_view text);

 private:
  enum class Kind : std::int8_t { kNegInf = -1, kFinite = 0, kPosInf = 1 };
  constexpr explicit ExtInt(Kind kind) : kind_(kind), value_(0) {}

  // Member order matters: the defaulted comparison orders by kind first.
  Kind kind_;
  std::int64_t value_;
};

}  // namespace mvapx
