#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nfold {

using Int = std::int64_t;

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : Error {
  using Error::Error;
};

// A caller violated an operation's precondition (malformed or unsupported input).
struct PreconditionError : Error {
  using Error::Error;
};

// An exhaustive search or table would exceed its configured size limit.
struct SizeLimitError : Error {
  using Error::Error;
};

namespace checked {

inline Int add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline Int sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
  return out;
}

inline Int mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

// Floor and ceiling of a / b for b > 0.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && (a > 0)) ++q;
  return q;
}

}  // namespace checked

/// Exact rational number with a positive denominator. Only what the
/// imbalance and partial-sum checks need: construction, comparison, and
/// reduction for printing.
class Rational {
 public:
  Rational(Int num = 0, Int den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw PreconditionError("rational with zero denominator");
    if (den_ < 0) {
      num_ = checked::neg(num_);
      den_ = checked::neg(den_);
    }
  }

  Int num() const { return num_; }
  Int den() const { return den_; }

  Rational reduced() const {
    Int g = std::gcd(num_, den_);
    return g == 0 ? Rational(0, 1) : Rational(num_ / g, den_ / g);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ == static_cast<__int128>(b.num_) * a.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    Rational r = reduced();
    return r.den_ == 1 ? std::to_string(r.num_) : std::to_string(r.num_) + "/" + std::to_string(r.den_);
  }

 private:
  Int num_;
  Int den_;
};

}  // namespace nfold
