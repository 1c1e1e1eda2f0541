#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mtlift {

// Exact rational on 64-bit integers, always normalized (gcd 1, positive
// denominator).  All quantities in this project are tiny (numerators and
// denominators bounded by small multiples of the rank), so no overflow
// handling is needed.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(long long n) : num_(n) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  Rat operator-() const { return Rat(-num_, den_, already_normal{}); }
  Rat operator+(const Rat& o) const {
    return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rat operator-(const Rat& o) const {
    return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
  Rat operator/(const Rat& o) const {
    if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  // Fixed textual form: optional sign, numerator, and "/den" unless integral.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  static Rat parse(std::string_view s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos)
        return Rat(std::stoll(std::string(s)));
      return Rat(std::stoll(std::string(s.substr(0, slash))),
                 std::stoll(std::string(s.substr(slash + 1))));
    } catch (const std::exception&) {
      throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  struct already_normal {};
  Rat(long long n, long long d, already_normal) : num_(n), den_(d) {}

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace mtlift
