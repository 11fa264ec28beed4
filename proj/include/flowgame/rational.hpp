#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flowgame {

/// Exact arbitrary-precision rational number, always kept in canonical form
/// (reduced, positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : value_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(unsigned long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses integer ("3"), fraction ("-7/2") or decimal ("0.25") literals.
  /// Exponent notation and surrounding whitespace are rejected.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("invalid rational literal '" + s + "'"); };
    auto digits_only = [](std::string_view d) {
      if (d.empty()) return false;
      for (char c : d)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    mpq_class q;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
      auto num = body.substr(0, slash);
      auto den = body.substr(slash + 1);
      if (!digits_only(num) || !digits_only(den)) throw bad();
      mpz_class d{std::string(den)};
      if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      q = mpq_class(mpz_class(std::string(num)), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
      auto ip = body.substr(0, dot);
      auto fp = body.substr(dot + 1);
      if ((ip.empty() && fp.empty()) || (!ip.empty() && !digits_only(ip)) ||
          (!fp.empty() && !digits_only(fp)))
        throw bad();
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
      mpz_class whole(ip.empty() ? std::string("0") : std::string(ip));
      mpz_class frac(fp.empty() ? std::string("0") : std::string(fp));
      q = mpq_class(whole * scale + frac, scale);
    } else {
      if (!digits_only(body)) throw bad();
      q = mpq_class(mpz_class(std::string(body)));
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
  }

  /// "a/b", or "a" when the denominator is 1.
  [[nodiscard]] std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

  /// Largest integer not above the value.
  [[nodiscard]] mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return r;
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace flowgame
