// Exact field elements: rationals (GMP) or residues modulo a prime.

#ifndef KGB_SCALAR_HPP
#define KGB_SCALAR_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace kgb {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground field: either Q (characteristic 0) or F_p for a prime p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws kgb::Error if p is not a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Accepts "q", "Q", "f2", "f101", "F7", ...
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }

 private:
  friend class Scalar;
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// An exact element of a Field. Rationals are kept in canonical form by GMP.
class Scalar {
 public:
  Scalar() : v_(Small{0, 1}) {}  // rational zero
  Scalar(Field f, long value);
  Scalar(Field f, const mpq_class& value);

  static Scalar zero(Field f) { return Scalar(f, 0L); }
  static Scalar one(Field f) { return Scalar(f, 1L); }
  /// Parses "3", "-2/3", "+7".
  static Scalar parse(std::string_view text, Field f);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;
  /// Exact rational value; residues are lifted to [0, p).
  mpq_class to_rational() const;

 private:
  // Rationals whose numerator and denominator fit in 64 bits stay in
  // `Small` (reduced, den > 0); larger ones live in an mpq_class.
  struct Small {
    std::int64_t num;
    std::int64_t den;
  };
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };
  void check_same_field(const Scalar& o) const;
  bool is_rational_value() const { return !std::holds_alternative<Residue>(v_); }
  static Scalar from_mpq(mpq_class q);
  mpq_class big() const;  // rational value as mpq
  static Scalar from_wide(__int128 num, __int128 den);

  std::variant<Small, mpq_class, Residue> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace kgb

#endif
