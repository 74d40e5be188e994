#include "kgb/scalar.hpp"

#include <cctype>
#include <climits>
#include <ostream>

namespace kgb {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = r * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error("field characteristic must be a prime below 2^31, got " +
                std::to_string(p));
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.size() >= 2 && (text[0] == 'f' || text[0] == 'F')) {
    std::uint64_t p = 0;
    for (char c : text.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error("malformed field name '" + std::string(text) + "'");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p >= (1ull << 31)) throw Error("field characteristic too large");
    }
    return prime(static_cast<std::uint32_t>(p));
  }
  throw Error("unknown field '" + std::string(text) + "' (expected q or f<p>)");
}

std::string Field::name() const {
  return p_ == 0 ? std::string("q") : "f" + std::to_string(p_);
}

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(__int128 x) { return x < 0 ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x); }

mpz_class mpz_from(u128 x) {
  mpz_class hi(static_cast<unsigned long>(x >> 64)), lo(static_cast<unsigned long>(x));
  return (hi << 64) + lo;
}

constexpr __int128 kMax = static_cast<__int128>(INT64_MAX);

}  // namespace

Scalar Scalar::from_wide(__int128 num, __int128 den) {
  Scalar r;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    r.v_ = Small{0, 1};
    return r;
  }
  const u128 g = gcd128(abs128(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (num <= kMax && num >= -kMax && den <= kMax) {
    r.v_ = Small{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
    return r;
  }
  mpz_class n = mpz_from(abs128(num));
  if (num < 0) n = -n;
  r.v_ = mpq_class(n, mpz_from(static_cast<u128>(den)));
  return r;
}

Scalar Scalar::from_mpq(mpq_class q) {
  Scalar r;
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()) &&
      q.get_num() != LONG_MIN) {
    r.v_ = Small{q.get_num().get_si(), q.get_den().get_si()};
  } else {
    r.v_ = std::move(q);
  }
  return r;
}

Scalar::Scalar(Field f, long value) {
  if (f.is_rational()) {
    v_ = Small{value, 1};
    if (value == LONG_MIN) v_ = mpq_class(value);
  } else {
    const std::uint32_t p = f.characteristic();
    long r = value % static_cast<long>(p);
    if (r < 0) r += p;
    v_ = Residue{static_cast<std::uint32_t>(r), p};
  }
}

Scalar::Scalar(Field f, const mpq_class& value) {
  if (f.is_rational()) {
    *this = from_mpq(value);
    return;
  }
  const std::uint32_t p = f.characteristic();
  const std::uint32_t den = reduce_mpz(value.get_den(), p);
  if (den == 0)
    throw Error("denominator of " + value.get_str() + " vanishes in " +
                f.name());
  const std::uint32_t num = reduce_mpz(value.get_num(), p);
  const std::uint64_t inv = pow_mod(den, p - 2, p);
  v_ = Residue{static_cast<std::uint32_t>(num * inv % p), p};
}

Scalar Scalar::parse(std::string_view text, Field f) {
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw Error("malformed coefficient '" + std::string(text) + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return Scalar(f, q);
}

Field Scalar::field() const {
  if (auto r = std::get_if<Residue>(&v_)) return Field(r->modulus);
  return Field::rationals();
}

bool Scalar::is_zero() const {
  if (auto r = std::get_if<Residue>(&v_)) return r->value == 0;
  if (auto s = std::get_if<Small>(&v_)) return s->num == 0;
  return false;  // large values are never zero
}

bool Scalar::is_one() const {
  if (auto r = std::get_if<Residue>(&v_)) return r->value == 1;
  if (auto s = std::get_if<Small>(&v_)) return s->num == 1 && s->den == 1;
  return false;
}

void Scalar::check_same_field(const Scalar& o) const {
  const auto* a = std::get_if<Residue>(&v_);
  const auto* b = std::get_if<Residue>(&o.v_);
  if ((a == nullptr) != (b == nullptr) || (a && a->modulus != b->modulus))
    throw Error("arithmetic between scalars of different fields");
}

Scalar Scalar::operator-() const {
  if (auto* x = std::get_if<Residue>(&v_)) {
    Scalar r = *this;
    auto& y = std::get<Residue>(r.v_);
    if (x->value) y.value = x->modulus - x->value;
    return r;
  }
  if (auto* s = std::get_if<Small>(&v_)) return from_wide(-static_cast<__int128>(s->num), s->den);
  return from_mpq(-std::get<mpq_class>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (auto* x = std::get_if<Residue>(&v_)) {
    const std::uint64_t s =
        static_cast<std::uint64_t>(x->value) + std::get<Residue>(o.v_).value;
    x->value = static_cast<std::uint32_t>(s % x->modulus);
    return *this;
  }
  const auto* a = std::get_if<Small>(&v_);
  const auto* b = std::get_if<Small>(&o.v_);
  if (a && b) {
    if (a->den == 1 && b->den == 1) {
      const __int128 s = static_cast<__int128>(a->num) + b->num;
      if (s <= kMax && s >= -kMax) {
        std::get<Small>(v_).num = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    *this = from_wide(static_cast<__int128>(a->num) * b->den + static_cast<__int128>(b->num) * a->den,
                      static_cast<__int128>(a->den) * b->den);
    return *this;
  }
  *this = from_mpq(big() + o.big());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (auto* x = std::get_if<Residue>(&v_)) {
    const std::uint64_t s =
        static_cast<std::uint64_t>(x->value) * std::get<Residue>(o.v_).value;
    x->value = static_cast<std::uint32_t>(s % x->modulus);
    return *this;
  }
  const auto* a = std::get_if<Small>(&v_);
  const auto* b = std::get_if<Small>(&o.v_);
  if (a && b) {
    *this = from_wide(static_cast<__int128>(a->num) * b->num,
                      static_cast<__int128>(a->den) * b->den);
    return *this;
  }
  *this = from_mpq(big() * o.big());
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (auto* x = std::get_if<Residue>(&v_)) {
    Scalar r = *this;
    std::get<Residue>(r.v_).value = pow_mod(x->value, x->modulus - 2, x->modulus);
    return r;
  }
  if (auto* s = std::get_if<Small>(&v_)) return from_wide(s->den, s->num);
  return from_mpq(1 / std::get<mpq_class>(v_));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (auto* x = std::get_if<Scalar::Residue>(&a.v_))
    return x->value == std::get<Scalar::Residue>(b.v_).value;
  const auto* p = std::get_if<Scalar::Small>(&a.v_);
  const auto* q = std::get_if<Scalar::Small>(&b.v_);
  if (p && q) return p->num == q->num && p->den == q->den;
  if (p || q) return false;
  return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
}

std::string Scalar::to_string() const {
  if (auto* x = std::get_if<Residue>(&v_)) return std::to_string(x->value);
  if (auto* s = std::get_if<Small>(&v_))
    return s->den == 1 ? std::to_string(s->num)
                       : std::to_string(s->num) + "/" + std::to_string(s->den);
  return std::get<mpq_class>(v_).get_str();
}

mpq_class Scalar::to_rational() const {
  if (auto* x = std::get_if<Residue>(&v_)) return mpq_class(x->value);
  return big();
}

mpq_class Scalar::big() const {
  if (auto* s = std::get_if<Small>(&v_)) return mpq_class(s->num, s->den);
  return std::get<mpq_class>(v_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace kgb
