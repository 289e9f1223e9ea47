#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>

#include "kwpart/rational.hpp"

namespace kwpart::detail {

__extension__ using Int128 = __int128;

/// Exact rational with an int64 fast path. Values that do not fit in a reduced
/// int64 fraction are held as GMP rationals; results are demoted back when
/// they fit again. Used inside the simplex tableau, where almost every entry
/// is a small fraction.
class FastRational {
 public:
  FastRational() = default;
  FastRational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  explicit FastRational(const Rational& q) { assign(q); }

  FastRational(const FastRational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<Rational>(*o.big_);
  }
  FastRational(FastRational&&) noexcept = default;
  FastRational& operator=(const FastRational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<Rational>(*o.big_) : nullptr;
    }
    return *this;
  }
  FastRational& operator=(FastRational&&) noexcept = default;

  bool is_big() const noexcept { return static_cast<bool>(big_); }

  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }

  Rational to_rational() const {
    if (big_) return *big_;
    Rational q(static_cast<long>(num_), static_cast<unsigned long>(den_));
    q.canonicalize();
    return q;
  }

  /// this -= f * p
  void sub_mul(const FastRational& f, const FastRational& p) {
    if (!big_ && !f.big_ && !p.big_ && small_sub_mul(f, p)) return;
    assign(to_rational() - f.to_rational() * p.to_rational());
  }

  /// this *= f
  void mul(const FastRational& f) {
    if (!big_ && !f.big_) {
      std::int64_t n = 0;
      std::int64_t d = 0;
      if (small_mul(num_, den_, f.num_, f.den_, n, d)) {
        num_ = n;
        den_ = d;
        return;
      }
    }
    assign(to_rational() * f.to_rational());
  }

  FastRational reciprocal() const {
    if (!big_) {
      if (num_ > 0) return from_parts(den_, num_);
      if (num_ != std::numeric_limits<std::int64_t>::min()) return from_parts(-den_, -num_);
    }
    FastRational out;
    out.assign(1 / to_rational());
    return out;
  }

  FastRational operator/(const FastRational& o) const {
    if (!big_ && !o.big_ && o.num_ != std::numeric_limits<std::int64_t>::min()) {
      FastRational inv = o.reciprocal();
      std::int64_t n = 0;
      std::int64_t d = 0;
      if (!inv.big_ && small_mul(num_, den_, inv.num_, inv.den_, n, d)) return from_parts(n, d);
    }
    FastRational out;
    out.assign(to_rational() / o.to_rational());
    return out;
  }

  FastRational operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) return from_parts(-num_, den_);
    FastRational out;
    out.assign(-to_rational());
    return out;
  }

  friend bool operator<(const FastRational& a, const FastRational& b) {
    if (!a.big_ && !b.big_) {
      return static_cast<Int128>(a.num_) * b.den_ < static_cast<Int128>(b.num_) * a.den_;
    }
    return a.to_rational() < b.to_rational();
  }
  friend bool operator==(const FastRational& a, const FastRational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_rational() == b.to_rational();
  }

 private:
  static FastRational from_parts(std::int64_t n, std::int64_t d) {
    FastRational out;
    out.num_ = n;
    out.den_ = d;
    return out;
  }

  void assign(const Rational& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
    } else if (big_) {
      *big_ = q;
    } else {
      big_ = std::make_unique<Rational>(q);
    }
  }

  static std::uint64_t uabs(std::int64_t v) noexcept {
    return v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  }

  // (an/ad) * (bn/bd) reduced; false on overflow.
  static bool small_mul(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd, std::int64_t& n,
                        std::int64_t& d) {
    if (an == 0 || bn == 0) {
      n = 0;
      d = 1;
      return true;
    }
    const auto g1 = static_cast<std::int64_t>(std::gcd(uabs(an), static_cast<std::uint64_t>(bd)));
    const auto g2 = static_cast<std::int64_t>(std::gcd(uabs(bn), static_cast<std::uint64_t>(ad)));
    if (__builtin_mul_overflow(an / g1, bn / g2, &n)) return false;
    if (__builtin_mul_overflow(ad / g2, bd / g1, &d)) return false;
    return true;
  }

  bool small_sub_mul(const FastRational& f, const FastRational& p) {
    std::int64_t tn = 0;
    std::int64_t td = 0;
    if (!small_mul(f.num_, f.den_, p.num_, p.den_, tn, td)) return false;
    if (tn == 0) return true;
    if (den_ == 1 && td == 1) {
      std::int64_t r = 0;
      if (__builtin_sub_overflow(num_, tn, &r)) return false;
      num_ = r;
      return true;
    }
    // a/b - c/d with g = gcd(b, d): t = a(d/g) - c(b/g), g2 = gcd(t, g),
    // result t/g2 over (b/g)(d/g2).
    const auto g = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(td)));
    const Int128 t = static_cast<Int128>(num_) * (td / g) - static_cast<Int128>(tn) * (den_ / g);
    if (t == 0) {
      num_ = 0;
      den_ = 1;
      return true;
    }
    const Int128 abs_t = t < 0 ? -t : t;
    const auto g2 = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(abs_t % g), static_cast<std::uint64_t>(g)));
    const Int128 rn = t / g2;
    const Int128 rd = static_cast<Int128>(den_ / g) * (td / g2);
    if (rn > std::numeric_limits<std::int64_t>::max() || rn < -std::numeric_limits<std::int64_t>::max() ||
        rd > std::numeric_limits<std::int64_t>::max()) {
      return false;
    }
    num_ = static_cast<std::int64_t>(rn);
    den_ = static_cast<std::int64_t>(rd);
    return true;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;  // > 0
  std::unique_ptr<Rational> big_;
};

}  // namespace kwpart::detail
