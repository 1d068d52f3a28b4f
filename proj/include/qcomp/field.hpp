// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "qcomp/error.hpp"

namespace qcomp {

/// Bound on p for operations that scan the whole prime field
/// (square roots, isotropic-vector search, witness search).
inline constexpr long kMaxExhaustiveP = 10000;

/// The base field: the rationals or a prime field F_p. p = 2 is legal and
/// fully supported; primality is checked by trial division at construction.
class FieldSpec {
 public:
  enum class Kind { rationals, prime_field };

  FieldSpec() = default;
  static FieldSpec Q() { return FieldSpec(); }
  static FieldSpec Fp(long p);

  Kind kind() const { return kind_; }
  long p() const { return p_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }
  bool is_prime_field() const { return kind_ == Kind::prime_field; }
  long characteristic() const { return is_rationals() ? 0 : p_; }

  bool operator==(const FieldSpec& o) const {
    return kind_ == o.kind_ && p_ == o.p_;
  }
  std::string str() const;

 private:
  Kind kind_ = Kind::rationals;
  long p_ = 0;
};

/// An exact field element: a reduced fraction over Q, or a residue in
/// [0, p) over F_p. Mixing elements of different fields throws.
class Scalar {
 public:
  Scalar() : fs_(), v_(mpq_class(0)) {}

  static Scalar zero(const FieldSpec& fs) { return from_int(fs, 0); }
  static Scalar one(const FieldSpec& fs) { return from_int(fs, 1); }
  static Scalar from_int(const FieldSpec& fs, long long n);
  static Scalar from_fraction(const FieldSpec& fs, long long num,
                              long long den);
  static Scalar from_mpq(mpq_class q);  // over Q

  const FieldSpec& field() const { return fs_; }

  bool is_zero() const;
  bool is_one() const;

  /// F_p residue in [0, p).
  long long residue() const;
  /// Underlying rational (Q only).
  const mpq_class& rat() const;

  Scalar operator-() const;
  Scalar inverse() const;  // throws division_by_zero on 0

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }

  /// Deterministic total order within one field (residue order over F_p,
  /// rational order over Q). Used for canonical tie-breaks.
  static int cmp(const Scalar& a, const Scalar& b);

  /// Canonical text form: "num/den" over Q, decimal residue over F_p.
  std::string str() const;

 private:
  Scalar(FieldSpec fs, long long r) : fs_(fs), v_(r) {}
  Scalar(FieldSpec fs, mpq_class q) : fs_(fs), v_(std::move(q)) {}

  FieldSpec fs_;
  std::variant<long long, mpq_class> v_;
};

/// A square root of a, when one exists. Over F_p by exhaustive scan
/// (throws field_too_large past kMaxExhaustiveP); over Q by exact integer
/// square roots of numerator and denominator.
std::optional<Scalar> is_square(const Scalar& a);

/// Parses "a/b" or "a" (Q), or a decimal integer (F_p).
Scalar scalar_from_string(const FieldSpec& fs, const std::string& s);

void require_same_field(const FieldSpec& a, const FieldSpec& b);

/// SplitMix64: tiny, fully deterministic seeded generator used for every
/// randomized batch in tests and the self-test runner.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(below(
                    static_cast<std::uint64_t>(hi - lo + 1)));
  }
  /// Any field element; over Q a small fraction.
  Scalar scalar(const FieldSpec& fs);
  Scalar nonzero_scalar(const FieldSpec& fs);

 private:
  std::uint64_t s_;
};

}  // namespace qcomp
