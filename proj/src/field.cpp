// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "qcomp/field.hpp"

#include <cstdlib>

namespace qcomp {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::field_too_large: return "FieldTooLarge";
    case errc::form_mismatch: return "FormMismatch";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::isotropic_vector: return "IsotropicVector";
    case errc::factorization_failed: return "FactorizationFailed";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::nontrivial_discriminant: return "NontrivialDiscriminant";
    case errc::not_hyperbolic: return "NotHyperbolic";
    case errc::bad_parity: return "BadParity";
    case errc::not_pointed: return "NotPointed";
    case errc::not_unital: return "NotUnital";
    case errc::no_norm_one_vector: return "NoNormOneVector";
    case errc::relation_violation: return "RelationViolation";
    case errc::not_in_multiplier_group: return "NotInMultiplierGroup";
    case errc::not_in_go: return "NotInGo";
    case errc::not_in_omega: return "NotInOmega";
    case errc::not_autotopy: return "NotAutotopy";
    case errc::polarization_mismatch: return "PolarizationMismatch";
    case errc::bad_input: return "BadInput";
    case errc::inconsistent: return "Inconsistent";
    case errc::rank_deficient: return "RankDeficient";
    case errc::intertwiner_not_found: return "IntertwinerNotFound";
  }
  return "UnknownError";
}

bool errc_is_internal_fault(errc c) noexcept {
  return c == errc::inconsistent || c == errc::rank_deficient ||
         c == errc::intertwiner_not_found;
}

FieldSpec FieldSpec::Fp(long p) {
  check(p >= 2, errc::bad_input, "p must be at least 2");
  for (long d = 2; d * d <= p; ++d)
    check(p % d != 0, errc::bad_input, "p is not prime");
  FieldSpec fs;
  fs.kind_ = Kind::prime_field;
  fs.p_ = p;
  return fs;
}

std::string FieldSpec::str() const {
  return is_rationals() ? "Q" : "F" + std::to_string(p_);
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  check(a == b, errc::field_mismatch,
        "operands over " + a.str() + " and " + b.str());
}

namespace {
long long mod_reduce(long long n, long p) {
  long long r = n % p;
  return r < 0 ? r + p : r;
}

// Inverse mod p by extended Euclid; p prime, a in (0, p).
long long mod_inverse(long long a, long p) {
  long long t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  return t < 0 ? t + p : t;
}
}  // namespace

Scalar Scalar::from_int(const FieldSpec& fs, long long n) {
  if (fs.is_prime_field()) return Scalar(fs, mod_reduce(n, fs.p()));
  mpq_class q;
  q = static_cast<long>(n);  // desk scale: fits
  return Scalar(fs, std::move(q));
}

Scalar Scalar::from_fraction(const FieldSpec& fs, long long num,
                             long long den) {
  check(den != 0, errc::division_by_zero, "fraction with zero denominator");
  if (fs.is_prime_field())
    return from_int(fs, num) / from_int(fs, den);
  mpq_class q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return Scalar(fs, std::move(q));
}

Scalar Scalar::from_mpq(mpq_class q) {
  q.canonicalize();
  return Scalar(FieldSpec::Q(), std::move(q));
}

bool Scalar::is_zero() const {
  if (fs_.is_prime_field()) return std::get<long long>(v_) == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  if (fs_.is_prime_field()) return std::get<long long>(v_) == 1 % fs_.p();
  return std::get<mpq_class>(v_) == 1;
}

long long Scalar::residue() const {
  check(fs_.is_prime_field(), errc::bad_input, "residue() over Q");
  return std::get<long long>(v_);
}

const mpq_class& Scalar::rat() const {
  check(fs_.is_rationals(), errc::bad_input, "rat() over F_p");
  return std::get<mpq_class>(v_);
}

Scalar Scalar::operator-() const {
  if (fs_.is_prime_field())
    return Scalar(fs_, mod_reduce(-std::get<long long>(v_), fs_.p()));
  return Scalar(fs_, mpq_class(-std::get<mpq_class>(v_)));
}

Scalar Scalar::inverse() const {
  check(!is_zero(), errc::division_by_zero, "inverse of zero");
  if (fs_.is_prime_field())
    return Scalar(fs_, mod_inverse(std::get<long long>(v_), fs_.p()));
  return Scalar(fs_, mpq_class(1 / std::get<mpq_class>(v_)));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(a.fs_, b.fs_);
  if (a.fs_.is_prime_field())
    return Scalar(a.fs_, mod_reduce(std::get<long long>(a.v_) +
                                        std::get<long long>(b.v_),
                                    a.fs_.p()));
  return Scalar(a.fs_,
                mpq_class(std::get<mpq_class>(a.v_) + std::get<mpq_class>(b.v_)));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_field(a.fs_, b.fs_);
  if (a.fs_.is_prime_field())
    return Scalar(a.fs_, mod_reduce(std::get<long long>(a.v_) -
                                        std::get<long long>(b.v_),
                                    a.fs_.p()));
  return Scalar(a.fs_,
                mpq_class(std::get<mpq_class>(a.v_) - std::get<mpq_class>(b.v_)));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(a.fs_, b.fs_);
  if (a.fs_.is_prime_field())
    return Scalar(a.fs_, mod_reduce(std::get<long long>(a.v_) *
                                        std::get<long long>(b.v_),
                                    a.fs_.p()));
  return Scalar(a.fs_,
                mpq_class(std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_)));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool Scalar::operator==(const Scalar& b) const {
  require_same_field(fs_, b.fs_);
  if (fs_.is_prime_field())
    return std::get<long long>(v_) == std::get<long long>(b.v_);
  return std::get<mpq_class>(v_) == std::get<mpq_class>(b.v_);
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
  require_same_field(a.fs_, b.fs_);
  if (a.fs_.is_prime_field()) {
    long long x = std::get<long long>(a.v_), y = std::get<long long>(b.v_);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  return ::cmp(std::get<mpq_class>(a.v_), std::get<mpq_class>(b.v_));
}

std::string Scalar::str() const {
  if (fs_.is_prime_field()) return std::to_string(std::get<long long>(v_));
  const mpq_class& q = std::get<mpq_class>(v_);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Scalar> is_square(const Scalar& a) {
  const FieldSpec& fs = a.field();
  if (fs.is_prime_field()) {
    check(fs.p() <= kMaxExhaustiveP, errc::field_too_large,
          "square-root scan over " + fs.str());
    long long v = a.residue();
    for (long long r = 0; r <= fs.p() / 2; ++r)
      if ((r * r) % fs.p() == v) return Scalar::from_int(fs, r);
    return std::nullopt;
  }
  const mpq_class& q = a.rat();
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Scalar::zero(fs);
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Scalar::from_mpq(mpq_class(rn) / mpq_class(rd));
}

Scalar scalar_from_string(const FieldSpec& fs, const std::string& s) {
  check(!s.empty(), errc::bad_input, "empty scalar literal");
  if (fs.is_prime_field()) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    check(errno == 0 && end && *end == '\0', errc::bad_input,
          "bad residue literal '" + s + "'");
    return Scalar::from_int(fs, v);
  }
  auto slash = s.find('/');
  mpq_class q;
  if (q.set_str(s, 10) != 0 ||
      (slash != std::string::npos && q.get_den() == 0))
    fail(errc::bad_input, "bad rational literal '" + s + "'");
  check(q.get_den() != 0, errc::division_by_zero,
        "rational literal with zero denominator");
  q.canonicalize();
  return Scalar::from_mpq(std::move(q));
}

Scalar Rng::scalar(const FieldSpec& fs) {
  if (fs.is_prime_field()) return Scalar::from_int(fs, (long long)below(fs.p()));
  long long num = int_in(-4, 4);
  long long den = int_in(1, 3);
  return Scalar::from_fraction(fs, num, den);
}

Scalar Rng::nonzero_scalar(const FieldSpec& fs) {
  for (;;) {
    Scalar s = scalar(fs);
    if (!s.is_zero()) return s;
  }
}

}  // namespace qcomp
