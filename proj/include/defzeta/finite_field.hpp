#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "defzeta/fp_poly.hpp"

namespace defzeta {

class ResidueField {
 public:
  // Checks irreducibility of the modulus.
  ResidueField(long p, FpVec modulus_bar);
  static std::shared_ptr<const ResidueField> make(long p, FpVec modulus_bar);

  long p() const { return mod_.p(); }
  int n() const { return mod_.degree(); }
  const FpVec& modulus_bar() const { return mod_.poly(); }
  const FpModulus& modulus() const { return mod_; }
  mpz_class order() const;  // q = p^n
  bool operator==(const ResidueField& o) const;

 private:
  FpModulus mod_;
};
using FieldPtr = std::shared_ptr<const ResidueField>;

class FqElem {
 public:
  FqElem(FieldPtr field, FpVec coeffs);
  static FqElem zero(FieldPtr field) { return FqElem(std::move(field), {}); }
  static FqElem constant(FieldPtr field, long c);
  // The element whose base-p digits (lowest coefficient first) encode `index`.
  static FqElem from_index(FieldPtr field, std::uint64_t index);

  const FieldPtr& field() const { return field_; }
  // Exactly n coefficients in [0, p).
  FpVec coeffs() const;
  const FpVec& poly() const { return c_; }  // trimmed
  bool is_zero() const { return c_.empty(); }
  bool in_prime_field() const { return c_.size() <= 1; }
  long constant_term() const { return c_.empty() ? 0 : c_[0]; }

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator-() const;
  bool operator==(const FqElem& o) const;
  bool operator!=(const FqElem& o) const { return !(*this == o); }
  FqElem inverse() const;
  FqElem pow(const mpz_class& e) const;
  std::string to_string() const;

 private:
  FieldPtr field_;
  FpVec c_;
};

bool is_square(const FqElem& a);
// Minimal polynomial over F_p (monic, irreducible, degree dividing n).
FpVec minimal_polynomial(const FqElem& gamma_bar);
// Discriminant of X^3 + aX^2 + bX + c.
FqElem cubic_discriminant(const FqElem& a, const FqElem& b, const FqElem& c);
// Projective point count of Y^2 = X^3 + aX^2 + bX + c.
mpz_class naive_count(const FqElem& a, const FqElem& b, const FqElem& c);

}  // namespace defzeta
