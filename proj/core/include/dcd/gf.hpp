#pragma once

#include <vector>

namespace dcd {

/// Finite field GF(s) for a prime power s <= 32, stored as lookup tables.
///
/// Elements are indices 0..s-1: index = sum_i c_i p^i for the polynomial
/// c_0 + c_1 x + ... over GF(p). 0 and 1 are the additive and multiplicative
/// identities. Extension fields reduce modulo a fixed irreducible polynomial
/// per order, so the indexing is identical on every run and platform.
class GaloisField {
 public:
  static constexpr int kMaxOrder = 32;

  explicit GaloisField(int order);

  int order() const noexcept { return order_; }
  int characteristic() const noexcept { return characteristic_; }
  int degree() const noexcept { return degree_; }
  /// Coefficients (constant term first) of the modulus; {} for prime fields.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  int add(int a, int b) const { return add_[at(a, b)]; }
  int mul(int a, int b) const { return mul_[at(a, b)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int neg(int a) const;
  int inv(int a) const;

  const std::vector<int>& add_table() const noexcept { return add_; }
  const std::vector<int>& mul_table() const noexcept { return mul_; }

  friend bool operator==(const GaloisField&, const GaloisField&) = default;

 private:
  std::size_t at(int a, int b) const;

  int order_ = 0;
  int characteristic_ = 0;
  int degree_ = 0;
  std::vector<int> modulus_;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

enum class FieldOp { Add, Mul, Neg, Inv };

/// Table lookup front end; `b` is ignored for the unary ops.
int gf_arith(const GaloisField& field, FieldOp op, int a, int b = 0);

/// (p, k) with s = p^k, or (0, 0) if s is not a prime power.
struct PrimePower {
  int prime = 0;
  int exponent = 0;
};
PrimePower factor_prime_power(int s);
bool is_prime_power(int s);

}  // namespace dcd
