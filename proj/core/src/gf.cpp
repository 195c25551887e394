#include "dcd/gf.hpp"

#include <string>

#include "dcd/error.hpp"

namespace dcd {
namespace {

// Monic irreducible moduli, constant term first, leading 1 omitted.
std::vector<int> irreducible_for(int p, int k) {
  switch (p * 100 + k) {
    case 202: return {1, 1};           // x^2 + x + 1
    case 203: return {1, 1, 0};        // x^3 + x + 1
    case 204: return {1, 1, 0, 0};     // x^4 + x + 1
    case 205: return {1, 0, 1, 0, 0};  // x^5 + x^2 + 1
    case 302: return {1, 0};           // x^2 + 1
    case 303: return {1, 2, 0};        // x^3 + 2x + 1
    case 502: return {2, 1};           // x^2 + x + 2
    default: break;
  }
  throw Error(ErrorCode::TooLarge, "no modulus tabulated for " + std::to_string(p) + "^" + std::to_string(k));
}

std::vector<int> to_digits(int value, int p, int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = value % p;
    value /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

}  // namespace

PrimePower factor_prime_power(int s) {
  if (s < 2) return {};
  int p = 2;
  while (s % p != 0) ++p;
  int k = 0;
  int rest = s;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) return {};
  return {p, k};
}

bool is_prime_power(int s) { return factor_prime_power(s).prime != 0; }

GaloisField::GaloisField(int order) : order_(order) {
  const auto pp = factor_prime_power(order);
  if (pp.prime == 0) throw Error(ErrorCode::NotPrimePower, std::to_string(order) + " is not a prime power");
  if (order > kMaxOrder)
    throw Error(ErrorCode::TooLarge, "field order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
  characteristic_ = pp.prime;
  degree_ = pp.exponent;
  const int p = characteristic_;
  const int k = degree_;
  if (k > 1) modulus_ = irreducible_for(p, k);

  const auto n = static_cast<std::size_t>(order);
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  for (int a = 0; a < order; ++a) {
    const auto da = to_digits(a, p, k);
    for (int b = 0; b < order; ++b) {
      const auto db = to_digits(b, p, k);
      std::vector<int> sum(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        sum[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
      add_[at(a, b)] = from_digits(sum, p);

      // Schoolbook product, then reduce x^j (j >= k) with x^k = -modulus.
      std::vector<int> prod(static_cast<std::size_t>(2 * k - 1), 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          prod[static_cast<std::size_t>(i + j)] =
              (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
      for (int j = 2 * k - 2; j >= k; --j) {
        const int c = prod[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        prod[static_cast<std::size_t>(j)] = 0;
        for (int i = 0; i < k; ++i) {
          auto& slot = prod[static_cast<std::size_t>(j - k + i)];
          slot = ((slot - c * modulus_[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      prod.resize(static_cast<std::size_t>(k));
      mul_[at(a, b)] = from_digits(prod, p);
    }
  }

  neg_.assign(n, -1);
  inv_.assign(n, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      if (add_[at(a, b)] == 0) neg_[static_cast<std::size_t>(a)] = b;
      if (mul_[at(a, b)] == 1) inv_[static_cast<std::size_t>(a)] = b;
    }
}

std::size_t GaloisField::at(int a, int b) const {
  if (a < 0 || b < 0 || a >= order_ || b >= order_)
    throw Error(ErrorCode::LevelOutOfRange, "field element index out of range");
  return static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b);
}

int GaloisField::neg(int a) const {
  at(a, 0);
  return neg_[static_cast<std::size_t>(a)];
}

int GaloisField::inv(int a) const {
  at(a, 0);
  if (a == 0) throw Error(ErrorCode::InverseOfZero, "zero has no multiplicative inverse");
  return inv_[static_cast<std::size_t>(a)];
}

int gf_arith(const GaloisField& field, FieldOp op, int a, int b) {
  switch (op) {
    case FieldOp::Add: return field.add(a, b);
    case FieldOp::Mul: return field.mul(a, b);
    case FieldOp::Neg: return field.neg(a);
    case FieldOp::Inv: return field.inv(a);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown field op");
}

}  // namespace dcd
