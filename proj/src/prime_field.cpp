#include "qhv/prime_field.hpp"

#include <string>

#include "qhv/error.hpp"

namespace qhv {

PrimeField::PrimeField(std::uint64_t p) : p_(p), mersenne_(p == kMersenne31) {
  if (p < 2 || p > 0xffffffffULL)
    throw Error(ErrorCode::InvalidConfig, "modulus must lie in [2, 2^32)");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1 % static_cast<std::uint32_t>(p_);
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const { return pow(a, p_ - 2); }

std::uint32_t PrimeField::from_int(std::int64_t v) const {
  auto r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(r);
}

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod64(r, a, n);
    a = mulmod64(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these bases are deterministic for all 64-bit n
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

void PrimeFieldConfig::validate() const {
  if (p <= 1'000'000 || p > 0xffffffffULL || !is_prime(p))
    throw Error(ErrorCode::InvalidConfig,
                "prime must be a prime in (10^6, 2^32), got " + std::to_string(p));
  if (attempts < 1) throw Error(ErrorCode::InvalidConfig, "attempts must be >= 1");
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::mt19937_64 task_rng(std::uint64_t seed, std::string_view task_key, int attempt) {
  const std::uint64_t k = fnv1a(task_key);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32),
                    static_cast<std::uint32_t>(attempt)};
  return std::mt19937_64(seq);
}

std::uint32_t uniform_residue(std::mt19937_64& rng, std::uint64_t p) {
  // largest multiple of p not exceeding 2^64
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % p + 1) % p;
  for (;;) {
    std::uint64_t x = rng();
    if (x <= limit) return static_cast<std::uint32_t>(x % p);
  }
}

}  // namespace qhv
