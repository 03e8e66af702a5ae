#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qhv {

inline constexpr std::uint64_t kMersenne31 = (1ULL << 31) - 1;

/// Arithmetic modulo a prime p < 2^32. Residues are stored as uint32 and
/// products fit in 64 bits; p = 2^31 - 1 takes a shift-and-add reduction.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(a >= b ? a - b : a + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const {
    return static_cast<std::uint32_t>(a == 0 ? 0 : p_ - a);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce(std::uint64_t{a} * b); }

  std::uint32_t reduce(std::uint64_t x) const {
    if (mersenne_) {
      x = (x & kMersenne31) + (x >> 31);
      x = (x & kMersenne31) + (x >> 31);
      return static_cast<std::uint32_t>(x >= kMersenne31 ? x - kMersenne31 : x);
    }
    return static_cast<std::uint32_t>(x % p_);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // a != 0
  std::uint32_t from_int(std::int64_t v) const;

 private:
  std::uint64_t p_;
  bool mersenne_;
};

bool is_prime(std::uint64_t n);

struct PrimeFieldConfig {
  std::uint64_t p = kMersenne31;
  std::uint64_t seed = 20240601;
  int attempts = 3;

  /// Throws InvalidConfig unless p is a prime in (10^6, 2^32) and attempts >= 1.
  void validate() const;
};

/// 64-bit FNV-1a; stable across platforms, used for RNG stream and cache keys.
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL);

/// Deterministic generator for one (seed, task key, attempt) triple.
std::mt19937_64 task_rng(std::uint64_t seed, std::string_view task_key, int attempt);

/// Uniform residue in [0, p) by rejection (no implementation-defined
/// distribution objects, so streams are reproducible everywhere).
std::uint32_t uniform_residue(std::mt19937_64& rng, std::uint64_t p);

}  // namespace qhv
