#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dcpair {

using Int = mpz_class;   // exact integers (certificates, counts)
using Rat = mpq_class;   // exact rationals (series terms, densities)

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// "num/den" in lowest terms, the serialization used for all exact rationals.
std::string rat_string(const Rat& q);

i64 gcd_i64(i64 a, i64 b);

// Deterministic Miller-Rabin, valid for the full u64 range.
bool is_prime_u64(u64 n);

std::vector<std::pair<u64, int>> factorize_u64(u64 n);
std::vector<u64> divisors_u64(u64 n);
int mobius_u64(u64 n);
std::vector<u64> primes_up_to(u64 n);

u64 pow_mod_u64(u64 base, u64 exp, u64 mod);

// Montgomery arithmetic for a fixed odd 64-bit modulus.  The congruence
// counter runs a few 1e8 modular multiplies, so the inner loop matters.
struct Montgomery64 {
  u64 mod = 0;
  u64 r2 = 0;      // (2^64)^2 mod n
  u64 ninv = 0;    // -n^{-1} mod 2^64
  u64 one = 0;     // 2^64 mod n

  explicit Montgomery64(u64 n);

  u64 reduce(u128 t) const {
    u64 m = static_cast<u64>(t) * ninv;
    u64 r = static_cast<u64>((t + static_cast<u128>(m) * mod) >> 64);
    return r >= mod ? r - mod : r;
  }
  u64 to_mont(u64 x) const { return reduce(static_cast<u128>(x) * r2); }
  u64 from_mont(u64 x) const { return reduce(static_cast<u128>(x)); }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= mod || s < a ? s - mod : s;
  }
  u64 pow(u64 base_mont, u64 e) const;
};

// Primes p ≡ 1 (mod q), each below 2^62, enough of them that their product
// exceeds `need_bits` bits; used to CRT exact convolution counts.
std::vector<u64> crt_primes_for_order(u64 q, unsigned need_bits);

// x with x ≡ r[i] mod m[i]; moduli pairwise coprime.
Int crt_reconstruct(const std::vector<u64>& residues, const std::vector<u64>& moduli);

Int ipow(const Int& base, unsigned e);
Rat rat_pow_int(const Int& base, long e);  // base^e as a rational, e may be negative

}  // namespace dcpair
