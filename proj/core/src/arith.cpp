#include "dcpair/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcpair {

std::string rat_string(const Rat& q) {
  Rat c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 pow_mod_u64(u64 base, u64 exp, u64 mod) {
  u128 r = 1, b = base % mod;
  while (exp) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<u64>(r);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a known deterministic witness set below 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::vector<u64> divisors_u64(u64 n) {
  std::vector<u64> divs{1};
  for (auto [p, e] : factorize_u64(n)) {
    size_t old = divs.size();
    u64 pe = 1;
    for (int k = 1; k <= e; ++k) {
      pe *= p;
      for (size_t i = 0; i < old; ++i) divs.push_back(divs[i] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

int mobius_u64(u64 n) {
  int m = 1;
  for (auto [p, e] : factorize_u64(n)) {
    (void)p;
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<u64> ps;
  for (u64 i = 2; i <= n; ++i) {
    if (!comp[i]) {
      ps.push_back(i);
      for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return ps;
}

Montgomery64::Montgomery64(u64 n) : mod(n) {
  if (n == 0 || (n & 1) == 0) throw std::invalid_argument("Montgomery64: modulus must be odd");
  u64 inv = n;  // Newton iteration: inv *= 2 - n*inv, five rounds for 64 bits
  for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
  ninv = ~inv + 1;  // -n^{-1} mod 2^64
  u128 r = (static_cast<u128>(1) << 64) % n;
  one = static_cast<u64>(r);
  r2 = static_cast<u64>(r * r % n);
}

u64 Montgomery64::pow(u64 base_mont, u64 e) const {
  u64 r = one, b = base_mont;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::vector<u64> crt_primes_for_order(u64 q, unsigned need_bits) {
  std::vector<u64> primes;
  unsigned have = 0;
  // Candidates k*q+1 descending from ~2^62 keep products of residues in u128 range.
  u64 k = ((static_cast<u64>(1) << 62) - 1) / q;
  if (k == 0) k = 1;
  while (have < need_bits) {
    u64 cand = k * q + 1;
    if ((cand & 1) && is_prime_u64(cand)) {
      primes.push_back(cand);
      have += 61;
    }
    if (k == 1) throw std::runtime_error("crt_primes_for_order: ran out of candidates");
    --k;
  }
  return primes;
}

Int crt_reconstruct(const std::vector<u64>& residues, const std::vector<u64>& moduli) {
  // Garner-style incremental combination in exact integers.
  Int x = 0, m = 1;
  for (size_t i = 0; i < residues.size(); ++i) {
    Int mi = Int(static_cast<unsigned long>(moduli[i] >> 32)) << 32 | Int(static_cast<unsigned long>(moduli[i] & 0xffffffffull));
    Int ri = Int(static_cast<unsigned long>(residues[i] >> 32)) << 32 | Int(static_cast<unsigned long>(residues[i] & 0xffffffffull));
    if (i == 0) {
      x = ri;
      m = mi;
      continue;
    }
    // x + m*t ≡ ri (mod mi)  =>  t = (ri - x) * m^{-1} mod mi
    Int minv, diff = (ri - x) % mi;
    if (diff < 0) diff += mi;
    if (mpz_invert(minv.get_mpz_t(), Int(m % mi).get_mpz_t(), mi.get_mpz_t()) == 0)
      throw std::runtime_error("crt_reconstruct: moduli not coprime");
    Int t = (diff * minv) % mi;
    x += m * t;
    m *= mi;
  }
  return x;
}

Int ipow(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat rat_pow_int(const Int& base, long e) {
  if (e >= 0) return Rat(ipow(base, static_cast<unsigned>(e)));
  Rat r(Int(1), ipow(base, static_cast<unsigned>(-e)));
  r.canonicalize();
  return r;
}

}  // namespace dcpair
