#pragma once

// Elementary integer arithmetic shared by the whole library: checked 128-bit
// operations, modular arithmetic for 64-bit moduli, deterministic primality,
// square roots mod p and a segmented sieve.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfp {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

// ---------------------------------------------------------------------------
// checked 128-bit arithmetic
// ---------------------------------------------------------------------------
inline i128 add_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

inline i128 sub_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
    return r;
}

inline i128 mul_checked(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

inline i128 abs128(i128 a) { return a < 0 ? -a : a; }

// floor division and nonnegative remainder for b > 0 or b < 0
inline i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline i128 mod_floor(i128 a, i128 m) {
    i128 r = a % m;
    if (r < 0) r += (m < 0 ? -m : m);
    return r;
}

i128 gcd128(i128 a, i128 b);

// returns g = gcd(a, b) >= 0 and x, y with a*x + b*y = g
i128 ext_gcd(i128 a, i128 b, i128& x, i128& y);

std::string to_string(i128 v);
long double to_ld(i128 v);

u64 isqrt(u64 n);
i128 isqrt128(i128 n);
bool is_square(i128 n);

// ---------------------------------------------------------------------------
// modular arithmetic (moduli < 2^63)
// ---------------------------------------------------------------------------
inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

// Kronecker symbol (D/p) for a prime p.
int kronecker_prime(i64 disc, u64 p);

// Square root of a mod p (p odd prime, a a quadratic residue); Tonelli-Shanks.
u64 sqrt_mod(u64 a, u64 p);

bool is_squarefree(i64 n);

// ---------------------------------------------------------------------------
// sieves
// ---------------------------------------------------------------------------
std::vector<u64> primes_up_to(u64 n);

// Primes p with lo <= p <= hi; segmented over the window.
std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 capacity = u64{1} << 40);

struct PrimePower {
    u64 p;
    int e;
};

// Factorizations of every integer in a window [lo, hi], built by sieving with
// the primes up to sqrt(hi). Used to enumerate ideals by norm.
class WindowFactorizer {
public:
    WindowFactorizer(u64 lo, u64 hi, u64 capacity = u64{1} << 40);
    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    // writes the factorization of n (lo <= n <= hi) into out, ascending primes
    void factors_of(u64 n, std::vector<PrimePower>& out) const;

private:
    u64 lo_, hi_;
    std::vector<std::uint32_t> offset_;  // size (hi-lo+2)
    std::vector<std::uint32_t> small_p_;
    std::vector<std::uint8_t> small_e_;
    std::vector<u64> cofactor_;  // 1 or a prime > sqrt(hi)
};

}  // namespace qfp
