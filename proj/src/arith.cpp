#include "qfp/arith.hpp"

#include <algorithm>
#include <cmath>

namespace qfp {

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 ext_gcd(i128 a, i128 b, i128& x, i128& y) {
    i128 old_r = a, r = b;
    i128 old_s = 1, s = 0;
    i128 old_t = 0, t = 1;
    while (r != 0) {
        i128 q = old_r / r;
        i128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

long double to_ld(i128 v) { return static_cast<long double>(v); }

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

i128 isqrt128(i128 n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i128 n) {
    if (n < 0) return false;
    i128 r = isqrt128(n);
    return r * r == n;
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // bases proven sufficient for n < 2^64 (Sinclair)
    static constexpr u64 bases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (u64 a : bases) {
        a %= n;
        if (a == 0) continue;
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int kronecker_prime(i64 disc, u64 p) {
    if (p == 2) {
        if (disc % 2 == 0) return 0;
        i64 r = ((disc % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    i64 a = disc % static_cast<i64>(p);
    if (a < 0) a += static_cast<i64>(p);
    if (a == 0) return 0;
    u64 t = powmod(static_cast<u64>(a), (p - 1) / 2, p);
    return t == 1 ? 1 : -1;
}

u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) throw std::domain_error("sqrt_mod: not a quadratic residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    // smallest non-residue, deterministic
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 x = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return std::min(x, p - x);
}

bool is_squarefree(i64 n) {
    u64 m = static_cast<u64>(n < 0 ? -n : n);
    if (m == 0) return false;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 capacity) {
    std::vector<u64> out;
    if (hi > capacity) throw CapacityError("prime window exceeds sieve capacity");
    if (hi < 2 || lo > hi) return out;
    lo = std::max<u64>(lo, 2);
    const auto base = primes_up_to(isqrt(hi));
    constexpr u64 segment = u64{1} << 18;
    std::vector<char> mark;
    for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += segment) {
        u64 seg_hi = std::min(hi, seg_lo + segment - 1);
        mark.assign(seg_hi - seg_lo + 1, 1);
        for (u64 p : base) {
            if (p * p > seg_hi) break;
            u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (u64 j = start; j <= seg_hi; j += p) mark[j - seg_lo] = 0;
        }
        for (u64 n = seg_lo; n <= seg_hi; ++n) {
            if (mark[n - seg_lo]) out.push_back(n);
        }
        if (seg_hi == hi) break;
    }
    return out;
}

WindowFactorizer::WindowFactorizer(u64 lo, u64 hi, u64 capacity) : lo_(lo), hi_(hi) {
    if (hi > capacity) throw CapacityError("factorization window exceeds sieve capacity");
    if (lo < 1 || lo > hi) throw std::invalid_argument("WindowFactorizer: need 1 <= lo <= hi");
    const u64 len = hi - lo + 1;
    const auto base = primes_up_to(isqrt(hi));

    // pass 1: count distinct small prime factors
    std::vector<std::uint32_t> count(len, 0);
    for (u64 p : base) {
        for (u64 j = (lo + p - 1) / p * p; j <= hi; j += p) ++count[j - lo];
    }
    offset_.assign(len + 1, 0);
    for (u64 i = 0; i < len; ++i) offset_[i + 1] = offset_[i] + count[i];
    small_p_.assign(offset_[len], 0);
    small_e_.assign(offset_[len], 0);

    // pass 2: fill exponents; cofactor holds what is left
    cofactor_.resize(len);
    for (u64 i = 0; i < len; ++i) cofactor_[i] = lo + i;
    std::fill(count.begin(), count.end(), 0);
    for (u64 p : base) {
        for (u64 j = (lo + p - 1) / p * p; j <= hi; j += p) {
            const u64 i = j - lo;
            int e = 0;
            while (cofactor_[i] % p == 0) {
                cofactor_[i] /= p;
                ++e;
            }
            const std::uint32_t slot = offset_[i] + count[i]++;
            small_p_[slot] = static_cast<std::uint32_t>(p);
            small_e_[slot] = static_cast<std::uint8_t>(e);
        }
    }
}

void WindowFactorizer::factors_of(u64 n, std::vector<PrimePower>& out) const {
    out.clear();
    const u64 i = n - lo_;
    for (std::uint32_t k = offset_[i]; k < offset_[i + 1]; ++k) out.push_back({small_p_[k], small_e_[k]});
    if (cofactor_[i] > 1) out.push_back({cofactor_[i], 1});
}

}  // namespace qfp
