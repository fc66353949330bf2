#include "qfp/field.hpp"

#include <cmath>
#include <sstream>

namespace qfp {

namespace {

i64 discriminant_of(i64 d) {
    i64 r = ((d % 4) + 4) % 4;
    return r == 1 ? d : 4 * d;
}

}  // namespace

QuadraticField make_field(i64 d) {
    if (d == 0 || d == 1) throw std::invalid_argument("make_field: d must not be 0 or 1");
    if (!is_squarefree(d)) throw std::invalid_argument("make_field: d must be squarefree");
    QuadraticField K;
    K.d = d;
    K.disc = discriminant_of(d);
    if (d < 0) {
        K.signature = Signature::imaginary;
        K.w = K.disc == -4 ? 4 : (K.disc == -3 ? 6 : 2);
    } else {
        K.signature = Signature::real;
        K.w = 2;
        K.fundamental_unit = fundamental_unit(d);
        K.unit_norm = static_cast<int>(norm(K, K.fundamental_unit));
        K.log_eps = std::log(embed_real(K, K.fundamental_unit).first);
    }
    return K;
}

QuadraticInt fundamental_unit(i64 d) {
    if (d < 2 || !is_squarefree(d)) throw std::invalid_argument("fundamental_unit: need squarefree d >= 2");
    const bool half = ((d % 4) + 4) % 4 == 1;
    const i128 D = d;
    const i128 s = isqrt128(D);
    // continued fraction of (P + sqrt d)/Q
    i128 P = half ? 1 : 0;
    i128 Q = half ? 2 : 1;
    i128 h_prev = 1, h_prev2 = 0;
    i128 k_prev = 0, k_prev2 = 1;
    for (int iter = 0; iter < 10'000'000; ++iter) {
        const i128 a = floor_div(P + s, Q);
        const i128 h = add_checked(mul_checked(a, h_prev), h_prev2);
        const i128 k = add_checked(mul_checked(a, k_prev), k_prev2);
        // candidate unit h - k * conj(x0)
        QuadraticInt cand;
        if (half) {
            cand = {sub_checked(mul_checked(2, h), k), k};  // (2h - k + k sqrt d)/2
        } else {
            cand = {mul_checked(2, h), k};  // h + k sqrt d with D = 4d
        }
        const i128 disc = half ? D : 4 * D;
        const i128 nrm4 = sub_checked(mul_checked(cand.u, cand.u), mul_checked(disc, mul_checked(cand.v, cand.v)));
        if (nrm4 == 4 || nrm4 == -4) return cand;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw std::runtime_error("fundamental_unit: continued fraction did not terminate");
}

QuadraticInt from_int(i128 n) { return {mul_checked(2, n), 0}; }

QuadraticInt from_ab(const QuadraticField& K, i128 a, i128 b) {
    if (K.disc % 4 == 0) return {mul_checked(2, a), b};
    return {mul_checked(2, a), mul_checked(2, b)};
}

QuadraticInt omega(const QuadraticField& K) { return {K.disc, 1}; }

QuadraticInt from_basis(const QuadraticField& K, i128 x, i128 y) {
    return {add_checked(mul_checked(2, x), mul_checked(y, K.disc)), y};
}

std::pair<i128, i128> to_basis(const QuadraticField& K, const QuadraticInt& a) {
    const i128 t = sub_checked(a.u, mul_checked(a.v, K.disc));
    if (t % 2 != 0) throw std::invalid_argument("to_basis: element is not integral");
    return {t / 2, a.v};
}

bool is_integral(const QuadraticField& K, const QuadraticInt& a) {
    return mod_floor(a.u - a.v * (K.disc % 2), 2) == 0;
}

i128 norm(const QuadraticField& K, const QuadraticInt& a) {
    const i128 n4 = sub_checked(mul_checked(a.u, a.u), mul_checked(K.disc, mul_checked(a.v, a.v)));
    return n4 / 4;
}

i128 trace(const QuadraticInt& a) { return a.u; }

QuadraticInt conj(const QuadraticInt& a) { return {a.u, -a.v}; }

QuadraticInt neg(const QuadraticInt& a) { return {-a.u, -a.v}; }

QuadraticInt add(const QuadraticInt& a, const QuadraticInt& b) {
    return {add_checked(a.u, b.u), add_checked(a.v, b.v)};
}

QuadraticInt mul(const QuadraticField& K, const QuadraticInt& a, const QuadraticInt& b) {
    const i128 uu = add_checked(mul_checked(a.u, b.u), mul_checked(K.disc, mul_checked(a.v, b.v)));
    const i128 vv = add_checked(mul_checked(a.u, b.v), mul_checked(a.v, b.u));
    return {uu / 2, vv / 2};
}

QuadraticInt mul_int(const QuadraticInt& a, i128 k) { return {mul_checked(a.u, k), mul_checked(a.v, k)}; }

QuadraticInt pow(const QuadraticField& K, QuadraticInt a, u64 e) {
    QuadraticInt r = from_int(1);
    while (e > 0) {
        if (e & 1) r = mul(K, r, a);
        e >>= 1;
        if (e > 0) a = mul(K, a, a);
    }
    return r;
}

QuadraticInt unit_mul(const QuadraticField& K, const QuadraticInt& a, i64 k) {
    if (!K.is_real()) throw std::invalid_argument("unit_mul: field has no fundamental unit");
    QuadraticInt e = K.fundamental_unit;
    if (k < 0) {
        e = conj(e);
        if (K.unit_norm < 0) e = neg(e);
        k = -k;
    }
    QuadraticInt r = a;
    for (i64 i = 0; i < k; ++i) r = mul(K, r, e);
    return r;
}

QuadraticInt div_int(const QuadraticInt& a, i128 k) {
    if (k == 0 || a.u % k != 0 || a.v % k != 0) throw std::invalid_argument("div_int: not divisible");
    return {a.u / k, a.v / k};
}

bool is_unit(const QuadraticField& K, const QuadraticInt& a) {
    const i128 n = norm(K, a);
    return n == 1 || n == -1;
}

std::pair<long double, long double> embed_real(const QuadraticField& K, const QuadraticInt& a) {
    const long double r = std::sqrt(static_cast<long double>(K.disc));
    const long double u = to_ld(a.u), v = to_ld(a.v);
    const long double nrm = to_ld(norm(K, a));
    if ((a.u >= 0) == (a.v >= 0)) {
        // sigma_1 = (u + v r)/2 without cancellation
        const long double s1 = (u + v * r) / 2;
        const long double s2 = s1 != 0 ? nrm / s1 : 0.0L;
        return {s1, s2};
    }
    const long double s2 = (u - v * r) / 2;
    const long double s1 = s2 != 0 ? nrm / s2 : 0.0L;
    return {s1, s2};
}

long double log_embedding_ratio(const QuadraticField& K, const QuadraticInt& a) {
    // sigma_1 * sigma_2 = N, so log|s1/s2| = 2 log|s1| - log|N| = log|N| - 2 log|s2|
    const long double r = std::sqrt(static_cast<long double>(K.disc));
    const long double lnN = std::log(std::fabs(to_ld(norm(K, a))));
    if ((a.u >= 0) == (a.v >= 0)) {
        const long double s1 = std::fabs((to_ld(a.u) + to_ld(a.v) * r) / 2);
        return 2 * std::log(s1) - lnN;
    }
    const long double s2 = std::fabs((to_ld(a.u) - to_ld(a.v) * r) / 2);
    return lnN - 2 * std::log(s2);
}

std::complex<long double> embed_complex(const QuadraticField& K, const QuadraticInt& a) {
    const long double r = std::sqrt(static_cast<long double>(-K.disc));
    return {to_ld(a.u) / 2, to_ld(a.v) * r / 2};
}

std::string to_string(const QuadraticField& K, const QuadraticInt& a) {
    // a + b sqrt(d), with a, b possibly half-integers
    std::ostringstream os;
    const bool quarter = K.disc % 4 != 0;
    auto half = [](i128 n) {
        if (n % 2 == 0) return to_string(n / 2);
        return to_string(n) + "/2";
    };
    const i128 b2 = quarter ? a.v : 2 * a.v;  // 2b
    os << half(a.u);
    os << (b2 < 0 ? " - " : " + ") << half(abs128(b2));
    if (K.d == -1) {
        os << "i";
    } else {
        os << "*sqrt(" << K.d << ")";
    }
    return os.str();
}

}  // namespace qfp
