#include "qfp/hecke.hpp"

#include <cmath>
#include <numbers>

namespace qfp {

namespace {

constexpr long double two_pi = 2 * std::numbers::pi_v<long double>;

}  // namespace

long double frac_turn(long double t) {
    long double f = t - std::floor(t);
    if (f >= 1) f = 0;
    if (f < 0) f = 0;
    return f;
}

CharacterValue from_turn(long double t) { return CharacterValue{frac_turn(t)}; }

long double CharacterValue::arg() const { return two_pi * turn; }

std::complex<long double> CharacterValue::value() const {
    const long double a = arg();
    return {std::cos(a), std::sin(a)};
}

CharacterValue mu_imaginary(const QuadraticField& K, const QuadraticInt& a) {
    if (!K.is_imaginary()) throw std::invalid_argument("mu_imaginary: field is real");
    if (a.u == 0 && a.v == 0) throw std::invalid_argument("mu_imaginary: zero element");
    const long double r = std::sqrt(static_cast<long double>(-K.disc));
    try {
        const QuadraticInt p = pow(K, a, static_cast<u64>(K.w));
        return from_turn(std::atan2(to_ld(p.v) * r, to_ld(p.u)) / two_pi);
    } catch (const OverflowError&) {
        // huge elements: one extra rounding from multiplying the angle by w
        const long double t = std::atan2(to_ld(a.v) * r, to_ld(a.u)) / two_pi;
        return from_turn(t * K.w);
    }
}

long double F_real(const QuadraticField& K, const QuadraticInt& a) {
    if (!K.is_real()) throw std::invalid_argument("F_real: field is imaginary");
    if (norm(K, a) == 0) throw std::invalid_argument("F_real: zero element");
    return log_embedding_ratio(K, a) / (2 * K.log_eps);
}

CharacterValue mu_real(const QuadraticField& K, const QuadraticInt& a) { return from_turn(F_real(K, a)); }

CharacterValue mu(const QuadraticField& K, const QuadraticInt& a) {
    return K.is_real() ? mu_real(K, a) : mu_imaginary(K, a);
}

CharacterValue power(const CharacterValue& c, i64 m) {
    // turn = hi + lo with hi on a 2^-32 grid; m * hi mod 1 only needs m mod 2^32
    constexpr long double scale = 4294967296.0L;
    const long double hi = std::floor(c.turn * scale) / scale;
    const long double lo = c.turn - hi;
    const long double mh = frac_turn(static_cast<long double>(m % 4294967296LL) * hi);
    return from_turn(mh + frac_turn(static_cast<long double>(m) * lo));
}

CharacterValue lambda_m(const QuadraticField& K, const IdealClassContext& ctx, const Ideal& A, i64 m) {
    if (m == 0) return CharacterValue{0};
    return power(mu(K, ctx.anchored_generator(K, A)), m);
}

}  // namespace qfp
