#include "qfp/forms.hpp"

#include <cmath>
#include <set>

namespace qfp {

i128 QuadForm::eval(i128 x, i128 y) const {
    return add_checked(add_checked(mul_checked(a, mul_checked(x, x)), mul_checked(b, mul_checked(x, y))),
                       mul_checked(c, mul_checked(y, y)));
}

long double QuadForm::eval(long double x, long double y) const {
    return to_ld(a) * x * x + to_ld(b) * x * y + to_ld(c) * y * y;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {add_checked(mul_checked(m00, o.m00), mul_checked(m01, o.m10)),
            add_checked(mul_checked(m00, o.m01), mul_checked(m01, o.m11)),
            add_checked(mul_checked(m10, o.m00), mul_checked(m11, o.m10)),
            add_checked(mul_checked(m10, o.m01), mul_checked(m11, o.m11))};
}

std::array<long double, 2> Mat2::apply(long double x, long double y) const {
    return {to_ld(m00) * x + to_ld(m01) * y, to_ld(m10) * x + to_ld(m11) * y};
}

Mat2 Mat2::inverse() const {
    const i128 d = det();
    if (d != 1 && d != -1) throw std::invalid_argument("Mat2::inverse: not unimodular");
    return {m11 * d, -m01 * d, -m10 * d, m00 * d};
}

QuadForm transform(const QuadForm& f, const Mat2& M) {
    // f(m00 X + m01 Y, m10 X + m11 Y)
    const i128 A = f.eval(M.m00, M.m10);
    const i128 C = f.eval(M.m01, M.m11);
    const i128 B = add_checked(add_checked(mul_checked(2 * f.a, mul_checked(M.m00, M.m01)),
                                           mul_checked(f.b, add_checked(mul_checked(M.m00, M.m11),
                                                                        mul_checked(M.m01, M.m10)))),
                               mul_checked(2 * f.c, mul_checked(M.m10, M.m11)));
    return {A, B, C};
}

Reduction reduce_definite(const QuadForm& f) {
    if (!f.positive_definite()) throw std::invalid_argument("reduce_definite: form is not positive definite");
    Reduction r{f, Mat2{}};
    QuadForm& g = r.form;
    for (;;) {
        // translate b into (-a, a]: x -> x + k y
        if (g.b > g.a || g.b <= -g.a) {
            const i128 k = floor_div(g.a - g.b, 2 * g.a);
            const Mat2 T{1, k, 0, 1};
            g = transform(g, T);
            r.M = r.M * T;
        }
        if (g.a > g.c || (g.a == g.c && g.b < 0)) {
            const Mat2 S{0, -1, 1, 0};
            g = transform(g, S);
            r.M = r.M * S;
            continue;
        }
        break;
    }
    return r;
}

bool is_reduced_indefinite(const QuadForm& f) {
    // |sqrt(D) - 2|a|| < b < sqrt(D), exact for nonsquare D
    const i128 s = isqrt128(f.disc());
    const i128 a2 = 2 * abs128(f.a);
    return f.b > 0 && f.b <= s && s < a2 + f.b && a2 - f.b <= s;
}

Reduction rho_step(const QuadForm& f) {
    const i128 D = f.disc();
    const i128 s = isqrt128(D);
    const i128 c = f.c;
    const i128 ac = abs128(c);
    const i128 m = 2 * ac;
    const i128 bneg = -f.b;
    i128 r;
    if (ac > s) {
        // -|c| < r <= |c|
        r = mod_floor(bneg, m);
        if (r > ac) r -= m;
    } else {
        // sqrt(D) - 2|c| < r < sqrt(D)
        r = bneg + m * floor_div(s - bneg, m);
    }
    const i128 t = (r + f.b) / (2 * c);
    const Mat2 M{0, -1, 1, t};
    return {transform(f, M), M};
}

std::optional<std::array<i128, 2>> represent_unit_value(const QuadForm& f, bool allow_negative) {
    auto hit = [&](const QuadForm& g) { return g.a == 1 || (allow_negative && g.a == -1); };
    if (f.disc() < 0) {
        if (f.a < 0) return std::nullopt;
        const Reduction r = reduce_definite(f);
        if (r.form.a != 1) return std::nullopt;
        return std::array<i128, 2>{r.M.m00, r.M.m10};
    }
    if (!f.indefinite()) throw std::invalid_argument("represent_unit_value: square discriminant");
    QuadForm g = f;
    Mat2 M;
    if (hit(g)) return std::array<i128, 2>{1, 0};
    // bring to reduced form, checking each intermediate form
    int guard = 0;
    while (!is_reduced_indefinite(g)) {
        const Reduction step = rho_step(g);
        g = step.form;
        M = M * step.M;
        if (hit(g)) return std::array<i128, 2>{M.m00, M.m10};
        if (++guard > 100000) throw std::runtime_error("represent_unit_value: reduction did not converge");
    }
    // walk the cycle of reduced forms
    const QuadForm start = g;
    for (int i = 0; i < 10'000'000; ++i) {
        const Reduction step = rho_step(g);
        g = step.form;
        M = M * step.M;
        if (hit(g)) return std::array<i128, 2>{M.m00, M.m10};
        if (g == start) return std::nullopt;
    }
    throw std::runtime_error("represent_unit_value: cycle too long");
}

std::vector<QuadForm> reduced_forms(i64 disc) {
    if (disc >= 0 || ((disc % 4) + 4) % 4 > 1) throw std::invalid_argument("reduced_forms: need disc < 0, disc = 0,1 mod 4");
    std::vector<QuadForm> out;
    const i128 D = disc;
    // a <= sqrt(|D|/3)
    for (i128 a = 1; 3 * a * a <= -D; ++a) {
        for (i128 b = -a + 1; b <= a; ++b) {
            const i128 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const i128 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (gcd128(gcd128(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::string to_string(const QuadForm& f) {
    return "(" + to_string(f.a) + "," + to_string(f.b) + "," + to_string(f.c) + ")";
}

}  // namespace qfp
