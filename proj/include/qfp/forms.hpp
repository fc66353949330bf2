#pragma once

// Integral binary quadratic forms a*x^2 + b*x*y + c*y^2 and their reduction
// with the unimodular transformation tracked. Reduction drives principal
// generator search, class numbers and the form/ideal correspondence.

#include <array>
#include <optional>
#include <vector>

#include "qfp/arith.hpp"

namespace qfp {

struct QuadForm {
    i128 a = 0;
    i128 b = 0;
    i128 c = 0;

    i128 disc() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return disc() < 0 && a > 0; }
    bool indefinite() const { return disc() > 0 && !is_square(disc()); }
    i128 eval(i128 x, i128 y) const;
    long double eval(long double x, long double y) const;

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

// 2x2 integer matrix acting on column vectors; columns are images of e1, e2.
struct Mat2 {
    i128 m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    i128 det() const { return m00 * m11 - m01 * m10; }
    Mat2 operator*(const Mat2& o) const;
    std::array<i128, 2> apply(i128 x, i128 y) const { return {m00 * x + m01 * y, m10 * x + m11 * y}; }
    std::array<long double, 2> apply(long double x, long double y) const;
    Mat2 inverse() const;  // det must be +-1
};

// f o M : the form g(X, Y) = f(M (X, Y)^T)
QuadForm transform(const QuadForm& f, const Mat2& M);

struct Reduction {
    QuadForm form;  // reduced
    Mat2 M;         // form == transform(original, M), det M = 1
};

// Gauss reduction of a positive definite form: |b| <= a <= c, b >= 0 when
// |b| == a or a == c. The result is unique in its proper equivalence class.
Reduction reduce_definite(const QuadForm& f);

// One step of the reduction operator rho on indefinite forms.
Reduction rho_step(const QuadForm& f);
bool is_reduced_indefinite(const QuadForm& f);

// Finds (x, y) with f(x, y) == target by reduction (definite) or by walking the
// cycle of reduced forms (indefinite). Only target == +-1 is supported, which is
// what principal-ideal tests need. Returns nullopt if f does not represent it.
std::optional<std::array<i128, 2>> represent_unit_value(const QuadForm& f, bool allow_negative);

// All reduced positive definite primitive forms of discriminant disc < 0.
std::vector<QuadForm> reduced_forms(i64 disc);

std::string to_string(const QuadForm& f);

}  // namespace qfp
