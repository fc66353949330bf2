#pragma once

// Exact arithmetic in quadratic fields Q(sqrt d).
//
// Every algebraic integer is stored as (u + v*sqrt(D))/2 with D the field
// discriminant and u == v*D (mod 2). This one coordinate system covers both
// integral bases (d == 1 mod 4 and d == 2,3 mod 4).

#include <complex>
#include <utility>

#include "qfp/arith.hpp"

namespace qfp {

enum class Signature { imaginary, real };

struct QuadraticInt {
    i128 u = 0;
    i128 v = 0;

    friend bool operator==(const QuadraticInt&, const QuadraticInt&) = default;
};

struct QuadraticField {
    i64 d = 0;
    i64 disc = 0;
    Signature signature = Signature::imaginary;
    int w = 2;                    // roots of unity (imaginary fields)
    QuadraticInt fundamental_unit;  // real fields: sigma_1(eps) > 1
    int unit_norm = 1;            // real fields: N(eps)
    long double log_eps = 0;      // real fields: log sigma_1(eps)

    bool is_real() const { return signature == Signature::real; }
    bool is_imaginary() const { return signature == Signature::imaginary; }
};

QuadraticField make_field(i64 d);

// Fundamental unit of Q(sqrt d), d >= 2 squarefree, via the continued fraction
// of sqrt(d) (d == 2,3 mod 4) or (1+sqrt(d))/2 (d == 1 mod 4).
QuadraticInt fundamental_unit(i64 d);

// --- construction -----------------------------------------------------------
QuadraticInt from_int(i128 n);
// a + b*sqrt(d) with a, b rational integers
QuadraticInt from_ab(const QuadraticField& K, i128 a, i128 b);
// omega_K = (D + sqrt D)/2; {1, omega_K} is an integral basis
QuadraticInt omega(const QuadraticField& K);
// x + y*omega_K
QuadraticInt from_basis(const QuadraticField& K, i128 x, i128 y);
// coordinates (x, y) with a = x + y*omega_K
std::pair<i128, i128> to_basis(const QuadraticField& K, const QuadraticInt& a);

bool is_integral(const QuadraticField& K, const QuadraticInt& a);

// --- arithmetic (exact, overflow throws OverflowError) ----------------------
i128 norm(const QuadraticField& K, const QuadraticInt& a);
i128 trace(const QuadraticInt& a);
QuadraticInt conj(const QuadraticInt& a);
QuadraticInt neg(const QuadraticInt& a);
QuadraticInt add(const QuadraticInt& a, const QuadraticInt& b);
QuadraticInt mul(const QuadraticField& K, const QuadraticInt& a, const QuadraticInt& b);
QuadraticInt mul_int(const QuadraticInt& a, i128 k);
QuadraticInt pow(const QuadraticField& K, QuadraticInt a, u64 e);
// a * eps^k (real fields), k may be negative
QuadraticInt unit_mul(const QuadraticField& K, const QuadraticInt& a, i64 k);
// exact division by a rational integer; throws if not divisible
QuadraticInt div_int(const QuadraticInt& a, i128 k);
bool is_unit(const QuadraticField& K, const QuadraticInt& a);

// --- embeddings -------------------------------------------------------------
// Real fields: (sigma_1(a), sigma_2(a)). The smaller of the two is recovered as
// N(a)/larger so that it keeps full relative precision.
std::pair<long double, long double> embed_real(const QuadraticField& K, const QuadraticInt& a);
// log|sigma_1(a)/sigma_2(a)| without cancellation
long double log_embedding_ratio(const QuadraticField& K, const QuadraticInt& a);
// Imaginary fields: sigma_1(a) as a complex number (sigma_2 is its conjugate)
std::complex<long double> embed_complex(const QuadraticField& K, const QuadraticInt& a);

std::string to_string(const QuadraticField& K, const QuadraticInt& a);

}  // namespace qfp
