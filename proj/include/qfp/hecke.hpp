#pragma once

// Hecke Groessencharaktere of quadratic fields. Angles are carried as turns
// (fractions of a full circle) in extended precision so that large powers m
// reduce exactly as frac(m * turn).

#include <complex>

#include "qfp/ideal.hpp"

namespace qfp {

struct CharacterValue {
    long double turn = 0;  // in [0, 1)
    long double arg() const;  // in [0, 2 pi)
    std::complex<long double> value() const;
};

long double frac_turn(long double t);
CharacterValue from_turn(long double t);

// (a/|a|)^w, from the exact power a^w
CharacterValue mu_imaginary(const QuadraticField& K, const QuadraticInt& a);

// log|sigma_1(a)/sigma_2(a)| / (2 log eps), not reduced mod 1
long double F_real(const QuadraticField& K, const QuadraticInt& a);
// exp(2 pi i F)
CharacterValue mu_real(const QuadraticField& K, const QuadraticInt& a);

CharacterValue mu(const QuadraticField& K, const QuadraticInt& a);

// lambda^m(A) = mu(g)^m for g a generator of A * a0
CharacterValue lambda_m(const QuadraticField& K, const IdealClassContext& ctx, const Ideal& A, i64 m);
CharacterValue power(const CharacterValue& c, i64 m);

}  // namespace qfp
