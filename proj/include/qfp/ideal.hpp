#pragma once

// Integral ideals of a quadratic order in Hermite normal form, prime
// splitting, principal generators, ideal classes and ideal enumeration.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qfp/field.hpp"
#include "qfp/forms.hpp"

namespace qfp {

// content * (n Z + (c + omega_K) Z), 0 <= c < n, n | N(c + omega_K)
struct Ideal {
    i128 content = 1;
    i128 n = 1;
    i128 c = 0;

    i128 norm() const { return content * content * n; }
    friend bool operator==(const Ideal&, const Ideal&) = default;
};

enum class SplitType { split, inert, ramified };

struct PrimeIdeal {
    u64 p = 0;
    SplitType split_type = SplitType::split;
    Ideal ideal;
    std::optional<QuadraticInt> generator;

    i128 norm() const { return ideal.norm(); }
};

Ideal unit_ideal();
Ideal ideal_from_generators(const QuadraticField& K, std::span<const QuadraticInt> gens);
Ideal principal_ideal(const QuadraticField& K, const QuadraticInt& g);
Ideal ideal_mul(const QuadraticField& K, const Ideal& A, const Ideal& B);
Ideal ideal_conj(const QuadraticField& K, const Ideal& A);
Ideal ideal_pow(const QuadraticField& K, const Ideal& A, int e);
bool contains(const QuadraticField& K, const Ideal& A, const QuadraticInt& g);

// The norm form of the primitive part: N(X n + Y (c + omega)) / n.
QuadForm norm_form(const QuadraticField& K, const Ideal& A);
// Primitive ideal whose norm form is (a, b, *).
Ideal ideal_from_form(const QuadraticField& K, const QuadForm& f);

// Prime ideals above a rational prime p: one (inert / ramified) or two
// conjugates (split). Generators are filled in when the ideal is principal.
std::vector<PrimeIdeal> split_prime(const QuadraticField& K, u64 p);

// A generator of A in canonical form, or nullopt if A is not principal.
// Canonical: imaginary fields take the associate with argument in [0, 2pi/w);
// real fields take sigma_1(g) > 0, N(g) > 0 when N(eps) = -1, and
// 1 <= sigma_1(g)/sqrt|N(g)| < eta where eta is the smallest unit > 1 that
// preserves the sign of the norm.
std::optional<QuadraticInt> principal_generator(const QuadraticField& K, const Ideal& A);
QuadraticInt canonical_associate(const QuadraticField& K, const QuadraticInt& g);

struct UnsupportedError : std::domain_error {
    using std::domain_error::domain_error;
};

// Imaginary: number of reduced forms. Real: 1 if every prime ideal below the
// Minkowski bound is principal, otherwise UnsupportedError.
int class_number(const QuadraticField& K);

// Label of the ideal class of A: the reduced norm form (imaginary fields) or
// the principal form (real fields of class number one).
QuadForm ideal_class(const QuadraticField& K, const Ideal& A);
QuadForm principal_class_label(const QuadraticField& K);

// The chosen class C together with the anchor a0 in C^{-1}.
struct IdealClassContext {
    int h = 1;
    QuadForm chosen_class;
    Ideal anchor;

    bool contains(const QuadraticField& K, const Ideal& A) const;
    // generator of A * a0 (A must lie in C)
    QuadraticInt anchored_generator(const QuadraticField& K, const Ideal& A) const;
};

IdealClassContext principal_class_context(const QuadraticField& K);
// Class context for the class with reduced-form label `cls`; the anchor is the
// least-norm ideal of the inverse class.
IdealClassContext class_context(const QuadraticField& K, const QuadForm& cls);
// Class context for an explicitly given anchor a0: C is the class of a0^{-1}.
IdealClassContext class_context_for_anchor(const QuadraticField& K, const Ideal& a0);

// Prime ideals with norm in [norm_lo, norm_hi], ordered by norm, restricted to
// the chosen class when ctx is given.
void for_each_prime_ideal(const QuadraticField& K, const IdealClassContext* ctx, u64 norm_lo, u64 norm_hi,
                          const std::function<void(const PrimeIdeal&)>& visit, u64 capacity = u64{1} << 40);
std::vector<PrimeIdeal> enumerate_prime_ideals(const QuadraticField& K, const IdealClassContext* ctx, u64 norm_lo,
                                               u64 norm_hi, u64 capacity = u64{1} << 40);

// An integral ideal described by its prime ideal factorization. The HNF is
// built only on demand, since many consumers need only the norm and the
// exponent pattern.
struct IdealFactor {
    u64 p;
    SplitType split_type;
    int which;  // 0 or 1 for the two primes above a split p; 0 otherwise
    int e;
};

struct IdealRecord {
    u64 norm = 1;
    std::vector<IdealFactor> factors;

    // number of integral ideal divisors
    u64 tau() const;
};

// Every integral ideal with norm in [norm_lo, norm_hi], in increasing norm order
// (ties ordered by exponent pattern).
class IdealEnumerator {
public:
    IdealEnumerator(const QuadraticField& K, u64 norm_lo, u64 norm_hi, u64 capacity = u64{1} << 40);
    void for_each(const std::function<void(const IdealRecord&)>& visit) const;
    Ideal materialize(const IdealRecord& rec) const;
    const QuadraticField& field() const { return K_; }

private:
    QuadraticField K_;
    u64 lo_, hi_;
    WindowFactorizer factorizer_;
    mutable std::vector<std::pair<u64, std::vector<Ideal>>> prime_cache_;
    const std::vector<Ideal>& primes_above(u64 p) const;
};

std::string to_string(const Ideal& A);

}  // namespace qfp
