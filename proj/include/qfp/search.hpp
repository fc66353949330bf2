#pragma once

// Binary quadratic forms linked to ideal classes: the correspondence between
// prime ideals and coprime representations Q(m, n) = p, and the search for a
// represented prime near a real target point.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfp/regions.hpp"

namespace qfp {

// The form together with its field and the ideal d = [a, (b - sqrt D)/2].
// Prime ideals of the class C with d in C^{-1} correspond to representations.
struct FormFieldLink {
    QuadForm form;
    QuadraticField field;
    Ideal d;
    IdealClassContext ctx;

    // needs a primitive form with a > 0 and fundamental discriminant
    static FormFieldLink make(const QuadForm& f);
    bool definite() const { return field.is_imaginary(); }
    // f(m, n) = m a + n (b - sqrt D)/2
    QuadraticInt f_elem(i128 m, i128 n) const;
    // inverse of f_elem; nullopt if g is not in the lattice
    std::optional<std::array<i128, 2>> pair_of(const QuadraticInt& g) const;
};

struct Correspondent {
    bool prime = false;
    u64 p = 0;
    Ideal ideal;           // p with p d = (f(m, n))
    QuadraticInt element;  // f(m, n)
};

// gcd(m, n) must be 1 (std::invalid_argument otherwise). If Q(m, n) is not a
// positive prime the result has prime == false.
Correspondent coleman_correspond(const FormFieldLink& L, i64 m, i64 n);

// Pairs (m, n) in [-window, window]^2 with p d = (f(m, n)) and Q(m, n) = N(p);
// a negative window is empty. Definite forms give only the normalized pair
// (m, n > 0 for D = -4, -3; m > 0 or (0, 1) otherwise). Throws if p d is not
// principal.
std::vector<LatticePoint> correspond_inverse(const FormFieldLink& L, const Ideal& P, i64 window);

// the pair of f(m, n) * eps^k (indefinite forms)
LatticePoint unit_orbit_step(const FormFieldLink& L, i64 m, i64 n, i64 k);

// F(xi, eta) = log|sigma_1(f)/sigma_2(f)| / (2 log eps); throws SingularError on an asymptote
struct SingularError : std::domain_error {
    using std::domain_error::domain_error;
};
long double F_value(const FormFieldLink& L, long double xi, long double eta);

struct SectorCheck {
    bool valid = false;
    long double angle1 = 0, angle2 = 0;  // to the lines through (-b +- sqrt D, 2a)
};
SectorCheck sector_validity(const FormFieldLink& L, long double s, long double t, long double delta);

// ---------------------------------------------------------------------------
// nearest represented prime
// ---------------------------------------------------------------------------
struct SearchParams {
    double theta1 = qfp::theta1;
    double theta2 = qfp::theta2;
    double delta = 0.1;
    double x_floor = 1e3;
    int max_rounds = 6;
    u64 cap = u64{1} << 26;
};

struct SearchResult {
    i64 m = 0, n = 0;
    u64 p = 0;
    long double distance = 0;
    double x = 0, y = 0, phi = 0;  // parameters of the successful round
    int rounds = 0;                // 0: theorem-regime parameters sufficed
    u64 candidates = 0;            // lattice points examined, all rounds
    bool ball = false;             // small-input ball search
    long double bound_ray = 0;     // y / sqrt x
    long double bound_hyp = 0;     // phi sqrt x
};

struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SearchResult prime_near_definite(long double s, long double t, const FormFieldLink& L, const SearchParams& P = {});
SearchResult prime_near_indefinite(long double s, long double t, const FormFieldLink& L, const SearchParams& P = {});
SearchResult prime_near(long double s, long double t, const FormFieldLink& L, const SearchParams& P = {});

// slope of log max(dist, 1) against log ||(s, t)|| by least squares
double fitted_exponent(const std::vector<long double>& norms, const std::vector<long double>& dists);

}  // namespace qfp
