#pragma once

// Target regions in (norm, character angle) space, the F-space sectors of an
// indefinite form and lattice point enumeration in both kinds of small region.

#include <array>
#include <functional>
#include <vector>

#include "qfp/forms.hpp"
#include "qfp/hecke.hpp"

namespace qfp {

inline constexpr double theta1 = 0.765;
inline constexpr double theta2 = 0.235;

// x - y <= N <= x and arg mu in [phi0, phi0 + phi) mod 2 pi
struct RegionSpec {
    double x = 0;
    double y = 0;
    double phi0 = 0;
    double phi = 0;
    bool theorem_regime = false;

    static RegionSpec theorem(double x, double phi0);
    void validate() const;
};

// x - y <= Q <= x and omega <= F <= omega + phi
struct FRegionSpec {
    double x = 0;
    double y = 0;
    double omega = 0;
    double phi = 0;
};

struct BSetSpec {
    double x = 0;
    double y1 = 0;

    static BSetSpec desk_default(double x);   // y1 = x/2
    static BSetSpec paper_default(double x);  // y1 = x exp(-3 log^{1/3} x)
};

// half-open arc membership, angles in radians
bool angle_in_arc(long double arg, long double phi0, long double phi);

bool contains_ideal(const RegionSpec& R, const QuadraticField& K, const IdealClassContext& ctx, const Ideal& A);
double expected_prime_count(const RegionSpec& R, int h);

// ---------------------------------------------------------------------------
// sector geometry of an indefinite form
// ---------------------------------------------------------------------------

// Bounds on -eta/xi for Q = xi^2 - d eta^2. The tanh branch is where Q > 0, the
// coth branch where Q < 0. coth values are +-inf at omega = 0.
struct SimpleSlopes {
    long double tanh_lo, tanh_hi;  // (1/sqrt d) tanh(omega L), tanh((omega+phi) L)
    long double coth_lo, coth_hi;  // (1/sqrt d) coth(omega L), coth((omega+phi) L)
    long double asymptote;         // 1/sqrt d
};
SimpleSlopes sector_slopes_simple(i64 d, long double omega, long double phi, long double log_eps);

// Slopes eta/xi of the rays F = omega and F = omega + phi for a general form.
// s(omega) = -2a tanh(omega L) / (b tanh(omega L) + sqrt D); this agrees with
// -2a / (b + sqrt D coth(omega L)) and stays finite at omega = 0.
struct GeneralSlopes {
    long double s1, s2;              // tanh branch (Q > 0)
    long double c1, c2;              // coth branch (Q < 0)
    std::array<long double, 2> asymptotes;  // 2a / (-b +- sqrt D)
};
long double slope_tanh_branch(const QuadForm& f, long double omega, long double log_eps);
long double slope_coth_branch(const QuadForm& f, long double omega, long double log_eps);
GeneralSlopes sector_slopes_general(const QuadForm& f, long double omega, long double phi, long double log_eps);

// F(xi, eta) = log|sigma_1(f)/sigma_2(f)| / (2 log eps), f = xi a + eta (b - sqrt D)/2
long double form_F(const QuadForm& f, long double log_eps, long double xi, long double eta);
long double form_F(const QuadForm& f, long double log_eps, i128 xi, i128 eta);

// F-window membership decided from the slope lines only.
bool in_sector_by_slopes(const QuadForm& f, long double omega, long double phi, long double log_eps, long double xi,
                         long double eta);

// ---------------------------------------------------------------------------
// lattice point enumeration
// ---------------------------------------------------------------------------

// Integer points (m, n) with lo <= Q(m, n) <= hi whose image p = L (m, n) lies in
// the closed cone from direction d1 counterclockwise to d2 (opening < pi). For
// indefinite forms L maps to (sigma_1, sigma_2); for definite forms L maps to
// (Re f, Im f). The caller's predicate makes the final decision.
struct ConeRegion {
    QuadForm form;
    std::array<long double, 4> L;  // p = (L0 m + L1 n, L2 m + L3 n)
    std::array<long double, 2> d1, d2;
    long double lo = 0, hi = 0;
    bool hyperbolic = false;  // level sets p0 * p1 = const, else p0^2 + p1^2 = const
    long double level_scale = 1;  // p0*p1 (or |p|^2) = level_scale * Q
};

using LatticePoint = std::array<i64, 2>;

void scan_cone_region(const ConeRegion& R, const std::function<bool(i64, i64)>& accept,
                      const std::function<void(i64, i64)>& visit, u64 cap = u64{1} << 32);

// The component S_1 (sigma_1, sigma_2 > 0) of S(x, y, omega, phi), or its
// antipode S_2 = -S_1.
std::vector<LatticePoint> lattice_points_in_S(const FRegionSpec& S, const QuadForm& f, long double log_eps,
                                              int component = 1, u64 cap = u64{1} << 32);

// Membership predicate used by the enumerator (exact in Q, floating in F).
bool in_S(const FRegionSpec& S, const QuadForm& f, long double log_eps, i64 m, i64 n, int component = 1);

// Definite form: x - y <= Q <= x and arg f(m, n) in [alpha, alpha + width) with
// width < pi, f(m, n) = m a + n (b - sqrt D)/2.
std::vector<LatticePoint> lattice_points_in_sector(const QuadForm& f, long double x, long double y, long double alpha,
                                                   long double width, u64 cap = u64{1} << 32);
bool in_sector(const QuadForm& f, long double x, long double y, long double alpha, long double width, i64 m, i64 n);
long double form_arg(const QuadForm& f, long double m, long double n);

}  // namespace qfp
