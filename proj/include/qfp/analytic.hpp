#pragma once

// Dirichlet polynomials over ideals of one class, the error sum E, the main
// terms M_A / M_B as line integrals on Re s = 1/2, and the direct ratio check
// of the smoothed count in A against the plain count in B.

#include <string>
#include <vector>

#include "qfp/ideal.hpp"
#include "qfp/regions.hpp"
#include "qfp/smoothing.hpp"

namespace qfp {

// ---------------------------------------------------------------------------
// coefficients
// ---------------------------------------------------------------------------
struct CoefficientModel {
    enum class Kind { zero, one, prime, tau, bilinear };
    Kind kind = Kind::one;
    double D = 0;          // |c| <= tau^D
    u64 short_bound = 0;   // bilinear: count divisors of norm <= short_bound

    std::string name() const;
    long double operator()(const IdealRecord& rec) const;

    static CoefficientModel zero();
    static CoefficientModel one();
    static CoefficientModel prime();  // 1 on prime ideals
    static CoefficientModel tau();
    // c(a) = #{b | a : N(b) <= x^eta}
    static CoefficientModel bilinear(double x, double eta);
    static CoefficientModel parse(const std::string& name, double x, double eta);
};

// number of integral ideal divisors of rec with norm <= bound
u64 count_small_divisors(const IdealRecord& rec, u64 bound);

// ---------------------------------------------------------------------------
// Dirichlet polynomials
// ---------------------------------------------------------------------------
struct DirichletTerm {
    u64 norm = 0;
    long double c = 0;
    long double turn = 0;  // lambda^1(a) as a turn
};

class DirichletPolynomial {
public:
    DirichletPolynomial() = default;
    explicit DirichletPolynomial(std::vector<DirichletTerm> terms);

    // ideals of the class of ctx with norm in [lo, hi]; zero coefficients are
    // dropped. Throws CapacityError beyond `cap` terms.
    static DirichletPolynomial build(const QuadraticField& K, const IdealClassContext& ctx,
                                     const CoefficientModel& model, u64 lo, u64 hi, u64 cap = u64{1} << 24);

    // sum c lambda^m(a) N(a)^-s, compensated
    cld eval(cld s, i64 m) const;
    // values at sigma + i (t0 + k h), k = 0 .. count-1; phasor stepping per norm
    std::vector<cld> eval_line(long double sigma, long double t0, long double h, std::size_t count, i64 m) const;

    const std::vector<DirichletTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    u64 max_norm() const;

private:
    std::vector<DirichletTerm> terms_;  // sorted by norm
};

// ---------------------------------------------------------------------------
// line integrals on Re s = 1/2
// ---------------------------------------------------------------------------
// A fixed grid t = k h. The integral over [-T, T] uses the piecewise linear
// interpolant through the grid values, cut at +-T; for nonnegative integrands
// the result is nondecreasing in T.
struct LineGrid {
    long double h = 0;
    long double T = 0;
    long long K = 0;  // nodes k = -(K+1) .. K+1

    static LineGrid make(long double T, long double h);
    std::size_t size() const { return static_cast<std::size_t>(2 * K + 3); }
    long double t0() const { return -(K + 1) * h; }
    // integral of the interpolant over [-T, T]
    cld integrate(const std::vector<cld>& values) const;
    long double integrate(const std::vector<long double>& values) const;
};

// largest admissible spacing for norms up to max_norm
long double max_grid_spacing(long double max_norm);

struct ErrorSum {
    long double E = 0;
    long double E_over_sqrt_x = 0;
    long double h = 0;
    long long M = 0;
    long double T1 = 0;
    std::size_t grid_points = 0;
};

// E = sum_{0 < |m| <= M} int_{-T1}^{T1} |F(1/2 + it, lambda^m)| dt. `window_hi` is
// c2 x; a spacing coarser than max_grid_spacing(window_hi) is refused.
ErrorSum error_sum_E(const DirichletPolynomial& poly, long long M, long double T1, long double h, long double x,
                     long double window_hi);

struct MainTerms {
    cld MA;          // psi2hat(0)/(2 pi i) int F(s) psi1hat(s) ds over |t| <= T1
    cld MA_T0;       // phi y/((2 pi)^2 i) int F(s) x^(s-1) ds over |t| <= T0
    cld MB;          // y1/(2 pi i) int F(s) x^(s-1) ds over |t| <= T1
    long double oracle_MA = 0;  // psi2hat(0) sum c psi1(N)
    long double truncation_diff = 0;  // |MA - MA_T0| / (phi y)
    std::size_t grid_points = 0;
};

MainTerms main_terms(const DirichletPolynomial& poly, const Psi1& p1, const Psi2& p2, double y1, long double T1,
                     long double T0, long double h);

// termwise Mellin inversion: psi2hat(0) sum c psi1(N)
long double mellin_oracle_MA(const DirichletPolynomial& poly, const Psi1& p1, const Psi2& p2);

// ---------------------------------------------------------------------------
// ratio law
// ---------------------------------------------------------------------------
struct RatioReport {
    double x = 0, y = 0, phi0 = 0, phi = 0, y1 = 0, eta = 0;
    double delta1 = 0, delta2 = 0;
    bool has_plateau = false;
    std::string model;
    long double lhs = 0;      // sum_A c Psi
    long double b_sum = 0;    // sum_B c
    long double factor = 0;   // (y - D1)(phi - D2)/(2 pi y1)
    long double rhs = 0;
    long double deviation = 0;
    u64 a_terms = 0, b_terms = 0;
};

// LHS by direct summation over ideals with norm in [x - y, x]; B is the norm
// window [x - y1, x].
RatioReport ratio_check(const QuadraticField& K, const IdealClassContext& ctx, const RegionSpec& R,
                        const BSetSpec& B, const CoefficientModel& model, double eta = 0.05,
                        u64 cap = u64{1} << 26);

// A1 = max_{0<|m|<=M} |psi2hat(m)|, A2 = max over the grid of |psi1hat(1/2 + it)|
struct Diagnostics {
    long double A1 = 0;
    long double A2 = 0;
};
Diagnostics a_diagnostics(const Psi1& p1, const Psi2& p2, long long M, long double T1, long double h);

}  // namespace qfp
