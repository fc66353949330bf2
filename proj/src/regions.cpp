#include "qfp/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qfp {

namespace {

constexpr long double two_pi = 2 * std::numbers::pi_v<long double>;

using P2 = std::array<long double, 2>;

long double cross(const P2& a, const P2& b) { return a[0] * b[1] - a[1] * b[0]; }

long double sqrt_disc(const QuadForm& f) { return std::sqrt(to_ld(f.disc())); }

long double sqrt_abs_disc(const QuadForm& f) { return std::sqrt(std::fabs(to_ld(f.disc()))); }

long double level_of(const ConeRegion& R, const P2& p) {
    return R.hyperbolic ? p[0] * p[1] : p[0] * p[0] + p[1] * p[1];
}

bool in_cone(const ConeRegion& R, const P2& p) {
    const long double tol = 1e-12L * (std::fabs(p[0]) + std::fabs(p[1]));
    return cross(R.d1, p) >= -tol && cross(p, R.d2) >= -tol;
}

// range of alpha p0 + beta p1 over the region
std::pair<long double, long double> functional_range(const ConeRegion& R, long double alpha, long double beta) {
    std::vector<P2> cand;
    const long double lev_lo = R.level_scale * R.lo, lev_hi = R.level_scale * R.hi;
    for (const P2& d : {R.d1, R.d2}) {
        const long double ld = level_of(R, d);
        for (long double lev : {lev_lo, lev_hi}) {
            if (lev <= 0) {
                cand.push_back({0, 0});
                continue;
            }
            const long double s = std::sqrt(lev / ld);
            cand.push_back({d[0] * s, d[1] * s});
        }
    }
    for (long double lev : {lev_lo, lev_hi}) {
        if (lev <= 0) continue;
        if (R.hyperbolic) {
            if (alpha * beta > 0) {
                const long double p0 = std::sqrt(lev * beta / alpha), p1 = std::sqrt(lev * alpha / beta);
                for (const P2& p : {P2{p0, p1}, P2{-p0, -p1}})
                    if (in_cone(R, p)) cand.push_back(p);
            }
        } else {
            const long double nrm = std::hypot(alpha, beta);
            if (nrm > 0) {
                const long double s = std::sqrt(lev) / nrm;
                for (const P2& p : {P2{alpha * s, beta * s}, P2{-alpha * s, -beta * s}})
                    if (in_cone(R, p)) cand.push_back(p);
            }
        }
    }
    long double lo = std::numeric_limits<long double>::infinity(), hi = -lo;
    for (const P2& p : cand) {
        const long double g = alpha * p[0] + beta * p[1];
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    return {lo, hi};
}

// intersect [lo, hi] with {m : A m + B >= 0}
void clip_linear(long double A, long double B, long double& lo, long double& hi) {
    const long double eps = 1e-9L * (std::fabs(B) + 1);
    if (std::fabs(A) < 1e-300L) {
        if (B < -eps) {
            lo = 1;
            hi = 0;
        }
        return;
    }
    const long double r = -B / A;
    if (A > 0) {
        lo = std::max(lo, r);
    } else {
        hi = std::min(hi, r);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// regions in character-angle space
// ---------------------------------------------------------------------------
RegionSpec RegionSpec::theorem(double x, double phi0) {
    return RegionSpec{x, std::pow(x, theta1), phi0, std::pow(x, -theta2), true};
}

void RegionSpec::validate() const {
    if (!(x > 0)) throw std::invalid_argument("RegionSpec: need x > 0");
    if (!(y > 0 && y <= x)) throw std::invalid_argument("RegionSpec: need 0 < y <= x");
    if (!(phi > 0 && phi < 2 * std::numbers::pi)) throw std::invalid_argument("RegionSpec: need 0 < phi < 2 pi");
    if (theorem_regime) {
        if (y < std::pow(x, theta1) * (1 - 1e-12)) throw std::invalid_argument("RegionSpec: y below x^theta1");
        if (phi < std::pow(x, -theta2) * (1 - 1e-12)) throw std::invalid_argument("RegionSpec: phi below x^-theta2");
    }
}

BSetSpec BSetSpec::desk_default(double x) { return BSetSpec{x, x / 2}; }

BSetSpec BSetSpec::paper_default(double x) {
    return BSetSpec{x, x * std::exp(-3 * std::cbrt(std::log(x)))};
}

bool angle_in_arc(long double arg, long double phi0, long double phi) {
    long double d = std::fmod(arg - phi0, two_pi);
    if (d < 0) d += two_pi;
    if (d >= two_pi) d = 0;
    return d < phi;
}

bool contains_ideal(const RegionSpec& R, const QuadraticField& K, const IdealClassContext& ctx, const Ideal& A) {
    const long double N = to_ld(A.norm());
    if (N < R.x - R.y || N > R.x) return false;
    const CharacterValue mu_a = mu(K, ctx.anchored_generator(K, A));
    return angle_in_arc(mu_a.arg(), R.phi0, R.phi);
}

double expected_prime_count(const RegionSpec& R, int h) {
    if (!(R.x > std::exp(1.0))) throw std::invalid_argument("expected_prime_count: need x > e");
    return R.phi * R.y / (h * std::log(R.x));
}

// ---------------------------------------------------------------------------
// sector geometry
// ---------------------------------------------------------------------------
SimpleSlopes sector_slopes_simple(i64 d, long double omega, long double phi, long double log_eps) {
    if (d < 2) throw std::invalid_argument("sector_slopes_simple: need d >= 2");
    const long double rd = std::sqrt(static_cast<long double>(d));
    const long double t1 = std::tanh(omega * log_eps), t2 = std::tanh((omega + phi) * log_eps);
    const long double inf = std::numeric_limits<long double>::infinity();
    auto coth = [&](long double t) { return t == 0 ? inf : 1 / t; };
    return SimpleSlopes{t1 / rd, t2 / rd, coth(t1) / rd, coth(t2) / rd, 1 / rd};
}

long double slope_tanh_branch(const QuadForm& f, long double omega, long double log_eps) {
    const long double t = std::tanh(omega * log_eps);
    return -2 * to_ld(f.a) * t / (to_ld(f.b) * t + sqrt_disc(f));
}

long double slope_coth_branch(const QuadForm& f, long double omega, long double log_eps) {
    const long double t = std::tanh(omega * log_eps);
    const long double den = to_ld(f.b) + sqrt_disc(f) * t;
    if (den == 0) return std::numeric_limits<long double>::infinity();
    return -2 * to_ld(f.a) / den;
}

GeneralSlopes sector_slopes_general(const QuadForm& f, long double omega, long double phi, long double log_eps) {
    if (!f.indefinite() || f.a <= 0) throw std::invalid_argument("sector_slopes_general: need indefinite form, a > 0");
    const long double rD = sqrt_disc(f), a = to_ld(f.a), b = to_ld(f.b);
    return GeneralSlopes{slope_tanh_branch(f, omega, log_eps),
                         slope_tanh_branch(f, omega + phi, log_eps),
                         slope_coth_branch(f, omega, log_eps),
                         slope_coth_branch(f, omega + phi, log_eps),
                         {2 * a / (-b + rD), 2 * a / (-b - rD)}};
}

namespace {

long double F_from_parts(long double s1, long double s2, long double aQ, long double log_eps) {
    if (aQ == 0) throw std::domain_error("form_F: point on an asymptote");
    const long double lq = std::log(std::fabs(aQ));
    long double r;
    if (std::fabs(s1) >= std::fabs(s2)) {
        r = 2 * std::log(std::fabs(s1)) - lq;
    } else {
        r = lq - 2 * std::log(std::fabs(s2));
    }
    return r / (2 * log_eps);
}

}  // namespace

long double form_F(const QuadForm& f, long double log_eps, long double xi, long double eta) {
    const long double rD = sqrt_disc(f), a = to_ld(f.a), b = to_ld(f.b);
    const long double s1 = a * xi + eta * (b - rD) / 2;
    const long double s2 = a * xi + eta * (b + rD) / 2;
    return F_from_parts(s1, s2, a * f.eval(xi, eta), log_eps);
}

long double form_F(const QuadForm& f, long double log_eps, i128 xi, i128 eta) {
    const long double rD = sqrt_disc(f), a = to_ld(f.a), b = to_ld(f.b);
    const long double x = to_ld(xi), e = to_ld(eta);
    const long double s1 = a * x + e * (b - rD) / 2;
    const long double s2 = a * x + e * (b + rD) / 2;
    return F_from_parts(s1, s2, to_ld(mul_checked(f.a, f.eval(xi, eta))), log_eps);
}

bool in_sector_by_slopes(const QuadForm& f, long double omega, long double phi, long double log_eps, long double xi,
                         long double eta) {
    const long double rD = sqrt_disc(f), a = to_ld(f.a), b = to_ld(f.b);
    const long double q = f.eval(xi, eta);
    const long double t1 = std::tanh(omega * log_eps), t2 = std::tanh((omega + phi) * log_eps);
    P2 p{xi, eta};
    if (q > 0) {
        // rays (b t + sqrt D, -2a t) turn clockwise as omega grows
        if (p[0] < 0) p = {-p[0], -p[1]};
        if (p[0] == 0) return false;
        const P2 d_lo{b * t1 + rD, -2 * a * t1}, d_hi{b * t2 + rD, -2 * a * t2};
        return cross(d_hi, p) >= 0 && cross(p, d_lo) >= 0;
    }
    if (q < 0) {
        // rays (b + sqrt D t, -2a) turn counterclockwise as omega grows
        if (p[1] > 0) p = {-p[0], -p[1]};
        const P2 d_lo{b + rD * t1, -2 * a}, d_hi{b + rD * t2, -2 * a};
        return cross(d_lo, p) >= 0 && cross(p, d_hi) >= 0;
    }
    return false;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------
void scan_cone_region(const ConeRegion& R, const std::function<bool(i64, i64)>& accept,
                      const std::function<void(i64, i64)>& visit, u64 cap) {
    if (R.form.a <= 0) throw std::invalid_argument("scan_cone_region: need a > 0");
    if (R.hi < R.lo) return;
    const auto& L = R.L;
    const long double det = L[0] * L[3] - L[1] * L[2];
    // n = (-L2 p0 + L0 p1)/det
    auto [nlo, nhi] = functional_range(R, -L[2] / det, L[0] / det);
    if (!(nlo <= nhi)) return;
    const long double a = to_ld(R.form.a), b = to_ld(R.form.b), c = to_ld(R.form.c);
    const i64 n0 = static_cast<i64>(std::floor(nlo)) - 1, n1 = static_cast<i64>(std::ceil(nhi)) + 1;
    u64 work = 0;
    for (i64 n = n0; n <= n1; ++n) {
        const long double nn = static_cast<long double>(n);
        long double mlo = -std::numeric_limits<long double>::infinity();
        long double mhi = std::numeric_limits<long double>::infinity();
        // cone: cross(d1, p) >= 0 and cross(p, d2) >= 0, p linear in m
        {
            const long double p0m = L[0], p0c = L[1] * nn, p1m = L[2], p1c = L[3] * nn;
            clip_linear(R.d1[0] * p1m - R.d1[1] * p0m, R.d1[0] * p1c - R.d1[1] * p0c, mlo, mhi);
            clip_linear(p0m * R.d2[1] - p1m * R.d2[0], p0c * R.d2[1] - p1c * R.d2[0], mlo, mhi);
        }
        if (mlo > mhi + 2) continue;
        // Q(m, n) <= hi
        const long double B = b * nn, Chi = c * nn * nn - R.hi;
        const long double disc_hi = B * B - 4 * a * Chi;
        if (disc_hi < 0) continue;
        const long double sh = std::sqrt(disc_hi);
        mlo = std::max(mlo, (-B - sh) / (2 * a));
        mhi = std::min(mhi, (-B + sh) / (2 * a));
        if (mlo > mhi + 2) continue;
        // Q(m, n) >= lo removes an open middle interval
        const long double Clo = c * nn * nn - R.lo;
        const long double disc_lo = B * B - 4 * a * Clo;
        std::vector<std::pair<long double, long double>> parts;
        if (disc_lo > 0) {
            const long double sl = std::sqrt(disc_lo);
            const long double g1 = (-B - sl) / (2 * a), g2 = (-B + sl) / (2 * a);
            parts.push_back({mlo, std::min(mhi, g1)});
            parts.push_back({std::max(mlo, g2), mhi});
        } else {
            parts.push_back({mlo, mhi});
        }
        i64 next = std::numeric_limits<i64>::min();  // slack must not visit a point twice
        for (auto [lo, hi] : parts) {
            if (lo > hi + 2) continue;
            const i64 m0 = std::max(static_cast<i64>(std::floor(lo)) - 1, next);
            const i64 m1 = static_cast<i64>(std::ceil(hi)) + 1;
            for (i64 m = m0; m <= m1; ++m) {
                if (++work > cap) throw CapacityError("scan_cone_region: enumeration cap exceeded");
                if (accept(m, n)) visit(m, n);
            }
            next = std::max(next, m1 + 1);
        }
    }
}

bool in_S(const FRegionSpec& S, const QuadForm& f, long double log_eps, i64 m, i64 n, int component) {
    const i128 q = f.eval(static_cast<i128>(m), static_cast<i128>(n));
    const long double ql = to_ld(q);
    if (ql < S.x - S.y || ql > S.x || q <= 0) return false;
    // sigma_1 = a m + n (b - sqrt D)/2 ; both embeddings share its sign when Q > 0
    const long double s1 = to_ld(f.a) * m + n * (to_ld(f.b) - sqrt_disc(f)) / 2;
    if ((component == 1) != (s1 > 0)) return false;
    const long double F = form_F(f, log_eps, static_cast<i128>(m), static_cast<i128>(n));
    return F >= S.omega && F <= S.omega + S.phi;
}

std::vector<LatticePoint> lattice_points_in_S(const FRegionSpec& S, const QuadForm& f, long double log_eps,
                                              int component, u64 cap) {
    if (!f.indefinite() || f.a <= 0) throw std::invalid_argument("lattice_points_in_S: need indefinite form, a > 0");
    const long double rD = sqrt_disc(f), a = to_ld(f.a), b = to_ld(f.b);
    ConeRegion R;
    R.form = f;
    R.L = {a, (b - rD) / 2, a, (b + rD) / 2};
    // direction with sigma_1/sigma_2 = exp(2 omega L)
    auto dir = [&](long double w) { return P2{std::exp(w * log_eps), std::exp(-w * log_eps)}; };
    R.d1 = dir(S.omega + S.phi);
    R.d2 = dir(S.omega);
    R.lo = std::max<long double>(S.x - S.y, 0);
    R.hi = S.x;
    R.hyperbolic = true;
    R.level_scale = a;
    std::vector<LatticePoint> out;
    scan_cone_region(
        R, [&](i64 m, i64 n) { return in_S(S, f, log_eps, m, n, 1); },
        [&](i64 m, i64 n) { out.push_back(component == 1 ? LatticePoint{m, n} : LatticePoint{-m, -n}); }, cap);
    return out;
}

long double form_arg(const QuadForm& f, long double m, long double n) {
    return std::atan2(-n * sqrt_abs_disc(f) / 2, to_ld(f.a) * m + n * to_ld(f.b) / 2);
}

bool in_sector(const QuadForm& f, long double x, long double y, long double alpha, long double width, i64 m, i64 n) {
    const long double q = to_ld(f.eval(static_cast<i128>(m), static_cast<i128>(n)));
    if (q < x - y || q > x || q <= 0) return false;
    return angle_in_arc(form_arg(f, m, n), alpha, width);
}

std::vector<LatticePoint> lattice_points_in_sector(const QuadForm& f, long double x, long double y, long double alpha,
                                                   long double width, u64 cap) {
    if (!f.positive_definite()) throw std::invalid_argument("lattice_points_in_sector: need positive definite form");
    if (!(width > 0 && width < std::numbers::pi_v<long double>)) {
        throw std::invalid_argument("lattice_points_in_sector: need 0 < width < pi");
    }
    const long double a = to_ld(f.a), b = to_ld(f.b);
    ConeRegion R;
    R.form = f;
    R.L = {a, b / 2, 0, -sqrt_abs_disc(f) / 2};
    R.d1 = {std::cos(alpha), std::sin(alpha)};
    R.d2 = {std::cos(alpha + width), std::sin(alpha + width)};
    R.lo = std::max<long double>(x - y, 0);
    R.hi = x;
    R.hyperbolic = false;
    R.level_scale = a;
    std::vector<LatticePoint> out;
    scan_cone_region(
        R, [&](i64 m, i64 n) { return in_sector(f, x, y, alpha, width, m, n); },
        [&](i64 m, i64 n) { out.push_back({m, n}); }, cap);
    return out;
}

}  // namespace qfp
