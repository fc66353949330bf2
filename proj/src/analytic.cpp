#include "qfp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfp {

namespace {

constexpr long double pi = std::numbers::pi_v<long double>;
constexpr long double two_pi = 2 * pi;

// Neumaier compensated sum
struct CompSum {
    long double s = 0, c = 0;
    void add(long double v) {
        const long double t = s + v;
        if (std::fabs(s) >= std::fabs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    long double value() const { return s + c; }
};

struct CompSumC {
    CompSum re, im;
    void add(cld v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cld value() const { return {re.value(), im.value()}; }
};

// divisors of the pattern f[i..] with norm <= bound / acc
u64 count_divisors_rec(const std::vector<IdealFactor>& f, std::size_t i, u64 acc, u64 bound) {
    if (i == f.size()) return 1;
    const u64 q = f[i].split_type == SplitType::inert ? f[i].p * f[i].p : f[i].p;
    u64 total = 0;
    u64 n = acc;
    for (int e = 0; e <= f[i].e; ++e) {
        total += count_divisors_rec(f, i + 1, n, bound);
        if (e == f[i].e) break;
        if (n > bound / q) break;
        n *= q;
    }
    return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// coefficients
// ---------------------------------------------------------------------------
std::string CoefficientModel::name() const {
    switch (kind) {
        case Kind::zero: return "zero";
        case Kind::one: return "one";
        case Kind::prime: return "prime";
        case Kind::tau: return "tau";
        case Kind::bilinear: return "bilinear";
    }
    return "?";
}

long double CoefficientModel::operator()(const IdealRecord& rec) const {
    switch (kind) {
        case Kind::zero: return 0;
        case Kind::one: return 1;
        case Kind::prime: return rec.factors.size() == 1 && rec.factors[0].e == 1 ? 1 : 0;
        case Kind::tau: return static_cast<long double>(rec.tau());
        case Kind::bilinear: return static_cast<long double>(count_small_divisors(rec, short_bound));
    }
    return 0;
}

CoefficientModel CoefficientModel::zero() { return {Kind::zero, 0, 0}; }
CoefficientModel CoefficientModel::one() { return {Kind::one, 0, 0}; }
CoefficientModel CoefficientModel::prime() { return {Kind::prime, 1, 0}; }
CoefficientModel CoefficientModel::tau() { return {Kind::tau, 1, 0}; }

CoefficientModel CoefficientModel::bilinear(double x, double eta) {
    return {Kind::bilinear, 1, static_cast<u64>(std::floor(std::pow(x, eta)))};
}

CoefficientModel CoefficientModel::parse(const std::string& name, double x, double eta) {
    if (name == "zero") return zero();
    if (name == "one") return one();
    if (name == "prime") return prime();
    if (name == "tau") return tau();
    if (name == "bilinear") return bilinear(x, eta);
    throw std::invalid_argument("unknown coefficient model '" + name + "'");
}

u64 count_small_divisors(const IdealRecord& rec, u64 bound) {
    if (bound == 0) return 0;
    return count_divisors_rec(rec.factors, 0, 1, bound);
}

// ---------------------------------------------------------------------------
// Dirichlet polynomials
// ---------------------------------------------------------------------------
DirichletPolynomial::DirichletPolynomial(std::vector<DirichletTerm> terms) : terms_(std::move(terms)) {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const DirichletTerm& a, const DirichletTerm& b) { return a.norm < b.norm; });
}

DirichletPolynomial DirichletPolynomial::build(const QuadraticField& K, const IdealClassContext& ctx,
                                               const CoefficientModel& model, u64 lo, u64 hi, u64 cap) {
    std::vector<DirichletTerm> terms;
    if (model.kind == CoefficientModel::Kind::zero) return DirichletPolynomial(std::move(terms));
    IdealEnumerator en(K, lo, hi);
    en.for_each([&](const IdealRecord& rec) {
        const long double c = model(rec);
        if (c == 0) return;
        const Ideal A = en.materialize(rec);
        if (ctx.h > 1 && !ctx.contains(K, A)) return;
        if (terms.size() >= cap) throw CapacityError("DirichletPolynomial: more than " + std::to_string(cap) + " terms");
        terms.push_back({rec.norm, c, lambda_m(K, ctx, A, 1).turn});
    });
    return DirichletPolynomial(std::move(terms));
}

u64 DirichletPolynomial::max_norm() const { return terms_.empty() ? 0 : terms_.back().norm; }

cld DirichletPolynomial::eval(cld s, i64 m) const {
    CompSumC acc;
    for (const auto& t : terms_) {
        const long double a = two_pi * power(CharacterValue{t.turn}, m).turn;
        const cld ns = std::exp(-s * std::log(static_cast<long double>(t.norm)));
        acc.add(t.c * cld(std::cos(a), std::sin(a)) * ns);
    }
    return acc.value();
}

std::vector<cld> DirichletPolynomial::eval_line(long double sigma, long double t0, long double h, std::size_t count,
                                                i64 m) const {
    std::vector<CompSumC> acc(count);
    std::size_t i = 0;
    while (i < terms_.size()) {
        // combine the terms of one norm
        const u64 N = terms_[i].norm;
        cld amp = 0;
        for (; i < terms_.size() && terms_[i].norm == N; ++i) {
            const long double a = two_pi * power(CharacterValue{terms_[i].turn}, m).turn;
            amp += terms_[i].c * cld(std::cos(a), std::sin(a));
        }
        if (amp == cld(0)) continue;
        const long double lN = std::log(static_cast<long double>(N));
        amp *= std::exp(-sigma * lN);
        const cld step = std::polar(1.0L, -h * lN);
        cld ph;
        for (std::size_t k = 0; k < count; ++k) {
            if (k % 256 == 0) ph = std::polar(1.0L, -(t0 + k * h) * lN);
            acc[k].add(amp * ph);
            ph *= step;
        }
    }
    std::vector<cld> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = acc[k].value();
    return out;
}

// ---------------------------------------------------------------------------
// line integrals
// ---------------------------------------------------------------------------
LineGrid LineGrid::make(long double T, long double h) {
    if (!(h > 0)) throw std::invalid_argument("LineGrid: need h > 0");
    if (!(T >= 0)) throw std::invalid_argument("LineGrid: need T >= 0");
    LineGrid g;
    g.h = h;
    g.T = T;
    g.K = static_cast<long long>(std::floor(T / h));
    if (g.K > (1LL << 28)) throw CapacityError("LineGrid: too many nodes");
    return g;
}

namespace {

template <class V>
V integrate_grid(const LineGrid& g, const std::vector<V>& v) {
    if (v.size() != g.size()) throw std::invalid_argument("LineGrid: value count mismatch");
    V inner = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) inner += v[i];
    inner -= (v[1] + v[v.size() - 2]) / 2.0L;
    inner *= g.h;
    const long double f = (g.T - g.K * g.h) / g.h;
    // right end: K h .. T, left end mirrored
    const V r0 = v[v.size() - 2], r1 = v[v.size() - 1];
    const V l0 = v[1], l1 = v[0];
    const V right = f * g.h * (r0 + (r0 + f * (r1 - r0))) / 2.0L;
    const V left = f * g.h * (l0 + (l0 + f * (l1 - l0))) / 2.0L;
    return inner + right + left;
}

}  // namespace

cld LineGrid::integrate(const std::vector<cld>& values) const { return integrate_grid(*this, values); }
long double LineGrid::integrate(const std::vector<long double>& values) const {
    return integrate_grid(*this, values);
}

long double max_grid_spacing(long double max_norm) { return pi / (2 * std::log(std::max(max_norm, 3.0L))); }

ErrorSum error_sum_E(const DirichletPolynomial& poly, long long M, long double T1, long double h, long double x,
                     long double window_hi) {
    ErrorSum r;
    r.h = h;
    r.M = M;
    r.T1 = T1;
    if (h > max_grid_spacing(window_hi)) {
        throw std::invalid_argument("error_sum_E: grid spacing " + std::to_string(static_cast<double>(h)) +
                                    " exceeds pi/(2 log " + std::to_string(static_cast<double>(window_hi)) + ") = " +
                                    std::to_string(static_cast<double>(max_grid_spacing(window_hi))));
    }
    if (M < 0) throw std::invalid_argument("error_sum_E: need M >= 0");
    const LineGrid g = LineGrid::make(T1, h);
    r.grid_points = g.size();
    CompSum E;
    // real coefficients: the m and -m integrals coincide (t -> -t, conjugate)
    for (long long m = 1; m <= M; ++m) {
        const auto vals = poly.eval_line(0.5L, g.t0(), h, g.size(), m);
        std::vector<long double> mag(vals.size());
        for (std::size_t k = 0; k < vals.size(); ++k) mag[k] = std::abs(vals[k]);
        E.add(2 * g.integrate(mag));
    }
    r.E = E.value();
    r.E_over_sqrt_x = r.E / std::sqrt(x);
    return r;
}

long double mellin_oracle_MA(const DirichletPolynomial& poly, const Psi1& p1, const Psi2& p2) {
    CompSum s;
    for (const auto& t : poly.terms()) s.add(t.c * p1(static_cast<long double>(t.norm)));
    return p2.mean() * s.value();
}

MainTerms main_terms(const DirichletPolynomial& poly, const Psi1& p1, const Psi2& p2, double y1, long double T1,
                     long double T0, long double h) {
    MainTerms r;
    const long double x = p1.x(), lx = std::log(x);
    auto x_pow = [&](long double t) { return std::exp(cld(-0.5L, t) * lx); };  // x^(s-1)

    const LineGrid g = LineGrid::make(T1, h);
    r.grid_points = g.size();
    const auto F = poly.eval_line(0.5L, g.t0(), h, g.size(), 0);
    const auto P = p1.mellin_line(0.5L, g.t0(), h, g.size());
    std::vector<cld> fa(g.size()), fb(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const long double t = g.t0() + k * h;
        fa[k] = F[k] * P[k];
        fb[k] = F[k] * x_pow(t);
    }
    // (1/2 pi i) int ds = (1/2 pi) int dt on Re s = 1/2
    r.MA = p2.mean() / two_pi * g.integrate(fa);
    r.MB = static_cast<long double>(y1) / two_pi * g.integrate(fb);

    const LineGrid g0 = LineGrid::make(T0, h);
    const auto F0 = poly.eval_line(0.5L, g0.t0(), h, g0.size(), 0);
    std::vector<cld> f0(g0.size());
    for (std::size_t k = 0; k < g0.size(); ++k) f0[k] = F0[k] * x_pow(g0.t0() + k * h);
    const long double phiy = static_cast<long double>(p2.phi()) * p1.y();
    r.MA_T0 = phiy / (two_pi * two_pi) * g0.integrate(f0);
    r.truncation_diff = std::abs(r.MA - r.MA_T0) / phiy;
    r.oracle_MA = mellin_oracle_MA(poly, p1, p2);
    return r;
}

// ---------------------------------------------------------------------------
// ratio law
// ---------------------------------------------------------------------------
RatioReport ratio_check(const QuadraticField& K, const IdealClassContext& ctx, const RegionSpec& R,
                        const BSetSpec& B, const CoefficientModel& model, double eta, u64 cap) {
    R.validate();
    if (!(B.y1 > 0 && B.y1 <= B.x)) throw std::invalid_argument("ratio_check: need 0 < y1 <= x");
    RatioReport r;
    r.x = R.x;
    r.y = R.y;
    r.phi0 = R.phi0;
    r.phi = R.phi;
    r.y1 = B.y1;
    r.eta = eta;
    r.model = model.name();
    const auto sp = SmoothingParams::make(R.x, R.y, R.phi, eta);
    r.delta1 = sp.delta1;
    r.delta2 = sp.delta2;
    r.has_plateau = sp.has_plateau(R.y, R.phi);
    const Psi1 p1(R.x, R.y, sp.delta1);
    const Psi2 p2(R.phi0, R.phi, sp.delta2, sp.r);
    if (model.kind == CoefficientModel::Kind::zero) return r;

    const u64 hi = static_cast<u64>(std::floor(R.x));
    const u64 lo_a = static_cast<u64>(std::ceil(R.x - R.y));
    const u64 lo_b = static_cast<u64>(std::ceil(B.x - B.y1));
    if (hi - std::min(lo_a, lo_b) > cap) throw CapacityError("ratio_check: norm window exceeds capacity");

    CompSum lhs, bsum;
    IdealEnumerator ea(K, lo_a, hi);
    ea.for_each([&](const IdealRecord& rec) {
        const long double v1 = p1(static_cast<long double>(rec.norm));
        if (v1 == 0) return;
        const long double c = model(rec);
        if (c == 0) return;
        const Ideal A = ea.materialize(rec);
        if (ctx.h > 1 && !ctx.contains(K, A)) return;
        ++r.a_terms;
        lhs.add(c * v1 * p2(lambda_m(K, ctx, A, 1).arg()));
    });
    IdealEnumerator eb(K, lo_b, static_cast<u64>(std::floor(B.x)));
    eb.for_each([&](const IdealRecord& rec) {
        const long double c = model(rec);
        if (c == 0) return;
        if (ctx.h > 1 && !ctx.contains(K, eb.materialize(rec))) return;
        ++r.b_terms;
        bsum.add(c);
    });
    r.lhs = lhs.value();
    r.b_sum = bsum.value();
    r.factor = (static_cast<long double>(R.y) - sp.delta1) * (static_cast<long double>(R.phi) - sp.delta2) /
               (two_pi * B.y1);
    r.rhs = r.factor * r.b_sum;
    if (r.rhs == 0) {
        r.deviation = r.lhs == 0 ? 0 : INFINITY;
    } else {
        r.deviation = std::fabs(r.lhs / r.rhs - 1);
    }
    return r;
}

Diagnostics a_diagnostics(const Psi1& p1, const Psi2& p2, long long M, long double T1, long double h) {
    Diagnostics d;
    for (long long m = 1; m <= M; ++m) d.A1 = std::max(d.A1, std::abs(p2.coeff(m)));
    const LineGrid g = LineGrid::make(T1, h);
    for (const cld& v : p1.mellin_line(0.5L, g.t0(), h, g.size())) d.A2 = std::max(d.A2, std::abs(v));
    return d;
}

}  // namespace qfp
