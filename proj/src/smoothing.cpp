#include "qfp/smoothing.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfp {

namespace {

constexpr long double pi = std::numbers::pi_v<long double>;
constexpr long double two_pi = 2 * pi;

using GL = boost::math::quadrature::gauss<long double, 20>;

// composite Gauss-Legendre of g over [a, b] with `panels` equal panels
template <class G>
cld gl_composite(const G& g, long double a, long double b, int panels) {
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    const long double h = (b - a) / panels;
    cld total = 0;
    for (int p = 0; p < panels; ++p) {
        const long double mid = a + (p + 0.5L) * h, half = h / 2;
        cld acc = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == 0) {
                acc += ws[i] * g(mid);
            } else {
                acc += ws[i] * (g(mid - half * xs[i]) + g(mid + half * xs[i]));
            }
        }
        total += acc * half;
    }
    return total;
}

long double sinc(long double z) {
    if (std::fabs(z) < 1e-8L) return 1 - z * z / 6;
    return std::sin(z) / z;
}

}  // namespace

// ---------------------------------------------------------------------------
// parameters
// ---------------------------------------------------------------------------
SmoothingParams SmoothingParams::make(double x, double y, double phi, double eta) {
    if (!(eta > 0)) throw std::invalid_argument("SmoothingParams: need eta > 0");
    SmoothingParams p;
    p.eta = eta;
    p.delta1 = y * std::pow(x, -eta);
    p.delta2 = phi * std::pow(x, -eta);
    p.r = static_cast<int>(std::floor(2 / eta)) + 1;
    // x^eta <= 2 makes delta > y/2: the weights stay valid but lose their plateau
    if (!(p.delta1 < y)) throw std::invalid_argument("SmoothingParams: need delta1 < y");
    if (!(p.delta2 < phi)) throw std::invalid_argument("SmoothingParams: need delta2 < phi");
    return p;
}

TruncationParams TruncationParams::make(double x, const SmoothingParams& sp) {
    TruncationParams t;
    t.M = static_cast<long long>(std::floor(std::pow(x, sp.eta) / sp.delta2)) + 1;
    t.T1 = std::pow(x, 1 + sp.eta) / sp.delta1;
    t.T0 = std::exp(std::cbrt(std::log(x)));
    return t;
}

// ---------------------------------------------------------------------------
// psi1
// ---------------------------------------------------------------------------
long double smooth_step(long double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    // f(u) / (f(u) + f(1-u)), f(u) = exp(-1/u)
    const long double e = 1 / u - 1 / (1 - u);
    if (e > 11000) return 0;
    return 1 / (1 + std::exp(e));
}

Psi1::Psi1(double x, double y, double delta1) : x_(x), y_(y), d1_(delta1) {
    if (!(delta1 > 0 && delta1 < y && y <= x)) throw std::invalid_argument("Psi1: need 0 < delta1 < y <= x");
}

long double Psi1::operator()(long double t) const {
    return smooth_step((t - (x_ - y_)) / d1_) - smooth_step((t - (x_ - d1_)) / d1_);
}

cld Psi1::ramp_integral(long double a, long double b, cld s, bool rising) const {
    auto g = [&](long double t) -> cld {
        const long double w = rising ? smooth_step((t - a) / (b - a)) : 1 - smooth_step((t - a) / (b - a));
        return w * std::exp((s - 1.0L) * std::log(t));
    };
    // phase change across the ramp sets the starting resolution
    const long double phase = std::fabs(s.imag()) * std::log(b / a);
    int panels = 2 + static_cast<int>(phase);
    // size of the integral of |t^(s-1)| over the ramp
    const long double scale = (b - a) * std::max(std::pow(a, s.real() - 1), std::pow(b, s.real() - 1));
    cld prev = gl_composite(g, a, b, panels);
    for (int iter = 0; iter < 12; ++iter) {
        panels *= 2;
        const cld cur = gl_composite(g, a, b, panels);
        if (std::abs(cur - prev) <= 1e-13L * scale) return cur;
        prev = cur;
    }
    throw std::runtime_error("Psi1::mellin: quadrature did not converge");
}

cld Psi1::mellin(cld s) const {
    const long double a = x_ - y_ + d1_, b = x_ - d1_;
    // with delta1 > y/2 the ramps overlap; the plateau term is then negative and
    // the ramp integrals still add up to int psi1 t^(s-1)
    cld plateau;
    if (std::abs(s) < 1e-30L) {
        plateau = std::log(b / a);
    } else {
        plateau = (std::exp(s * std::log(b)) - std::exp(s * std::log(a))) / s;
    }
    return plateau + ramp_integral(x_ - y_, x_ - y_ + d1_, s, true) + ramp_integral(x_ - d1_, x_, s, false);
}

std::vector<cld> Psi1::mellin_line(long double sigma, long double t0, long double h, std::size_t count) const {
    std::vector<cld> out(count);
    if (count == 0) return out;
    const long double t_max = std::max(std::fabs(t0), std::fabs(t0 + (count - 1) * h));
    const long double a = x_ - y_ + d1_, b = x_ - d1_;
    // ramp nodes with weight and log, about one radian of phase per panel
    struct Node {
        long double w, lu;
    };
    std::vector<Node> nodes;
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    auto add_ramp = [&](long double lo, long double hi, bool rising) {
        const long double phase = t_max * std::log(hi / lo);
        const int panels = std::max(16, static_cast<int>(std::ceil(phase)));
        const long double ph = (hi - lo) / panels, half = ph / 2;
        auto push = [&](long double u, long double wt) {
            const long double st = smooth_step((u - lo) / (hi - lo));
            const long double v = rising ? st : 1 - st;
            if (v == 0) return;
            nodes.push_back({wt * half * v * std::exp((sigma - 1) * std::log(u)), std::log(u)});
        };
        for (int p = 0; p < panels; ++p) {
            const long double mid = lo + (p + 0.5L) * ph;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (xs[i] == 0) {
                    push(mid, ws[i]);
                } else {
                    push(mid - half * xs[i], ws[i]);
                    push(mid + half * xs[i], ws[i]);
                }
            }
        }
    };
    add_ramp(x_ - y_, x_ - y_ + d1_, true);
    add_ramp(x_ - d1_, x_, false);
    // phasors e^{i t log u}, stepped by e^{i h log u} and re-anchored every 256 steps
    std::vector<cld> z(nodes.size()), step(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) step[j] = std::polar(1.0L, h * nodes[j].lu);
    const long double la = std::log(a), lb = std::log(b);
    for (std::size_t k = 0; k < count; ++k) {
        const long double t = t0 + k * h;
        if (k % 256 == 0) {
            for (std::size_t j = 0; j < nodes.size(); ++j) z[j] = std::polar(1.0L, t * nodes[j].lu);
        }
        long double re = 0, im = 0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            re += nodes[j].w * z[j].real();
            im += nodes[j].w * z[j].imag();
            z[j] *= step[j];
        }
        const cld s(sigma, t);
        cld plateau;
        if (std::abs(s) < 1e-30L) {
            plateau = lb - la;
        } else {
            plateau = (std::exp(s * lb) - std::exp(s * la)) / s;
        }
        out[k] = plateau + cld(re, im);
    }
    return out;
}

// ---------------------------------------------------------------------------
// psi2
// ---------------------------------------------------------------------------
long double irwin_hall_cdf(int k, long double x) {
    if (x <= 0) return 0;
    if (x >= k) return 1;
    if (x > k / 2.0L) return 1 - irwin_hall_cdf(k, k - x);
    // F_k(x) = sum_j M_{k+1}(x - j), M_n the cardinal B-spline of order n
    const int J = static_cast<int>(std::floor(x));
    const int n_pts = J + k + 2;
    std::vector<long double> M(n_pts), next(n_pts);
    for (int j = 0; j < n_pts; ++j) {
        const long double t = x - j;
        M[j] = (t >= 0 && t < 1) ? 1 : 0;
    }
    for (int n = 2; n <= k + 1; ++n) {
        for (int j = 0; j < n_pts; ++j) {
            const long double t = x - j;
            const long double left = M[j];
            const long double right = j + 1 < n_pts ? M[j + 1] : 0;
            next[j] = (t * left + (n - t) * right) / (n - 1);
            if (t < 0 || t > n) next[j] = 0;
        }
        std::swap(M, next);
    }
    long double F = 0;
    for (int j = 0; j <= J; ++j) F += M[j];
    return std::clamp(F, 0.0L, 1.0L);
}

Psi2::Psi2(double phi0, double phi, double delta2, int r) : phi0_(phi0), phi_(phi), d2_(delta2), r_(r) {
    if (!(delta2 > 0 && delta2 < phi)) throw std::invalid_argument("Psi2: need 0 < delta2 < phi");
    if (!(phi < 2 * std::numbers::pi)) throw std::invalid_argument("Psi2: need phi < 2 pi");
    if (r < 1) throw std::invalid_argument("Psi2: need r >= 1");
}

long double Psi2::operator()(long double t) const {
    const long double centre = phi0_ + phi_ / 2.0L;
    long double u = std::fmod(t - centre, two_pi);
    if (u < -pi) u += two_pi;
    if (u >= pi) u -= two_pi;
    const long double half = (phi_ - d2_) / 2.0L;  // I = [-half, half] around the centre
    const long double h = d2_ / r_;
    // t - U in I with U = h (S - r/2), S ~ Irwin-Hall(r)
    const long double s_hi = (u + half) / h + r_ / 2.0L;
    const long double s_lo = (u - half) / h + r_ / 2.0L;
    return std::clamp(irwin_hall_cdf(r_, s_hi) - irwin_hall_cdf(r_, s_lo), 0.0L, 1.0L);
}

long double Psi2::mean() const { return (phi_ - d2_) / two_pi; }

cld Psi2::coeff(long long m) const {
    if (m == 0) return mean();
    const long double mm = static_cast<long double>(m);
    const long double len = phi_ - d2_, h = d2_ / r_;
    const long double centre = phi0_ + phi_ / 2.0L;
    const long double mag = (2 * std::sin(mm * len / 2) / mm) * std::pow(sinc(mm * h / 2), r_) / two_pi;
    const long double ph = -mm * centre;
    return {mag * std::cos(ph), mag * std::sin(ph)};
}

long double Psi2::coeff_bound(long long m) const {
    if (m == 0) return phi_;
    const long double am = std::fabs(static_cast<long double>(m));
    const long double b2 = 2 / (pi * am);
    const long double b3 = b2 * std::pow(2 * r_ / (am * d2_), r_);
    return std::min({static_cast<long double>(phi_), b2, b3});
}

long double Psi2::partial_sum(long double t, long long M) const {
    const long double len = phi_ - d2_, h = d2_ / r_;
    const long double u = t - (phi0_ + phi_ / 2.0L);
    long double s = 0;
    // small terms first
    for (long long m = M; m >= 1; --m) {
        const long double mm = static_cast<long double>(m);
        s += (2 * std::sin(mm * len / 2) / mm) * std::pow(sinc(mm * h / 2), r_) * std::cos(mm * u);
    }
    return mean() + 2 * s / two_pi;
}

long double Psi(const Psi1& p1, const Psi2& p2, long double norm, long double arg) { return p1(norm) * p2(arg); }

long double Psi(const QuadraticField& K, const IdealClassContext& ctx, const Ideal& A, const Psi1& p1, const Psi2& p2) {
    const long double v1 = p1(to_ld(A.norm()));
    if (v1 == 0) return 0;
    return v1 * p2(lambda_m(K, ctx, A, 1).arg());
}

long double fourier_truncation_error(const Psi2& p2, long long M, const std::vector<long double>& samples) {
    long double worst = 0;
    for (long double t : samples) worst = std::max(worst, std::fabs(p2(t) - p2.partial_sum(t, M)));
    return worst;
}

}  // namespace qfp
