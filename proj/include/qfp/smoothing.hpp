#pragma once

// Smooth minorants of the region indicator: psi1 in the norm, psi2 in the
// character angle, their Mellin / Fourier data and truncation constants.

#include <complex>
#include <vector>

#include "qfp/hecke.hpp"

namespace qfp {

using cld = std::complex<long double>;

struct SmoothingParams {
    double eta = 0.05;
    double delta1 = 0;  // y x^-eta
    double delta2 = 0;  // phi x^-eta
    int r = 0;          // floor(2/eta) + 1

    static SmoothingParams make(double x, double y, double phi, double eta = 0.05);
    // delta1 < y/2 and delta2 < phi/2: both weights have a nonempty plateau
    bool has_plateau(double y, double phi) const { return delta1 < y / 2 && delta2 < phi / 2; }
};

struct TruncationParams {
    long long M = 0;  // floor(x^eta / delta2) + 1
    double T1 = 0;    // x^(1+eta) / delta1
    double T0 = 0;    // exp(log^{1/3} x)

    static TruncationParams make(double x, const SmoothingParams& sp);
};

// C-infinity step from 0 (u <= 0) to 1 (u >= 1), S(u) + S(1-u) = 1
long double smooth_step(long double u);

// psi1: 1 on [x - y + D1, x - D1], 0 outside [x - y, x]
class Psi1 {
public:
    Psi1(double x, double y, double delta1);
    long double operator()(long double t) const;
    long double integral() const { return y_ - d1_; }
    // Mellin transform int psi1(t) t^(s-1) dt
    cld mellin(cld s) const;
    // mellin at sigma + i (t0 + k h), k = 0 .. count-1, on one fixed set of nodes
    std::vector<cld> mellin_line(long double sigma, long double t0, long double h, std::size_t count) const;
    double x() const { return x_; }
    double y() const { return y_; }
    double delta1() const { return d1_; }

private:
    double x_, y_, d1_;
    cld ramp_integral(long double a, long double b, cld s, bool rising) const;
};

// psi2: 2 pi periodic; indicator of [phi0 + D2/2, phi0 + phi - D2/2] convolved
// with r boxes of width D2/r.
class Psi2 {
public:
    Psi2(double phi0, double phi, double delta2, int r);
    long double operator()(long double t) const;
    // (1/2pi) int_0^{2pi} psi2(t) e^{-imt} dt
    cld coeff(long long m) const;
    long double mean() const;  // coeff(0), exactly (phi - D2)/2pi
    // min(phi, 2/(pi|m|), 2/(pi|m|) (2r/(|m| D2))^r)
    long double coeff_bound(long long m) const;
    // Fourier partial sum over |m| <= M
    long double partial_sum(long double t, long long M) const;
    double phi0() const { return phi0_; }
    double phi() const { return phi_; }
    double delta2() const { return d2_; }
    int r() const { return r_; }

private:
    double phi0_, phi_, d2_;
    int r_;
};

// psi1(N) psi2(arg)
long double Psi(const Psi1& p1, const Psi2& p2, long double norm, long double arg);

// psi1(N(A)) psi2(arg lambda(A))
long double Psi(const QuadraticField& K, const IdealClassContext& ctx, const Ideal& A, const Psi1& p1, const Psi2& p2);

// max over sample angles of |psi2(t) - sum_{|m| <= M} c_m e^{imt}|
long double fourier_truncation_error(const Psi2& p2, long long M, const std::vector<long double>& samples);

// CDF of the sum of k independent U(0,1), stable for large k
long double irwin_hall_cdf(int k, long double x);

}  // namespace qfp
