#include "qfp/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qfp {

namespace {

constexpr long double pi = std::numbers::pi_v<long double>;

struct Hit {
    bool found = false;
    i64 m = 0, n = 0;
    u64 p = 0;
    long double dist2 = 0;
};

// nearest coprime point with Q prime; ties broken by (m, n)
Hit nearest_prime(std::vector<LatticePoint>& pts, const QuadForm& f, long double s, long double t) {
    std::vector<std::pair<long double, std::size_t>> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const long double dm = pts[i][0] - s, dn = pts[i][1] - t;
        order[i] = {dm * dm + dn * dn, i};
    }
    std::sort(order.begin(), order.end(), [&](const auto& A, const auto& B) {
        if (A.first != B.first) return A.first < B.first;
        return pts[A.second] < pts[B.second];
    });
    Hit h;
    for (const auto& [d2, i] : order) {
        const auto [m, n] = pts[i];
        if (gcd128(m, n) != 1) continue;
        const i128 q = f.eval(static_cast<i128>(m), static_cast<i128>(n));
        if (q <= 1 || q > static_cast<i128>(~u64{0} >> 1)) continue;
        if (!is_prime(static_cast<u64>(q))) continue;
        h = {true, m, n, static_cast<u64>(q), d2};
        return h;
    }
    return h;
}

SearchResult ball_search(long double s, long double t, const FormFieldLink& L, const SearchParams& P) {
    SearchResult r;
    r.ball = true;
    r.x = static_cast<double>(L.form.eval(s, t));
    for (long double rad = 2; rad <= (1 << 22); rad *= 2) {
        std::vector<LatticePoint> pts;
        const i64 m0 = static_cast<i64>(std::floor(s - rad)), m1 = static_cast<i64>(std::ceil(s + rad));
        const i64 n0 = static_cast<i64>(std::floor(t - rad)), n1 = static_cast<i64>(std::ceil(t + rad));
        for (i64 m = m0; m <= m1; ++m) {
            for (i64 n = n0; n <= n1; ++n) {
                const long double dm = m - s, dn = n - t;
                if (dm * dm + dn * dn <= rad * rad) pts.push_back({m, n});
            }
        }
        r.candidates += pts.size();
        if (r.candidates > P.cap) break;
        const Hit h = nearest_prime(pts, L.form, s, t);
        if (h.found) {
            r.m = h.m;
            r.n = h.n;
            r.p = h.p;
            r.distance = std::sqrt(h.dist2);
            return r;
        }
        ++r.rounds;
    }
    throw SearchError("ball search found no represented prime near (" + std::to_string(static_cast<double>(s)) + ", " +
                      std::to_string(static_cast<double>(t)) + ")");
}

std::string stats(const SearchResult& r, long double s, long double t) {
    return "target (" + std::to_string(static_cast<double>(s)) + ", " + std::to_string(static_cast<double>(t)) +
           "), rounds " + std::to_string(r.rounds) + ", last y " + std::to_string(r.y) + ", last phi " +
           std::to_string(r.phi) + ", candidates " + std::to_string(r.candidates);
}

long double line_angle(long double s, long double t, long double u0, long double u1) {
    return std::atan2(std::fabs(s * u1 - t * u0), std::fabs(s * u0 + t * u1));
}

}  // namespace

// ---------------------------------------------------------------------------
// the link
// ---------------------------------------------------------------------------
FormFieldLink FormFieldLink::make(const QuadForm& f) {
    if (f.a <= 0) throw std::invalid_argument("FormFieldLink: need a > 0 (got " + to_string(f) + ")");
    if (gcd128(gcd128(f.a, f.b), f.c) != 1) throw std::invalid_argument("FormFieldLink: form is not primitive");
    const i128 D = f.disc();
    if (D == 0 || is_square(D)) throw std::invalid_argument("FormFieldLink: discriminant is zero or a square");
    const i128 d = (D % 4 == 0) ? D / 4 : D;
    FormFieldLink L;
    L.form = f;
    L.field = make_field(static_cast<i64>(d));
    if (L.field.disc != D) {
        throw std::invalid_argument("FormFieldLink: discriminant " + qfp::to_string(D) + " is not fundamental");
    }
    const QuadraticInt gens[2] = {from_int(f.a), QuadraticInt{f.b, -1}};
    L.d = ideal_from_generators(L.field, gens);
    if (L.d.norm() != f.a) throw std::logic_error("FormFieldLink: N(d) != a");
    L.ctx = class_context_for_anchor(L.field, L.d);
    return L;
}

QuadraticInt FormFieldLink::f_elem(i128 m, i128 n) const {
    // (2 m a + n b - n sqrt D)/2
    return QuadraticInt{add_checked(mul_checked(mul_checked(2, m), form.a), mul_checked(n, form.b)), -n};
}

std::optional<std::array<i128, 2>> FormFieldLink::pair_of(const QuadraticInt& g) const {
    const i128 n = -g.v;
    const i128 num = sub_checked(g.u, mul_checked(n, form.b));
    if (num % (2 * form.a) != 0) return std::nullopt;
    return std::array<i128, 2>{num / (2 * form.a), n};
}

// ---------------------------------------------------------------------------
// correspondence
// ---------------------------------------------------------------------------
Correspondent coleman_correspond(const FormFieldLink& L, i64 m, i64 n) {
    if (gcd128(m, n) != 1) {
        throw std::invalid_argument("coleman_correspond: gcd(" + std::to_string(m) + ", " + std::to_string(n) + ") != 1");
    }
    Correspondent c;
    const i128 q = L.form.eval(static_cast<i128>(m), static_cast<i128>(n));
    c.element = L.f_elem(m, n);
    if (q <= 1 || q > static_cast<i128>(~u64{0} >> 1) || !is_prime(static_cast<u64>(q))) return c;
    // (f) conj(d) = p d conj(d) = p (a)
    const Ideal prod = ideal_mul(L.field, principal_ideal(L.field, c.element), ideal_conj(L.field, L.d));
    if (prod.content % L.form.a != 0) throw std::logic_error("coleman_correspond: (f) is not divisible by d");
    c.ideal = Ideal{prod.content / L.form.a, prod.n, prod.c};
    if (c.ideal.norm() != q) throw std::logic_error("coleman_correspond: N(p) != Q(m, n)");
    c.prime = true;
    c.p = static_cast<u64>(q);
    return c;
}

std::vector<LatticePoint> correspond_inverse(const FormFieldLink& L, const Ideal& P, i64 window) {
    const QuadraticField& K = L.field;
    const auto gen = principal_generator(K, ideal_mul(K, P, L.d));
    if (!gen) throw std::invalid_argument("correspond_inverse: p d is not principal");
    const i128 p = P.norm();
    std::vector<LatticePoint> out;
    if (window < 0) return out;
    auto take = [&](const QuadraticInt& g) {
        const auto mn = L.pair_of(g);
        if (!mn) return;
        const auto [m, n] = *mn;
        if (L.form.eval(m, n) != p) return;
        if (abs128(m) > window || abs128(n) > window) return;
        out.push_back({static_cast<i64>(m), static_cast<i64>(n)});
    };
    if (L.definite()) {
        QuadraticInt zeta{-2, 0};  // -1
        if (K.w == 4) zeta = QuadraticInt{0, 1};
        if (K.w == 6) zeta = QuadraticInt{1, 1};
        QuadraticInt g = *gen;
        for (int k = 0; k < K.w; ++k, g = mul(K, g, zeta)) {
            const auto mn = L.pair_of(g);
            if (!mn) continue;
            const auto [m, n] = *mn;
            const bool normalized = (K.disc == -4 || K.disc == -3) ? (m > 0 && n > 0) : (m > 0 || (m == 0 && n == 1));
            if (normalized) take(g);
        }
        return out;
    }
    const long double span = 2 * std::log(static_cast<long double>(window) + 2) + std::log(to_ld(L.form.a * p)) + 4;
    const i64 kmax = static_cast<i64>(std::ceil(span / K.log_eps)) + 1;
    for (i64 k = -kmax; k <= kmax; ++k) {
        try {
            const QuadraticInt g = unit_mul(K, *gen, k);
            take(g);
            take(neg(g));
        } catch (const OverflowError&) {
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LatticePoint unit_orbit_step(const FormFieldLink& L, i64 m, i64 n, i64 k) {
    if (L.definite()) throw std::invalid_argument("unit_orbit_step: definite form");
    const auto mn = L.pair_of(unit_mul(L.field, L.f_elem(m, n), k));
    if (!mn) throw std::logic_error("unit_orbit_step: image left the lattice");
    return {static_cast<i64>((*mn)[0]), static_cast<i64>((*mn)[1])};
}

long double F_value(const FormFieldLink& L, long double xi, long double eta) {
    if (L.definite()) throw std::invalid_argument("F_value: definite form");
    const long double q = L.form.eval(xi, eta);
    const long double scale = std::fabs(to_ld(L.form.a)) * (xi * xi + eta * eta) + std::fabs(to_ld(L.form.c)) * eta * eta;
    if (std::fabs(q) <= 1e-15L * scale) throw SingularError("F_value: (xi, eta) lies on an asymptote, Q = 0");
    return form_F(L.form, L.field.log_eps, xi, eta);
}

SectorCheck sector_validity(const FormFieldLink& L, long double s, long double t, long double delta) {
    if (L.definite()) throw std::invalid_argument("sector_validity: definite form has no asymptotes");
    if (s == 0 && t == 0) throw std::invalid_argument("sector_validity: origin");
    const long double r = std::sqrt(to_ld(L.form.disc())), b = to_ld(L.form.b), a2 = 2 * to_ld(L.form.a);
    SectorCheck c;
    c.angle1 = line_angle(s, t, -b + r, a2);
    c.angle2 = line_angle(s, t, -b - r, a2);
    c.valid = c.angle1 >= delta && c.angle2 >= delta;
    return c;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------
SearchResult prime_near_definite(long double s, long double t, const FormFieldLink& L, const SearchParams& P) {
    if (!L.definite()) throw std::invalid_argument("prime_near_definite: form is indefinite");
    const long double Q0 = L.form.eval(s, t);
    if (Q0 < P.x_floor) return ball_search(s, t, L, P);
    SearchResult r;
    long double y = std::pow(Q0, static_cast<long double>(P.theta1));
    long double phi = std::pow(Q0, -static_cast<long double>(P.theta2));
    const long double centre = form_arg(L.form, s, t);
    for (int round = 0; round <= P.max_rounds; ++round) {
        y = std::min(y, 2 * Q0);
        const long double width = std::min(phi / L.field.w, 0.999L * pi);
        r.x = static_cast<double>(Q0 + y / 2);
        r.y = static_cast<double>(y);
        r.phi = static_cast<double>(phi);
        r.rounds = round;
        auto pts = lattice_points_in_sector(L.form, Q0 + y / 2, y, centre - width / 2, width, P.cap);
        r.candidates += pts.size();
        const Hit h = nearest_prime(pts, L.form, s, t);
        if (h.found) {
            r.m = h.m;
            r.n = h.n;
            r.p = h.p;
            r.distance = std::sqrt(h.dist2);
            r.bound_ray = y / std::sqrt(r.x);
            r.bound_hyp = phi * std::sqrt(r.x);
            return r;
        }
        if (round % 2 == 0) {
            y *= 2;
        } else {
            phi *= 2;
        }
    }
    throw SearchError("prime_near_definite: retry budget exhausted; " + stats(r, s, t));
}

SearchResult prime_near_indefinite(long double s, long double t, const FormFieldLink& L, const SearchParams& P) {
    if (L.definite()) throw std::invalid_argument("prime_near_indefinite: form is definite");
    const long double Q0 = L.form.eval(s, t);
    if (!(Q0 > 0)) throw std::invalid_argument("prime_near_indefinite: need Q(s, t) > 0");
    const SectorCheck sc = sector_validity(L, s, t, P.delta);
    if (!sc.valid) {
        throw std::invalid_argument("prime_near_indefinite: angle to an asymptote is below delta = " +
                                    std::to_string(P.delta) + " (angles " +
                                    std::to_string(static_cast<double>(sc.angle1)) + ", " +
                                    std::to_string(static_cast<double>(sc.angle2)) + ")");
    }
    if (Q0 < P.x_floor) return ball_search(s, t, L, P);
    const long double omega = F_value(L, s, t);
    const long double sigma1 = to_ld(L.form.a) * s + t * (to_ld(L.form.b) - std::sqrt(to_ld(L.form.disc()))) / 2;
    const int component = sigma1 > 0 ? 1 : 2;
    SearchResult r;
    long double y = std::pow(Q0, static_cast<long double>(P.theta1));
    long double phi = std::pow(Q0, -static_cast<long double>(P.theta2));
    for (int round = 0; round <= P.max_rounds; ++round) {
        y = std::min(y, 2 * Q0);
        r.x = static_cast<double>(Q0 + y / 2);
        r.y = static_cast<double>(y);
        r.phi = static_cast<double>(phi);
        r.rounds = round;
        const FRegionSpec S{r.x, r.y, static_cast<double>(omega - phi / 2), r.phi};
        auto pts = lattice_points_in_S(S, L.form, L.field.log_eps, component, P.cap);
        r.candidates += pts.size();
        const Hit h = nearest_prime(pts, L.form, s, t);
        if (h.found) {
            r.m = h.m;
            r.n = h.n;
            r.p = h.p;
            r.distance = std::sqrt(h.dist2);
            r.bound_ray = y / std::sqrt(r.x);
            r.bound_hyp = phi * std::sqrt(r.x);
            return r;
        }
        if (round % 2 == 0) {
            y *= 2;
        } else {
            phi *= 2;
        }
    }
    throw SearchError("prime_near_indefinite: retry budget exhausted; " + stats(r, s, t));
}

SearchResult prime_near(long double s, long double t, const FormFieldLink& L, const SearchParams& P) {
    return L.definite() ? prime_near_definite(s, t, L, P) : prime_near_indefinite(s, t, L, P);
}

double fitted_exponent(const std::vector<long double>& norms, const std::vector<long double>& dists) {
    if (norms.size() != dists.size() || norms.size() < 2) throw std::invalid_argument("fitted_exponent: need >= 2 points");
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const long double k = static_cast<long double>(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        const long double X = std::log(norms[i]), Y = std::log(std::max(dists[i], 1.0L));
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    const long double den = k * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("fitted_exponent: all norms equal");
    return static_cast<double>((k * sxy - sx * sy) / den);
}

}  // namespace qfp
