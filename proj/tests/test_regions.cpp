#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qfp/hecke.hpp"
#include "qfp/regions.hpp"

using namespace qfp;

namespace {

constexpr long double pi = std::numbers::pi_v<long double>;

long double dist_turn(long double a, long double b) {
    long double d = std::fabs(a - b);
    return std::min(d, 1 - d);
}

}  // namespace

// ---------------------------------------------------------------------------
// hecke_chars
// ---------------------------------------------------------------------------
TEST_CASE("mu_imaginary examples") {
    const QuadraticField K = make_field(-1);
    CHECK(std::fabs(mu_imaginary(K, from_ab(K, 1, 1)).arg() - pi) < 1e-15L);
    CHECK(mu_imaginary(K, QuadraticInt{0, 1}).turn == 0);
    const auto v = mu_imaginary(K, from_ab(K, 2, 1)).value();
    CHECK(std::fabs(v.real() - (-7.0L / 25)) < 1e-15L);
    CHECK(std::fabs(v.imag() - 24.0L / 25) < 1e-15L);
    CHECK_THROWS(mu_imaginary(K, QuadraticInt{0, 0}));
}

TEST_CASE("mu_real examples") {
    const QuadraticField K = make_field(2);
    CHECK(dist_turn(mu_real(K, from_ab(K, 0, 1)).turn, 0) < 1e-18L);
    // mpmath: log((3+sqrt2)/(3-sqrt2)) / (2 log(1+sqrt2))
    const long double F = F_real(K, from_ab(K, 3, 1));
    CHECK(std::fabs(F - 0.5807691796445038L) < 1e-15L);
    const auto a = from_ab(K, 3, 1);
    const auto b = mul(K, K.fundamental_unit, a);
    CHECK(dist_turn(mu_real(K, a).turn, mu_real(K, b).turn) < 1e-15L);
}

TEST_CASE("character well-definedness and multiplicativity") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> dist(-400, 400);
    for (i64 d : {-1, -3, -5, 2, 3, 5}) {
        const QuadraticField K = make_field(d);
        for (int i = 0; i < 300; ++i) {
            const QuadraticInt g = from_basis(K, dist(rng), dist(rng));
            if (norm(K, g) == 0) continue;
            const long double t = mu(K, g).turn;
            REQUIRE(dist_turn(mu(K, neg(g)).turn, t) < 1e-13L);
            if (K.is_real()) {
                for (i64 k : {-3, -2, -1, 1, 2, 3}) REQUIRE(dist_turn(mu(K, unit_mul(K, g, k)).turn, t) < 1e-13L);
            } else if (K.w == 4) {
                REQUIRE(dist_turn(mu(K, mul(K, g, QuadraticInt{0, 1})).turn, t) < 1e-13L);
            } else if (K.w == 6) {
                REQUIRE(dist_turn(mu(K, mul(K, g, QuadraticInt{1, 1})).turn, t) < 1e-13L);
            }
            const QuadraticInt h = from_basis(K, dist(rng), dist(rng));
            if (norm(K, h) == 0) continue;
            const long double th = mu(K, h).turn, tgh = mu(K, mul(K, g, h)).turn;
            REQUIRE(dist_turn(frac_turn(t + th), tgh) < 1e-13L);
            if (K.is_imaginary()) {
                // arg mu = w arg a
                const auto z = embed_complex(K, g);
                REQUIRE(dist_turn(frac_turn(K.w * std::atan2(z.imag(), z.real()) / (2 * pi)), t) < 1e-13L);
            }
        }
    }
}

TEST_CASE("lambda^m") {
    const QuadraticField K = make_field(-1);
    const auto ctx = principal_class_context(K);
    const Ideal A = principal_ideal(K, from_ab(K, 2, 1));
    CHECK(lambda_m(K, ctx, A, 0).turn == 0);
    const auto v = lambda_m(K, ctx, A, 1).value();
    CHECK(std::fabs(v.real() + 7.0L / 25) < 1e-15L);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> m_dist(-50, 50);
    const auto primes = enumerate_prime_ideals(K, nullptr, 2, 3000);
    for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
        const i64 m = m_dist(rng), m2 = m_dist(rng);
        const Ideal& a = primes[i].ideal;
        const Ideal& b = primes[i + 1].ideal;
        const long double lab = lambda_m(K, ctx, ideal_mul(K, a, b), m).turn;
        REQUIRE(dist_turn(frac_turn(lambda_m(K, ctx, a, m).turn + lambda_m(K, ctx, b, m).turn), lab) < 1e-12L);
        REQUIRE(dist_turn(frac_turn(lambda_m(K, ctx, a, m).turn + lambda_m(K, ctx, a, m2).turn),
                          lambda_m(K, ctx, a, m + m2).turn) < 1e-12L);
    }
    // large m reduces without losing the angle
    const CharacterValue c{0.123456789012345678L};
    CHECK(dist_turn(power(c, 1000000).turn, frac_turn(0.123456789012345678L * 1000000)) < 1e-12L);
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------
TEST_CASE("contains_ideal examples") {
    const QuadraticField K = make_field(-1);
    const auto ctx = principal_class_context(K);
    const Ideal A = principal_ideal(K, from_ab(K, 1, 1));
    CHECK(contains_ideal(RegionSpec{2.5, 1, static_cast<double>(pi) - 0.1, 0.2}, K, ctx, A));
    CHECK(!contains_ideal(RegionSpec{2.5, 1, 0, 0.1}, K, ctx, A));
    CHECK(contains_ideal(RegionSpec{2.5, 1, 0, 2 * std::numbers::pi - 1e-9}, K, ctx, A));
    CHECK(!contains_ideal(RegionSpec{1.5, 1, 0, 2 * std::numbers::pi - 1e-9}, K, ctx, A));
}

TEST_CASE("half-open arcs partition the circle") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    for (int i = 0; i < 10000; ++i) {
        const long double t = u(rng);
        int hits = 0;
        for (int k = 0; k < 7; ++k) hits += angle_in_arc(t, k * 2 * pi / 7, 2 * pi / 7);
        REQUIRE(hits == 1);
    }
    CHECK(angle_in_arc(0.0L, 0.0L, 0.1L));
    CHECK(!angle_in_arc(0.1L, 0.0L, 0.1L));
}

TEST_CASE("expected_prime_count") {
    const RegionSpec R = RegionSpec::theorem(1e7, 0);
    CHECK(expected_prime_count(R, 1) == doctest::Approx(318.1898129267349869).epsilon(1e-12));
    CHECK(expected_prime_count(R, 2) == doctest::Approx(318.1898129267349869 / 2).epsilon(1e-12));
    const RegionSpec full{1e7, 1e7, 0, 2 * std::numbers::pi};
    CHECK(expected_prime_count(full, 1) == doctest::Approx(2 * std::numbers::pi * 1e7 / std::log(1e7)));
}

TEST_CASE("slope examples") {
    const QuadraticField K = make_field(2);
    const auto s0 = sector_slopes_simple(2, 0, 0.1L, K.log_eps);
    CHECK(s0.tanh_lo == 0);
    const auto s1 = sector_slopes_simple(2, 1, 0.1L, K.log_eps);
    CHECK(std::fabs(s1.tanh_lo - 0.5L) < 1e-15L);
    const auto sinf = sector_slopes_simple(2, 40, 0.1L, K.log_eps);
    CHECK(std::fabs(sinf.tanh_lo - 1 / std::sqrt(2.0L)) < 1e-15L);

    const QuadForm f{1, 0, -2};
    for (long double w : {-1.3L, -0.2L, 0.0L, 0.4L, 1.0L, 2.5L}) {
        const auto g = sector_slopes_general(f, w, 0.1L, K.log_eps);
        const auto s = sector_slopes_simple(2, w, 0.1L, K.log_eps);
        CHECK(std::fabs(-g.s1 - s.tanh_lo) < 1e-15L);
        CHECK(std::fabs(-g.s2 - s.tanh_hi) < 1e-15L);
        if (w != 0) CHECK(std::fabs(-g.c1 - s.coth_lo) < 1e-12L);
    }
    const auto g = sector_slopes_general(f, 50, 0.1L, K.log_eps);
    CHECK(std::fabs(g.asymptotes[0] - 1 / std::sqrt(2.0L)) < 1e-15L);
    CHECK(std::fabs(g.asymptotes[1] + 1 / std::sqrt(2.0L)) < 1e-15L);
    CHECK(std::fabs(g.s1 - g.asymptotes[1]) < 1e-15L);
}

TEST_CASE("F homogeneity and examples") {
    const QuadraticField K = make_field(2);
    const QuadForm f{1, 0, -2};
    CHECK(form_F(f, K.log_eps, i128{1}, i128{0}) == 0);
    CHECK(std::fabs(std::fabs(form_F(f, K.log_eps, i128{3}, i128{1})) - 0.5807691796445038L) < 1e-15L);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1000, 1000);
    for (int i = 0; i < 10000; ++i) {
        const long double xi = u(rng), eta = u(rng);
        if (std::fabs(f.eval(xi, eta)) < 1e-3L) continue;
        const long double F = form_F(f, K.log_eps, xi, eta);
        for (long double t : {2.0L, -1.0L, 0.37L, 1e3L}) REQUIRE(std::fabs(form_F(f, K.log_eps, t * xi, t * eta) - F) < 1e-10L);
    }
}

TEST_CASE("sector equivalence: F window vs slope lines") {
    for (const QuadForm f : {QuadForm{1, 0, -2}, QuadForm{1, 1, -1}, QuadForm{2, 3, -1}, QuadForm{1, 0, -3}}) {
        const i128 D = f.disc();
        long double log_eps;
        {
            // eps for the field of discriminant D
            i64 d = static_cast<i64>(D % 4 == 0 ? D / 4 : D);
            log_eps = make_field(d).log_eps;
        }
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> u(-1000, 1000), w(-2, 2), ph(0.01, 0.8);
        int checked = 0;
        for (int i = 0; i < 10000; ++i) {
            const long double xi = std::round(u(rng)), eta = std::round(u(rng));
            if (f.eval(xi, eta) == 0) continue;
            const long double omega = w(rng), phi = ph(rng);
            const long double F = form_F(f, log_eps, xi, eta);
            if (std::fabs(F - omega) < 1e-9L || std::fabs(F - omega - phi) < 1e-9L) continue;
            const bool byF = F >= omega && F <= omega + phi;
            REQUIRE(byF == in_sector_by_slopes(f, omega, phi, log_eps, xi, eta));
            ++checked;
        }
        CHECK(checked > 9900);
    }
}

TEST_CASE("lattice_points_in_S matches brute force") {
    const QuadraticField K = make_field(2);
    const QuadForm f{1, 0, -2};
    const auto pts = lattice_points_in_S(FRegionSpec{9, 8, -1, 2}, f, K.log_eps);
    bool has31 = false;
    for (auto [m, n] : pts) has31 |= (m == 3 && n == 1);
    CHECK(has31);
    CHECK(lattice_points_in_S(FRegionSpec{9, 0.5, 0.3, 0.01}, f, K.log_eps).empty());

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> X(10, 500), Y(0.01, 1), W(-1, 1), P(0.005, 0.5);
    for (const QuadForm g : {QuadForm{1, 0, -2}, QuadForm{1, 1, -1}, QuadForm{2, 3, -1}}) {
        const i128 D = g.disc();
        const long double le = make_field(static_cast<i64>(D % 4 == 0 ? D / 4 : D)).log_eps;
        for (int trial = 0; trial < 20; ++trial) {
            const double x = X(rng);
            const FRegionSpec S{x, x * Y(rng), W(rng), P(rng)};
            for (int comp : {1, 2}) {
                auto got = lattice_points_in_S(S, g, le, comp);
                std::set<LatticePoint> a(got.begin(), got.end());
                REQUIRE(a.size() == got.size());
                // |sigma_i| <= sqrt(a x) exp(|F| L) on the wedge
                std::set<LatticePoint> b;
                const long double s = std::sqrt(to_ld(g.a) * x) * std::exp(1.5L * le);
                const i64 B = static_cast<i64>(2 * s * (1 + to_ld(abs128(g.b))) / std::sqrt(to_ld(D))) + 2;
                for (i64 n = -B; n <= B; ++n) {
                    for (i64 m = -B; m <= B; ++m) {
                        if (in_S(S, g, le, m, n, comp)) b.insert({m, n});
                    }
                }
                REQUIRE(a == b);
            }
        }
    }
}

TEST_CASE("definite sector enumeration matches brute force") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> X(10, 20000), Y(0.01, 1), A(-4, 4), Wd(0.01, 3.0);
    for (const QuadForm g : {QuadForm{1, 0, 1}, QuadForm{1, 0, 5}, QuadForm{2, 2, 3}, QuadForm{1, 1, 1}}) {
        for (int trial = 0; trial < 50; ++trial) {
            const double x = X(rng), y = x * Y(rng), alpha = A(rng), width = Wd(rng);
            auto got = lattice_points_in_sector(g, x, y, alpha, width);
            std::set<LatticePoint> a(got.begin(), got.end());
            REQUIRE(a.size() == got.size());
            std::set<LatticePoint> b;
            const i64 B = static_cast<i64>(2 * std::sqrt(x)) + 2;
            for (i64 n = -B; n <= B; ++n)
                for (i64 m = -B; m <= B; ++m)
                    if (in_sector(g, x, y, alpha, width, m, n)) b.insert({m, n});
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("S is antipodally symmetric") {
    const QuadraticField K = make_field(2);
    const QuadForm f{1, 0, -2};
    const FRegionSpec S{5000, 2000, 0.2, 0.3};
    auto s1 = lattice_points_in_S(S, f, K.log_eps, 1);
    auto s2 = lattice_points_in_S(S, f, K.log_eps, 2);
    REQUIRE(s1.size() == s2.size());
    for (auto [m, n] : s1) CHECK(in_S(S, f, K.log_eps, -m, -n, 2));
}
