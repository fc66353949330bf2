#include "doctest.h"

#include <cmath>
#include <random>

#include "qfp/field.hpp"
#include "qfp/ideal.hpp"

using namespace qfp;

namespace {

// brute force: smallest unit > 1 by scanning v (a unit (u+v sqrt D)/2 > 1 has u, v > 0)
QuadraticInt brute_unit(i64 d) {
    const QuadraticField K = make_field(d);
    for (i128 v = 1; v < 2000000; ++v) {
        for (i128 s : {-4, 4}) {
            const i128 u2 = K.disc * v * v + s;
            if (u2 <= 0 || !is_square(u2)) continue;
            const i128 u = isqrt128(u2);
            if (mod_floor(u - v * K.disc, 2) != 0) continue;
            return {u, v};
        }
    }
    return {0, 0};
}

}  // namespace

// ---------------------------------------------------------------------------
// arith
// ---------------------------------------------------------------------------
TEST_CASE("primality and sieve agree") {
    const auto ps = primes_up_to(100000);
    std::size_t k = 0;
    for (u64 n = 0; n <= 100000; ++n) {
        const bool in = k < ps.size() && ps[k] == n;
        if (in) ++k;
        REQUIRE(is_prime(n) == in);
    }
    const auto seg = primes_in_range(99000, 100000);
    std::size_t cnt = 0;
    for (u64 p : ps) cnt += p >= 99000;
    CHECK(seg.size() == cnt);
    CHECK(is_prime(18446744073709551557ULL));
    CHECK(!is_prime(3215031751ULL));
}

TEST_CASE("window factorizer reproduces n") {
    WindowFactorizer wf(1000000, 1010000);
    std::vector<PrimePower> f;
    for (u64 n = 1000000; n <= 1010000; ++n) {
        wf.factors_of(n, f);
        u64 prod = 1;
        for (auto [p, e] : f) {
            REQUIRE(is_prime(p));
            for (int i = 0; i < e; ++i) prod *= p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("sqrt_mod") {
    for (u64 p : primes_up_to(2000)) {
        if (p == 2) continue;
        for (u64 a = 1; a < p; a += 7) {
            if (powmod(a, (p - 1) / 2, p) != 1) continue;
            const u64 r = sqrt_mod(a, p);
            REQUIRE(mulmod(r, r, p) == a);
        }
    }
}

// ---------------------------------------------------------------------------
// field_core
// ---------------------------------------------------------------------------
TEST_CASE("make_field examples") {
    CHECK(make_field(-1).disc == -4);
    CHECK(make_field(-1).w == 4);
    CHECK(make_field(-3).disc == -3);
    CHECK(make_field(-3).w == 6);
    CHECK(make_field(-5).disc == -20);
    CHECK(make_field(-5).w == 2);
    CHECK_THROWS(make_field(0));
    CHECK_THROWS(make_field(1));
    CHECK_THROWS(make_field(8));
    CHECK_THROWS(make_field(-4));
}

TEST_CASE("w matches brute-force unit count") {
    for (i64 d = -1; d >= -200; --d) {
        if (!is_squarefree(d)) continue;
        const QuadraticField K = make_field(d);
        // u^2 - D v^2 = 4 with small u, v
        int count = 0;
        for (i128 u = -2; u <= 2; ++u)
            for (i128 v = -2; v <= 2; ++v)
                if (u * u - K.disc * v * v == 4) ++count;
        REQUIRE(count == K.w);
    }
}

TEST_CASE("fundamental units") {
    const QuadraticField K2 = make_field(2), K3 = make_field(3), K5 = make_field(5);
    CHECK(K2.fundamental_unit == from_ab(K2, 1, 1));
    CHECK(K3.fundamental_unit == from_ab(K3, 2, 1));
    CHECK(K5.fundamental_unit == QuadraticInt{1, 1});
    CHECK(K2.unit_norm == -1);
    CHECK(K3.unit_norm == 1);
    for (i64 d = 2; d <= 100; ++d) {
        if (!is_squarefree(d)) continue;
        INFO("d = " << d);
        REQUIRE(fundamental_unit(d) == brute_unit(d));
    }
}

TEST_CASE("embedding and norm examples") {
    const QuadraticField K = make_field(2);
    const QuadraticInt a = from_ab(K, 3, 1);
    CHECK(norm(K, a) == 7);
    auto [s1, s2] = embed_real(K, a);
    CHECK(std::fabs(s1 - 4.41421356237309505L) < 1e-15L);
    CHECK(std::fabs(s2 - 1.58578643762690495L) < 1e-15L);
    auto [o1, o2] = embed_real(K, from_int(1));
    CHECK(o1 == 1.0L);
    CHECK(o2 == 1.0L);
    const QuadraticField Ki = make_field(-1);
    const auto z = embed_complex(Ki, from_ab(Ki, 1, 1));
    CHECK(z.real() == 1.0L);
    CHECK(z.imag() == 1.0L);
    CHECK(norm(Ki, from_ab(Ki, 1, 1)) == 2);
}

TEST_CASE("norm multiplicativity and embedding products") {
    std::mt19937_64 rng(7);
    for (i64 d : {-1, -3, -5, -23, 2, 3, 5, 13, 94}) {
        const QuadraticField K = make_field(d);
        std::uniform_int_distribution<int> dist(-1000, 1000);
        for (int i = 0; i < 1000; ++i) {
            const QuadraticInt a = from_basis(K, dist(rng), dist(rng));
            const QuadraticInt b = from_basis(K, dist(rng), dist(rng));
            REQUIRE(norm(K, mul(K, a, b)) == norm(K, a) * norm(K, b));
            if (K.is_real() && norm(K, a) != 0) {
                auto [s1, s2] = embed_real(K, a);
                const long double n = to_ld(norm(K, a));
                REQUIRE(std::fabs(s1 * s2 - n) <= 1e-9L * std::fabs(n));
            }
        }
    }
}

TEST_CASE("checked arithmetic throws") {
    const QuadraticField K = make_field(2);
    QuadraticInt big = from_ab(K, i128{1} << 70, 1);
    CHECK_THROWS_AS(mul(K, big, big), OverflowError);
}

// ---------------------------------------------------------------------------
// forms
// ---------------------------------------------------------------------------
TEST_CASE("reduced forms and class numbers") {
    CHECK(reduced_forms(-20).size() == 2);
    CHECK(reduced_forms(-4).size() == 1);
    CHECK(reduced_forms(-23).size() == 3);
    CHECK(class_number(make_field(-5)) == 2);
    CHECK(class_number(make_field(-1)) == 1);
    CHECK(class_number(make_field(2)) == 1);
    CHECK(class_number(make_field(5)) == 1);
    CHECK_THROWS_AS(class_number(make_field(10)), UnsupportedError);
    CHECK_THROWS_AS(class_number(make_field(15)), UnsupportedError);
}

TEST_CASE("reduction tracks the transform") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dist(-50, 50);
    for (int i = 0; i < 2000; ++i) {
        const QuadForm f{1 + std::abs(dist(rng)), dist(rng), 0};
        QuadForm g{f.a, f.b, (f.b * f.b + 4 * 23 * 1) / (4 * f.a)};
        if (g.b * g.b - 4 * g.a * g.c >= 0) continue;
        const Reduction r = reduce_definite(g);
        REQUIRE(transform(g, r.M) == r.form);
        REQUIRE(r.M.det() == 1);
    }
}

// ---------------------------------------------------------------------------
// ideal_arith
// ---------------------------------------------------------------------------
TEST_CASE("split_prime examples") {
    const QuadraticField Ki = make_field(-1);
    auto five = split_prime(Ki, 5);
    REQUIRE(five.size() == 2);
    CHECK(five[0].split_type == SplitType::split);
    for (const auto& p : five) {
        REQUIRE(p.generator);
        CHECK(norm(Ki, *p.generator) == 5);
        CHECK(principal_ideal(Ki, *p.generator) == p.ideal);
    }
    const QuadraticInt g0 = *five[0].generator, g1 = *five[1].generator;
    CHECK(((g0 == from_ab(Ki, 2, 1) && g1 == from_ab(Ki, 1, 2)) || (g1 == from_ab(Ki, 2, 1) && g0 == from_ab(Ki, 1, 2))));
    auto two = split_prime(Ki, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].split_type == SplitType::ramified);
    CHECK(split_prime(Ki, 3)[0].split_type == SplitType::inert);

    const QuadraticField K2 = make_field(2);
    auto seven = split_prime(K2, 7);
    REQUIRE(seven.size() == 2);
    bool found = false;
    for (const auto& p : seven) {
        REQUIRE(p.generator);
        CHECK(std::abs(static_cast<long long>(norm(K2, *p.generator))) == 7);
        // 3 + sqrt 2 or its conjugate, up to units
        for (QuadraticInt t : {from_ab(K2, 3, 1), from_ab(K2, 3, -1)})
            if (principal_ideal(K2, t) == p.ideal) found = true;
    }
    CHECK(found);

    const QuadraticField K5 = make_field(-5);
    auto p2 = split_prime(K5, 2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].ideal == Ideal{1, 2, 1});
    CHECK(!p2[0].generator);
}

TEST_CASE("enumerate_prime_ideals examples") {
    const QuadraticField Ki = make_field(-1);
    std::vector<i128> norms;
    for (const auto& p : enumerate_prime_ideals(Ki, nullptr, 2, 20)) norms.push_back(p.norm());
    CHECK(norms == std::vector<i128>{2, 5, 5, 9, 13, 13, 17, 17});
    norms.clear();
    for (const auto& p : enumerate_prime_ideals(make_field(2), nullptr, 2, 10)) norms.push_back(p.norm());
    CHECK(norms == std::vector<i128>{2, 7, 7, 9});
    CHECK(enumerate_prime_ideals(Ki, nullptr, 15, 16).empty());
    CHECK_THROWS_AS(enumerate_prime_ideals(Ki, nullptr, 2, 100, 50), CapacityError);
}

TEST_CASE("splitting density near one half") {
    for (i64 d : {-1, -5, 2, 5, -23}) {
        const QuadraticField K = make_field(d);
        int split = 0, inert = 0;
        for (u64 p : primes_up_to(100000)) {
            const auto t = split_prime(K, p)[0].split_type;
            split += t == SplitType::split;
            inert += t == SplitType::inert;
        }
        CHECK(std::fabs(static_cast<double>(split) / inert - 1.0) < 0.05);
    }
}

TEST_CASE("generators regenerate their ideals") {
    for (i64 d : {-1, -3, -7, 2, 3, 5, 13}) {
        const QuadraticField K = make_field(d);
        u64 count = 0;
        for_each_prime_ideal(K, nullptr, 2, 1000000, [&](const PrimeIdeal& p) {
            REQUIRE(p.generator);
            REQUIRE(principal_ideal(K, *p.generator) == p.ideal);
            REQUIRE(abs128(norm(K, *p.generator)) == p.norm());
            ++count;
        });
        CHECK(count > 70000);
    }
}

TEST_CASE("canonical generator is unit-invariant") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dist(-300, 300);
    for (i64 d : {-1, -3, -5, 2, 3, 5, 7}) {
        const QuadraticField K = make_field(d);
        for (int i = 0; i < 300; ++i) {
            const QuadraticInt g = from_basis(K, dist(rng), dist(rng));
            if (norm(K, g) == 0) continue;
            const QuadraticInt c = canonical_associate(K, g);
            if (K.is_real()) {
                for (i64 k = -3; k <= 3; ++k) {
                    REQUIRE(canonical_associate(K, unit_mul(K, g, k)) == c);
                    REQUIRE(canonical_associate(K, neg(unit_mul(K, g, k))) == c);
                }
            } else {
                REQUIRE(canonical_associate(K, neg(g)) == c);
                if (K.w == 4) REQUIRE(canonical_associate(K, mul(K, g, QuadraticInt{0, 1})) == c);
                if (K.w == 6) REQUIRE(canonical_associate(K, mul(K, g, QuadraticInt{1, 1})) == c);
            }
        }
    }
}

TEST_CASE("ideal multiplication") {
    std::mt19937_64 rng(5);
    for (i64 d : {-1, -5, -23, 2, 5}) {
        const QuadraticField K = make_field(d);
        const auto ps = enumerate_prime_ideals(K, nullptr, 2, 2000);
        std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
        for (int i = 0; i < 500; ++i) {
            const auto& a = ps[pick(rng)];
            const auto& b = ps[pick(rng)];
            const Ideal ab = ideal_mul(K, a.ideal, b.ideal);
            REQUIRE(ab.norm() == a.norm() * b.norm());
            REQUIRE(ab == ideal_mul(K, b.ideal, a.ideal));
        }
        // p * conj(p) = (N p)
        for (const auto& p : ps) {
            if (p.split_type == SplitType::inert) continue;
            REQUIRE(ideal_mul(K, p.ideal, ideal_conj(K, p.ideal)) == principal_ideal(K, from_int(p.p)));
        }
    }
}

TEST_CASE("class anchoring for d = -5") {
    const QuadraticField K = make_field(-5);
    const auto ctx = class_context(K, QuadForm{2, 2, 3});
    CHECK(ctx.h == 2);
    CHECK(ctx.anchor.norm() == 2);
    int in_class = 0;
    for (const auto& p : enumerate_prime_ideals(K, &ctx, 2, 5000)) {
        const QuadraticInt g = ctx.anchored_generator(K, p.ideal);
        REQUIRE(principal_ideal(K, g) == ideal_mul(K, p.ideal, ctx.anchor));
        REQUIRE(!p.generator);
        ++in_class;
    }
    CHECK(in_class > 100);
}

TEST_CASE("ideal enumerator counts") {
    // number of ideals of norm n in Z[i] is sum_{d|n} chi_{-4}(d)
    const QuadraticField K = make_field(-1);
    IdealEnumerator en(K, 1, 5000);
    std::vector<int> cnt(5001, 0);
    en.for_each([&](const IdealRecord& r) {
        ++cnt[r.norm];
        if (r.norm < 600) REQUIRE(en.materialize(r).norm() == static_cast<i128>(r.norm));
    });
    for (int n = 1; n <= 5000; ++n) {
        int s = 0;
        for (int dd = 1; dd <= n; dd += 2)
            if (n % dd == 0) s += (dd % 4 == 1) ? 1 : -1;
        REQUIRE(cnt[n] == s);
    }
}
