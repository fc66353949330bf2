#include "qfp/ideal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qfp {

namespace {

using Vec = std::array<i128, 2>;

// Hermite normal form of the Z-span of vectors (x, y) in the basis {1, omega}.
Ideal hnf_from_zspan(std::vector<Vec> vecs) {
    i128 A = 0;
    Vec pivot{0, 0};
    for (Vec v : vecs) {
        if (A > 0) v[0] = mod_floor(v[0], A);
        while (v[1] != 0) {
            const i128 q = pivot[1] / v[1];
            pivot[0] = sub_checked(pivot[0], mul_checked(q, v[0]));
            pivot[1] -= q * v[1];
            std::swap(pivot, v);
            if (A > 0) {
                pivot[0] = mod_floor(pivot[0], A);
                v[0] = mod_floor(v[0], A);
            }
        }
        A = gcd128(A, v[0]);
        if (A > 0) pivot[0] = mod_floor(pivot[0], A);
    }
    if (pivot[1] < 0) {
        pivot[0] = -pivot[0];
        pivot[1] = -pivot[1];
    }
    if (A == 0 || pivot[1] == 0) throw std::invalid_argument("hnf_from_zspan: lattice is not of full rank");
    const i128 C = pivot[1];
    const i128 B = mod_floor(pivot[0], A);
    if (A % C != 0 || B % C != 0) throw std::logic_error("hnf_from_zspan: module is not an ideal");
    return Ideal{C, A / C, B / C};
}

Vec coords(const QuadraticField& K, const QuadraticInt& a) {
    auto [x, y] = to_basis(K, a);
    return {x, y};
}

QuadraticInt basis_elem(const QuadraticField& K, const Ideal& A, int which) {
    // content * n  or  content * (c + omega)
    if (which == 0) return from_int(mul_checked(A.content, A.n));
    return mul_int(from_basis(K, A.c, 1), A.content);
}

int jacobi(i64 a, u64 n) {
    // n odd positive
    a %= static_cast<i64>(n);
    if (a < 0) a += static_cast<i64>(n);
    u64 x = static_cast<u64>(a);
    int t = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            const u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) t = -t;
        x %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker_fast(i64 disc, u64 p) {
    if (p == 2) return kronecker_prime(disc, 2);
    return jacobi(disc, p);
}

}  // namespace

Ideal unit_ideal() { return Ideal{1, 1, 0}; }

Ideal ideal_from_generators(const QuadraticField& K, std::span<const QuadraticInt> gens) {
    std::vector<Vec> vecs;
    const QuadraticInt w = omega(K);
    for (const auto& g : gens) {
        vecs.push_back(coords(K, g));
        vecs.push_back(coords(K, mul(K, g, w)));
    }
    return hnf_from_zspan(std::move(vecs));
}

Ideal principal_ideal(const QuadraticField& K, const QuadraticInt& g) {
    if (g.u == 0 && g.v == 0) throw std::invalid_argument("principal_ideal: zero element");
    const QuadraticInt gens[] = {g};
    return ideal_from_generators(K, gens);
}

Ideal ideal_mul(const QuadraticField& K, const Ideal& A, const Ideal& B) {
    std::vector<Vec> vecs;
    vecs.reserve(4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) vecs.push_back(coords(K, mul(K, basis_elem(K, A, i), basis_elem(K, B, j))));
    }
    return hnf_from_zspan(std::move(vecs));
}

Ideal ideal_conj(const QuadraticField& K, const Ideal& A) {
    // conj(c + omega) = c + D - omega
    return Ideal{A.content, A.n, mod_floor(-A.c - K.disc, A.n)};
}

Ideal ideal_pow(const QuadraticField& K, const Ideal& A, int e) {
    Ideal r = unit_ideal();
    for (int i = 0; i < e; ++i) r = ideal_mul(K, r, A);
    return r;
}

bool contains(const QuadraticField& K, const Ideal& A, const QuadraticInt& g) {
    if (!is_integral(K, g)) return false;
    auto [x, y] = to_basis(K, g);
    // lattice basis (content*n, 0), (content*c, content)
    if (y % A.content != 0) return false;
    const i128 k = y / A.content;
    const i128 rest = sub_checked(x, mul_checked(k, mul_checked(A.content, A.c)));
    return rest % mul_checked(A.content, A.n) == 0;
}

QuadForm norm_form(const QuadraticField& K, const Ideal& A) {
    const QuadraticInt beta = from_basis(K, A.c, 1);
    const i128 nb = norm(K, beta);
    if (nb % A.n != 0) throw std::logic_error("norm_form: invalid HNF");
    return QuadForm{A.n, trace(beta), nb / A.n};
}

Ideal ideal_from_form(const QuadraticField& K, const QuadForm& f) {
    if (f.disc() != K.disc) throw std::invalid_argument("ideal_from_form: discriminant mismatch");
    if (f.a <= 0) throw std::invalid_argument("ideal_from_form: need a > 0");
    // trace(c + omega) = 2c + D == b
    const i128 twice = f.b - K.disc;
    if (twice % 2 != 0) throw std::invalid_argument("ideal_from_form: parity mismatch");
    return Ideal{1, f.a, mod_floor(twice / 2, f.a)};
}

std::vector<PrimeIdeal> split_prime(const QuadraticField& K, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("split_prime: p is not prime");
    std::vector<PrimeIdeal> out;
    const int k = kronecker_fast(K.disc, p);
    const i128 P = p;
    if (k == -1) {
        out.push_back({p, SplitType::inert, Ideal{P, 1, 0}, from_int(P)});
        return out;
    }
    // roots c of N(c + omega) == 0 mod p
    std::vector<i128> roots;
    if (p == 2) {
        for (i128 c = 0; c < 2; ++c) {
            if (mod_floor(norm(K, from_basis(K, c, 1)), 2) == 0) roots.push_back(c);
        }
    } else {
        const u64 r = sqrt_mod(static_cast<u64>(mod_floor(K.disc, P)), p);
        const i128 inv2 = (P + 1) / 2;
        for (i128 s : {static_cast<i128>(r), mod_floor(-static_cast<i128>(r), P)}) {
            const i128 c = mod_floor(mod_floor(s - K.disc, P) * inv2, P);
            if (std::find(roots.begin(), roots.end(), c) == roots.end()) roots.push_back(c);
        }
        std::sort(roots.begin(), roots.end());
    }
    const SplitType t = k == 0 ? SplitType::ramified : SplitType::split;
    for (i128 c : roots) {
        PrimeIdeal pi{p, t, Ideal{1, P, c}, std::nullopt};
        pi.generator = principal_generator(K, pi.ideal);
        out.push_back(pi);
        if (t == SplitType::ramified) break;
    }
    return out;
}

QuadraticInt canonical_associate(const QuadraticField& K, const QuadraticInt& g) {
    if (K.is_imaginary()) {
        std::vector<QuadraticInt> units;
        if (K.w == 2) {
            units = {from_int(1), from_int(-1)};
        } else if (K.w == 4) {
            const QuadraticInt i{0, 1};
            units = {from_int(1), i, from_int(-1), neg(i)};
        } else {
            const QuadraticInt z{1, 1};  // primitive 6th root of unity
            QuadraticInt u = from_int(1);
            for (int k = 0; k < 6; ++k) {
                units.push_back(u);
                u = mul(K, u, z);
            }
        }
        for (const auto& u : units) {
            const QuadraticInt h = mul(K, g, u);
            bool ok = false;
            if (K.w == 2) {
                ok = h.v > 0 || (h.v == 0 && h.u > 0);
            } else if (K.w == 4) {
                ok = h.u > 0 && h.v >= 0;  // Re > 0, Im >= 0
            } else {
                ok = h.v >= 0 && h.v < h.u;  // 0 <= arg < pi/3
            }
            if (ok) return h;
        }
        throw std::logic_error("canonical_associate: no associate in the fundamental sector");
    }
    QuadraticInt h = g;
    auto sig1 = [&](const QuadraticInt& a) { return embed_real(K, a).first; };
    if (sig1(h) < 0) h = neg(h);
    if (K.unit_norm < 0 && norm(K, h) < 0) h = unit_mul(K, h, 1);
    const int step = K.unit_norm < 0 ? 2 : 1;
    const long double log_eta = step * K.log_eps;
    // log(sigma_1/sqrt|N|) = log|s1/s2| / 2
    const long double pos = 0.5L * log_embedding_ratio(K, h);
    h = unit_mul(K, h, -static_cast<i64>(std::floor(pos / log_eta)) * step);
    // exact fix-up: with sigma_1 > 0, sigma_1 >= |sigma_2| iff u >= 0 and v >= 0
    auto at_least_one = [](const QuadraticInt& a) { return a.u >= 0 && a.v >= 0; };
    while (!at_least_one(h)) h = unit_mul(K, h, step);
    for (;;) {
        const QuadraticInt lower = unit_mul(K, h, -step);
        if (!at_least_one(lower)) break;
        h = lower;
    }
    return h;
}

std::optional<QuadraticInt> principal_generator(const QuadraticField& K, const Ideal& A) {
    const QuadForm f = norm_form(K, A);
    const auto rep = represent_unit_value(f, K.is_real());
    if (!rep) return std::nullopt;
    const auto [X, Y] = *rep;
    // X n + Y (c + omega)
    QuadraticInt g = from_basis(K, add_checked(mul_checked(X, A.n), mul_checked(Y, A.c)), Y);
    g = mul_int(g, A.content);
    return canonical_associate(K, g);
}

int class_number(const QuadraticField& K) {
    if (K.is_imaginary()) return static_cast<int>(reduced_forms(K.disc).size());
    const u64 bound = static_cast<u64>(std::sqrt(static_cast<long double>(K.disc)) / 2);
    for (u64 p : primes_up_to(bound)) {
        for (const auto& pi : split_prime(K, p)) {
            if (!pi.generator) {
                throw UnsupportedError("class_number: real quadratic field with class number > 1 is unsupported");
            }
        }
    }
    return 1;
}

QuadForm principal_class_label(const QuadraticField& K) {
    const i128 b = mod_floor(K.disc, 2);
    return QuadForm{1, b, (b - K.disc) / 4};
}

QuadForm ideal_class(const QuadraticField& K, const Ideal& A) {
    if (K.is_imaginary()) return reduce_definite(norm_form(K, A)).form;
    if (!principal_generator(K, A)) {
        throw UnsupportedError("ideal_class: non-principal ideal in a real quadratic field");
    }
    return principal_class_label(K);
}

bool IdealClassContext::contains(const QuadraticField& K, const Ideal& A) const {
    if (h == 1) return true;
    return ideal_class(K, A) == chosen_class;
}

QuadraticInt IdealClassContext::anchored_generator(const QuadraticField& K, const Ideal& A) const {
    const Ideal prod = anchor == unit_ideal() ? A : ideal_mul(K, A, anchor);
    auto g = principal_generator(K, prod);
    if (!g) throw std::logic_error("anchored_generator: ideal is not in the chosen class");
    return *g;
}

IdealClassContext principal_class_context(const QuadraticField& K) {
    return IdealClassContext{class_number(K), principal_class_label(K), unit_ideal()};
}

IdealClassContext class_context(const QuadraticField& K, const QuadForm& cls) {
    const int h = class_number(K);
    if (K.is_real() || cls == principal_class_label(K)) {
        return IdealClassContext{h, principal_class_label(K), unit_ideal()};
    }
    const QuadForm inv = reduce_definite(QuadForm{cls.a, -cls.b, cls.c}).form;
    return IdealClassContext{h, reduce_definite(cls).form, ideal_from_form(K, inv)};
}

IdealClassContext class_context_for_anchor(const QuadraticField& K, const Ideal& a0) {
    const int h = class_number(K);
    const Ideal inv = ideal_conj(K, a0);
    return IdealClassContext{h, h == 1 ? principal_class_label(K) : ideal_class(K, inv), a0};
}

void for_each_prime_ideal(const QuadraticField& K, const IdealClassContext* ctx, u64 norm_lo, u64 norm_hi,
                          const std::function<void(const PrimeIdeal&)>& visit, u64 capacity) {
    if (norm_hi > capacity) throw CapacityError("prime ideal enumeration exceeds sieve capacity");
    if (norm_lo > norm_hi) return;
    std::vector<PrimeIdeal> inert;
    {
        u64 lo = isqrt(norm_lo);
        if (lo * lo < norm_lo) ++lo;
        const u64 hi = isqrt(norm_hi);
        if (lo <= hi) {
            for (u64 p : primes_in_range(lo, hi, capacity)) {
                if (kronecker_fast(K.disc, p) == -1) inert.push_back(split_prime(K, p).front());
            }
        }
    }
    std::size_t next_inert = 0;
    auto emit = [&](const PrimeIdeal& pi) {
        if (ctx == nullptr || ctx->contains(K, pi.ideal)) visit(pi);
    };
    for (u64 p : primes_in_range(norm_lo, norm_hi, capacity)) {
        while (next_inert < inert.size() && inert[next_inert].norm() < static_cast<i128>(p)) emit(inert[next_inert++]);
        if (kronecker_fast(K.disc, p) == -1) continue;
        for (const auto& pi : split_prime(K, p)) emit(pi);
    }
    while (next_inert < inert.size()) emit(inert[next_inert++]);
}

std::vector<PrimeIdeal> enumerate_prime_ideals(const QuadraticField& K, const IdealClassContext* ctx, u64 norm_lo,
                                               u64 norm_hi, u64 capacity) {
    std::vector<PrimeIdeal> out;
    for_each_prime_ideal(K, ctx, norm_lo, norm_hi, [&](const PrimeIdeal& p) { out.push_back(p); }, capacity);
    return out;
}

u64 IdealRecord::tau() const {
    u64 t = 1;
    for (const auto& f : factors) t *= static_cast<u64>(f.e + 1);
    return t;
}

IdealEnumerator::IdealEnumerator(const QuadraticField& K, u64 norm_lo, u64 norm_hi, u64 capacity)
    : K_(K), lo_(std::max<u64>(norm_lo, 1)), hi_(norm_hi), factorizer_(std::max<u64>(norm_lo, 1), std::max<u64>({norm_hi, norm_lo, 1}), capacity) {}

void IdealEnumerator::for_each(const std::function<void(const IdealRecord&)>& visit) const {
    if (lo_ > hi_) return;
    std::vector<PrimePower> pf;
    IdealRecord rec;
    struct Choice {
        u64 p;
        SplitType t;
        int e;
    };
    std::vector<Choice> choices;
    for (u64 n = lo_; n <= hi_; ++n) {
        factorizer_.factors_of(n, pf);
        choices.clear();
        bool possible = true;
        for (const auto& [p, e] : pf) {
            const int k = kronecker_fast(K_.disc, p);
            if (k == -1) {
                if (e % 2 != 0) {
                    possible = false;
                    break;
                }
                choices.push_back({p, SplitType::inert, e / 2});
            } else {
                choices.push_back({p, k == 0 ? SplitType::ramified : SplitType::split, e});
            }
        }
        if (!possible) continue;
        rec.norm = n;
        rec.factors.clear();
        // odometer over split exponent distributions
        std::function<void(std::size_t)> rec_build = [&](std::size_t i) {
            if (i == choices.size()) {
                visit(rec);
                return;
            }
            const Choice& ch = choices[i];
            if (ch.t != SplitType::split) {
                rec.factors.push_back({ch.p, ch.t, 0, ch.e});
                rec_build(i + 1);
                rec.factors.pop_back();
                return;
            }
            for (int e0 = ch.e; e0 >= 0; --e0) {
                const int e1 = ch.e - e0;
                std::size_t pushed = 0;
                if (e0 > 0) {
                    rec.factors.push_back({ch.p, SplitType::split, 0, e0});
                    ++pushed;
                }
                if (e1 > 0) {
                    rec.factors.push_back({ch.p, SplitType::split, 1, e1});
                    ++pushed;
                }
                rec_build(i + 1);
                for (std::size_t k = 0; k < pushed; ++k) rec.factors.pop_back();
            }
        };
        rec_build(0);
    }
}

const std::vector<Ideal>& IdealEnumerator::primes_above(u64 p) const {
    auto it = std::lower_bound(prime_cache_.begin(), prime_cache_.end(), p,
                               [](const auto& entry, u64 key) { return entry.first < key; });
    if (it != prime_cache_.end() && it->first == p) return it->second;
    std::vector<Ideal> ideals;
    for (const auto& pi : split_prime(K_, p)) ideals.push_back(pi.ideal);
    it = prime_cache_.insert(it, {p, std::move(ideals)});
    return it->second;
}

Ideal IdealEnumerator::materialize(const IdealRecord& rec) const {
    Ideal r = unit_ideal();
    for (const auto& f : rec.factors) {
        const auto& ideals = primes_above(f.p);
        r = ideal_mul(K_, r, ideal_pow(K_, ideals.at(static_cast<std::size_t>(f.which)), f.e));
    }
    return r;
}

std::string to_string(const Ideal& A) {
    std::string s = "[" + to_string(A.n) + ", " + to_string(A.c) + "+w]";
    if (A.content != 1) s = to_string(A.content) + "*" + s;
    return s;
}

}  // namespace qfp
