#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ialt/codes.hpp"  // rng_below
#include "ialt/poly.hpp"

using namespace ialt;

namespace {

TriPoly mono(const FieldContext& F, uint32_t a, uint32_t b, uint32_t c, uint16_t v = 1) {
    return TriPoly::monomial_term(F, Monomial{a, b, c}, v);
}

TriPoly random_poly(const FieldContext& F, std::mt19937_64& rng, uint32_t da, uint32_t db,
                    uint32_t dc, int terms) {
    std::vector<std::pair<Monomial, uint16_t>> ts;
    for (int i = 0; i < terms; ++i)
        ts.emplace_back(Monomial{uint32_t(rng_below(rng, da + 1)),
                                 uint32_t(rng_below(rng, db + 1)),
                                 uint32_t(rng_below(rng, dc + 1))},
                        uint16_t(rng_below(rng, F.size())));
    return TriPoly(F, std::move(ts));
}

UniPoly random_unipoly(const FieldContext& F, std::mt19937_64& rng, long deg_bound) {
    std::vector<uint16_t> c(size_t(deg_bound), 0);
    for (auto& v : c) v = uint16_t(rng_below(rng, F.size()));
    return UniPoly(F, std::move(c));
}

}  // namespace

TEST_CASE("weighted degree and ordering") {
    FieldContext F = make_field(4, 0x13);
    WeightVector w19{1, 19, 19};
    CHECK(weighted_degree(Monomial{3, 2, 1}, w19) == 60);
    CHECK(weighted_degree(mono(F, 0, 0, 0), w19) == 0);

    WeightVector w2{1, 2, 2};
    TriPoly p = mono(F, 2, 0, 0) + mono(F, 0, 1, 0);  // X^2 + Y
    CHECK(weighted_degree(p, w2) == 2);
    CHECK(p.leading_monomial(w2) == Monomial{2, 0, 0});

    CHECK(monomial_cmp(Monomial{0, 1, 0}, Monomial{2, 0, 0}, w2) == Ordering::Less);
    CHECK(monomial_cmp(Monomial{0, 0, 1}, Monomial{0, 1, 0}, w2) == Ordering::Less);
    CHECK(monomial_cmp(Monomial{1, 0, 0}, Monomial{0, 1, 0}, w19) == Ordering::Less);
    CHECK(monomial_cmp(Monomial{1, 2, 3}, Monomial{1, 2, 3}, w19) == Ordering::Equal);
    CHECK_THROWS_AS(TriPoly(F).weighted_degree(w2), ZeroPolynomial);
}

TEST_CASE("weighted degree is additive over products") {
    const FieldContext& F = *shared_field(3, 0xB);
    std::mt19937_64 rng(7);
    WeightVector w{1, 4, 4};
    for (int it = 0; it < 50; ++it) {
        TriPoly p = random_poly(F, rng, 5, 2, 2, 6);
        TriPoly q = random_poly(F, rng, 5, 2, 2, 6);
        if (p.is_zero() || q.is_zero()) continue;
        CHECK(weighted_degree(p * q, w) == weighted_degree(p, w) + weighted_degree(q, w));
    }
}

TEST_CASE("Hasse derivatives") {
    FieldContext F = make_field(4, 0x13);
    TriPoly x2 = mono(F, 2, 0, 0), x3 = mono(F, 3, 0, 0);
    CHECK(hasse_derivative(x2, Monomial{1, 0, 0}).is_zero());       // C(2,1) = 2 = 0 mod 2
    CHECK(hasse_derivative(x3, Monomial{1, 0, 0}) == mono(F, 2, 0, 0));  // C(3,1) odd
    std::mt19937_64 rng(11);
    TriPoly p = random_poly(F, rng, 6, 3, 3, 12);
    CHECK(hasse_derivative(p, Monomial{0, 0, 0}) == p);

    // Composition law: D_a' after D_a equals C(a+a', a) D_(a+a') mod 2.
    for (uint32_t a = 0; a <= 3; ++a)
        for (uint32_t a2 = 0; a2 <= 3; ++a2) {
            TriPoly lhs = hasse_derivative(hasse_derivative(p, Monomial{a, 0, 0}),
                                           Monomial{a2, 0, 0});
            bool odd = ((a + a2) & a) == a;
            TriPoly rhs = odd ? hasse_derivative(p, Monomial{a + a2, 0, 0}) : TriPoly(F);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("multiplicity at a point") {
    FieldContext F = make_field(3, 0xB);
    TriPoly xy = mono(F, 1, 1, 0);
    CHECK(multiplicity_at(xy, 0, 0, 0) == 2);
    TriPoly xp1 = mono(F, 1, 0, 0) + mono(F, 0, 0, 0);  // X + 1
    CHECK(multiplicity_at(xp1, 1, 0, 0) >= 1);
    CHECK_THROWS_AS(multiplicity_at(TriPoly(F), 0, 0, 0), ZeroPolynomial);

    // Multiplicativity.
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        TriPoly p = random_poly(F, rng, 3, 2, 2, 5);
        TriPoly q = random_poly(F, rng, 3, 2, 2, 5);
        if (p.is_zero() || q.is_zero()) continue;
        uint16_t x = uint16_t(rng_below(rng, F.size()));
        uint16_t y = uint16_t(rng_below(rng, F.size()));
        uint16_t z = uint16_t(rng_below(rng, F.size()));
        CHECK(multiplicity_at(p * q, x, y, z) ==
              multiplicity_at(p, x, y, z) + multiplicity_at(q, x, y, z));
    }
}

TEST_CASE("resultant basics") {
    FieldContext F = make_field(3, 0xB);
    TriPoly zy = mono(F, 0, 0, 1) + mono(F, 0, 1, 0);  // Z - Y
    TriPoly zx = mono(F, 0, 0, 1) + mono(F, 1, 0, 0);  // Z - X
    TriPoly r = resultant_z(zy, zx);
    CHECK(r == mono(F, 0, 1, 0) + mono(F, 1, 0, 0));  // Y + X
    CHECK(resultant_z(zy, zy).is_zero());
    CHECK_THROWS_AS(resultant_z(mono(F, 1, 0, 0), mono(F, 0, 1, 0)), BothConstantInZ);
    CHECK_THROWS_AS(resultant_z(TriPoly(F), zy), ZeroPolynomial);
}

// Criterion-style oracle: the Sylvester resultant of factored inputs equals
// the product-formula expansion Coeff_Q^degZ(P) Coeff_P^degZ(Q) prod(q_i - p_j).
TEST_CASE("resultant equals the product-formula oracle on factored inputs") {
    const FieldContext& F = *shared_field(3, 0xB);
    std::mt19937_64 rng(2024);
    int done = 0;
    for (int it = 0; done < 120; ++it) {
        auto rand_bi = [&](uint32_t da, uint32_t db) {
            TriPoly b = random_poly(F, rng, da, db, 0, 4);
            return b;
        };
        TriPoly u1 = rand_bi(2, 2), u2 = rand_bi(2, 2), v1 = rand_bi(2, 2);
        TriPoly cq = rand_bi(1, 1), cp = rand_bi(1, 1);
        if (cq.is_zero() || cp.is_zero()) continue;
        TriPoly Z = mono(F, 0, 0, 1);
        TriPoly q = cq * (Z + u1) * (Z + u2);
        TriPoly p = cp * (Z + v1);
        // Product formula: cq^1 * cp^2 * (u1 - v1)(u2 - v1), char 2.
        TriPoly expect = cq * cp * cp * (u1 + v1) * (u2 + v1);
        CHECK(resultant_z(q, p) == expect);
        ++done;
    }
}

TEST_CASE("resultant is zero iff the gcd has positive Z-degree") {
    const FieldContext& F = *shared_field(3, 0xB);
    std::mt19937_64 rng(5);
    TriPoly Z = mono(F, 0, 0, 1);
    for (int it = 0; it < 40; ++it) {
        TriPoly u = random_poly(F, rng, 2, 1, 0, 3);
        TriPoly v = random_poly(F, rng, 2, 1, 0, 3);
        TriPoly w = random_poly(F, rng, 2, 1, 0, 3);
        if (u.is_zero() || v.is_zero() || w.is_zero()) continue;
        TriPoly q = (Z + u) * (Z + v);
        TriPoly p = (Z + u) * (Z + w);   // shares Z + u
        TriPoly q2 = (Z + u) * (Z + v);
        TriPoly p2 = (Z + w);
        CHECK(resultant_z(q, p).is_zero());
        CHECK(trivariate_gcd(q, p).deg_z() >= 1);
        bool coprime = !(u == w) && !(v == w);
        if (coprime) {
            CHECK(!resultant_z(q2, p2).is_zero());
            CHECK(trivariate_gcd(q2, p2).deg_z() <= 0);
        }
    }
}

TEST_CASE("evaluated resultant path matches Bareiss on medium inputs") {
    const FieldContext& F = *shared_field(4, 0x13);
    std::mt19937_64 rng(99);
    WeightVector w{1, 3, 3};
    for (int it = 0; it < 10; ++it) {
        TriPoly q = random_poly(F, rng, 6, 2, 3, 14);
        TriPoly p = random_poly(F, rng, 6, 2, 3, 14);
        if (q.deg_z() < 1 || p.deg_z() < 1) continue;
        TriPoly a = resultant_sylvester_bareiss(q, p);
        TriPoly b = resultant_evaluated(q, p, w);
        CHECK(a == b);
    }
}

TEST_CASE("gcd basics") {
    const FieldContext& F = *shared_field(3, 0xB);
    std::mt19937_64 rng(17);
    TriPoly Z = mono(F, 0, 0, 1), Y = mono(F, 0, 1, 0), X = mono(F, 1, 0, 0);
    TriPoly one = mono(F, 0, 0, 0);

    CHECK(trivariate_gcd(Z + Y, Z + X) == one);

    for (int it = 0; it < 15; ++it) {
        TriPoly p = random_poly(F, rng, 2, 1, 1, 4);
        if (p.is_zero()) continue;
        CHECK(trivariate_gcd(p, p) == p.normalized());
        // Construct-by-multiplication oracle.
        TriPoly qq = Y * p, pp = Z * p;
        TriPoly g = trivariate_gcd(qq, pp);
        CHECK(!g.is_zero());
        CHECK_NOTHROW(qq.exact_div(g));
        CHECK_NOTHROW(pp.exact_div(g));
        // p divides the gcd of (Yp, Zp).
        CHECK_NOTHROW(g.exact_div(p.normalized()));
    }
}

TEST_CASE("y_roots on constructed factorizations") {
    const FieldContext& F4 = *shared_field(2, 0x7);
    const FieldContext& F8 = *shared_field(3, 0xB);
    TriPoly Y4 = TriPoly::monomial_term(F4, Monomial{0, 1, 0}, 1);
    TriPoly X4 = TriPoly::monomial_term(F4, Monomial{1, 0, 0}, 1);
    TriPoly one4 = TriPoly::monomial_term(F4, Monomial{0, 0, 0}, 1);

    // (Y + X)(Y + X + 1) over GF(4), bound 2 -> {X, X+1}
    TriPoly h = (Y4 + X4) * (Y4 + X4 + one4);
    auto roots = y_roots(h, 2);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == UniPoly(F4, {0, 1}));
    CHECK(roots[1] == UniPoly(F4, {1, 1}));

    // Y^2 + 1 over GF(4), bound 1 -> {1} (char-2 square)
    TriPoly h2 = TriPoly::monomial_term(F4, Monomial{0, 2, 0}, 1) + one4;
    auto roots2 = y_roots(h2, 1);
    REQUIRE(roots2.size() == 1);
    CHECK(roots2[0] == UniPoly::constant(F4, 1));

    CHECK_THROWS_AS(y_roots(TriPoly(F8), 2), ZeroPolynomial);
}

// Criterion-style oracle: y_roots against exhaustive enumeration of all 8^3
// candidate polynomials of degree < 3 over GF(8).
TEST_CASE("y_roots equals the exhaustive oracle on random factored inputs") {
    const FieldContext& F = *shared_field(3, 0xB);
    std::mt19937_64 rng(31);
    int done = 0;
    for (int it = 0; done < 110; ++it) {
        int nf = 1 + int(rng_below(rng, 3));
        TriPoly Y = TriPoly::monomial_term(F, Monomial{0, 1, 0}, 1);
        TriPoly h = TriPoly::from_unipoly(random_unipoly(F, rng, 3), 0);  // c(X)
        if (h.is_zero()) continue;
        for (int i = 0; i < nf; ++i)
            h = h * (Y + TriPoly::from_unipoly(random_unipoly(F, rng, 3), 0));
        auto got = y_roots(h, 3);

        std::vector<UniPoly> expect;
        for (uint32_t v = 0; v < 512; ++v) {
            UniPoly f(F, {uint16_t(v & 7), uint16_t((v >> 3) & 7), uint16_t(v >> 6)});
            if (substitute(h, f, UniPoly(F)).is_zero()) expect.push_back(f);
        }
        std::sort(expect.begin(), expect.end());
        expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
        REQUIRE(got.size() == expect.size());
        for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
        ++done;
    }
}

TEST_CASE("substitute") {
    const FieldContext& F = *shared_field(3, 0xB);
    TriPoly Y = TriPoly::monomial_term(F, Monomial{0, 1, 0}, 1);
    TriPoly Z = TriPoly::monomial_term(F, Monomial{0, 0, 1}, 1);
    UniPoly fx = UniPoly(F, {0, 1});       // X
    UniPoly fx1 = UniPoly(F, {1, 1});      // X + 1
    CHECK(substitute(Y + Z, fx, fx).is_zero());
    CHECK(substitute(TriPoly::monomial_term(F, Monomial{0, 0, 0}, 1), fx, fx1) ==
          UniPoly::constant(F, 1));
    CHECK(substitute(Y * Z, fx, fx1) == UniPoly(F, {0, 1, 1}));  // X^2 + X
}

TEST_CASE("exact division round trips") {
    const FieldContext& F = *shared_field(4, 0x13);
    std::mt19937_64 rng(47);
    for (int it = 0; it < 30; ++it) {
        TriPoly a = random_poly(F, rng, 4, 2, 2, 6);
        TriPoly b = random_poly(F, rng, 3, 1, 1, 4);
        if (a.is_zero() || b.is_zero()) continue;
        TriPoly prod = a * b;
        CHECK(prod.exact_div(b) == a);
        CHECK(prod.exact_div(a) == b);
    }
    TriPoly x = TriPoly::monomial_term(F, Monomial{1, 0, 0}, 1);
    TriPoly y = TriPoly::monomial_term(F, Monomial{0, 1, 0}, 1);
    CHECK_THROWS_AS((x + y).exact_div(x), InexactDivision);
}

TEST_CASE("debug serialization is ordered by the weighted order") {
    const FieldContext& F = *shared_field(2, 0x7);
    WeightVector w{1, 2, 2};
    TriPoly p = TriPoly::monomial_term(F, Monomial{2, 0, 0}, 1) +
                TriPoly::monomial_term(F, Monomial{0, 1, 0}, 3) +
                TriPoly::monomial_term(F, Monomial{0, 0, 0}, 2);
    CHECK(p.to_string(w) == "0x2*X^0*Y^0*Z^0 + 0x3*X^0*Y^1*Z^0 + 0x1*X^2*Y^0*Z^0");
}

TEST_CASE("unipoly utilities") {
    const FieldContext& F = *shared_field(4, 0x13);
    std::mt19937_64 rng(53);
    for (int it = 0; it < 20; ++it) {
        UniPoly a = random_unipoly(F, rng, 8);
        UniPoly b = random_unipoly(F, rng, 5);
        if (b.is_zero()) continue;
        auto [q, r] = a.divmod(b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
    // Lagrange interpolation round trip.
    std::vector<uint16_t> xs, ys;
    UniPoly f = random_unipoly(F, rng, 6);
    for (uint16_t x = 0; x < 9; ++x) {
        xs.push_back(x);
        ys.push_back(f.eval(x));
    }
    CHECK(lagrange_interpolate(F, xs, ys) == f);
}
