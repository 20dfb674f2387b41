#include <doctest.h>

#include "oracles.hpp"

using namespace shortint;

namespace {

Poly P(const FieldPtr& F, std::vector<std::int64_t> c) {
    return Poly::from_ints(F, c);
}

std::vector<int> factor_degrees(const FactorizationResult& r) {
    std::vector<int> out;
    for (const auto& f : r.factors)
        for (unsigned k = 0; k < f.multiplicity; ++k) out.push_back(f.poly.degree());
    return out;
}

bool same_factorization(const FactorizationResult& a, const FactorizationResult& b) {
    if (a.factors.size() != b.factors.size() || !(a.unit == b.unit)) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        if (!(a.factors[i].poly == b.factors[i].poly) || a.factors[i].multiplicity != b.factors[i].multiplicity) return false;
    }
    return true;
}

Poly random_monic(const FieldPtr& F, int d, std::mt19937_64& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i < d; ++i) c.push_back(F->random(rng));
    c.push_back(F->one());
    return Poly(F, c);
}

}  // namespace

TEST_CASE("derivatives") {
    auto F13 = make_prime_field(13);
    CHECK(derivative(P(F13, {0, 0, -2, 0, 1})) == P(F13, {0, -4, 0, 4}));
    CHECK(derivative(P(F13, {5})).is_zero());
    auto F5 = make_prime_field(5);
    CHECK(derivative(P(F5, {0, 0, 0, 0, 0, 1})).is_zero());

    CHECK(second_hasse_schmidt(P(F13, {0, 0, -2, 0, 1})) == P(F13, {-2, 0, 6}));
    CHECK(second_hasse_schmidt(P(F13, {3, 1})).is_zero());
    auto F2 = make_prime_field(2);
    CHECK(second_hasse_schmidt(P(F2, {0, 0, 1})) == P(F2, {1}));
    CHECK(derivative(derivative(P(F2, {0, 0, 1}))).is_zero());
}

TEST_CASE("gcd") {
    auto F5 = make_prime_field(5);
    CHECK(gcd(P(F5, {-1, 0, 1}), P(F5, {-1, 1})) == P(F5, {-1, 1}));
    CHECK(gcd(P(F5, {2, 0, 3}), Poly(F5)) == monic(P(F5, {2, 0, 3})));
    CHECK(gcd(P(F5, {0, 1}), P(F5, {1, 1})) == P(F5, {1}));
    CHECK(gcd(Poly(F5), Poly(F5)).is_zero());
    CHECK_THROWS_AS(gcd(P(F5, {1, 1}), P(make_prime_field(5), {1, 1})), Error);
}

TEST_CASE("squarefree and irreducible predicates") {
    auto F5 = make_prime_field(5);
    auto F3 = make_prime_field(3);
    CHECK_FALSE(is_squarefree(P(F5, {0, 0, 1})));
    CHECK(is_squarefree(P(F5, {1, 0, 1})));
    CHECK_FALSE(is_squarefree(P(F5, {0, 0, 0, 1})));
    // x^5 + 1 = (x + 1)^5 over F_5: derivative vanishes.
    CHECK_FALSE(is_squarefree(P(F5, {1, 0, 0, 0, 0, 1})));

    CHECK(is_irreducible(P(F3, {1, 0, 1})));
    CHECK_FALSE(is_irreducible(P(F5, {1, 0, 1})));
    CHECK(is_irreducible(P(F5, {3, 1})));
    CHECK(is_irreducible(P(F5, {3, 2})));
}

TEST_CASE("degree pattern") {
    auto F7 = make_prime_field(7);
    const Poly split = P(F7, {0, 1}) * P(F7, {-1, 1}) * P(F7, {-2, 1});
    CHECK(degree_pattern(split) == CycleType({1, 1, 1}));
    // x^3 + 1 over F_7 has roots 3, 5, 6: 7 = 1 mod 3 gives all cube roots of -1.
    const Poly g = P(F7, {1, 0, 0, 1});
    CHECK(factor_degrees(brute_force_factor(g)) == std::vector<int>{1, 1, 1});
    CHECK(degree_pattern(g) == CycleType({1, 1, 1}));
    // Cubes mod 7 are {0, 1, 6}, so x^3 + 3 has no root and is irreducible.
    CHECK(degree_pattern(P(F7, {3, 0, 0, 1})) == CycleType({3}));
    // (x + 1)(x^2 + 1): -1 is a non-square mod 7.
    CHECK(degree_pattern(P(F7, {1, 1}) * P(F7, {1, 0, 1})) == CycleType({2, 1}));
    try {
        degree_pattern(P(F7, {0, 0, 1}));
        FAIL("expected NotSquarefree");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSquarefree);
    }
}

TEST_CASE("factorization examples") {
    auto F5 = make_prime_field(5);
    const auto r = factor(P(F5, {1, 0, 1}));
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].poly == P(F5, {2, 1}));
    CHECK(r.factors[1].poly == P(F5, {3, 1}));

    auto F7 = make_prime_field(7);
    // 3^2 = 2 mod 7, so x^4 - 2x^2 = x^2 (x - 3)(x + 3).
    const auto s = factor(P(F7, {0, 0, -2, 0, 1}));
    REQUIRE(s.factors.size() == 3);
    CHECK(s.factors[0].poly == P(F7, {0, 1}));
    CHECK(s.factors[0].multiplicity == 2);
    CHECK(s.factors[1].poly == P(F7, {3, 1}));
    CHECK(s.factors[2].poly == P(F7, {4, 1}));
    CHECK(s.omega() == 3);
}

TEST_CASE("factorization round trip and seed independence") {
    std::mt19937_64 rng(2024);
    for (auto F : {make_prime_field(2), make_prime_field(3), make_prime_field(101), make_prime_field(10007),
                   make_extension(make_prime_field(2), 3, 0), make_extension(make_prime_field(5), 2, 0)}) {
        for (int i = 0; i < 170; ++i) {
            const int d = 1 + static_cast<int>(rng() % 9);
            std::vector<FieldElement> c;
            for (int k = 0; k < d; ++k) c.push_back(F->random(rng));
            FieldElement lead = F->random(rng);
            if (lead.is_zero()) lead = F->one();
            c.push_back(lead);
            Poly g(F, c);
            // Occasionally force repeated factors.
            if (i % 5 == 0) g = g * P(F, {1, 1}) * P(F, {1, 1});
            const auto r = factor(g, 0);
            CHECK(r.expand(F) == g);
            CHECK(same_factorization(r, factor(g, 99)));
            for (const auto& f : r.factors) CHECK(is_irreducible(f.poly));
        }
    }
}

TEST_CASE("factor agrees with brute force on all small monic polynomials") {
    for (auto F : {make_prime_field(2), make_prime_field(3)}) {
        const std::uint64_t q = *F->order_u64();
        for (int d = 1; d <= 3; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= q;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                const Poly g = Poly::monic_from_index(F, d, idx);
                CHECK(same_factorization(factor(g), brute_force_factor(g)));
            }
        }
    }
    // Extension field: degree <= 4 over F_4.
    auto F4 = make_extension(make_prime_field(2), 2, 0);
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const Poly g = Poly::monic_from_index(F4, 4, idx);
        CHECK(same_factorization(factor(g, 5), brute_force_factor(g)));
    }
    auto F2 = make_prime_field(2);
    const auto r = brute_force_factor(P(F2, {1, 1, 1}));
    REQUIRE(r.factors.size() == 1);
    CHECK(r.factors[0].multiplicity == 1);
    try {
        brute_force_factor(Poly::monic_from_index(make_prime_field(10007), 4, 5));
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("predicates agree with factorization") {
    std::mt19937_64 rng(99);
    for (auto F : {make_prime_field(3), make_prime_field(31), make_extension(make_prime_field(3), 2, 0)}) {
        int squarefree_seen = 0;
        for (int i = 0; i < 350; ++i) {
            const int d = 2 + static_cast<int>(rng() % 6);
            const Poly g = random_monic(F, d, rng);
            const auto r = factor(g, i);
            const bool all_single = std::all_of(r.factors.begin(), r.factors.end(),
                                                [](const Factor& f) { return f.multiplicity == 1; });
            CHECK(is_squarefree(g) == all_single);
            CHECK(is_irreducible(g) == (r.factors.size() == 1 && r.factors[0].multiplicity == 1));
            CHECK(discriminant(g).is_zero() == !all_single);
            if (all_single) {
                ++squarefree_seen;
                std::vector<int> degs = factor_degrees(r);
                CHECK(degree_pattern(g) == CycleType(degs));
            }
        }
        CHECK(squarefree_seen > 100);
    }
}

TEST_CASE("Gauss count of irreducibles") {
    for (std::int64_t p : {2, 3, 5, 7}) {
        auto F = make_prime_field(p);
        for (int d = 1; d <= 4; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
            std::int64_t irreducible = 0;
            for (std::uint64_t idx = 0; idx < count; ++idx) irreducible += is_irreducible(Poly::monic_from_index(F, d, idx));
            CHECK(irreducible == oracle::gauss_formula(p, d));
        }
    }
}

TEST_CASE("resultants") {
    auto F7 = make_prime_field(7);
    const Poly g = P(F7, {3, 1, 4, 1});
    for (int a = 0; a < 7; ++a) {
        CHECK(resultant(P(F7, {-a, 1}), g) == evaluate(g, F7->from_int(a)));
    }
    // Sylvester determinant oracle for Res(x^2+1, x^2-1).
    const Poly f1 = P(F7, {1, 0, 1});
    const Poly f2 = P(F7, {-1, 0, 1});
    CHECK(oracle::sylvester_resultant(f1, f2) == F7->from_int(4));
    CHECK(resultant(f1, f2) == F7->from_int(4));
    CHECK(resultant(P(F7, {-1, 1}) * P(F7, {2, 1}), P(F7, {-1, 1}) * P(F7, {5, 0, 1})).is_zero());
    try {
        resultant(Poly(F7), g);
        FAIL("expected ZeroInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroInput);
    }

    std::mt19937_64 rng(5);
    for (auto F : {make_prime_field(11), make_extension(make_prime_field(3), 3, 0)}) {
        for (int i = 0; i < 200; ++i) {
            std::vector<FieldElement> a, b;
            const int da = static_cast<int>(rng() % 6), db = static_cast<int>(rng() % 6);
            for (int k = 0; k <= da; ++k) a.push_back(F->random(rng));
            for (int k = 0; k <= db; ++k) b.push_back(F->random(rng));
            const Poly pa(F, a), pb(F, b);
            if (pa.is_zero() || pb.is_zero()) continue;
            CHECK(resultant(pa, pb) == oracle::sylvester_resultant(pa, pb));
        }
    }
}

TEST_CASE("discriminants") {
    auto F5 = make_prime_field(5);
    CHECK(discriminant(P(F5, {1, 0, 1})) == F5->one());
    CHECK(discriminant(P(F5, {0, 0, 1})).is_zero());
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto b = F5->random(rng), c = F5->random(rng);
        const Poly g(F5, {c, b, F5->one()});
        CHECK(discriminant(g) == F5->sub(F5->mul(b, b), F5->scale(c, 4)));
    }
}

TEST_CASE("discriminant in t") {
    auto F11 = make_prime_field(11);
    const Poly t = Poly::x(F11);
    CHECK(disc_in_t(P(F11, {0, 0, 1})) == P(F11, {0, -4}));
    CHECK(disc_in_t(P(F11, {0, 0, 0, 1})) == P(F11, {0, 0, -27}));

    std::mt19937_64 rng(17);
    auto F31 = make_prime_field(31);
    for (int i = 0; i < 100; ++i) {
        const int d = 2 + static_cast<int>(rng() % 6);
        const Poly f = random_monic(F31, d, rng);
        const Poly D = disc_in_t(f);
        CHECK(D.degree() <= d - 1);
        if (i < 10) {
            for (int a = 0; a < 31; ++a) CHECK(evaluate(D, F31->from_int(a)) == discriminant(add_constant(f, F31->from_int(a))));
        } else {
            const auto a = F31->random(rng);
            CHECK(evaluate(D, a) == discriminant(add_constant(f, a)));
        }
    }
    // x^3 + t specializations.
    auto F13 = make_prime_field(13);
    const Poly D3 = disc_in_t(P(F13, {0, 0, 0, 1}));
    for (int i = 0; i < 20; ++i) {
        const auto a = F13->random(rng);
        CHECK(evaluate(D3, a) == discriminant(P(F13, {0, 0, 0, 1}) + Poly::constant(F13, a)));
    }
    try {
        disc_in_t(P(make_prime_field(3), {0, 0, 0, 1}));
        FAIL("expected FieldTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldTooSmall);
    }
}

TEST_CASE("roots") {
    auto F = make_extension(make_prime_field(5), 3, 0);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const Poly f = random_monic(F, 1 + static_cast<int>(rng() % 5), rng);
        CHECK(roots(f, i) == oracle::roots_by_search(f));
    }
}

TEST_CASE("squarefree decomposition in characteristic p") {
    auto F3 = make_prime_field(3);
    // (x+1)^3 (x+2)^2 x: exponent 3 comes from a p-th power.
    const Poly g = P(F3, {1, 1}) * P(F3, {1, 1}) * P(F3, {1, 1}) * P(F3, {2, 1}) * P(F3, {2, 1}) * P(F3, {0, 1});
    const auto parts = squarefree_decomposition(g);
    Poly rebuilt = P(F3, {1});
    for (const auto& part : parts) {
        CHECK(is_squarefree(part.poly));
        for (unsigned k = 0; k < part.multiplicity; ++k) rebuilt = rebuilt * part.poly;
    }
    CHECK(rebuilt == g);
}
