#include <doctest.h>

#include "oracles.hpp"

#include <shortint/morse_galois.hpp>

using namespace shortint;

namespace {

Poly P(const FieldPtr& F, std::vector<std::int64_t> c) {
    return Poly::from_ints(F, c);
}

// mu from the full factorization.
int mu_by_factoring(const Poly& g) {
    const auto r = factor(g);
    for (const auto& f : r.factors)
        if (f.multiplicity > 1) return 0;
    return r.omega() % 2 == 0 ? 1 : -1;
}

std::int64_t interval_mu_sum(const Poly& f) {
    std::int64_t s = 0;
    for (const auto& a : oracle::all_elements(f.field())) s += mu_by_factoring(add_constant(f, a));
    return s;
}

std::vector<std::int64_t> residues(const FieldCtx& F, const std::vector<FieldElement>& v) {
    std::vector<std::int64_t> out;
    for (const auto& a : v) out.push_back(static_cast<std::int64_t>(F.index_u64(a)));
    return out;
}

}  // namespace

TEST_CASE("critical data examples") {
    auto F13 = make_prime_field(13);
    const auto cd = critical_data(P(F13, {0, 0, -2, 0, 1}));
    CHECK(cd.M == 1);
    REQUIRE(cd.points.size() == 3);
    CHECK(residues(*cd.ext, {cd.points[0].tau, cd.points[1].tau, cd.points[2].tau}) == std::vector<std::int64_t>{0, 1, 12});
    CHECK(cd.distinct_value_count == 2);
    CHECK(residues(*cd.ext, cd.distinct_values()) == std::vector<std::int64_t>{0, 12});

    const auto cube = critical_data(P(F13, {0, 0, 0, 1}));
    REQUIRE(cube.points.size() == 1);
    CHECK(cube.points[0].tau.is_zero());
    CHECK(cube.points[0].multiplicity == 2);
    CHECK(cube.distinct_value_count == 1);
    CHECK(cube.values[0].is_zero());

    const auto quad = critical_data(P(F13, {5, 0, 1}));
    REQUIRE(quad.points.size() == 1);
    CHECK(quad.values[0] == F13->from_int(5));

    try {
        critical_data(P(make_prime_field(3), {1, 0, 0, 1}));
        FAIL("expected DerivativeVanishes");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DerivativeVanishes);
    }
}

TEST_CASE("critical points lie in the common extension") {
    std::mt19937_64 rng(4);
    for (auto F : {make_prime_field(7), make_prime_field(101), make_extension(make_prime_field(5), 2, 0)}) {
        for (int i = 0; i < 40; ++i) {
            const int d = 2 + static_cast<int>(rng() % 5);
            std::vector<FieldElement> c;
            for (int k = 0; k < d; ++k) c.push_back(F->random(rng));
            c.push_back(F->one());
            const Poly f(F, c);
            if (derivative(f).is_zero()) continue;
            const auto cd = critical_data(f, i);
            const Poly df = cd.embed(derivative(f));
            const Poly fe = cd.embed(f);
            unsigned total = 0;
            for (std::size_t k = 0; k < cd.points.size(); ++k) {
                CHECK(evaluate(df, cd.points[k].tau).is_zero());
                CHECK(cd.values[k] == evaluate(fe, cd.points[k].tau));
                total += cd.points[k].multiplicity;
            }
            CHECK(total == static_cast<unsigned>(derivative(f).degree()));
            // The embedding is a ring map.
            const auto a = F->random(rng), b = F->random(rng);
            CHECK(cd.embed(F->mul(a, b)) == cd.ext->mul(cd.embed(a), cd.embed(b)));
            CHECK(cd.embed(F->add(a, b)) == cd.ext->add(cd.embed(a), cd.embed(b)));
        }
    }
}

TEST_CASE("Morse test") {
    auto F13 = make_prime_field(13);
    CHECK_FALSE(is_morse(P(F13, {0, 0, -2, 0, 1})).morse);
    CHECK(is_morse(P(F13, {0, 0, -2, 0, 1})).distinct_values == 2);
    CHECK_FALSE(is_morse(P(F13, {0, 0, 0, 1})).morse);
    auto F7 = make_prime_field(7);
    const auto diag = is_morse(P(F7, {0, 1, 0, 1}));
    CHECK(diag.morse);
    CHECK(diag.method == "critical-values");
    CHECK_FALSE(diag.hypothesis_warning);
    const auto cd = critical_data(P(F7, {0, 1, 0, 1}));
    CHECK(residues(*cd.ext, cd.distinct_values()).size() == 2);
    CHECK(is_morse(P(make_prime_field(3), {0, 1, 0, 1})).hypothesis_warning);
}

TEST_CASE("resultant route agrees with critical values") {
    std::mt19937_64 rng(12);
    for (std::int64_t p : {11, 13, 101}) {
        auto F = make_prime_field(p);
        for (int i = 0; i < 60; ++i) {
            const int d = 2 + static_cast<int>(rng() % 5);
            std::vector<FieldElement> c;
            for (int k = 0; k < d; ++k) c.push_back(F->random(rng));
            c.push_back(F->one());
            const Poly f(F, c);
            CHECK(distinct_critical_values_by_resultant(f) == critical_data(f).distinct_value_count);
        }
    }
    // f' = 13 u w with irreducible u, w of degrees 5 and 7 needs F_{17^35}.
    auto F17 = make_prime_field(17);
    Poly u(F17), w(F17);
    for (std::uint64_t idx = 1;; ++idx) {
        u = Poly::monic_from_index(F17, 5, idx);
        if (is_irreducible(u)) break;
    }
    for (std::uint64_t idx = 1;; ++idx) {
        w = Poly::monic_from_index(F17, 7, idx);
        if (is_irreducible(w)) break;
    }
    const Poly df = scale(u * w, F17->from_int(13));
    std::vector<FieldElement> c{F17->zero()};
    for (int i = 0; i <= df.degree(); ++i) c.push_back(F17->div(df.coeff(i), F17->from_int(i + 1)));
    const Poly f(F17, c);
    REQUIRE(derivative(f) == df);
    try {
        critical_data(f);
        FAIL("expected ExtensionTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ExtensionTooLarge);
    }
    const auto diag = is_morse(f);
    CHECK(diag.method == "resultant");
    CHECK(diag.derivative_squarefree);
    CHECK(diag.morse == (diag.distinct_values == 12));
}

TEST_CASE("bad sets") {
    for (std::int64_t p : {7, 11, 13, 10007, 10009}) {
        auto F = make_prime_field(p);
        CHECK(residues(*F, bad_set(P(F, {0, 0, -2, 0, 1}))) == std::vector<std::int64_t>{1, p - 1});
        CHECK(bad_set(P(F, {0, 0, 0, 1})).empty());
    }
    std::mt19937_64 rng(21);
    auto F = make_prime_field(31);
    for (int i = 0; i < 60; ++i) {
        const int d = 2 + static_cast<int>(rng() % 5);
        std::vector<FieldElement> c;
        for (int k = 0; k < d; ++k) c.push_back(F->random(rng));
        c.push_back(F->one());
        const Poly f(F, c);
        const auto B = bad_set(f);
        CHECK(B.size() <= static_cast<std::size_t>((d - 1) * (d - 1)));
        for (const auto& b : B) {
            CHECK_FALSE(b.is_zero());
            CHECK(std::find(B.begin(), B.end(), F->neg(b)) != B.end());
        }
    }
}

TEST_CASE("bad shift check") {
    auto F7 = make_prime_field(7);
    const Poly w = P(F7, {0, 0, -2, 0, 1});
    CHECK(bad_shift_check(w, {F7->zero(), F7->one()}));
    CHECK_FALSE(bad_shift_check(w, {F7->zero(), F7->from_int(2)}));
    CHECK_FALSE(bad_shift_check(P(F7, {0, 0, 0, 1}), {F7->zero(), F7->one(), F7->from_int(3)}));
    CHECK_FALSE(bad_shift_check(w, {F7->from_int(4)}));
}

TEST_CASE("cancellation classifier") {
    auto F7 = make_prime_field(7);
    const auto v = classify_mu_cancellation(P(F7, {0, 0, 0, 1}));
    CHECK(v.kind == CancellationKind::NoCancellation);
    REQUIRE(v.sign.has_value());
    CHECK(*v.sign == -1);
    CHECK(v.witness == P(F7, {0, 0, -27}));
    CHECK(*v.sign * 6 == interval_mu_sum(P(F7, {0, 0, 0, 1})));
    CHECK(interval_mu_sum(P(F7, {0, 0, 0, 1})) == -6);

    auto F5 = make_prime_field(5);
    const auto v5 = classify_mu_cancellation(P(F5, {0, 0, 0, 1}));
    CHECK(v5.kind == CancellationKind::NoCancellation);
    CHECK(*v5.sign == 1);
    CHECK(interval_mu_sum(P(F5, {0, 0, 0, 1})) == 4);

    CHECK(classify_mu_cancellation(P(F7, {0, 1, 0, 1})).kind == CancellationKind::SquareRootCancellation);
    CHECK_FALSE(classify_mu_cancellation(P(F7, {0, 1, 0, 1})).sign.has_value());

    try {
        classify_mu_cancellation(P(make_prime_field(2), {0, 1, 0, 1}));
        FAIL("expected EvenCharacteristic");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EvenCharacteristic);
    }
    try {
        classify_mu_cancellation(P(make_prime_field(3), {0, 1, 0, 1}));
        FAIL("expected FieldTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldTooSmall);
    }
}

TEST_CASE("classifier agrees with exhaustive interval sums") {
    std::mt19937_64 rng(30);
    for (std::int64_t p : {11, 13, 17, 19}) {
        auto F = make_prime_field(p);
        for (int i = 0; i < 12; ++i) {
            const int d = 2 + static_cast<int>(rng() % 3);
            std::vector<FieldElement> c;
            for (int k = 0; k < d; ++k) c.push_back(F->random(rng));
            // Pure powers exercise the no-cancellation branch.
            if (i % 4 == 0) std::fill(c.begin(), c.end(), F->zero());
            c.push_back(F->one());
            const Poly f(F, c);
            const auto v = classify_mu_cancellation(f);
            const std::int64_t s = interval_mu_sum(f);
            if (v.kind == CancellationKind::NoCancellation) {
                CHECK(std::abs(s) >= p - d);
                CHECK((s > 0 ? 1 : -1) == *v.sign);
            }
        }
    }
}

TEST_CASE("Stickelberger parity") {
    CHECK(stickelberger_mu(P(make_prime_field(5), {1, 0, 1})) == 1);
    CHECK(stickelberger_mu(P(make_prime_field(3), {1, 0, 1})) == -1);
    CHECK(stickelberger_mu(P(make_prime_field(3), {0, 0, 1})) == 0);
    try {
        stickelberger_mu(P(make_prime_field(2), {1, 1, 1}));
        FAIL("expected EvenCharacteristic");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EvenCharacteristic);
    }

    std::mt19937_64 rng(77);
    const std::vector<std::int64_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    int checked = 0;
    while (checked < 1000) {
        auto F = make_prime_field(primes[rng() % primes.size()]);
        const int d = 1 + static_cast<int>(rng() % 6);
        std::vector<FieldElement> c;
        for (int k = 0; k < d; ++k) c.push_back(F->random(rng));
        c.push_back(F->one());
        const Poly g(F, c);
        if (!is_squarefree(g)) continue;
        CHECK(stickelberger_mu(g) == mu_by_factoring(g));
        ++checked;
    }
}
