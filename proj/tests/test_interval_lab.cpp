#include <doctest.h>

#include "oracles.hpp"

#include <shortint/interval_lab.hpp>
#include <shortint/tolerances.hpp>

#include <cmath>
#include <set>

using namespace shortint;

namespace {

Poly P(const FieldPtr& F, std::vector<std::int64_t> c) {
    return Poly::from_ints(F, c);
}

Poly random_monic(const FieldPtr& F, int d, std::mt19937_64& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i < d; ++i) c.push_back(F->random(rng));
    c.push_back(F->one());
    return Poly(F, c);
}

// Direct sum using evaluate() on every member of the interval.
Rational direct_sum(const Poly& f, const std::vector<FieldElement>& shifts, const std::vector<ClassFunction>& phis) {
    Rational total = 0;
    for (const auto& a : oracle::all_elements(f.field())) {
        Rational term = 1;
        for (std::size_t i = 0; i < shifts.size(); ++i) term *= evaluate(phis[i], add_constant(add_constant(f, shifts[i]), a));
        total += term;
    }
    return total;
}

bool same_report(const ExperimentReport& a, const ExperimentReport& b) {
    return a.raw_sum == b.raw_sum && a.predicted_constant == b.predicted_constant && a.prediction == b.prediction &&
           a.cycle_type_counts == b.cycle_type_counts && a.nonsquarefree_count == b.nonsquarefree_count &&
           a.normalized_error == b.normalized_error && a.morse == b.morse;
}

}  // namespace

TEST_CASE("class sums of the cube family") {
    const auto prime3 = make_builtin(Builtin::prime, 3);
    auto F7 = make_prime_field(7);
    const auto r7 = class_sum(P(F7, {0, 0, 0, 1}), prime3);
    CHECK(r7.raw_sum == 4);
    CHECK_FALSE(r7.morse);
    CHECK(r7.prediction == Prediction::empirical);
    CHECK(r7.nonsquarefree_count == 1);
    CHECK(r7.cycle_type_counts.at("3") == 4);
    CHECK(r7.cycle_type_counts.at("1,1,1") == 2);
    // Empirical coset constant: 4 of the 6 squarefree members are prime.
    CHECK(r7.predicted_constant == Rational(2, 3));

    auto F5 = make_prime_field(5);
    CHECK(class_sum(P(F5, {0, 0, 0, 1}), prime3).raw_sum == 0);
    for (std::int64_t p : {13, 19, 31}) {
        CHECK(class_sum(P(make_prime_field(p), {0, 0, 0, 1}), prime3).raw_sum == Rational(2 * (p - 1), 3));
    }
    for (std::int64_t p : {11, 17, 29}) CHECK(class_sum(P(make_prime_field(p), {0, 0, 0, 1}), prime3).raw_sum == 0);
}

TEST_CASE("generic predictions for Morse polynomials") {
    auto F = make_prime_field(101);
    const Poly f = P(F, {1, 1, 0, 1});
    REQUIRE(is_morse(f).morse);
    const auto r = class_sum(f, make_builtin(Builtin::prime, 3));
    CHECK(r.prediction == Prediction::generic);
    CHECK(r.predicted_constant == Rational(1, 3));
    CHECK(r.main_term == Rational(101, 3));
    CHECK(r.abs_error == abs(r.raw_sum - Rational(101, 3)));
}

TEST_CASE("sweep sums agree with direct evaluation") {
    std::mt19937_64 rng(8);
    for (auto F : {make_prime_field(11), make_prime_field(23), make_extension(make_prime_field(3), 2, 0)}) {
        for (int i = 0; i < 6; ++i) {
            const int d = 2 + static_cast<int>(rng() % 3);
            const Poly f = random_monic(F, d, rng);
            std::map<CycleType, Rational> table;
            for (const auto& lambda : partitions_of(d)) table[lambda] = Rational(static_cast<int>(rng() % 7) - 3, 2);
            const auto custom = make_custom(d, "custom", table, Rational(1, 2));
            const std::vector<ClassFunction> phis{custom, make_builtin(Builtin::moebius, d)};
            std::vector<FieldElement> shifts{F->random(rng)};
            do shifts.resize(1), shifts.push_back(F->random(rng));
            while (shifts[1] == shifts[0]);
            const auto joint = correlation_sum(IntervalSpec{f, shifts, phis});
            CHECK(joint.raw_sum == direct_sum(f, shifts, phis));
            const auto single = class_sum(f, custom);
            CHECK(single.raw_sum == direct_sum(f, {F->zero()}, {custom}));

            std::int64_t total = single.nonsquarefree_count;
            for (const auto& [key, count] : single.cycle_type_counts) total += count;
            CHECK(total == static_cast<std::int64_t>(*F->order_u64()));
        }
    }
}

TEST_CASE("a single shift correlation is the class sum") {
    auto F = make_prime_field(31);
    const Poly f = P(F, {3, 0, 1, 0, 1});
    const auto phi = make_builtin(Builtin::divisor, 4, 2);
    const auto a = class_sum(f, phi);
    const auto b = correlation_sum(IntervalSpec{f, {F->zero()}, {phi}});
    CHECK(same_report(a, b));
}

TEST_CASE("interval spec validation") {
    auto F = make_prime_field(11);
    const Poly f = P(F, {0, 1, 0, 1});
    const auto prime3 = make_builtin(Builtin::prime, 3);
    CHECK_THROWS_AS(correlation_sum(IntervalSpec{f, {F->one(), F->one()}, {prime3, prime3}}), Error);
    CHECK_THROWS_AS(correlation_sum(IntervalSpec{f, {F->one()}, {prime3, prime3}}), Error);
    try {
        correlation_sum(IntervalSpec{f, {F->one()}, {make_builtin(Builtin::prime, 2)}});
        FAIL("expected DegreeMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegreeMismatch);
    }
}

TEST_CASE("prediction labels for non-generic correlations") {
    auto F = make_prime_field(13);
    const auto prime4 = make_builtin(Builtin::prime, 4);
    const Poly w = P(F, {0, 0, -2, 0, 1});
    // 1 is a bad shift, 2 is not.
    CHECK(correlation_sum(IntervalSpec{w, {F->zero(), F->one()}, {prime4, prime4}}).prediction == Prediction::empirical);
    const auto r = correlation_sum(IntervalSpec{w, {F->zero(), F->from_int(2)}, {prime4, prime4}});
    CHECK(r.prediction == Prediction::empirical_product);
    const auto c = class_sum(w, prime4);
    CHECK(r.predicted_constant == c.predicted_constant * c.predicted_constant);
}

TEST_CASE("Moebius battery") {
    auto F7 = make_prime_field(7);
    const auto b = moebius_battery(P(F7, {0, 0, 0, 1}), {F7->zero()}, 1.0);
    CHECK(b.single.raw_sum == -6);
    CHECK(b.verdict.kind == CancellationKind::NoCancellation);
    CHECK(b.dichotomy_ok);

    auto F13 = make_prime_field(13);
    const auto c = moebius_battery(P(F13, {0, 0, 0, 1}), {F13->zero(), F13->one()}, 1.0);
    CHECK(abs(c.single.raw_sum) >= 10);
    CHECK(abs(c.chowla.raw_sum) >= 11);

    auto F = make_prime_field(1009);
    const auto m = moebius_battery(P(F, {1, 1, 0, 1}), {F->zero(), F->one()}, 3.0);
    CHECK(m.verdict.kind == CancellationKind::SquareRootCancellation);
    CHECK(m.single.normalized_error <= 3.0);

    try {
        moebius_battery(P(F, {1, 1, 0, 1}), {F->zero(), F->one()}, 0.0);
        FAIL("expected DichotomyViolation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DichotomyViolation);
    }
}

TEST_CASE("Chebotarev statistics") {
    auto F11 = make_prime_field(11);
    const auto r = chebotarev_empirical(P(F11, {0, 0, 0, 1}), {F11->zero()});
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].key == "2,1");
    CHECK(r.rows[0].frequency == 1);
    CHECK(r.squarefree_count == 10);

    auto F = make_prime_field(101);
    const auto s = chebotarev_empirical(P(F, {1, 1, 0, 1}), {F->zero(), F->one()});
    Rational total = 0;
    for (const auto& row : s.rows) total += row.frequency;
    CHECK(total == 1);
    CHECK(s.total_variation >= 0);
    CHECK(s.total_variation <= 1);
    REQUIRE(s.row("3|3") != nullptr);
    CHECK(s.row("3|3")->predicted == Rational(1, 9));
}

TEST_CASE("squarefree census") {
    for (std::int64_t p : {3, 7, 101}) {
        auto F = make_prime_field(p);
        const auto c = squarefree_census(P(F, {0, 0, 1}), {F->zero()});
        CHECK(c.nonsquarefree == 1);
    }
    auto F7 = make_prime_field(7);
    CHECK(squarefree_census(P(F7, {0, 0, 0, 1}), {F7->zero()}).nonsquarefree == 1);

    std::mt19937_64 rng(3);
    auto F = make_prime_field(97);
    for (int i = 0; i < 100; ++i) {
        const int d = 2 + static_cast<int>(rng() % 4);
        const Poly f = random_monic(F, d, rng);
        std::vector<FieldElement> shifts{F->random(rng)};
        do shifts.resize(1), shifts.push_back(F->random(rng));
        while (shifts[1] == shifts[0]);
        const auto c = squarefree_census(f, shifts);
        CHECK(c.nonsquarefree <= c.bound);
        CHECK(c.squarefree + c.nonsquarefree == 97);
    }
}

TEST_CASE("Gauss census") {
    CHECK(gauss_census(2, 2).enumerated == 1);
    CHECK(gauss_census(2, 2).formula == 1);
    CHECK(gauss_census(3, 3).enumerated == 8);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int d = 1; d <= 4; ++d) {
            const auto g = gauss_census(p, d);
            CHECK(g.enumerated == g.formula);
            CHECK(g.formula == oracle::gauss_formula(p, d));
        }
    }
    try {
        gauss_census(101, 4);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("Morse density scan") {
    auto F13 = make_prime_field(13);
    const auto scan = morse_density_scan(P(F13, {0, 0, 0, 1}));
    CHECK_FALSE(scan.hypothesis_violated);
    CHECK(scan.bad_s == std::vector<std::string>{"0"});

    auto F3 = make_prime_field(3);
    CHECK(morse_density_scan(P(F3, {0, 0, 0, 1})).hypothesis_violated);
    auto F7 = make_prime_field(7);
    CHECK(morse_density_scan(P(F7, {0, 0, 0, 0, 0, 0, 0, 1})).hypothesis_violated);

    std::mt19937_64 rng(15);
    auto F = make_prime_field(101);
    for (int i = 0; i < 3; ++i) {
        const auto s = morse_density_scan(random_monic(F, 4, rng));
        CHECK(s.bad_count <= 48);
        CHECK(s.scanned == 101);
    }
}

TEST_CASE("multiset of shifted critical values") {
    // Critical values {0, 1, 3}; shifts (0, 1, 2, 4) cover each point twice.
    auto F7 = make_prime_field(7);
    const Poly f = P(F7, {0, 0, 3, 1, 1});
    const auto cd = critical_data(f);
    CHECK(cd.distinct_value_count == 3);
    const auto m = shifted_value_multiset(f, {F7->zero(), F7->one(), F7->from_int(2), F7->from_int(4)});
    CHECK(m.size() == 6);
    for (const auto& [key, mult] : m) CHECK(mult == 2);
}

TEST_CASE("large q demo at small l") {
    // l = 1: check the multiplicity claim against a direct search for critical values.
    const auto r = large_q_demo(5, 1);
    CHECK(r.multiplicity_two);
    auto F5 = make_prime_field(5);
    const std::int64_t s = std::stoll(r.s);
    const Poly fs = P(F5, {0, s, 0, 1});
    std::map<std::int64_t, int> mult;
    std::set<std::int64_t> values;
    for (const auto& tau : oracle::roots_by_search(derivative(fs))) values.insert(F5->index_u64(evaluate(fs, tau)));
    const std::int64_t alpha = std::stoll(r.alpha);
    CHECK(values == std::set<std::int64_t>{alpha, (5 - alpha) % 5});
    for (std::int64_t i = 1; i <= 5; ++i)
        for (auto v : values) ++mult[(v + i * alpha) % 5];
    CHECK(mult.size() == 5);
    for (const auto& [v, m] : mult) CHECK(m == 2);

    const auto r2 = large_q_demo(5, 2);
    CHECK(r2.multiplicity_two);
    CHECK(r2.single_sums.size() == 5);
    for (const auto& v : r2.single_sums) CHECK(v == r2.single_sums.front());
    try {
        large_q_demo(3, 2);
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
    }
}

TEST_CASE("reports do not depend on the worker count") {
    auto F = make_prime_field(211);
    const Poly f = P(F, {2, 0, 5, 1, 1});
    const IntervalSpec spec{f, {F->zero(), F->one(), F->from_int(5)},
                            {make_builtin(Builtin::prime, 4), make_builtin(Builtin::moebius, 4), make_builtin(Builtin::divisor, 4, 2)}};
    const auto one = correlation_sum(spec, {1});
    for (unsigned w : {2u, 3u, 8u}) {
        const auto other = correlation_sum(spec, {w});
        CHECK(same_report(one, other));
        CHECK(other.worker_count == w);
    }
    const auto scan1 = morse_density_scan(f, {1});
    const auto scan8 = morse_density_scan(f, {8});
    CHECK(scan1.bad_s == scan8.bad_s);
    CHECK(gauss_census(5, 4, {1}).enumerated == gauss_census(5, 4, {8}).enumerated);
}

namespace {

// Integral of d (x - r)^2 m(x) plus a constant: a double critical point.
Poly random_non_morse(const FieldPtr& F, int d, std::mt19937_64& rng) {
    std::vector<FieldElement> m;
    for (int k = 0; k < d - 3; ++k) m.push_back(F->random(rng));
    m.push_back(F->one());
    const FieldElement r = F->random(rng);
    const Poly lin(F, {F->neg(r), F->one()});
    const Poly df = scale(lin * lin * Poly(F, m), F->from_int(d));
    std::vector<FieldElement> c{F->random(rng)};
    for (int i = 0; i <= df.degree(); ++i) c.push_back(F->div(df.coeff(i), F->from_int(i + 1)));
    return Poly(F, c);
}

}  // namespace

TEST_CASE("projections and joint sums match separate sweeps") {
    auto F = make_prime_field(101);
    std::mt19937_64 rng(40);
    for (int i = 0; i < 5; ++i) {
        const Poly f = random_monic(F, 3 + i % 3, rng);
        const std::vector<FieldElement> shifts{F->zero(), F->from_int(3), F->from_int(7)};
        const auto joint = sweep_cycle_types(f, shifts, {1});
        const auto sub = project(joint, {2, 0});
        const auto direct = sweep_cycle_types(f, {shifts[2], shifts[0]}, {1});
        CHECK(sub.counts == direct.counts);
        CHECK(sub.nonsquarefree == direct.nonsquarefree);
        const auto mu = make_builtin(Builtin::moebius, f.degree());
        const auto prime = make_builtin(Builtin::prime, f.degree());
        CHECK(joint_sum(sub, {mu, prime}) == direct_sum(f, {shifts[2], shifts[0]}, {mu, prime}));
        std::int64_t total = 0;
        for (const auto& [key, n] : joint.counts) total += n;
        CHECK(total == joint.q);
    }
    const auto joint = sweep_cycle_types(P(F, {0, 0, 0, 1}), {F->zero()}, {1});
    CHECK_THROWS_AS(joint_sum(joint, {}), Error);
    CHECK_THROWS_AS(project(joint, {1}), Error);
}

TEST_CASE("cycle type counts and non-squarefree count partition the interval") {
    std::mt19937_64 rng(41);
    for (std::int64_t p : {7, 31, 101}) {
        auto F = make_prime_field(p);
        for (int i = 0; i < 6; ++i) {
            const Poly f = random_monic(F, 2 + i % 4, rng);
            const auto r = correlation_sum({f, {F->zero(), F->one()}, {make_builtin(Builtin::prime, f.degree()),
                                                                        make_builtin(Builtin::prime, f.degree())}},
                                           {2});
            std::int64_t total = r.nonsquarefree_count;
            for (const auto& [key, n] : r.cycle_type_counts) total += n;
            CHECK(total == p);
        }
    }
}

TEST_CASE("product law for non-Morse polynomials") {
    const double C = Tolerances::builtin().C("product_law");
    auto F = make_prime_field(1009);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        const int d = 3 + static_cast<int>(rng() % 3);
        const Poly f = random_non_morse(F, d, rng);
        REQUIRE_FALSE(is_morse(f).morse);
        FieldElement h = F->random(rng);
        while (h.is_zero() || bad_shift_check(f, {F->zero(), h})) h = F->random(rng);
        const auto prime = make_builtin(Builtin::prime, d);
        const Rational c = class_sum(f, prime, {1}).predicted_constant;
        const auto pair = correlation_sum({f, {F->zero(), h}, {prime, prime}}, {1});
        CHECK(pair.prediction == Prediction::empirical_product);
        CHECK(pair.predicted_constant == c * c);
        CHECK(std::abs(to_double(pair.raw_sum - c * c * 1009)) <= C * std::sqrt(1009.0));
    }
}

TEST_CASE("Titchmarsh and shifted divisor forms") {
    const auto tol = Tolerances::builtin();
    auto F = make_prime_field(1009);
    std::mt19937_64 rng(43);
    for (int i = 0; i < 3; ++i) {
        Poly f = random_monic(F, 3, rng);
        while (!is_morse(f).morse) f = random_monic(F, 3, rng);
        const auto prime = make_builtin(Builtin::prime, 3);
        const auto d2 = make_builtin(Builtin::divisor, 3, 2);
        const auto d3 = make_builtin(Builtin::divisor, 3, 3);
        // (1/3) C(5, 2) and C(4, 1) C(5, 2)
        CHECK(mean_constant(prime) * mean_constant(d3) == Rational(10, 3));
        CHECK(mean_constant(d2) * mean_constant(d3) == 40);
        const auto joint = sweep_cycle_types(f, {F->zero(), F->one()}, {1});
        const double root = std::sqrt(1009.0);
        CHECK(std::abs(to_double(joint_sum(joint, {prime, d3}) - Rational(10 * 1009, 3))) <=
              tol.C("titchmarsh_d3_r3") * root);
        CHECK(std::abs(to_double(joint_sum(joint, {d2, d3}) - 40 * 1009)) <= tol.C("shifted_divisor_d3_r2r3") * root);
    }
}
