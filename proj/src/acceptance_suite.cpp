#include <shortint/acceptance_suite.hpp>

#include <shortint/poly_expr.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

namespace shortint {

namespace {

const char* const kNames[kSuiteCriteria] = {
    "gauss-count",
    "cube-prime-density",
    "cube-shift-independence",
    "morse-prime-counts",
    "moebius-chowla-cancellation",
    "cube-moebius-exact",
    "quartic-independence-breakdown",
    "bad-shift-sets",
    "divisor-constants",
    "moebius-sign-identity",
    "factorization-oracles",
    "squarefree-census",
    "chebotarev-frequencies",
    "morse-genericity-scan",
    "large-q-demo",
    "determinism",
};

const char* const kClaims[kSuiteCriteria] = {
    "enumerated irreducible counts equal (1/d) sum mu(d/e) p^e for p in {2,3,5,7}, d in {2,3,4}",
    "sum of 1_prime over x^3 + a is 2(p-1)/3 for p = 1 mod 3 and 0 for p = 2 mod 3",
    "prime pairs (x^3 + a, x^3 + a + h) number 4p/9 + O(sqrt p)",
    "Morse f of degree 3, 4, 5: p/d primes and p/d^2 prime pairs, up to O(sqrt p)",
    "Morse f: Moebius and Chowla sums are O(sqrt p)",
    "sum of mu(x^3 + a) is -(p-1) for p = 1 mod 3 and p-1 for p = 2 mod 3, matching the classifier sign",
    "x^4 - 2x^2: pair densities 1/8 or 0 at shift 1, 1/16 at shift 2, prime density 1/4",
    "bad shifts of x^4 - 2x^2 are {1, -1}; x^3 has none",
    "divisor sums d=4: 5p, (5/4)p and 25p up to O(sqrt p)",
    "(-1)^{#parts} = (-1)^d sgn on every partition of d <= 8",
    "factor matches trial division for degree <= 4 over F_2, F_3, F_5; discriminant parity matches mu",
    "non-squarefree members of a shifted pair number at most k(d-1)",
    "cycle-type frequencies of a Morse quartic are 1/z + O(1/sqrt p)",
    "x^3 + s x over F_13 fails Morse only at s = 0; random scans stay under the bound",
    "large q: single Moebius sums O(sqrt q) while the p-shift product sum is at least q/2",
    "reports agree byte for byte across worker counts",
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Measurement exact(std::string label, const std::string& observed, const std::string& expected) {
    return {std::move(label), observed, expected, "", observed == expected};
}

Measurement flag(std::string label, bool ok) {
    return {std::move(label), ok ? "true" : "false", "true", "", ok};
}

std::vector<FieldElement> ints(const FieldPtr& F, std::initializer_list<std::int64_t> v) {
    std::vector<FieldElement> out;
    for (auto x : v) out.push_back(F->from_int(x));
    return out;
}

class Suite {
public:
    explicit Suite(const SuiteOptions& opts)
        : opts_(opts), tol_(opts.tolerances ? *opts.tolerances : Tolerances::builtin()) {
        sweep_.workers = opts.workers;
        std::tie(p1_, p2_) = suite_primes(opts.quick);
    }

    const Tolerances& tolerances() const { return tol_; }

    CheckResult run(int id) {
        CheckResult c;
        c.id = id;
        c.name = kNames[id - 1];
        c.claim = kClaims[id - 1];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            dispatch(id, c);
            c.pass = !c.measurements.empty();
            for (const auto& m : c.measurements) c.pass = c.pass && m.pass;
        } catch (const std::exception& e) {
            c.pass = false;
            c.error = e.what();
        }
        c.elapsed_ms = ms_since(t0);
        return c;
    }

    CheckResult determinism(const std::vector<CheckResult>& first) {
        CheckResult c;
        c.id = 16;
        c.name = kNames[15];
        c.claim = kClaims[15];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            SuiteOptions other = opts_;
            other.tolerances = tol_;
            const unsigned used = resolve_workers(opts_.workers);
            other.workers = used == 1 ? 3 : 1;
            Suite rerun(other);
            const ReportOptions no_timings{false};
            bool all_same = true;
            for (const auto& prev : first) {
                if (prev.id == 16) continue;
                const CheckResult again = rerun.run(prev.id);
                const bool same = to_json(prev, no_timings).dump() == to_json(again, no_timings).dump();
                all_same = all_same && same;
                c.measurements.push_back({"criterion " + std::to_string(prev.id) + " under another worker count",
                                          same ? "identical" : "differs", "identical", "", same});
            }
            c.pass = all_same && !c.measurements.empty();
        } catch (const std::exception& e) {
            c.pass = false;
            c.error = e.what();
        }
        c.elapsed_ms = ms_since(t0);
        return c;
    }

private:
    void dispatch(int id, CheckResult& c) {
        switch (id) {
            case 1: return gauss(c);
            case 2: return cube_density(c);
            case 3: return cube_pairs(c);
            case 4: return morse_counts(c);
            case 5: return moebius_chowla(c);
            case 6: return cube_moebius(c);
            case 7: return quartic(c);
            case 8: return bad_sets(c);
            case 9: return divisors(c);
            case 10: return sign_identity(c);
            case 11: return factor_oracles(c);
            case 12: return census(c);
            case 13: return chebotarev(c);
            case 14: return morse_scan(c);
            case 15: return large_q(c);
            case 16: {
                std::vector<CheckResult> first;
                for (int i = 1; i < kSuiteCriteria; ++i) first.push_back(run(i));
                c = determinism(first);
                return;
            }
            default:
                throw Error(ErrorKind::OutOfRange, "no criterion " + std::to_string(id));
        }
    }

    // |observed - expected| <= C sqrt(q) with C from the named family.
    Measurement within(std::string label, const Rational& observed, const Rational& expected, const std::string& family,
                       std::int64_t q) const {
        const double C = tol_.C(family);
        const double err = std::abs(to_double(observed - expected)) / std::sqrt(static_cast<double>(q));
        return {std::move(label), to_string(observed) + " (|err|/sqrt(q) = " + fmt(err) + ")", to_string(expected),
                family + ": C = " + fmt(C), err <= C};
    }

    const JointCounts& sweep(const Poly& f, const std::vector<FieldElement>& shifts) {
        std::string key = f.field().describe() + "|" + f.to_string();
        for (const auto& h : shifts) key += "|" + f.field().to_string(h);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, sweep_cycle_types(f, shifts, sweep_)).first;
        return it->second;
    }

    static Rational sum(const JointCounts& j, std::vector<ClassFunction> phis) {
        if (phis.size() < j.k) {
            std::vector<std::size_t> which(phis.size());
            for (std::size_t i = 0; i < which.size(); ++i) which[i] = i;
            return joint_sum(project(j, which), phis);
        }
        return joint_sum(j, phis);
    }

    static Poly cube(const FieldPtr& F) { return parse_poly("x^3", F); }
    static Poly quartic(const FieldPtr& F) { return parse_poly("x^4-2*x^2", F); }

    void gauss(CheckResult& c) {
        for (std::int64_t p : {2, 3, 5, 7})
            for (int d : {2, 3, 4}) {
                const auto g = gauss_census(p, d, sweep_);
                c.measurements.push_back(exact("p=" + std::to_string(p) + " d=" + std::to_string(d),
                                               std::to_string(g.enumerated), std::to_string(gauss_formula(p, d))));
            }
        // Independent closed forms: (p^2 - p)/2, (p^3 - p)/3, (p^4 - p^2)/4.
        for (std::int64_t p : {2, 3, 5, 7}) {
            c.measurements.push_back(exact("closed form p=" + std::to_string(p),
                                           std::to_string(gauss_formula(p, 2)) + "," + std::to_string(gauss_formula(p, 3)) +
                                               "," + std::to_string(gauss_formula(p, 4)),
                                           std::to_string((p * p - p) / 2) + "," + std::to_string((p * p * p - p) / 3) +
                                               "," + std::to_string((p * p * p * p - p * p) / 4)));
        }
    }

    void cube_density(CheckResult& c) {
        for (std::int64_t p : {std::int64_t{7}, std::int64_t{13}, p1_, std::int64_t{5}, std::int64_t{11}, p2_}) {
            auto F = make_prime_field(p);
            const Rational s = sum(sweep(cube(F), ints(F, {0})), {make_builtin(Builtin::prime, 3)});
            const Rational expected = p % 3 == 1 ? Rational(2 * (p - 1), 3) : Rational(0);
            c.measurements.push_back(exact("p=" + std::to_string(p), to_string(s), to_string(expected)));
        }
    }

    void cube_pairs(CheckResult& c) {
        auto F = make_prime_field(p1_);
        const auto prime = make_builtin(Builtin::prime, 3);
        const Rational s = sum(sweep(cube(F), ints(F, {0, 1})), {prime, prime});
        c.measurements.push_back(within("p=" + std::to_string(p1_) + " shifts 0,1", s, Rational(4 * p1_, 9),
                                        "kummer_pair", p1_));
    }

    void morse_counts(CheckResult& c) {
        auto F = make_prime_field(p2_);
        for (int d : {3, 4, 5}) {
            const Poly f = suite_morse_poly(F, d);
            const auto diag = is_morse(f);
            c.measurements.push_back(flag(f.to_string() + " is Morse", diag.morse));
            const auto prime = make_builtin(Builtin::prime, d);
            c.measurements.push_back(exact("generic constant d=" + std::to_string(d), to_string(mean_constant(prime)),
                                           "1/" + std::to_string(d)));
            const auto& j = sweep(f, ints(F, {0, 1}));
            const std::string ds = std::to_string(d);
            c.measurements.push_back(within("primes d=" + ds, sum(j, {prime}), Rational(p2_, d), "morse_prime_d" + ds, p2_));
            c.measurements.push_back(
                within("prime pairs d=" + ds, sum(j, {prime, prime}), Rational(p2_, d * d), "morse_pair_d" + ds, p2_));
        }
    }

    void moebius_chowla(CheckResult& c) {
        auto F = make_prime_field(p2_);
        for (int d : {3, 4, 5}) {
            const Poly f = suite_morse_poly(F, d);
            const auto mu = make_builtin(Builtin::moebius, d);
            const auto& j = sweep(f, ints(F, {0, 1}));
            const std::string ds = std::to_string(d);
            c.measurements.push_back(within("mu d=" + ds, sum(j, {mu}), 0, "moebius_d" + ds, p2_));
            c.measurements.push_back(within("mu mu(+1) d=" + ds, sum(j, {mu, mu}), 0, "chowla_d" + ds, p2_));
            c.measurements.push_back(exact("classifier d=" + ds, to_string(classify_mu_cancellation(f).kind),
                                           to_string(CancellationKind::SquareRootCancellation)));
        }
    }

    static std::int64_t mu_by_factoring(const Poly& g) {
        const auto r = factor(g);
        for (const auto& f : r.factors)
            if (f.multiplicity > 1) return 0;
        return r.omega() % 2 == 0 ? 1 : -1;
    }

    void cube_moebius(CheckResult& c) {
        for (std::int64_t p : {std::int64_t{7}, std::int64_t{5}}) {
            auto F = make_prime_field(p);
            std::int64_t s = 0;
            for (std::int64_t a = 0; a < p; ++a) s += mu_by_factoring(add_constant(cube(F), F->from_int(a)));
            const std::int64_t law = p % 3 == 1 ? -(p - 1) : p - 1;
            c.measurements.push_back(exact("factoring p=" + std::to_string(p), std::to_string(s), std::to_string(law)));
        }
        for (std::int64_t p : {p1_, p2_}) {
            auto F = make_prime_field(p);
            const Rational s = sum(sweep(cube(F), ints(F, {0})), {make_builtin(Builtin::moebius, 3)});
            const std::int64_t law = p % 3 == 1 ? -(p - 1) : p - 1;
            c.measurements.push_back(exact("p=" + std::to_string(p), to_string(s), std::to_string(law)));
            const auto v = classify_mu_cancellation(cube(F));
            const std::string verdict = to_string(v.kind) + (v.sign ? (*v.sign > 0 ? " +1" : " -1") : "");
            c.measurements.push_back(
                exact("classifier p=" + std::to_string(p), verdict, std::string("NoCancellation ") + (law > 0 ? "+1" : "-1")));
        }
    }

    void quartic(CheckResult& c) {
        const auto prime = make_builtin(Builtin::prime, 4);
        {
            auto F = make_prime_field(p1_);
            const auto& j = sweep(quartic(F), ints(F, {0, 1, 2}));
            const std::string ps = "p=" + std::to_string(p1_);
            c.measurements.push_back(flag("shift 1 is bad", bad_shift_check(quartic(F), ints(F, {0, 1}))));
            c.measurements.push_back(within(ps + " shifts 0,1", joint_sum(project(j, {0, 1}), {prime, prime}),
                                            Rational(p1_, 8), "quartic_pair_bad", p1_));
            c.measurements.push_back(flag("shift 2 is not bad", !bad_shift_check(quartic(F), ints(F, {0, 2}))));
            c.measurements.push_back(within(ps + " shifts 0,2", joint_sum(project(j, {0, 2}), {prime, prime}),
                                            Rational(p1_, 16), "quartic_pair_independent", p1_));
        }
        auto F = make_prime_field(p2_);
        const auto& j = sweep(quartic(F), ints(F, {0, 1}));
        const std::string ps = "p=" + std::to_string(p2_);
        c.measurements.push_back(within(ps + " shifts 0,1", sum(j, {prime, prime}), 0, "quartic_pair_zero", p2_));
        c.measurements.push_back(within(ps + " primes", sum(j, {prime}), Rational(p2_, 4), "quartic_prime", p2_));
    }

    void bad_sets(CheckResult& c) {
        for (std::int64_t p : {std::int64_t{7}, std::int64_t{11}, std::int64_t{13}, p2_, p1_}) {
            auto F = make_prime_field(p);
            std::string got;
            for (const auto& b : bad_set(quartic(F))) got += (got.empty() ? "" : ",") + F->to_string(b);
            c.measurements.push_back(exact("x^4-2*x^2 p=" + std::to_string(p), got, "1," + std::to_string(p - 1)));
            c.measurements.push_back(
                exact("x^3 p=" + std::to_string(p), std::to_string(bad_set(cube(F)).size()), "0"));
        }
    }

    void divisors(CheckResult& c) {
        auto F = make_prime_field(p2_);
        const Poly f = suite_morse_poly(F, 4);
        const auto d2 = make_builtin(Builtin::divisor, 4, 2);
        const auto prime = make_builtin(Builtin::prime, 4);
        const auto& j = sweep(f, ints(F, {0, 1}));
        c.measurements.push_back(within("sum d2", sum(j, {d2}), Rational(5 * p2_), "divisor_d4", p2_));
        c.measurements.push_back(
            within("sum 1_P d2(+1)", sum(j, {prime, d2}), Rational(5 * p2_, 4), "titchmarsh_d4", p2_));
        c.measurements.push_back(within("sum d2 d2(+1)", sum(j, {d2, d2}), Rational(25 * p2_), "shifted_divisor_d4", p2_));
    }

    void sign_identity(CheckResult& c) {
        for (int d = 1; d <= 8; ++d) {
            int ok = 0, total = 0;
            for (const auto& lambda : partitions_of(d)) {
                // Build a permutation with these cycles and count inversions.
                std::vector<int> perm(static_cast<std::size_t>(d));
                int start = 0;
                for (int len : lambda.parts()) {
                    for (int i = 0; i < len; ++i) perm[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
                    start += len;
                }
                int inversions = 0;
                for (int i = 0; i < d; ++i)
                    for (int k = i + 1; k < d; ++k) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(k)];
                const int sgn = inversions % 2 == 0 ? 1 : -1;
                const int parity = d % 2 == 0 ? 1 : -1;
                ok += lambda.sgn_value() == sgn && lambda.mu_value() == parity * sgn;
                ++total;
            }
            c.measurements.push_back(exact("d=" + std::to_string(d), std::to_string(ok), std::to_string(total)));
        }
    }

    void factor_oracles(CheckResult& c) {
        for (std::int64_t p : {2, 3, 5}) {
            auto F = make_prime_field(p);
            std::int64_t agree = 0, total = 0;
            for (int d = 1; d <= 4; ++d) {
                std::uint64_t count = 1;
                for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
                for (std::uint64_t idx = 0; idx < count; ++idx) {
                    const Poly g = Poly::monic_from_index(F, d, idx);
                    const auto a = factor(g, opts_.seed);
                    const auto b = brute_force_factor(g);
                    bool same = a.factors.size() == b.factors.size() && a.unit == b.unit;
                    for (std::size_t i = 0; same && i < a.factors.size(); ++i) {
                        same = a.factors[i].poly == b.factors[i].poly && a.factors[i].multiplicity == b.factors[i].multiplicity;
                    }
                    agree += same;
                    ++total;
                }
            }
            c.measurements.push_back(exact("factor vs trial division F_" + std::to_string(p), std::to_string(agree),
                                           std::to_string(total)));
        }
        std::mt19937_64 rng(opts_.seed + 11);
        const std::int64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
        int agree = 0, checked = 0;
        while (checked < 1000) {
            auto F = make_prime_field(primes[rng() % std::size(primes)]);
            const int d = 1 + static_cast<int>(rng() % 6);
            std::vector<FieldElement> coeffs;
            for (int k = 0; k < d; ++k) coeffs.push_back(F->random(rng));
            coeffs.push_back(F->one());
            const Poly g(F, coeffs);
            if (!is_squarefree(g)) continue;
            agree += stickelberger_mu(g) == mu_by_factoring(g);
            ++checked;
        }
        c.measurements.push_back(exact("discriminant parity vs factorization", std::to_string(agree), "1000"));
    }

    void census(CheckResult& c) {
        std::mt19937_64 rng(opts_.seed + 12);
        const std::int64_t primes[] = {5, 7, 11, 13, 101, 103, 1009};
        int ok = 0;
        std::int64_t worst = 0;
        for (int i = 0; i < 100; ++i) {
            auto F = make_prime_field(primes[rng() % std::size(primes)]);
            const int d = 2 + static_cast<int>(rng() % 4);
            std::vector<FieldElement> coeffs;
            for (int k = 0; k < d; ++k) coeffs.push_back(F->random(rng));
            coeffs.push_back(F->one());
            const Poly f(F, coeffs);
            FieldElement h = F->random(rng);
            while (h.is_zero()) h = F->random(rng);
            const auto s = squarefree_census(f, {F->zero(), h}, sweep_);
            ok += s.nonsquarefree <= s.bound && s.squarefree + s.nonsquarefree == s.q;
            worst = std::max(worst, s.nonsquarefree - s.bound);
        }
        c.measurements.push_back(exact("specs within k(d-1)", std::to_string(ok), "100"));
        c.measurements.push_back({"max excess over bound", std::to_string(worst), "<= 0", "", worst <= 0});
    }

    void chebotarev(CheckResult& c) {
        auto F = make_prime_field(p2_);
        const Poly f = suite_morse_poly(F, 4);
        const auto r = chebotarev_empirical(f, ints(F, {0}), sweep_);
        const double C = tol_.C("chebotarev_d4");
        const double root = std::sqrt(static_cast<double>(p2_));
        c.measurements.push_back(exact("classes observed", std::to_string(r.rows.size()), "5"));
        for (const auto& row : r.rows) {
            const double scaled = row.deviation * root;
            c.measurements.push_back({"class " + row.key, to_string(row.frequency) + " (|dev| sqrt(p) = " + fmt(scaled) + ")",
                                      to_string(row.predicted), "chebotarev_d4: C = " + fmt(C), scaled <= C});
        }
    }

    void morse_scan(CheckResult& c) {
        const auto small = morse_density_scan(parse_poly("x^3", make_prime_field(13)), sweep_);
        std::string got;
        for (const auto& s : small.bad_s) got += (got.empty() ? "" : ",") + s;
        c.measurements.push_back(exact("x^3 over F_13", got, "0"));
        std::mt19937_64 rng(opts_.seed + 14);
        const std::int64_t p = 1009;
        auto F = make_prime_field(p);
        for (int i = 0; i < 3; ++i) {
            const int d = 3 + static_cast<int>(rng() % 3);
            std::vector<FieldElement> coeffs;
            for (int k = 0; k < d; ++k) coeffs.push_back(F->random(rng));
            coeffs.push_back(F->one());
            const Poly f(F, coeffs);
            const auto s = morse_density_scan(f, sweep_);
            const std::int64_t bound = static_cast<std::int64_t>(tol_.morse_bound_factor()) * d * d;
            c.measurements.push_back({f.to_string() + " over F_1009", std::to_string(s.bad_count),
                                      "<= " + std::to_string(bound), "bound factor " + std::to_string(tol_.morse_bound_factor()) + " d^2",
                                      !s.hypothesis_violated && s.bad_count <= bound});
        }
    }

    void large_q(CheckResult& c) {
        const double C = tol_.C("large_q_mu");
        for (unsigned l : {4u, 5u}) {
            const auto r = large_q_demo(5, l, sweep_);
            const std::string qs = "q=" + r.q;
            const double q = std::stod(r.q);
            c.measurements.push_back(flag(qs + " shifted values cover F_p alpha twice", r.multiplicity_two));
            c.measurements.push_back({qs + " max |single|/sqrt(q)", fmt(r.max_single_normalized), "O(1)",
                                      "large_q_mu: C = " + fmt(C), r.max_single_normalized <= C});
            const double mag = std::abs(to_double(r.product_sum));
            c.measurements.push_back({qs + " |product sum|", to_string(r.product_sum), ">= " + fmt(q / 2), "", mag >= q / 2});
        }
    }

    SuiteOptions opts_;
    Tolerances tol_;
    SweepOptions sweep_;
    std::int64_t p1_ = 0, p2_ = 0;
    std::map<std::string, JointCounts> cache_;
};

}  // namespace

std::pair<std::int64_t, std::int64_t> suite_primes(bool quick) {
    return quick ? std::pair<std::int64_t, std::int64_t>{1009, 1019} : std::pair<std::int64_t, std::int64_t>{10009, 10007};
}

Poly suite_morse_poly(const FieldPtr& F, int d) {
    for (std::int64_t c = 1; c < static_cast<std::int64_t>(F->p()); ++c) {
        std::vector<std::int64_t> coeffs(static_cast<std::size_t>(d) + 1, 0);
        coeffs[0] = c;
        coeffs[1] = 1;
        coeffs[static_cast<std::size_t>(d)] = 1;
        const Poly f = Poly::from_ints(F, coeffs);
        if (is_morse(f).morse) return f;
    }
    throw Error(ErrorKind::HypothesisViolated, "no Morse x^" + std::to_string(d) + " + x + c over " + F->describe());
}

bool SuiteReport::all_pass() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

CheckResult run_criterion(int id, const SuiteOptions& opts) {
    if (id < 1 || id > kSuiteCriteria) {
        CheckResult c;
        c.id = id;
        c.name = "unknown";
        c.error = "no criterion " + std::to_string(id);
        return c;
    }
    try {
        Suite suite(opts);
        return suite.run(id);
    } catch (const std::exception& e) {
        CheckResult c;
        c.id = id;
        c.name = kNames[id - 1];
        c.claim = kClaims[id - 1];
        c.error = e.what();
        return c;
    }
}

SuiteReport run_acceptance_suite(const SuiteOptions& opts, const std::function<void(const CheckResult&)>& on_check) {
    SuiteReport report;
    report.quick = opts.quick;
    report.seed = opts.seed;
    report.workers = resolve_workers(opts.workers);
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<Suite> suite;
    try {
        suite.emplace(opts);
        report.tolerance_source = suite->tolerances().source();
    } catch (const std::exception&) {
        for (int id = 1; id <= kSuiteCriteria; ++id) {
            report.checks.push_back(run_criterion(id, opts));
            if (on_check) on_check(report.checks.back());
        }
        report.elapsed_ms = ms_since(t0);
        return report;
    }
    for (int id = 1; id < kSuiteCriteria; ++id) {
        report.checks.push_back(suite->run(id));
        if (on_check) on_check(report.checks.back());
    }
    report.checks.push_back(suite->determinism(report.checks));
    if (on_check) on_check(report.checks.back());
    report.elapsed_ms = ms_since(t0);
    return report;
}

Json to_json(const CheckResult& c, const ReportOptions& opts) {
    Json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["claim"] = c.claim;
    j["pass"] = c.pass;
    j["measurements"] = Json::array();
    for (const auto& m : c.measurements) {
        j["measurements"].push_back({{"label", m.label},
                                     {"observed", m.observed},
                                     {"expected", m.expected},
                                     {"tolerance", m.tolerance},
                                     {"pass", m.pass}});
    }
    if (!c.error.empty()) j["error"] = c.error;
    if (opts.timings) j["elapsed_ms"] = c.elapsed_ms;
    return j;
}

Json to_json(const SuiteReport& r, const ReportOptions& opts) {
    Json j;
    j["quick"] = r.quick;
    j["seed"] = r.seed;
    j["tolerance_source"] = r.tolerance_source;
    j["passed"] = std::count_if(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; });
    j["total"] = r.checks.size();
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back(to_json(c, opts));
    if (opts.timings) {
        j["elapsed_ms"] = r.elapsed_ms;
        j["worker_count"] = r.workers;
    }
    return j;
}

std::string summary_line(const CheckResult& c) {
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d %-32s", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
    std::string line = head;
    int failed = 0;
    for (const auto& m : c.measurements) failed += !m.pass;
    line += std::to_string(c.measurements.size() - static_cast<std::size_t>(failed)) + "/" +
            std::to_string(c.measurements.size()) + " measurements";
    if (!c.error.empty()) line += "  error: " + c.error;
    for (const auto& m : c.measurements) {
        if (m.pass) continue;
        line += "  [" + m.label + ": got " + m.observed + ", want " + m.expected + (m.tolerance.empty() ? "" : ", " + m.tolerance) + "]";
    }
    char tail[48];
    std::snprintf(tail, sizeof tail, "  (%.0f ms)", c.elapsed_ms);
    return line + tail;
}

}  // namespace shortint
