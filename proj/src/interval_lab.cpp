#include <shortint/interval_lab.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

namespace shortint {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs fn(block, begin, end) over contiguous slices of [0, n). Exceptions
// from workers are rethrown in block order.
template <class Fn>
unsigned run_blocks(std::uint64_t n, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n)));
    auto bounds = [&](unsigned w) { return n * w / workers; };
    if (workers == 1) {
        fn(0u, std::uint64_t{0}, n);
        return 1;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                fn(w, bounds(w), bounds(w + 1));
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return workers;
}

std::uint64_t sweep_size(const FieldCtx& F, std::uint64_t limit) {
    const auto q = F.order_u64();
    if (!q || *q > limit) throw Error(ErrorKind::TooLarge, F.describe() + " is too large to sweep");
    return *q;
}

constexpr std::uint64_t kSweepLimit = 100'000'000;

const Rational& value_or_default(const ClassFunction& phi, int index) {
    return index < 0 ? phi.default_nonsquarefree() : phi.value_at(static_cast<std::size_t>(index));
}

bool fully_squarefree(const std::vector<int>& key) {
    return std::none_of(key.begin(), key.end(), [](int v) { return v < 0; });
}


// Empirical constant of phi_i on squarefree members of the i-th shifted interval.
Rational marginal_constant(const JointCounts& joint, std::size_t i, const ClassFunction& phi) {
    std::int64_t squarefree = 0;
    Rational acc = 0;
    for (const auto& [key, count] : joint.counts) {
        if (key[i] < 0) continue;
        squarefree += count;
        acc += Rational(count) * phi.value_at(static_cast<std::size_t>(key[i]));
    }
    return squarefree == 0 ? Rational(0) : acc / squarefree;
}

Rational joint_constant(const JointCounts& joint, const std::vector<ClassFunction>& phis) {
    std::int64_t squarefree = 0;
    Rational acc = 0;
    for (const auto& [key, count] : joint.counts) {
        if (!fully_squarefree(key)) continue;
        squarefree += count;
        Rational term = count;
        for (std::size_t i = 0; i < key.size(); ++i) term *= phis[i].value_at(static_cast<std::size_t>(key[i]));
        acc += term;
    }
    return squarefree == 0 ? Rational(0) : acc / squarefree;
}

bool safe_is_morse(const Poly& f) {
    try {
        return is_morse(f).morse;
    } catch (const Error&) {
        return false;
    }
}

std::vector<std::string> element_strings(const FieldCtx& F, const std::vector<FieldElement>& v) {
    std::vector<std::string> out;
    for (const auto& a : v) out.push_back(F.to_string(a));
    return out;
}

}  // namespace

Rational joint_sum(const JointCounts& joint, const std::vector<ClassFunction>& phis) {
    if (phis.size() != joint.k) throw Error(ErrorKind::OutOfRange, "one class function per shift is required");
    Rational total = 0;
    for (const auto& [key, count] : joint.counts) {
        Rational term = count;
        for (std::size_t i = 0; i < key.size() && term != 0; ++i) term *= value_or_default(phis[i], key[i]);
        total += term;
    }
    return total;
}

JointCounts project(const JointCounts& joint, const std::vector<std::size_t>& which) {
    JointCounts out = joint;
    out.k = which.size();
    out.counts.clear();
    out.nonsquarefree = 0;
    for (const auto& [key, count] : joint.counts) {
        std::vector<int> sub;
        sub.reserve(which.size());
        for (std::size_t i : which) {
            if (i >= joint.k) throw Error(ErrorKind::OutOfRange, "shift position out of range");
            sub.push_back(key[i]);
        }
        if (!fully_squarefree(sub)) out.nonsquarefree += count;
        out.counts[std::move(sub)] += count;
    }
    return out;
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void IntervalSpec::validate() const {
    if (f.degree() < 2) throw Error(ErrorKind::DegreeZero, "interval polynomial needs degree >= 2");
    if (!f.is_monic()) throw Error(ErrorKind::OutOfRange, "interval polynomial must be monic");
    if (shifts.empty()) throw Error(ErrorKind::OutOfRange, "at least one shift is required");
    if (shifts.size() != phis.size()) {
        throw Error(ErrorKind::OutOfRange, std::to_string(shifts.size()) + " shifts but " + std::to_string(phis.size()) +
                                               " class functions");
    }
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        f.field().check(shifts[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (shifts[i] == shifts[j]) throw Error(ErrorKind::OutOfRange, "shifts must be distinct");
    }
    for (const auto& phi : phis) {
        if (phi.degree() != f.degree()) {
            throw Error(ErrorKind::DegreeMismatch, "class function " + phi.name() + " has degree " +
                                                       std::to_string(phi.degree()) + ", f has degree " +
                                                       std::to_string(f.degree()));
        }
    }
}

JointCounts sweep_cycle_types(const Poly& f, const std::vector<FieldElement>& shifts, const SweepOptions& opts) {
    if (f.degree() < 1) throw Error(ErrorKind::DegreeZero, "sweep needs degree >= 1");
    const auto start = Clock::now();
    const FieldCtx& F = f.field();
    const std::uint64_t q = sweep_size(F, kSweepLimit);
    std::vector<Poly> shifted;
    for (const auto& h : shifts) shifted.push_back(add_constant(f, h));

    const unsigned workers = resolve_workers(opts.workers);
    std::vector<std::map<std::vector<int>, std::int64_t>> partial(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(q, 1)));
    JointCounts out;
    out.d = f.degree();
    out.k = shifts.size();
    out.q = static_cast<std::int64_t>(q);
    out.workers = run_blocks(q, workers, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        auto& local = partial[block];
        std::vector<int> key(shifted.size());
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const FieldElement a = F.from_index(idx);
            for (std::size_t i = 0; i < shifted.size(); ++i) {
                const auto ct = cycle_type_if_squarefree(add_constant(shifted[i], a));
                key[i] = ct ? static_cast<int>(partition_index(*ct)) : -1;
            }
            ++local[key];
        }
    });
    for (auto& local : partial)
        for (const auto& [key, count] : local) out.counts[key] += count;
    for (const auto& [key, count] : out.counts)
        if (!fully_squarefree(key)) out.nonsquarefree += count;
    out.elapsed_ms = ms_since(start);
    return out;
}

std::string joint_key(int d, const std::vector<int>& key) {
    std::string out;
    const auto& all = partitions_of(d);
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out += '|';
        out += key[i] < 0 ? std::string("*") : all[static_cast<std::size_t>(key[i])].to_string();
    }
    return out;
}

std::string to_string(Prediction p) {
    switch (p) {
        case Prediction::generic: return "generic";
        case Prediction::empirical: return "empirical";
        case Prediction::empirical_product: return "empirical-product";
    }
    return "generic";
}

ExperimentReport class_sum(const Poly& f, const ClassFunction& phi, const SweepOptions& opts) {
    return correlation_sum(IntervalSpec{f, {f.field().zero()}, {phi}}, opts);
}

ExperimentReport correlation_sum(const IntervalSpec& spec, const SweepOptions& opts) {
    spec.validate();
    const FieldCtx& F = spec.f.field();
    const JointCounts joint = sweep_cycle_types(spec.f, spec.shifts, opts);

    ExperimentReport r;
    r.field = F.describe();
    r.f = spec.f.to_string();
    r.shifts = element_strings(F, spec.shifts);
    for (const auto& phi : spec.phis) r.phis.push_back(phi.name());
    r.q = F.order().str();
    r.morse = safe_is_morse(spec.f);
    r.raw_sum = joint_sum(joint, spec.phis);

    if (r.morse) {
        r.predicted_constant = 1;
        for (const auto& phi : spec.phis) r.predicted_constant *= mean_constant(phi);
        r.prediction = Prediction::generic;
    } else {
        bool independent = spec.shifts.size() == 1;
        if (!independent) {
            try {
                independent = !bad_shift_check(spec.f, spec.shifts);
            } catch (const Error&) {
                independent = false;
            }
        }
        if (independent) {
            r.predicted_constant = 1;
            for (std::size_t i = 0; i < spec.phis.size(); ++i) r.predicted_constant *= marginal_constant(joint, i, spec.phis[i]);
            r.prediction = spec.shifts.size() == 1 ? Prediction::empirical : Prediction::empirical_product;
        } else {
            r.predicted_constant = joint_constant(joint, spec.phis);
            r.prediction = Prediction::empirical;
        }
    }
    r.main_term = r.predicted_constant * joint.q;
    r.abs_error = abs(r.raw_sum - r.main_term);
    r.normalized_error = to_double(r.abs_error) / std::sqrt(static_cast<double>(joint.q));
    for (const auto& [key, count] : joint.counts)
        if (fully_squarefree(key)) r.cycle_type_counts[joint_key(joint.d, key)] += count;
    r.nonsquarefree_count = joint.nonsquarefree;
    r.elapsed_ms = joint.elapsed_ms;
    r.worker_count = joint.workers;
    return r;
}

MoebiusBattery moebius_battery(const Poly& f, const std::vector<FieldElement>& shifts, double C,
                               const SweepOptions& opts) {
    if (shifts.empty()) throw Error(ErrorKind::OutOfRange, "at least one shift is required");
    const auto mu = make_builtin(Builtin::moebius, f.degree());
    MoebiusBattery out{class_sum(add_constant(f, shifts.front()), mu, opts),
                       correlation_sum(IntervalSpec{f, shifts, std::vector<ClassFunction>(shifts.size(), mu)}, opts),
                       classify_mu_cancellation(f), false};
    const double q = static_cast<double>(*f.field().order_u64());
    const double root = std::sqrt(q);
    auto large = [&](const Rational& s) { return std::abs(to_double(s)) >= q - C * root; };
    auto small = [&](const Rational& s) { return std::abs(to_double(s)) <= C * root; };
    const bool both_large = large(out.single.raw_sum) && large(out.chowla.raw_sum);
    const bool both_small = small(out.single.raw_sum) && small(out.chowla.raw_sum);
    out.dichotomy_ok = both_large || both_small;
    if (!out.dichotomy_ok) {
        throw Error(ErrorKind::DichotomyViolation, "sum of mu = " + to_string(out.single.raw_sum) + ", Chowla sum = " +
                                                       to_string(out.chowla.raw_sum) + " for " + f.to_string() +
                                                       " over " + f.field().describe());
    }
    return out;
}

const ChebotarevRow* ChebotarevReport::row(const std::string& key) const {
    for (const auto& r : rows)
        if (r.key == key) return &r;
    return nullptr;
}

ChebotarevReport chebotarev_empirical(const Poly& f, const std::vector<FieldElement>& shifts, const SweepOptions& opts) {
    if (shifts.empty()) throw Error(ErrorKind::OutOfRange, "at least one shift is required");
    const FieldCtx& F = f.field();
    const JointCounts joint = sweep_cycle_types(f, shifts, opts);
    ChebotarevReport r;
    r.field = F.describe();
    r.f = f.to_string();
    r.shifts = element_strings(F, shifts);
    r.nonsquarefree_count = joint.nonsquarefree;
    r.squarefree_count = joint.q - joint.nonsquarefree;
    r.elapsed_ms = joint.elapsed_ms;
    r.worker_count = joint.workers;
    if (r.squarefree_count == 0) return r;
    const auto& all = partitions_of(joint.d);
    Rational seen_predicted = 0;
    Rational deviation_sum = 0;
    for (const auto& [key, count] : joint.counts) {
        if (!fully_squarefree(key)) continue;
        ChebotarevRow row;
        row.key = joint_key(joint.d, key);
        row.count = count;
        row.frequency = Rational(count, r.squarefree_count);
        row.predicted = 1;
        for (int idx : key) row.predicted /= Rational(centralizer_order(all[static_cast<std::size_t>(idx)]));
        const Rational dev = abs(row.frequency - row.predicted);
        row.deviation = to_double(dev);
        seen_predicted += row.predicted;
        deviation_sum += dev;
        r.rows.push_back(std::move(row));
    }
    r.total_variation = to_double((deviation_sum + (Rational(1) - seen_predicted)) / 2);
    return r;
}

SquarefreeCensus squarefree_census(const Poly& f, const std::vector<FieldElement>& shifts, const SweepOptions& opts) {
    if (f.degree() < 1) throw Error(ErrorKind::DegreeZero, "census needs degree >= 1");
    if (shifts.empty()) throw Error(ErrorKind::OutOfRange, "at least one shift is required");
    const FieldCtx& F = f.field();
    const std::uint64_t q = sweep_size(F, kSweepLimit);
    std::vector<Poly> shifted;
    for (const auto& h : shifts) shifted.push_back(add_constant(f, h));
    const unsigned workers = resolve_workers(opts.workers);
    std::vector<std::int64_t> bad(workers, 0);
    run_blocks(q, workers, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const FieldElement a = F.from_index(idx);
            for (const auto& g : shifted) {
                if (!is_squarefree(add_constant(g, a))) {
                    ++bad[block];
                    break;
                }
            }
        }
    });
    SquarefreeCensus out;
    out.q = static_cast<std::int64_t>(q);
    for (auto b : bad) out.nonsquarefree += b;
    out.squarefree = out.q - out.nonsquarefree;
    out.bound = static_cast<std::int64_t>(shifts.size()) * (f.degree() - 1);
    return out;
}

std::int64_t gauss_formula(std::int64_t p, int d) {
    if (d < 1) throw Error(ErrorKind::OutOfRange, "degree must be positive");
    auto mobius = [](int n) {
        int result = 1;
        for (int r = 2; r * r <= n; ++r) {
            if (n % r) continue;
            n /= r;
            if (n % r == 0) return 0;
            result = -result;
        }
        return n > 1 ? -result : result;
    };
    BigInt total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        BigInt pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        total += mobius(d / e) * pe;
    }
    return static_cast<std::int64_t>(total / d);
}

GaussCensus gauss_census(std::int64_t p, int d, const SweepOptions& opts) {
    auto F = make_prime_field(p);
    if (d < 1) throw Error(ErrorKind::OutOfRange, "degree must be positive");
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= static_cast<std::uint64_t>(p);
        if (count > 10'000'000) throw Error(ErrorKind::TooLarge, "p^d exceeds 10^7");
    }
    const unsigned workers = resolve_workers(opts.workers);
    std::vector<std::int64_t> found(workers, 0);
    run_blocks(count, workers, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t idx = begin; idx < end; ++idx) found[block] += is_irreducible(Poly::monic_from_index(F, d, idx));
    });
    GaussCensus out;
    for (auto c : found) out.enumerated += c;
    out.formula = gauss_formula(p, d);
    return out;
}

MorseScan morse_density_scan(const Poly& f, const SweepOptions& opts) {
    if (f.degree() < 2 || !f.is_monic()) throw Error(ErrorKind::DegreeZero, "scan needs a monic polynomial of degree >= 2");
    const FieldCtx& F = f.field();
    MorseScan out;
    const int d = f.degree();
    if ((2 * static_cast<std::int64_t>(d)) % F.p() == 0) {
        out.hypothesis_violated = true;
        out.hypothesis_note = "p divides 2d";
    } else if (derivative(derivative(f)).is_zero()) {
        out.hypothesis_violated = true;
        out.hypothesis_note = "f'' = 0";
    }
    const std::uint64_t q = sweep_size(F, 10'000'000);
    const unsigned workers = resolve_workers(opts.workers);
    std::vector<std::vector<std::uint64_t>> bad(workers);
    std::vector<std::int64_t> fallbacks(workers, 0);
    const Poly x = Poly::x(f.ctx());
    run_blocks(q, workers, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const Poly fs = f + scale(x, F.from_index(idx));
            bool morse = false;
            try {
                const auto diag = is_morse(fs);
                morse = diag.morse;
                if (diag.method == "resultant") ++fallbacks[block];
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DerivativeVanishes) throw;
            }
            if (!morse) bad[block].push_back(idx);
        }
    });
    out.scanned = static_cast<std::int64_t>(q);
    for (unsigned w = 0; w < workers; ++w) {
        for (auto idx : bad[w]) out.bad_s.push_back(std::to_string(idx));
        out.resultant_fallbacks += fallbacks[w];
    }
    out.bad_count = static_cast<std::int64_t>(out.bad_s.size());
    return out;
}

std::map<std::string, int> shifted_value_multiset(const Poly& f, const std::vector<FieldElement>& shifts) {
    const CriticalData cd = critical_data(f);
    std::map<std::string, int> out;
    for (const auto& h : shifts) {
        const FieldElement eh = cd.embed(h);
        for (const auto& v : cd.distinct_values()) ++out[cd.ext->index(cd.ext->add(v, eh)).str()];
    }
    return out;
}

LargeQResult large_q_demo(std::uint32_t p, unsigned l, const SweepOptions& opts) {
    if (p < 5) throw Error(ErrorKind::OutOfRange, "the demo needs p >= 5");
    auto base = make_prime_field(p);
    auto F = make_extension(base, l, 0);
    const std::uint64_t q = sweep_size(*F, 1'000'000);
    const auto start = Clock::now();

    const FieldElement three = F->from_int(3);
    FieldElement s, c;
    bool found = false;
    for (std::uint64_t idx = 1; idx < q && !found; ++idx) {
        s = F->from_index(idx);
        c = F->neg(F->div(s, three));
        found = F->quadratic_character(c) == 1;
    }
    if (!found) throw Error(ErrorKind::NoSuitableS, "no s with -s/3 a nonzero square in " + F->describe());

    // tau^2 = -s/3 is a critical point; alpha = f_s(tau) = (2s/3) tau.
    const Poly sq = add_constant(Poly::from_ints(F, std::vector<std::int64_t>{0, 0, 1}), F->neg(c));
    const FieldElement tau = roots(sq).at(0);
    const FieldElement alpha = F->mul(F->div(F->scale(s, 2), three), tau);
    const Poly fs(F, {F->zero(), s, F->zero(), F->one()});

    std::vector<FieldElement> shifts;
    for (std::uint32_t i = 1; i <= p; ++i) shifts.push_back(F->scale(alpha, i));

    LargeQResult out;
    out.p = p;
    out.l = l;
    out.q = F->order().str();
    out.s = F->to_string(s);
    out.tau = F->to_string(tau);
    out.alpha = F->to_string(alpha);
    out.shifts = element_strings(*F, shifts);

    const auto multiset = shifted_value_multiset(fs, shifts);
    out.multiplicity_two = multiset.size() == p &&
                           std::all_of(multiset.begin(), multiset.end(), [](const auto& kv) { return kv.second == 2; });
    // The support must be the line F_p alpha.
    for (std::uint32_t i = 0; i < p && out.multiplicity_two; ++i) {
        out.multiplicity_two = multiset.count(F->index(F->scale(alpha, i)).str()) == 1;
    }

    const JointCounts joint = sweep_cycle_types(fs, shifts, opts);
    const auto& all = partitions_of(3);
    out.single_sums.assign(shifts.size(), Rational(0));
    for (const auto& [key, count] : joint.counts) {
        int product = 1;
        for (std::size_t i = 0; i < key.size(); ++i) {
            const int m = key[i] < 0 ? 0 : all[static_cast<std::size_t>(key[i])].mu_value();
            out.single_sums[i] += Rational(count * m);
            product *= m;
        }
        out.product_sum += Rational(count * product);
    }
    out.nonsquarefree_count = joint.nonsquarefree;
    const double root = std::sqrt(static_cast<double>(q));
    for (const auto& v : out.single_sums) out.max_single_normalized = std::max(out.max_single_normalized, std::abs(to_double(v)) / root);
    out.elapsed_ms = ms_since(start);
    return out;
}

}  // namespace shortint
