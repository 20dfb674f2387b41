#include <shortint/morse_galois.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace shortint {

namespace {

// Extensions are deterministic in (p, degree), so one instance per pair is
// shared by every caller; element ids then agree across calls.
FieldPtr cached_extension(std::uint32_t p, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, degree}];
    if (!slot) slot = make_extension(make_prime_field(p), degree, 0);
    return slot;
}

void require_monic_degree(const Poly& f) {
    if (f.degree() < 2) throw Error(ErrorKind::DegreeZero, "need a polynomial of degree >= 2");
    if (!f.is_monic()) throw Error(ErrorKind::OutOfRange, "polynomial must be monic");
}

void sort_by_index(const FieldCtx& F, std::vector<FieldElement>& v) {
    std::sort(v.begin(), v.end(), [&F](const FieldElement& a, const FieldElement& b) { return F.index_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

FieldElement CriticalData::embed(const FieldElement& a) const {
    base->check(a);
    const auto c = a.coeffs();
    if (base->is_prime_field()) return ext->from_int(c[0]);
    // Horner in the image of the generator.
    FieldElement acc = ext->zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = ext->add(ext->mul(acc, base_root), ext->from_int(c[i]));
    return acc;
}

Poly CriticalData::embed(const Poly& f) const {
    std::vector<FieldElement> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(embed(a));
    return Poly(ext, std::move(c));
}

std::vector<FieldElement> CriticalData::distinct_values() const {
    std::vector<FieldElement> out = values;
    sort_by_index(*ext, out);
    return out;
}

CriticalData critical_data(const Poly& f, std::uint64_t seed) {
    require_monic_degree(f);
    const Poly df = derivative(f);
    if (df.is_zero()) throw Error(ErrorKind::DerivativeVanishes, "f' = 0 for " + f.to_string());

    CriticalData out;
    out.base = f.ctx();
    if (df.degree() == 0) {
        out.ext = out.base;
        if (!out.base->is_prime_field()) out.base_root = out.base->generator();
        return out;
    }
    const FactorizationResult fac = factor(df, seed);
    unsigned M = 1;
    for (const auto& part : fac.factors) {
        M = std::lcm(M, static_cast<unsigned>(part.poly.degree()));
        if (M > CriticalData::kMaxExtension) {
            throw Error(ErrorKind::ExtensionTooLarge, "critical points need degree " + std::to_string(M) + " > " +
                                                          std::to_string(CriticalData::kMaxExtension));
        }
    }
    out.M = M;
    const FieldCtx& B = *out.base;
    if (M == 1) {
        out.ext = out.base;
    } else {
        out.ext = cached_extension(B.p(), B.degree() * M);
    }
    if (!B.is_prime_field() && M > 1) {
        std::vector<std::int64_t> m(B.modulus().begin(), B.modulus().end());
        const auto r = roots(Poly::from_ints(out.ext, m), seed);
        out.base_root = r.at(0);
    } else if (!B.is_prime_field()) {
        out.base_root = B.generator();
    }

    const FieldCtx& E = *out.ext;
    for (const auto& part : fac.factors) {
        const auto r = roots(out.embed(part.poly), seed);
        if (r.size() != static_cast<std::size_t>(part.poly.degree())) {
            throw Error(ErrorKind::OutOfRange, "root extraction incomplete for " + part.poly.to_string());
        }
        for (const auto& tau : r) out.points.push_back({tau, part.multiplicity});
    }
    std::sort(out.points.begin(), out.points.end(),
              [&E](const CriticalData::Point& a, const CriticalData::Point& b) { return E.index_less(a.tau, b.tau); });
    const Poly fe = out.embed(f);
    for (const auto& pt : out.points) out.values.push_back(evaluate(fe, pt.tau));
    out.distinct_value_count = out.distinct_values().size();
    return out;
}

std::size_t distinct_critical_values_by_resultant(const Poly& f) {
    require_monic_degree(f);
    // D(-t) vanishes exactly on the critical values; multiplicities are
    // below p, so the squarefree part counts the distinct ones.
    const Poly D = disc_in_t(f);
    if (D.degree() < 1) return 0;
    const Poly dD = derivative(D);
    return static_cast<std::size_t>(D.degree() - (dD.is_zero() ? 0 : gcd(D, dD).degree()));
}

MorseDiagnostics is_morse(const Poly& f) {
    require_monic_degree(f);
    const int d = f.degree();
    const FieldCtx& F = f.field();
    MorseDiagnostics diag;
    diag.hypothesis_warning = (2 * static_cast<std::int64_t>(d)) % F.p() == 0;
    const Poly df = derivative(f);
    if (df.is_zero()) throw Error(ErrorKind::DerivativeVanishes, "f' = 0 for " + f.to_string());
    diag.derivative_degree = df.degree();
    diag.derivative_squarefree = df.degree() == 0 || is_squarefree(df);
    try {
        diag.distinct_values = critical_data(f).distinct_value_count;
        diag.method = "critical-values";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ExtensionTooLarge) throw;
        diag.distinct_values = distinct_critical_values_by_resultant(f);
        diag.method = "resultant";
    }
    diag.morse = diag.derivative_degree == d - 1 && diag.derivative_squarefree &&
                 diag.distinct_values == static_cast<std::size_t>(d - 1);
    return diag;
}

namespace {

std::vector<FieldElement> value_differences(const CriticalData& cd) {
    const auto vals = cd.distinct_values();
    std::vector<FieldElement> out;
    for (const auto& a : vals)
        for (const auto& b : vals)
            if (!(a == b)) out.push_back(cd.ext->sub(a, b));
    sort_by_index(*cd.ext, out);
    return out;
}

}  // namespace

std::vector<FieldElement> bad_set(const Poly& f) {
    const CriticalData cd = critical_data(f);
    const FieldCtx& E = *cd.ext;
    std::vector<FieldElement> out;
    for (const auto& diff : value_differences(cd)) {
        if (E.in_prime_subfield(diff)) out.push_back(f.field().from_int(E.prime_value(diff)));
    }
    sort_by_index(f.field(), out);
    return out;
}

bool bad_shift_check(const Poly& f, const std::vector<FieldElement>& H) {
    if (H.empty()) throw Error(ErrorKind::OutOfRange, "shift set must be nonempty");
    const CriticalData cd = critical_data(f);
    const auto diffs = value_differences(cd);
    const FieldCtx& F = f.field();
    for (const auto& a : H)
        for (const auto& b : H) {
            if (a == b) continue;
            const FieldElement e = cd.embed(F.sub(a, b));
            if (std::find(diffs.begin(), diffs.end(), e) != diffs.end()) return true;
        }
    return false;
}

std::string to_string(CancellationKind kind) {
    return kind == CancellationKind::NoCancellation ? "NoCancellation" : "SquareRootCancellation";
}

CancellationVerdict classify_mu_cancellation(const Poly& f) {
    require_monic_degree(f);
    const FieldCtx& F = f.field();
    if (F.p() == 2) throw Error(ErrorKind::EvenCharacteristic, "the discriminant test needs odd characteristic");
    CancellationVerdict v{CancellationKind::SquareRootCancellation, std::nullopt, disc_in_t(f), {}};
    if (v.witness.is_zero()) return v;
    bool all_even = true;
    for (const auto& part : squarefree_decomposition(v.witness)) {
        v.exponents.push_back(part.multiplicity);
        all_even = all_even && part.multiplicity % 2 == 0;
    }
    if (all_even) {
        v.kind = CancellationKind::NoCancellation;
        const int parity = f.degree() % 2 == 0 ? 1 : -1;
        v.sign = parity * F.quadratic_character(v.witness.leading());
    }
    return v;
}

int stickelberger_mu(const Poly& g) {
    const FieldCtx& F = g.field();
    if (F.p() == 2) throw Error(ErrorKind::EvenCharacteristic, "Stickelberger parity needs odd characteristic");
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "need a polynomial of degree >= 1");
    const FieldElement disc = discriminant(monic(g));
    if (disc.is_zero()) return 0;
    return (g.degree() % 2 == 0 ? 1 : -1) * F.quadratic_character(disc);
}

}  // namespace shortint
