#include <shortint/polynomial.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace shortint {

namespace {

void require_same(const Poly& a, const Poly& b) {
    if (a.ctx() != b.ctx()) throw Error(ErrorKind::CtxMismatch, "polynomials over different fields");
}

Poly minus_x(Poly h) {
    return h - Poly::x(h.ctx());
}

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned r = 2; r * r <= n; ++r) {
        if (n % r == 0) {
            out.push_back(r);
            while (n % r == 0) n /= r;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

BigInt field_order_pow(const FieldCtx& F, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) r *= F.order();
    return r;
}

// p-th root of a polynomial in x^p: sum a_{ip} x^{ip} -> sum a_{ip}^{1/p} x^i,
// where a^{1/p} = a^{p^{l-1}} in F_{p^l}.
Poly pth_root(const Poly& f) {
    const FieldCtx& F = f.field();
    const unsigned p = F.p();
    std::vector<FieldElement> out;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
        FieldElement c = f.coeff(i);
        for (unsigned k = 1; k < F.degree(); ++k) c = F.frobenius(c);
        out.push_back(std::move(c));
    }
    return Poly(f.ctx(), std::move(out));
}

Poly random_poly_below(const FieldPtr& ctx, int deg_bound, std::mt19937_64& rng) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(deg_bound));
    for (int i = 0; i < deg_bound; ++i) c.push_back(ctx->random(rng));
    return Poly(ctx, std::move(c));
}

// Splits g (monic, squarefree, all irreducible factors of degree i) into
// its irreducible factors.
void equal_degree_split(const Poly& g, unsigned i, std::mt19937_64& rng, std::vector<Poly>& out) {
    const int n = g.degree();
    if (n <= 0) return;
    if (static_cast<unsigned>(n) == i) {
        out.push_back(g);
        return;
    }
    const FieldCtx& F = g.field();
    const bool odd = F.p() != 2;
    const BigInt exponent = odd ? BigInt((field_order_pow(F, i) - 1) / 2) : BigInt(0);
    for (;;) {
        Poly a = random_poly_below(g.ctx(), n, rng);
        if (a.degree() < 1) continue;
        Poly b(g.ctx());
        if (odd) {
            b = powmod(a, exponent, g) - Poly::constant(g.ctx(), F.one());
        } else {
            // Absolute trace to F_2: sum of a^{2^j} for j < l*i.
            Poly term = a % g;
            b = term;
            const unsigned steps = F.degree() * i;
            for (unsigned j = 1; j < steps; ++j) {
                term = mulmod(term, term, g);
                b = b + term;
            }
        }
        Poly d = gcd(g, b);
        if (d.degree() > 0 && d.degree() < n) {
            equal_degree_split(d, i, rng, out);
            equal_degree_split(g / d, i, rng, out);
            return;
        }
    }
}

struct DegreeBlock {
    Poly product;
    unsigned degree;
};

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<DegreeBlock> distinct_degree(const Poly& g) {
    std::vector<DegreeBlock> blocks;
    Poly rem = g;
    if (rem.degree() <= 0) return blocks;
    Poly xq = x_pow_q_mod(rem);
    Poly h = xq;  // x^{q^i} mod rem
    for (unsigned i = 1; 2 * i <= static_cast<unsigned>(rem.degree()); ++i) {
        if (i > 1) h = frobenius_mod(h, xq, rem);
        Poly t = gcd(rem, minus_x(h));
        if (t.degree() > 0) {
            blocks.push_back({t, i});
            rem = rem / t;
            if (rem.degree() <= 0) break;
            h = h % rem;
            xq = xq % rem;
        }
    }
    if (rem.degree() > 0) blocks.push_back({rem, static_cast<unsigned>(rem.degree())});
    return blocks;
}

void sort_factors(std::vector<Factor>& factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
}

}  // namespace

Poly::Poly(FieldPtr ctx) : ctx_(std::move(ctx)) {}

Poly::Poly(FieldPtr ctx, std::vector<FieldElement> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    for (const auto& c : c_) ctx_->check(c);
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(FieldPtr ctx, const FieldElement& c) {
    return Poly(ctx, {c});
}

Poly Poly::x(FieldPtr ctx) {
    std::vector<FieldElement> c{ctx->zero(), ctx->one()};
    return Poly(ctx, std::move(c));
}

Poly Poly::from_ints(FieldPtr ctx, std::span<const std::int64_t> coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.push_back(ctx->from_int(v));
    return Poly(ctx, std::move(c));
}

Poly Poly::monic_from_index(FieldPtr ctx, int d, std::uint64_t index) {
    const auto q = ctx->order_u64();
    if (!q) throw Error(ErrorKind::TooLarge, "field too large for indexed enumeration");
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i < d; ++i) {
        c.push_back(ctx->from_index(index % *q));
        index /= *q;
    }
    c.push_back(ctx->one());
    return Poly(ctx, std::move(c));
}

bool Poly::is_monic() const noexcept {
    return !c_.empty() && c_.back().is_one();
}

FieldElement Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return ctx_->zero();
    return c_[static_cast<std::size_t>(i)];
}

const FieldElement& Poly::leading() const {
    if (c_.empty()) throw Error(ErrorKind::ZeroInput, "zero polynomial has no leading coefficient");
    return c_.back();
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const FieldElement& c = c_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << '+';
        first = false;
        const bool prime = ctx_->in_prime_subfield(c);
        const std::string cs = prime ? std::to_string(ctx_->prime_value(c)) : "(" + ctx_->to_string(c) + ")";
        if (i == 0) {
            os << cs;
            continue;
        }
        if (!c.is_one()) os << cs << '*';
        os << 'x';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same(a, b);
    const FieldCtx& F = a.field();
    const int n = std::max(a.degree(), b.degree()) + 1;
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) c.push_back(F.add(a.coeff(i), b.coeff(i)));
    return Poly(a.ctx(), std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    require_same(a, b);
    const FieldCtx& F = a.field();
    const int n = std::max(a.degree(), b.degree()) + 1;
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) c.push_back(F.sub(a.coeff(i), b.coeff(i)));
    return Poly(a.ctx(), std::move(c));
}

Poly operator-(const Poly& a) {
    std::vector<FieldElement> c;
    for (const auto& x : a.coeffs()) c.push_back(a.field().neg(x));
    return Poly(a.ctx(), std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx());
    const FieldCtx& F = a.field();
    std::vector<FieldElement> c(static_cast<std::size_t>(a.degree() + b.degree() + 1), F.zero());
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i].is_zero()) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(ac[i], bc[j]));
    }
    return Poly(a.ctx(), std::move(c));
}

Poly scale(const Poly& a, const FieldElement& s) {
    std::vector<FieldElement> c;
    c.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) c.push_back(a.field().mul(x, s));
    return Poly(a.ctx(), std::move(c));
}

Poly add_constant(const Poly& f, const FieldElement& s) {
    std::vector<FieldElement> c(f.coeffs().begin(), f.coeffs().end());
    if (c.empty()) c.push_back(f.field().zero());
    c[0] = f.field().add(c[0], s);
    return Poly(f.ctx(), std::move(c));
}

DivMod divmod(const Poly& a, const Poly& b) {
    require_same(a, b);
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    const FieldCtx& F = a.field();
    if (a.degree() < b.degree()) return {Poly(a.ctx()), a};
    std::vector<FieldElement> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    std::vector<FieldElement> q(static_cast<std::size_t>(a.degree() - db + 1), F.zero());
    const auto bc = b.coeffs();
    const bool monic_b = b.leading().is_one();
    const FieldElement lead_inv = monic_b ? F.one() : F.inv(b.leading());
    for (int i = a.degree(); i >= db; --i) {
        const FieldElement& top = r[static_cast<std::size_t>(i)];
        if (top.is_zero()) continue;
        const FieldElement c = monic_b ? top : F.mul(top, lead_inv);
        const int shift = i - db;
        q[static_cast<std::size_t>(shift)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(shift + j)];
            slot = F.sub(slot, F.mul(c, bc[static_cast<std::size_t>(j)]));
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(a.ctx(), std::move(q)), Poly(a.ctx(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly monic(const Poly& f) {
    if (f.is_zero() || f.leading().is_one()) return f;
    return scale(f, f.field().inv(f.leading()));
}

FieldElement evaluate(const Poly& f, const FieldElement& a) {
    const FieldCtx& F = f.field();
    FieldElement acc = F.zero();
    for (int i = f.degree(); i >= 0; --i) acc = F.add(F.mul(acc, a), f.coeffs()[static_cast<std::size_t>(i)]);
    return acc;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) {
    return (a * b) % m;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result = Poly::constant(m.ctx(), m.field().one()) % m;
    Poly x = base % m;
    while (e) {
        if (e & 1) result = mulmod(result, x, m);
        e >>= 1;
        if (e) x = mulmod(x, x, m);
    }
    return result;
}

Poly powmod(const Poly& base, const BigInt& e, const Poly& m) {
    if (e < 0) throw Error(ErrorKind::OutOfRange, "negative exponent");
    Poly result = Poly::constant(m.ctx(), m.field().one()) % m;
    const Poly x = base % m;
    if (e == 0) return result;
    const std::size_t bits = boost::multiprecision::msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = mulmod(result, x, m);
    }
    return result;
}

Poly frobenius_mod(const Poly& h, const Poly& xq, const Poly& m) {
    // Horner in xq: h(x)^q = sum c_i (x^q)^i since c_i^q = c_i.
    Poly acc(m.ctx());
    for (int i = h.degree(); i >= 0; --i) {
        acc = add_constant(mulmod(acc, xq, m), h.coeffs()[static_cast<std::size_t>(i)]);
    }
    return acc % m;
}

Poly x_pow_q_mod(const Poly& m) {
    const FieldCtx& F = m.field();
    const Poly x = Poly::x(m.ctx());
    if (auto q = F.order_u64()) return powmod(x, *q, m);
    // Repeated p-th powers: x^{p^l}.
    Poly h = x % m;
    for (unsigned i = 0; i < F.degree(); ++i) h = powmod(h, static_cast<std::uint64_t>(F.p()), m);
    return h;
}

Poly interpolate(const FieldPtr& ctx, std::span<const FieldElement> xs, std::span<const FieldElement> ys) {
    if (xs.size() != ys.size()) throw Error(ErrorKind::OutOfRange, "interpolation arity mismatch");
    const FieldCtx& F = *ctx;
    Poly result(ctx);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly basis = Poly::constant(ctx, F.one());
        FieldElement denom = F.one();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * Poly(ctx, {F.neg(xs[j]), F.one()});
            denom = F.mul(denom, F.sub(xs[i], xs[j]));
        }
        result = result + scale(basis, F.div(ys[i], denom));
    }
    return result;
}

Poly derivative(const Poly& f) {
    const FieldCtx& F = f.field();
    std::vector<FieldElement> c;
    for (int i = 1; i <= f.degree(); ++i) {
        c.push_back(F.scale(f.coeffs()[static_cast<std::size_t>(i)], static_cast<Residue>(i % F.p())));
    }
    return Poly(f.ctx(), std::move(c));
}

Poly second_hasse_schmidt(const Poly& f) {
    const FieldCtx& F = f.field();
    std::vector<FieldElement> c;
    for (int i = 2; i <= f.degree(); ++i) {
        const std::uint64_t binom = (static_cast<std::uint64_t>(i) * (i - 1) / 2) % F.p();
        c.push_back(F.scale(f.coeffs()[static_cast<std::size_t>(i)], static_cast<Residue>(binom)));
    }
    return Poly(f.ctx(), std::move(c));
}

Poly gcd(const Poly& f, const Poly& g) {
    require_same(f, g);
    Poly a = f;
    Poly b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

bool is_squarefree(const Poly& g) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "squarefree test needs degree >= 1");
    const Poly dg = derivative(g);
    if (dg.is_zero()) return false;
    return gcd(g, dg).degree() == 0;
}

bool is_irreducible(const Poly& g) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "irreducibility test needs degree >= 1");
    const Poly m = monic(g);
    const unsigned d = static_cast<unsigned>(m.degree());
    if (d == 1) return true;
    const Poly xq = x_pow_q_mod(m);
    // frob[i] = x^{q^i} mod m
    std::vector<Poly> frob{xq};
    for (unsigned i = 2; i <= d; ++i) frob.push_back(frobenius_mod(frob.back(), xq, m));
    if (frob[d - 1] != Poly::x(m.ctx()) % m) return false;
    for (unsigned r : prime_divisors(d)) {
        if (gcd(m, minus_x(frob[d / r - 1])).degree() != 0) return false;
    }
    return true;
}

namespace {

CycleType pattern_of_squarefree(const Poly& m) {
    std::vector<int> parts;
    for (const auto& block : distinct_degree(m)) {
        const int count = block.product.degree() / static_cast<int>(block.degree);
        for (int k = 0; k < count; ++k) parts.push_back(static_cast<int>(block.degree));
    }
    return CycleType(std::move(parts));
}

}  // namespace

CycleType degree_pattern(const Poly& g) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "degree pattern needs degree >= 1");
    const Poly m = monic(g);
    if (!is_squarefree(m)) throw Error(ErrorKind::NotSquarefree, m.to_string() + " is not squarefree");
    return pattern_of_squarefree(m);
}

std::optional<CycleType> cycle_type_if_squarefree(const Poly& g) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "degree pattern needs degree >= 1");
    const Poly m = monic(g);
    if (!is_squarefree(m)) return std::nullopt;
    return pattern_of_squarefree(m);
}

Poly FactorizationResult::expand(const FieldPtr& ctx) const {
    Poly acc = Poly::constant(ctx, unit);
    for (const auto& f : factors) {
        for (unsigned k = 0; k < f.multiplicity; ++k) acc = acc * f.poly;
    }
    return acc;
}

bool canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const FieldCtx& F = a.field();
    for (int i = a.degree(); i >= 0; --i) {
        const auto& x = a.coeffs()[static_cast<std::size_t>(i)];
        const auto& y = b.coeffs()[static_cast<std::size_t>(i)];
        if (x == y) continue;
        return F.index_less(x, y);
    }
    return false;
}

std::vector<Factor> squarefree_decomposition(const Poly& g) {
    if (g.degree() < 1) return {};
    const Poly f = monic(g);
    const unsigned p = f.field().p();
    std::vector<Factor> out;
    const Poly df = derivative(f);
    if (df.is_zero()) {
        for (auto& fac : squarefree_decomposition(pth_root(f))) out.push_back({fac.poly, fac.multiplicity * p});
        sort_factors(out);
        return out;
    }
    Poly c = gcd(f, df);
    Poly w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (fac.degree() > 0) out.push_back({monic(fac), i});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        for (auto& fac : squarefree_decomposition(pth_root(c))) out.push_back({fac.poly, fac.multiplicity * p});
    }
    sort_factors(out);
    return out;
}

FactorizationResult factor(const Poly& g, std::uint64_t seed) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "factorization needs degree >= 1");
    FactorizationResult result{{}, g.leading()};
    std::mt19937_64 rng(seed);
    for (const auto& part : squarefree_decomposition(g)) {
        for (const auto& block : distinct_degree(part.poly)) {
            std::vector<Poly> irreducibles;
            equal_degree_split(block.product, block.degree, rng, irreducibles);
            for (auto& q : irreducibles) result.factors.push_back({monic(q), part.multiplicity});
        }
    }
    sort_factors(result.factors);
    return result;
}

std::vector<FieldElement> roots(const Poly& f, std::uint64_t seed) {
    if (f.degree() < 1) return {};
    const Poly m = monic(f);
    // Product of the distinct linear factors.
    Poly linear = gcd(m, minus_x(x_pow_q_mod(m)));
    std::vector<FieldElement> out;
    if (linear.degree() < 1) return out;
    std::mt19937_64 rng(seed);
    std::vector<Poly> pieces;
    equal_degree_split(linear, 1, rng, pieces);
    const FieldCtx& F = f.field();
    for (const auto& piece : pieces) out.push_back(F.neg(monic(piece).coeff(0)));
    std::sort(out.begin(), out.end(), [&F](const FieldElement& a, const FieldElement& b) { return F.index_less(a, b); });
    return out;
}

FieldElement resultant(const Poly& f, const Poly& g) {
    require_same(f, g);
    if (f.is_zero() || g.is_zero()) throw Error(ErrorKind::ZeroInput, "resultant of zero polynomial");
    const FieldCtx& F = f.field();
    Poly a = f;
    Poly b = g;
    FieldElement acc = F.one();
    for (;;) {
        const int m = a.degree();
        const int n = b.degree();
        if (m == 0) return F.mul(acc, F.pow(a.leading(), static_cast<std::uint64_t>(n)));
        if (n == 0) return F.mul(acc, F.pow(b.leading(), static_cast<std::uint64_t>(m)));
        if (m < n) {
            if ((m * n) % 2) acc = F.neg(acc);
            std::swap(a, b);
            continue;
        }
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r) with r = a mod b.
        Poly r = a % b;
        if (r.is_zero()) return F.zero();
        if ((m * n) % 2) acc = F.neg(acc);
        acc = F.mul(acc, F.pow(b.leading(), static_cast<std::uint64_t>(m - r.degree())));
        a = std::move(b);
        b = std::move(r);
    }
}

FieldElement discriminant(const Poly& g) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "discriminant needs degree >= 1");
    const Poly m = monic(g);
    const FieldCtx& F = g.field();
    const Poly dm = derivative(m);
    if (dm.is_zero()) return F.zero();
    const long d = m.degree();
    FieldElement r = resultant(m, dm);
    if ((d * (d - 1) / 2) % 2) r = F.neg(r);
    return r;
}

Poly disc_in_t(const Poly& f) {
    const int d = f.degree();
    const FieldCtx& F = f.field();
    if (d < 2) throw Error(ErrorKind::DegreeZero, "disc_in_t needs degree >= 2");
    if (static_cast<long>(F.p()) <= d) {
        throw Error(ErrorKind::FieldTooSmall, "disc_in_t needs p > deg f");
    }
    std::vector<FieldElement> xs;
    std::vector<FieldElement> ys;
    for (int a = 0; a < d; ++a) {
        xs.push_back(F.from_int(a));
        ys.push_back(discriminant(add_constant(f, xs.back())));
    }
    return interpolate(f.ctx(), xs, ys);
}

FactorizationResult brute_force_factor(const Poly& g) {
    if (g.degree() < 1) throw Error(ErrorKind::DegreeZero, "factorization needs degree >= 1");
    const FieldCtx& F = g.field();
    const int half = (g.degree() + 1) / 2;
    BigInt work = 1;
    for (int i = 0; i < half; ++i) work *= F.order();
    if (work > 1000000) throw Error(ErrorKind::TooLarge, "brute force factorization guard q^ceil(d/2) <= 10^6");
    FactorizationResult result{{}, g.leading()};
    Poly rest = monic(g);
    const std::uint64_t q = *F.order_u64();
    for (int k = 1; 2 * k <= rest.degree(); ++k) {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= q;
        for (std::uint64_t idx = 0; idx < count && 2 * k <= rest.degree(); ++idx) {
            const Poly cand = Poly::monic_from_index(g.ctx(), k, idx);
            unsigned mult = 0;
            for (;;) {
                DivMod dm = divmod(rest, cand);
                if (!dm.remainder.is_zero()) break;
                rest = std::move(dm.quotient);
                ++mult;
            }
            if (mult) result.factors.push_back({cand, mult});
        }
    }
    if (rest.degree() > 0) {
        // No divisor of degree <= deg/2 is left, so the rest is irreducible.
        result.factors.push_back({rest, 1});
    }
    sort_factors(result.factors);
    return result;
}

}  // namespace shortint
