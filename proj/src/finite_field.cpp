#include <shortint/finite_field.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

namespace shortint {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::CtxMismatch: return "CtxMismatch";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::WeightsNotNormalized: return "WeightsNotNormalized";
        case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
        case ErrorKind::ExtensionTooLarge: return "ExtensionTooLarge";
        case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
        case ErrorKind::DichotomyViolation: return "DichotomyViolation";
        case ErrorKind::NoSuitableS: return "NoSuitableS";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::DegreeZero: return "DegreeZero";
        case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

namespace {

using u64 = std::uint64_t;

std::atomic<std::uint32_t> g_next_ctx_id{1};

// Dense polynomials over F_p with ascending coefficients; used only to find
// and work with moduli, where no FieldCtx exists yet.
using RawPoly = std::vector<Residue>;

void trim(RawPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

Residue inv_mod(Residue a, Residue p) {
    return static_cast<Residue>(pow_mod(a, p - 2, p));
}

RawPoly raw_mul(const RawPoly& a, const RawPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    RawPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<Residue>((r[i + j] + u64(a[i]) * b[j]) % p);
        }
    }
    trim(r);
    return r;
}

// Remainder of a modulo b (b nonzero).
RawPoly raw_rem(RawPoly a, const RawPoly& b, u64 p) {
    trim(a);
    const std::size_t n = b.size();
    const u64 lead_inv = inv_mod(b.back(), static_cast<Residue>(p));
    while (a.size() >= n) {
        const u64 c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - n;
        for (std::size_t j = 0; j < n; ++j) {
            a[shift + j] = static_cast<Residue>((a[shift + j] + (p - c) * b[j]) % p);
        }
        trim(a);
    }
    return a;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RawPoly r = raw_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

RawPoly raw_powmod_p(const RawPoly& base, const RawPoly& m, u64 p) {
    RawPoly result{1};
    RawPoly x = raw_rem(base, m, p);
    u64 e = p;
    while (e) {
        if (e & 1) result = raw_rem(raw_mul(result, x, p), m, p);
        x = raw_rem(raw_mul(x, x, p), m, p);
        e >>= 1;
    }
    return result;
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

// Rabin's test for a monic polynomial of degree l over F_p.
bool raw_is_irreducible(const RawPoly& m, u64 p) {
    const unsigned l = static_cast<unsigned>(m.size() - 1);
    if (l == 1) return true;
    // frob[i] = x^{p^i} mod m
    std::vector<RawPoly> frob(l + 1);
    frob[0] = raw_rem(RawPoly{0, 1}, m, p);
    for (unsigned i = 1; i <= l; ++i) frob[i] = raw_powmod_p(frob[i - 1], m, p);
    RawPoly x = raw_rem(RawPoly{0, 1}, m, p);
    if (frob[l] != x) return false;
    for (unsigned r : prime_divisors(l)) {
        RawPoly h = frob[l / r];
        h.resize(std::max(h.size(), std::size_t{2}), 0);
        h[1] = static_cast<Residue>((h[1] + p - 1) % p);
        trim(h);
        if (raw_gcd(m, h, p).size() != 1) return false;
    }
    return true;
}

}  // namespace

bool FieldElement::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](Residue r) { return r == 0; });
}

bool FieldElement::is_one() const noexcept {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](Residue r) { return r == 0; });
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned l, std::vector<Residue> modulus)
    : p_(p), l_(l), modulus_(std::move(modulus)), id_(g_next_ctx_id.fetch_add(1)) {
    q_ = 1;
    for (unsigned i = 0; i < l_; ++i) q_ *= p_;
    if (q_ <= BigInt(std::numeric_limits<std::uint64_t>::max())) q_u64_ = q_.convert_to<std::uint64_t>();
}

void FieldCtx::check(const FieldElement& a) const {
    if (a.ctx_id_ != id_) {
        throw Error(ErrorKind::CtxMismatch, "element does not belong to " + describe());
    }
}

FieldElement FieldCtx::zero() const { return make(FieldElement::Storage(l_, 0)); }

FieldElement FieldCtx::one() const {
    FieldElement::Storage c(l_, 0);
    c[0] = 1 % p_;
    return make(std::move(c));
}

FieldElement FieldCtx::from_int(std::int64_t v) const {
    FieldElement::Storage c(l_, 0);
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    c[0] = static_cast<Residue>(r);
    return make(std::move(c));
}

FieldElement FieldCtx::generator() const {
    if (l_ < 2) throw Error(ErrorKind::OutOfRange, "prime field has no extension generator");
    FieldElement::Storage c(l_, 0);
    c[1] = 1;
    return make(std::move(c));
}

FieldElement FieldCtx::from_coeffs(std::span<const Residue> coeffs) const {
    if (coeffs.size() > l_) throw Error(ErrorKind::OutOfRange, "too many coefficients for " + describe());
    FieldElement::Storage c(l_, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % p_;
    return make(std::move(c));
}

FieldElement FieldCtx::from_index(std::uint64_t index) const {
    if (q_u64_ && index >= *q_u64_) throw Error(ErrorKind::OutOfRange, "index beyond field order");
    FieldElement::Storage c(l_, 0);
    for (unsigned i = 0; i < l_; ++i) {
        c[i] = static_cast<Residue>(index % p_);
        index /= p_;
    }
    return make(std::move(c));
}

FieldElement FieldCtx::from_index(const BigInt& index) const {
    if (index < 0 || index >= q_) throw Error(ErrorKind::OutOfRange, "index beyond field order");
    BigInt rest = index;
    FieldElement::Storage c(l_, 0);
    for (unsigned i = 0; i < l_; ++i) {
        c[i] = static_cast<Residue>(static_cast<std::uint64_t>(rest % p_));
        rest /= p_;
    }
    return make(std::move(c));
}

FieldElement FieldCtx::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<Residue> dist(0, p_ - 1);
    FieldElement::Storage c(l_, 0);
    for (auto& r : c) r = dist(rng);
    return make(std::move(c));
}

BigInt FieldCtx::index(const FieldElement& a) const {
    check(a);
    BigInt r = 0;
    for (unsigned i = l_; i-- > 0;) r = r * p_ + a.c_[i];
    return r;
}

std::uint64_t FieldCtx::index_u64(const FieldElement& a) const {
    check(a);
    if (!q_u64_) throw Error(ErrorKind::TooLarge, "field order exceeds 64 bits");
    std::uint64_t r = 0;
    for (unsigned i = l_; i-- > 0;) r = r * p_ + a.c_[i];
    return r;
}

bool FieldCtx::index_less(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    for (unsigned i = l_; i-- > 0;) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement::Storage c(l_);
    for (unsigned i = 0; i < l_; ++i) {
        const Residue s = a.c_[i] + b.c_[i];
        c[i] = s >= p_ ? s - p_ : s;
    }
    return make(std::move(c));
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement::Storage c(l_);
    for (unsigned i = 0; i < l_; ++i) {
        c[i] = a.c_[i] >= b.c_[i] ? a.c_[i] - b.c_[i] : a.c_[i] + p_ - b.c_[i];
    }
    return make(std::move(c));
}

FieldElement FieldCtx::neg(const FieldElement& a) const {
    check(a);
    FieldElement::Storage c(l_);
    for (unsigned i = 0; i < l_; ++i) c[i] = a.c_[i] == 0 ? 0 : p_ - a.c_[i];
    return make(std::move(c));
}

FieldElement FieldCtx::scale(const FieldElement& a, Residue s) const {
    check(a);
    FieldElement::Storage c(l_);
    const u64 sv = s % p_;
    for (unsigned i = 0; i < l_; ++i) c[i] = static_cast<Residue>(a.c_[i] * sv % p_);
    return make(std::move(c));
}

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (l_ == 1) {
        return make(FieldElement::Storage{static_cast<Residue>(u64(a.c_[0]) * b.c_[0] % p_)});
    }
    // Schoolbook product followed by reduction with the monic modulus.
    boost::container::small_vector<u64, 8> prod(2 * l_ - 1, 0);
    for (unsigned i = 0; i < l_; ++i) {
        if (!a.c_[i]) continue;
        for (unsigned j = 0; j < l_; ++j) {
            prod[i + j] = (prod[i + j] + u64(a.c_[i]) * b.c_[j]) % p_;
        }
    }
    for (unsigned i = 2 * l_ - 2; i >= l_; --i) {
        const u64 c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        const unsigned shift = i - l_;
        for (unsigned j = 0; j < l_; ++j) {
            prod[shift + j] = (prod[shift + j] + (p_ - c) * modulus_[j]) % p_;
        }
    }
    FieldElement::Storage c(l_);
    for (unsigned i = 0; i < l_; ++i) c[i] = static_cast<Residue>(prod[i]);
    return make(std::move(c));
}

FieldElement FieldCtx::inv(const FieldElement& a) const {
    check(a);
    if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (l_ == 1) return make(FieldElement::Storage{inv_mod(a.c_[0], p_)});
    // Extended Euclid on (a(y), modulus(y)); tracks s with s*a = r mod modulus.
    RawPoly r0(modulus_.begin(), modulus_.end());
    RawPoly r1(a.c_.begin(), a.c_.end());
    trim(r1);
    RawPoly s0{}, s1{1};
    while (r1.size() > 1) {
        // One long-division step sequence: r0 = quot*r1 + rem.
        RawPoly quot(r0.size() - r1.size() + 1, 0);
        RawPoly rem = r0;
        const u64 lead_inv = inv_mod(r1.back(), p_);
        while (rem.size() >= r1.size()) {
            const u64 c = rem.back() * lead_inv % p_;
            const std::size_t shift = rem.size() - r1.size();
            quot[shift] = static_cast<Residue>(c);
            for (std::size_t j = 0; j < r1.size(); ++j) {
                rem[shift + j] = static_cast<Residue>((rem[shift + j] + (p_ - c) * r1[j]) % p_);
            }
            trim(rem);
        }
        RawPoly qs = raw_mul(quot, s1, p_);
        RawPoly s2(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < s2.size(); ++i) {
            const u64 x = i < s0.size() ? s0[i] : 0;
            const u64 y = i < qs.size() ? qs[i] : 0;
            s2[i] = static_cast<Residue>((x + p_ - y) % p_);
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant since the modulus is irreducible.
    const u64 cinv = inv_mod(r1[0], p_);
    FieldElement::Storage c(l_, 0);
    for (std::size_t i = 0; i < s1.size(); ++i) c[i] = static_cast<Residue>(s1[i] * cinv % p_);
    return make(std::move(c));
}

FieldElement FieldCtx::div(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return mul(a, inv(b));
}

FieldElement FieldCtx::pow(const FieldElement& a, std::uint64_t e) const {
    check(a);
    FieldElement result = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

FieldElement FieldCtx::pow(const FieldElement& a, const BigInt& e) const {
    check(a);
    if (e < 0) throw Error(ErrorKind::OutOfRange, "negative exponent");
    FieldElement result = one();
    const std::size_t bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = mul(result, a);
    }
    return result;
}

FieldElement FieldCtx::frobenius(const FieldElement& a) const {
    check(a);
    if (l_ == 1) return a;
    return pow(a, static_cast<std::uint64_t>(p_));
}

bool FieldCtx::in_prime_subfield(const FieldElement& a) const {
    return frobenius(a) == a;
}

Residue FieldCtx::prime_value(const FieldElement& a) const {
    check(a);
    for (unsigned i = 1; i < l_; ++i) {
        if (a.c_[i]) throw Error(ErrorKind::OutOfRange, "element is not in the prime subfield");
    }
    return a.c_[0];
}

int FieldCtx::quadratic_character(const FieldElement& a) const {
    check(a);
    if (p_ == 2) throw Error(ErrorKind::EvenCharacteristic, "quadratic character needs odd q");
    if (a.is_zero()) return 0;
    const FieldElement r = q_u64_ ? pow(a, (*q_u64_ - 1) / 2) : pow(a, BigInt((q_ - 1) / 2));
    return r.is_one() ? 1 : -1;
}

FieldElement FieldCtx::arith(const FieldElement& a, const FieldElement& b, ArithOp op) const {
    check(a);
    check(b);
    switch (op) {
        case ArithOp::add: return add(a, b);
        case ArithOp::sub: return sub(a, b);
        case ArithOp::mul: return mul(a, b);
        case ArithOp::div: return div(a, b);
        case ArithOp::pow: return pow(a, index(b));
    }
    throw Error(ErrorKind::OutOfRange, "unknown arithmetic op");
}

std::string FieldCtx::to_string(const FieldElement& a) const {
    check(a);
    if (l_ == 1) return std::to_string(a.c_[0]);
    std::ostringstream os;
    for (unsigned i = 0; i < l_; ++i) {
        if (i) os << ':';
        os << a.c_[i];
    }
    return os.str();
}

std::string FieldCtx::describe() const {
    std::ostringstream os;
    os << "F_" << p_;
    if (l_ > 1) os << '^' << l_;
    return os.str();
}

FieldPtr make_prime_field(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31)) {
        throw Error(ErrorKind::OutOfRange, "characteristic must satisfy 2 <= p < 2^31, got " + std::to_string(p));
    }
    if (!is_prime(static_cast<std::uint64_t>(p))) {
        throw Error(ErrorKind::NotPrime, std::to_string(p) + " is composite");
    }
    return std::make_shared<const FieldCtx>(static_cast<std::uint32_t>(p), 1u, std::vector<Residue>{});
}

FieldPtr make_extension(const FieldPtr& base, unsigned l, std::uint64_t seed) {
    if (!base || !base->is_prime_field()) throw Error(ErrorKind::OutOfRange, "extension base must be a prime field");
    if (l < 1 || l > FieldCtx::kMaxDegree) throw Error(ErrorKind::OutOfRange, "extension degree out of range");
    if (l == 1) return base;
    const u64 p = base->p();
    BigInt count = 1;
    for (unsigned i = 0; i < l; ++i) count *= p;
    BigInt idx = BigInt(seed) % count;
    for (BigInt tried = 0; tried < count; ++tried) {
        RawPoly m(l + 1, 0);
        BigInt rest = idx;
        for (unsigned i = 0; i < l; ++i) {
            m[i] = static_cast<Residue>(static_cast<u64>(rest % p));
            rest /= p;
        }
        m[l] = 1;
        if (m[0] != 0 && raw_is_irreducible(m, p)) {
            return std::make_shared<const FieldCtx>(base->p(), l, std::move(m));
        }
        ++idx;
        if (idx == count) idx = 0;
    }
    throw Error(ErrorKind::OutOfRange, "no irreducible polynomial found");  // unreachable for l >= 1
}

}  // namespace shortint
