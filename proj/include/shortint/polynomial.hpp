#ifndef SHORTINT_POLYNOMIAL_HPP
#define SHORTINT_POLYNOMIAL_HPP

#include <shortint/cycle_type.hpp>
#include <shortint/finite_field.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shortint {

/// Dense univariate polynomial over a FieldCtx, ascending coefficients with
/// no trailing zeros. The zero polynomial has no coefficients and degree -1.
class Poly {
public:
    static constexpr int kZeroDegree = -1;

    explicit Poly(FieldPtr ctx);
    Poly(FieldPtr ctx, std::vector<FieldElement> coeffs);

    static Poly constant(FieldPtr ctx, const FieldElement& c);
    static Poly x(FieldPtr ctx);
    /// Integer coefficients reduced into the prime subfield, ascending.
    static Poly from_ints(FieldPtr ctx, std::span<const std::int64_t> coeffs);
    /// Monic polynomial of degree d whose lower coefficients c_0..c_{d-1}
    /// are read from the canonical index (base q digits).
    static Poly monic_from_index(FieldPtr ctx, int d, std::uint64_t index);

    const FieldPtr& ctx() const noexcept { return ctx_; }
    const FieldCtx& field() const noexcept { return *ctx_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_monic() const noexcept;
    std::span<const FieldElement> coeffs() const noexcept { return c_; }
    /// Coefficient of x^i, zero beyond the degree.
    FieldElement coeff(int i) const;
    const FieldElement& leading() const;

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.ctx_ == b.ctx_ && a.c_ == b.c_;
    }

    std::string to_string() const;

private:
    void trim();

    FieldPtr ctx_;
    std::vector<FieldElement> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const FieldElement& c);
/// f + c (adds to the constant term).
Poly add_constant(const Poly& f, const FieldElement& c);

struct DivMod {
    Poly quotient;
    Poly remainder;
};
DivMod divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

Poly monic(const Poly& f);
FieldElement evaluate(const Poly& f, const FieldElement& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);
Poly powmod(const Poly& base, const BigInt& e, const Poly& m);
/// h(x)^q mod m for q = |F|, given xq = x^q mod m. Uses h^q = h(x^q) over F_q.
Poly frobenius_mod(const Poly& h, const Poly& xq, const Poly& m);
/// x^q mod m.
Poly x_pow_q_mod(const Poly& m);

/// Lagrange interpolation through (xs[i], ys[i]); xs pairwise distinct.
Poly interpolate(const FieldPtr& ctx, std::span<const FieldElement> xs, std::span<const FieldElement> ys);

Poly derivative(const Poly& f);
/// Sum_{i>=2} C(i,2) a_i x^{i-2}, binomials reduced mod p.
Poly second_hasse_schmidt(const Poly& f);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);

bool is_squarefree(const Poly& g);
bool is_irreducible(const Poly& g);

/// Cycle type of a squarefree polynomial via distinct-degree factorization
/// only (no equal-degree splitting). Throws NotSquarefree.
CycleType degree_pattern(const Poly& g);
/// Sweep hot path: the cycle type, or nothing when g is not squarefree.
std::optional<CycleType> cycle_type_if_squarefree(const Poly& g);

struct Factor {
    Poly poly;
    unsigned multiplicity;
};

struct FactorizationResult {
    std::vector<Factor> factors;
    FieldElement unit;

    /// Number of distinct irreducible factors.
    std::size_t omega() const noexcept { return factors.size(); }
    Poly expand(const FieldPtr& ctx) const;
};

/// Canonical order for monic polynomials: degree, then canonical index of
/// the coefficient vector.
bool canonical_less(const Poly& a, const Poly& b);

/// g = c * prod s_i^{e_i} with s_i squarefree, pairwise coprime, monic.
std::vector<Factor> squarefree_decomposition(const Poly& g);

/// Full factorization: squarefree, distinct-degree, then seeded
/// equal-degree splitting. The factor list does not depend on seed.
FactorizationResult factor(const Poly& g, std::uint64_t seed = 0);

/// Monic roots of f that lie in its field, sorted by canonical index.
std::vector<FieldElement> roots(const Poly& f, std::uint64_t seed = 0);

FieldElement resultant(const Poly& f, const Poly& g);
/// (-1)^{d(d-1)/2} Res(g, g') for monic g; zero when g' = 0.
FieldElement discriminant(const Poly& g);
/// D(t) = disc_x(f(x) + t) by interpolation at d points. Requires p > d.
Poly disc_in_t(const Poly& f);

/// Trial division by every monic polynomial of degree <= deg(g)/2.
/// Throws TooLarge when q^{ceil(deg/2)} > 10^6.
FactorizationResult brute_force_factor(const Poly& g);

}  // namespace shortint

#endif
