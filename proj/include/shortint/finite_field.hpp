#ifndef SHORTINT_FINITE_FIELD_HPP
#define SHORTINT_FINITE_FIELD_HPP

#include <shortint/error.hpp>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace shortint {

using BigInt = boost::multiprecision::cpp_int;
using Residue = std::uint32_t;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Element of F_{p^l}: l residues in [0, p), coefficient i multiplying y^i
/// where y is the class of the generator modulo the field's modulus.
class FieldElement {
public:
    using Storage = boost::container::small_vector<Residue, 4>;

    FieldElement() = default;

    std::span<const Residue> coeffs() const noexcept { return {c_.data(), c_.size()}; }
    std::uint32_t ctx_id() const noexcept { return ctx_id_; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.ctx_id_ == b.ctx_id_ && a.c_ == b.c_;
    }

private:
    friend class FieldCtx;
    FieldElement(Storage c, std::uint32_t id) : c_(std::move(c)), ctx_id_(id) {}

    Storage c_;
    std::uint32_t ctx_id_ = 0;
};

enum class ArithOp { add, sub, mul, div, pow };

/// Immutable description of F_q with q = p^l. Residues are machine words, so
/// p is limited to p < 2^31 and every product fits in 64 bits.
class FieldCtx {
public:
    static constexpr unsigned kMaxDegree = 288;

    std::uint32_t p() const noexcept { return p_; }
    unsigned degree() const noexcept { return l_; }
    const BigInt& order() const noexcept { return q_; }
    /// q as a machine word when it fits.
    std::optional<std::uint64_t> order_u64() const noexcept { return q_u64_; }
    /// Coefficients of the monic modulus, ascending (size l + 1). Empty for prime fields.
    std::span<const Residue> modulus() const noexcept { return modulus_; }
    std::uint32_t id() const noexcept { return id_; }
    bool is_prime_field() const noexcept { return l_ == 1; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(std::int64_t v) const;
    /// Class of y in F_p[y]/(modulus). Requires l > 1.
    FieldElement generator() const;
    FieldElement from_coeffs(std::span<const Residue> coeffs) const;
    FieldElement from_index(std::uint64_t index) const;
    FieldElement from_index(const BigInt& index) const;
    FieldElement random(std::mt19937_64& rng) const;

    /// Canonical index sum c_i p^i: a bijection onto [0, q).
    BigInt index(const FieldElement& a) const;
    std::uint64_t index_u64(const FieldElement& a) const;
    /// Same order as index(), without materialising big integers.
    bool index_less(const FieldElement& a, const FieldElement& b) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement scale(const FieldElement& a, Residue s) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;
    FieldElement pow(const FieldElement& a, const BigInt& e) const;

    /// a -> a^p.
    FieldElement frobenius(const FieldElement& a) const;
    bool in_prime_subfield(const FieldElement& a) const;
    /// Residue of an element lying in the prime subfield.
    Residue prime_value(const FieldElement& a) const;

    /// Quadratic character: 0, +1 or -1. Requires odd p.
    int quadratic_character(const FieldElement& a) const;

    /// Checked entry point: `pow` reads the exponent from b's canonical index.
    FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) const;

    std::string to_string(const FieldElement& a) const;
    std::string describe() const;

    void check(const FieldElement& a) const;

    FieldCtx(std::uint32_t p, unsigned l, std::vector<Residue> modulus);

private:
    FieldElement make(FieldElement::Storage c) const { return FieldElement(std::move(c), id_); }

    std::uint32_t p_;
    unsigned l_;
    std::vector<Residue> modulus_;
    std::uint32_t id_;
    BigInt q_;
    std::optional<std::uint64_t> q_u64_;
};

bool is_prime(std::uint64_t n) noexcept;

/// F_p. Throws OutOfRange for p < 2 (or p >= 2^31) and NotPrime for composite p.
FieldPtr make_prime_field(std::int64_t p);

/// F_{p^l}: the modulus is the first monic irreducible of degree l found by
/// scanning coefficient vectors in canonical index order, starting at an
/// offset derived from seed and wrapping around.
FieldPtr make_extension(const FieldPtr& base, unsigned l, std::uint64_t seed = 0);

}  // namespace shortint

#endif
