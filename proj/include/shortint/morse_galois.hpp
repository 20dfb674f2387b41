#ifndef SHORTINT_MORSE_GALOIS_HPP
#define SHORTINT_MORSE_GALOIS_HPP

#include <shortint/polynomial.hpp>

#include <optional>
#include <string>
#include <vector>

namespace shortint {

/// Roots of f' and the critical values f(tau), all inside one extension
/// F_{q^M} where M is the lcm of the degrees of the irreducible factors of f'.
struct CriticalData {
    static constexpr unsigned kMaxExtension = 24;

    FieldPtr base;
    FieldPtr ext;
    unsigned M = 1;
    /// Image of the base field's generator in ext (unused for prime fields).
    FieldElement base_root;

    struct Point {
        FieldElement tau;
        unsigned multiplicity;
    };
    /// Sorted by canonical index in ext.
    std::vector<Point> points;
    /// values[i] = f(points[i].tau); R_f counted with point multiplicity.
    std::vector<FieldElement> values;
    std::size_t distinct_value_count = 0;

    /// Embeds an element of the base field into ext.
    FieldElement embed(const FieldElement& a) const;
    Poly embed(const Poly& f) const;
    /// Distinct critical values, sorted by canonical index.
    std::vector<FieldElement> distinct_values() const;
};

/// Throws DerivativeVanishes when f' = 0 and ExtensionTooLarge when M > 24.
CriticalData critical_data(const Poly& f, std::uint64_t seed = 0);

struct MorseDiagnostics {
    bool morse = false;
    int derivative_degree = 0;
    bool derivative_squarefree = false;
    std::size_t distinct_values = 0;
    /// p divides 2d, so Morse need not force the full symmetric group.
    bool hypothesis_warning = false;
    /// "critical-values" or "resultant" (used when the splitting field is too large).
    std::string method;
};

/// deg f' = d - 1, f' squarefree and d - 1 distinct critical values. When the
/// critical points need an extension beyond the cap, the answer is read off
/// D(t) = disc_x(f + t) instead: the critical values are the roots of D(-t).
MorseDiagnostics is_morse(const Poly& f);

/// Number of distinct critical values from the squarefree part of D(t).
/// Needs p > deg f.
std::size_t distinct_critical_values_by_resultant(const Poly& f);

/// B(f): nonzero differences of critical values lying in the prime field,
/// returned as elements of f's field sorted by index.
std::vector<FieldElement> bad_set(const Poly& f);

/// True when some nonzero difference of H lies in R_f - R_f. For H inside the
/// prime field this is B(f) meeting H - H.
bool bad_shift_check(const Poly& f, const std::vector<FieldElement>& H);

enum class CancellationKind { NoCancellation, SquareRootCancellation };
std::string to_string(CancellationKind kind);

struct CancellationVerdict {
    CancellationKind kind = CancellationKind::SquareRootCancellation;
    /// Constant value of mu on squarefree members of I(f); NoCancellation only.
    std::optional<int> sign;
    Poly witness;
    std::vector<unsigned> exponents;
};

/// D(t) = c * prod s_i^{e_i}. All e_i even means mu(f + a) = (-1)^d chi(c)
/// for every squarefree f + a. Throws EvenCharacteristic or FieldTooSmall.
CancellationVerdict classify_mu_cancellation(const Poly& f);

/// (-1)^d chi(disc g), 0 when disc g = 0. Throws EvenCharacteristic.
int stickelberger_mu(const Poly& g);

}  // namespace shortint

#endif
