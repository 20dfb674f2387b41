#ifndef SHORTINT_CYCLE_TYPE_HPP
#define SHORTINT_CYCLE_TYPE_HPP

#include <compare>
#include <string>
#include <vector>

namespace shortint {

/// A partition of d, i.e. the cycle type of a permutation in S_d. For a
/// squarefree polynomial the parts are the degrees of its irreducible factors.
class CycleType {
public:
    CycleType() = default;
    /// Parts in any order; stored descending. Throws OutOfRange on a zero part.
    explicit CycleType(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int degree() const noexcept { return d_; }
    int num_parts() const noexcept { return static_cast<int>(parts_.size()); }

    /// (-1)^{#parts}
    int mu_value() const noexcept { return num_parts() % 2 == 0 ? 1 : -1; }
    /// Sign of any permutation of this type: (-1)^{d - #parts}.
    int sgn_value() const noexcept { return (d_ - num_parts()) % 2 == 0 ? 1 : -1; }

    /// "3,1,1"
    std::string to_string() const;
    /// Inverse of to_string; throws SyntaxError.
    static CycleType parse(const std::string& text);

    // Descending parts compared lexicographically; larger sorts first in
    // the canonical (reverse-lexicographic) enumeration.
    friend auto operator<=>(const CycleType&, const CycleType&) = default;
    friend bool operator==(const CycleType&, const CycleType&) = default;

private:
    std::vector<int> parts_;
    int d_ = 0;
};

}  // namespace shortint

#endif
