#ifndef SHORTINT_TOLERANCES_HPP
#define SHORTINT_TOLERANCES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shortint {

/// Calibrated constant for one family of sqrt(q) checks: an error e passes
/// when |e| <= C sqrt(q).
struct ToleranceEntry {
    double C = 0;
    double observed_max = 0;
    int samples = 0;
    std::vector<std::int64_t> pilot_primes;
};

class Tolerances {
public:
    /// The fixture compiled into the library.
    static Tolerances builtin();
    static Tolerances from_file(const std::string& path);
    /// Throws SyntaxError on malformed JSON and OutOfRange on a bad schema.
    static Tolerances from_json(const std::string& text);

    /// Throws OutOfRange for an unknown family.
    double C(const std::string& family) const;
    const ToleranceEntry& entry(const std::string& family) const;
    const std::map<std::string, ToleranceEntry>& families() const noexcept { return families_; }

    /// Non-Morse s-values allowed in a genericity scan: factor * d^2.
    int morse_bound_factor() const noexcept { return morse_bound_factor_; }
    /// Largest non-Morse count seen while calibrating, keyed by "p/d".
    const std::map<std::string, std::int64_t>& morse_observed() const noexcept { return morse_observed_; }

    std::string source() const { return source_; }

private:
    std::map<std::string, ToleranceEntry> families_;
    int morse_bound_factor_ = 3;
    std::map<std::string, std::int64_t> morse_observed_;
    std::string source_;
};

}  // namespace shortint

#endif
