#ifndef SHORTINT_ACCEPTANCE_SUITE_HPP
#define SHORTINT_ACCEPTANCE_SUITE_HPP

#include <shortint/reports.hpp>
#include <shortint/tolerances.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shortint {

struct SuiteOptions {
    /// Swaps the ~10^4 primes for 1009 and 1019.
    bool quick = false;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    /// Defaults to Tolerances::builtin().
    std::optional<Tolerances> tolerances;
};

/// One compared quantity inside a check.
struct Measurement {
    std::string label;
    std::string observed;
    std::string expected;
    /// Empty for exact comparisons.
    std::string tolerance;
    bool pass = false;
};

struct CheckResult {
    int id = 0;
    std::string name;
    std::string claim;
    bool pass = false;
    std::vector<Measurement> measurements;
    std::string error;
    double elapsed_ms = 0;
};

struct SuiteReport {
    bool quick = false;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string tolerance_source;
    std::vector<CheckResult> checks;
    double elapsed_ms = 0;

    bool all_pass() const;
};

/// Primes used by the suite: {p = 1 mod 12, p = 11 mod 12}.
std::pair<std::int64_t, std::int64_t> suite_primes(bool quick);

/// x^d + x + c for the least c >= 1 making it Morse over F.
Poly suite_morse_poly(const FieldPtr& F, int d);

constexpr int kSuiteCriteria = 16;

/// Runs criterion id (1..16). Never throws; failures land in the result.
CheckResult run_criterion(int id, const SuiteOptions& opts);

/// All criteria in order; on_check is called after each one finishes.
SuiteReport run_acceptance_suite(const SuiteOptions& opts,
                            const std::function<void(const CheckResult&)>& on_check = {});

Json to_json(const CheckResult& c, const ReportOptions& opts = {});
Json to_json(const SuiteReport& r, const ReportOptions& opts = {});

/// "PASS  4 morse-prime-counts  ..." style line.
std::string summary_line(const CheckResult& c);

}  // namespace shortint

#endif
