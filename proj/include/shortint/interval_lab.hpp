#ifndef SHORTINT_INTERVAL_LAB_HPP
#define SHORTINT_INTERVAL_LAB_HPP

#include <shortint/class_functions.hpp>
#include <shortint/morse_galois.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shortint {

struct SweepOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
};

unsigned resolve_workers(unsigned requested);

/// The interval I(f) paired with shifts h_1..h_k and one class function per shift.
struct IntervalSpec {
    Poly f;
    std::vector<FieldElement> shifts;
    std::vector<ClassFunction> phis;

    /// Throws DegreeZero, DegreeMismatch or OutOfRange (repeated shifts, arity).
    void validate() const;
};

/// Joint cycle types of (f + h_1 + a, ..., f + h_k + a) over all a in F_q.
/// Keys hold positions in partitions_of(d), -1 marking a non-squarefree entry.
struct JointCounts {
    int d = 0;
    std::size_t k = 0;
    std::map<std::vector<int>, std::int64_t> counts;
    std::int64_t q = 0;
    std::int64_t nonsquarefree = 0;
    double elapsed_ms = 0;
    unsigned workers = 1;
};

/// Sweeps a in contiguous blocks of canonical indices, one block per worker.
/// The merged counts do not depend on the worker count.
JointCounts sweep_cycle_types(const Poly& f, const std::vector<FieldElement>& shifts, const SweepOptions& opts = {});

/// sum over the sweep of prod_i phi_i at each entry's cycle type.
Rational joint_sum(const JointCounts& joint, const std::vector<ClassFunction>& phis);
/// Restricts a sweep to a subset of its shifts.
JointCounts project(const JointCounts& joint, const std::vector<std::size_t>& which);

/// "3,1|2,2"; a non-squarefree entry prints as "*".
std::string joint_key(int d, const std::vector<int>& key);

enum class Prediction { generic, empirical, empirical_product };
std::string to_string(Prediction p);

struct ExperimentReport {
    std::string field;
    std::string f;
    std::vector<std::string> shifts;
    std::vector<std::string> phis;
    std::string q;
    bool morse = false;
    Rational raw_sum;
    Rational predicted_constant;
    Prediction prediction = Prediction::generic;
    Rational main_term;
    Rational abs_error;
    /// |raw_sum - main_term| / sqrt(q)
    double normalized_error = 0;
    /// Fully squarefree joint cycle types only.
    std::map<std::string, std::int64_t> cycle_type_counts;
    std::int64_t nonsquarefree_count = 0;
    double elapsed_ms = 0;
    unsigned worker_count = 1;
};

/// Exact sum of phi over I(f). The prediction is mean_constant(phi) for Morse
/// f and the empirical coset constant otherwise.
ExperimentReport class_sum(const Poly& f, const ClassFunction& phi, const SweepOptions& opts = {});

/// Exact sum over a of prod_i phi_i(f + h_i + a). Predictions: the product of
/// mean constants for Morse f; the product of single-shift empirical constants
/// when no shift difference is a bad shift; the joint empirical constant
/// otherwise.
ExperimentReport correlation_sum(const IntervalSpec& spec, const SweepOptions& opts = {});

struct MoebiusBattery {
    ExperimentReport single;
    ExperimentReport chowla;
    CancellationVerdict verdict;
    bool dichotomy_ok = false;
};

/// Sum of mu(f + h_1 + a) and of prod_i mu(f + h_i + a), with the classifier
/// verdict. Both must be >= q - C sqrt(q) or both <= C sqrt(q); otherwise
/// DichotomyViolation is thrown.
MoebiusBattery moebius_battery(const Poly& f, const std::vector<FieldElement>& shifts, double C,
                               const SweepOptions& opts = {});

struct ChebotarevRow {
    std::string key;
    std::int64_t count = 0;
    Rational frequency;
    Rational predicted;
    double deviation = 0;
};

struct ChebotarevReport {
    std::string field;
    std::string f;
    std::vector<std::string> shifts;
    std::int64_t squarefree_count = 0;
    std::int64_t nonsquarefree_count = 0;
    /// Every observed joint class, then unobserved classes are folded into
    /// total_variation only.
    std::vector<ChebotarevRow> rows;
    double total_variation = 0;
    double elapsed_ms = 0;
    unsigned worker_count = 1;

    const ChebotarevRow* row(const std::string& key) const;
};

/// Joint cycle-type frequencies over squarefree specializations against the
/// uniform prediction prod_i 1/z_{lambda_i}.
ChebotarevReport chebotarev_empirical(const Poly& f, const std::vector<FieldElement>& shifts,
                                      const SweepOptions& opts = {});

struct SquarefreeCensus {
    std::int64_t q = 0;
    std::int64_t squarefree = 0;
    std::int64_t nonsquarefree = 0;
    /// k (d - 1)
    std::int64_t bound = 0;
};

SquarefreeCensus squarefree_census(const Poly& f, const std::vector<FieldElement>& shifts,
                                   const SweepOptions& opts = {});

struct GaussCensus {
    std::int64_t enumerated = 0;
    std::int64_t formula = 0;
};

/// Throws TooLarge when p^d > 10^7.
GaussCensus gauss_census(std::int64_t p, int d, const SweepOptions& opts = {});
/// (1/d) sum_{e | d} mu(d/e) p^e
std::int64_t gauss_formula(std::int64_t p, int d);

struct MorseScan {
    bool hypothesis_violated = false;
    std::string hypothesis_note;
    std::int64_t scanned = 0;
    std::int64_t bad_count = 0;
    /// Canonical indices of s with f + s x not Morse.
    std::vector<std::string> bad_s;
    std::int64_t resultant_fallbacks = 0;
};

/// Counts s in F_q with f(x) + s x not Morse. A failed hypothesis (p | 2d or
/// f'' = 0) is reported in the result and the scan still runs.
MorseScan morse_density_scan(const Poly& f, const SweepOptions& opts = {});

struct LargeQResult {
    std::uint32_t p = 0;
    unsigned l = 0;
    std::string q;
    std::string s;
    std::string tau;
    std::string alpha;
    std::vector<std::string> shifts;
    bool multiplicity_two = false;
    std::vector<Rational> single_sums;
    Rational product_sum;
    std::int64_t nonsquarefree_count = 0;
    double max_single_normalized = 0;
    double elapsed_ms = 0;
};

/// f_s = x^3 + s x over F_{p^l} with s the first nonzero element (canonical
/// order) making -s/3 a square. R_{f_s} = {alpha, -alpha}; the shifts are
/// h_i = i alpha for i = 1..p, so R + h_i covers F_p alpha twice over.
/// Throws NoSuitableS, TooLarge (q > 10^6) or OutOfRange (p < 5).
LargeQResult large_q_demo(std::uint32_t p, unsigned l, const SweepOptions& opts = {});

/// Multiset union of R + h over the shifts, as (element index, multiplicity).
std::map<std::string, int> shifted_value_multiset(const Poly& f, const std::vector<FieldElement>& shifts);

}  // namespace shortint

#endif
