#ifndef SHORTINT_REPORTS_HPP
#define SHORTINT_REPORTS_HPP

#include <shortint/interval_lab.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace shortint {

using Json = nlohmann::ordered_json;

struct ReportOptions {
    /// When false, elapsed_ms and worker_count are left out entirely.
    bool timings = true;
};

Json to_json(const ExperimentReport& r, const ReportOptions& opts = {});
Json to_json(const MoebiusBattery& b, const ReportOptions& opts = {});
Json to_json(const CancellationVerdict& v);
Json to_json(const MorseDiagnostics& m);
Json to_json(const ChebotarevReport& r, const ReportOptions& opts = {});
Json to_json(const MorseScan& s);
Json to_json(const GaussCensus& g);
Json to_json(const SquarefreeCensus& s);
Json to_json(const LargeQResult& r, const ReportOptions& opts = {});
Json to_json(const FactorizationResult& r, const FieldCtx& F);
Json field_info_json(const FieldCtx& F);

/// Flattens a report into CSV. Scalars (and scalar arrays, joined with ';')
/// become summary columns named by their dotted path. The member named
/// table_key, if present, contributes one row per entry: an object of
/// scalars gives columns (key, value); an array of objects gives one column
/// per field. Summary columns repeat on every row. The first line is the
/// header.
std::string to_csv(const Json& report, const std::string& table_key);

/// Several reports stacked into one table with a leading "experiment"
/// column; the header is the union of columns in first-seen order.
std::string to_csv(const std::vector<std::pair<std::string, Json>>& reports, const std::string& table_key);

/// "prime", "mu", "dr:R" or "file:PATH" for degree d.
ClassFunction parse_phi(const std::string& spec, int d);

/// Lines "p1,p2,...=num/den" with parts descending; blank lines and lines
/// starting with '#' are skipped. Missing partitions default to 0.
ClassFunction load_class_function(const std::string& path, int d);
ClassFunction parse_class_function(const std::string& text, int d, const std::string& name);

}  // namespace shortint

#endif
