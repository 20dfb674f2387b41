#include <shortint/reports.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace shortint {

namespace {

Json rationals(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

bool scalar_array(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (e.is_structured()) return false;
    return true;
}

using Row = std::vector<std::pair<std::string, std::string>>;

void flatten(const Json& v, const std::string& prefix, const std::string& table_key, Row& out) {
    for (const auto& [key, val] : v.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (prefix.empty() && key == table_key) continue;
        if (val.is_object()) {
            flatten(val, path, table_key, out);
        } else if (scalar_array(val)) {
            std::string joined;
            for (std::size_t i = 0; i < val.size(); ++i) joined += (i ? ";" : "") + scalar_text(val[i]);
            out.emplace_back(path, joined);
        } else if (val.is_array()) {
            out.emplace_back(path, val.dump());
        } else {
            out.emplace_back(path, scalar_text(val));
        }
    }
}

std::vector<Row> table_rows(const Json& report, const std::string& table_key) {
    std::vector<Row> rows;
    if (!report.contains(table_key)) return rows;
    const Json& t = report.at(table_key);
    if (t.is_object()) {
        for (const auto& [key, val] : t.items()) rows.push_back({{"key", key}, {"value", scalar_text(val)}});
    } else if (t.is_array()) {
        for (const auto& entry : t) {
            Row r;
            if (entry.is_object()) {
                flatten(entry, "", "", r);
            } else {
                r.emplace_back("value", scalar_text(entry));
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

}  // namespace

Json to_json(const ExperimentReport& r, const ReportOptions& opts) {
    Json j;
    j["field"] = r.field;
    j["f"] = r.f;
    j["shifts"] = r.shifts;
    j["phis"] = r.phis;
    j["q"] = r.q;
    j["morse"] = r.morse;
    j["raw_sum"] = to_string(r.raw_sum);
    j["prediction"] = to_string(r.prediction);
    j["predicted_constant"] = to_string(r.predicted_constant);
    j["main_term"] = to_string(r.main_term);
    j["abs_error"] = to_string(r.abs_error);
    j["normalized_error"] = r.normalized_error;
    j["cycle_type_counts"] = Json::object();
    for (const auto& [k, n] : r.cycle_type_counts) j["cycle_type_counts"][k] = n;
    j["nonsquarefree_count"] = r.nonsquarefree_count;
    if (opts.timings) {
        j["elapsed_ms"] = r.elapsed_ms;
        j["worker_count"] = r.worker_count;
    }
    return j;
}

Json to_json(const CancellationVerdict& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["sign"] = v.sign ? Json(*v.sign) : Json(nullptr);
    j["witness"] = v.witness.to_string();
    j["exponents"] = v.exponents;
    return j;
}

Json to_json(const MoebiusBattery& b, const ReportOptions& opts) {
    Json j;
    j["single"] = to_json(b.single, opts);
    j["chowla"] = to_json(b.chowla, opts);
    j["verdict"] = to_json(b.verdict);
    j["dichotomy_ok"] = b.dichotomy_ok;
    return j;
}

Json to_json(const MorseDiagnostics& m) {
    Json j;
    j["morse"] = m.morse;
    j["derivative_degree"] = m.derivative_degree;
    j["derivative_squarefree"] = m.derivative_squarefree;
    j["distinct_values"] = m.distinct_values;
    j["hypothesis_warning"] = m.hypothesis_warning;
    j["method"] = m.method;
    return j;
}

Json to_json(const ChebotarevReport& r, const ReportOptions& opts) {
    Json j;
    j["field"] = r.field;
    j["f"] = r.f;
    j["shifts"] = r.shifts;
    j["squarefree_count"] = r.squarefree_count;
    j["nonsquarefree_count"] = r.nonsquarefree_count;
    j["total_variation"] = r.total_variation;
    j["rows"] = Json::array();
    for (const auto& row : r.rows) {
        j["rows"].push_back({{"cycle_type", row.key},
                             {"count", row.count},
                             {"frequency", to_string(row.frequency)},
                             {"predicted", to_string(row.predicted)},
                             {"deviation", row.deviation}});
    }
    if (opts.timings) {
        j["elapsed_ms"] = r.elapsed_ms;
        j["worker_count"] = r.worker_count;
    }
    return j;
}

Json to_json(const MorseScan& s) {
    Json j;
    j["hypothesis_violated"] = s.hypothesis_violated;
    j["hypothesis_note"] = s.hypothesis_note;
    j["scanned"] = s.scanned;
    j["bad_count"] = s.bad_count;
    j["bad_s"] = s.bad_s;
    j["resultant_fallbacks"] = s.resultant_fallbacks;
    return j;
}

Json to_json(const GaussCensus& g) {
    return Json{{"enumerated", g.enumerated}, {"formula", g.formula}, {"match", g.enumerated == g.formula}};
}

Json to_json(const SquarefreeCensus& s) {
    return Json{{"q", s.q}, {"squarefree", s.squarefree}, {"nonsquarefree", s.nonsquarefree}, {"bound", s.bound}};
}

Json to_json(const LargeQResult& r, const ReportOptions& opts) {
    Json j;
    j["p"] = r.p;
    j["l"] = r.l;
    j["q"] = r.q;
    j["s"] = r.s;
    j["tau"] = r.tau;
    j["alpha"] = r.alpha;
    j["shifts"] = r.shifts;
    j["multiplicity_two"] = r.multiplicity_two;
    j["single_sums"] = rationals(r.single_sums);
    j["product_sum"] = to_string(r.product_sum);
    j["nonsquarefree_count"] = r.nonsquarefree_count;
    j["max_single_normalized"] = r.max_single_normalized;
    if (opts.timings) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

Json to_json(const FactorizationResult& r, const FieldCtx& F) {
    Json j;
    j["unit"] = F.to_string(r.unit);
    j["omega"] = r.omega();
    j["factors"] = Json::array();
    for (const auto& f : r.factors) {
        j["factors"].push_back({{"poly", f.poly.to_string()}, {"degree", f.poly.degree()}, {"multiplicity", f.multiplicity}});
    }
    return j;
}

Json field_info_json(const FieldCtx& F) {
    Json j;
    j["field"] = F.describe();
    j["p"] = F.p();
    j["degree"] = F.degree();
    j["q"] = F.order().str();
    Json mod = Json::array();
    for (auto c : F.modulus()) mod.push_back(c);
    j["modulus"] = mod;
    return j;
}

std::string to_csv(const Json& report, const std::string& table_key) {
    return to_csv(std::vector<std::pair<std::string, Json>>{{"", report}}, table_key);
}

std::string to_csv(const std::vector<std::pair<std::string, Json>>& reports, const std::string& table_key) {
    const bool named = !(reports.size() == 1 && reports[0].first.empty());
    std::vector<std::string> header;
    std::vector<Row> rows;
    auto note = [&header](const std::string& col) {
        if (std::find(header.begin(), header.end(), col) == header.end()) header.push_back(col);
    };
    if (named) note("experiment");
    for (const auto& [name, report] : reports) {
        Row summary;
        if (named) summary.emplace_back("experiment", name);
        flatten(report, "", table_key, summary);
        for (const auto& [col, _] : summary) note(col);
        auto table = table_rows(report, table_key);
        if (table.empty()) {
            rows.push_back(summary);
            continue;
        }
        for (auto& t : table) {
            Row row = summary;
            for (auto& [col, val] : t) {
                const std::string full = table_key + "." + col;
                note(full);
                row.emplace_back(full, std::move(val));
            }
            rows.push_back(std::move(row));
        }
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_cell(header[i]);
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) os << ',';
            for (const auto& [col, val] : row)
                if (col == header[i]) {
                    os << csv_cell(val);
                    break;
                }
        }
        os << '\n';
    }
    return os.str();
}

ClassFunction parse_class_function(const std::string& text, int d, const std::string& name) {
    std::map<CycleType, Rational> table;
    std::istringstream in(text);
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const std::size_t line_start = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw SyntaxError(line_start, "expected 'parts=value'");
        std::string lhs = line.substr(0, eq);
        lhs.erase(std::remove_if(lhs.begin(), lhs.end(), ::isspace), lhs.end());
        std::string rhs = line.substr(eq + 1);
        rhs.erase(std::remove_if(rhs.begin(), rhs.end(), ::isspace), rhs.end());
        CycleType lambda;
        try {
            lambda = CycleType::parse(lhs);
        } catch (const SyntaxError& e) {
            throw SyntaxError(line_start + e.offset(), "bad partition '" + lhs + "'");
        }
        if (lambda.to_string() != lhs) throw SyntaxError(line_start, "parts must be listed descending: '" + lhs + "'");
        if (lambda.degree() != d) {
            throw Error(ErrorKind::DegreeMismatch, "partition " + lhs + " is not a partition of " + std::to_string(d));
        }
        if (table.count(lambda)) throw SyntaxError(line_start, "partition " + lhs + " listed twice");
        try {
            table[lambda] = parse_rational(rhs);
        } catch (const SyntaxError& e) {
            throw SyntaxError(line_start + eq + 1 + e.offset(), "bad value '" + rhs + "'");
        }
    }
    return make_custom(d, name, table);
}

ClassFunction load_class_function(const std::string& path, int d) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Usage, "cannot read class function file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_class_function(buf.str(), d, "file:" + path);
}

ClassFunction parse_phi(const std::string& spec, int d) {
    if (spec == "prime") return make_builtin(Builtin::prime, d);
    if (spec == "mu") return make_builtin(Builtin::moebius, d);
    if (spec.rfind("dr:", 0) == 0) {
        const std::string r = spec.substr(3);
        if (r.empty() || r.find_first_not_of("0123456789") != std::string::npos || r.size() > 4) {
            throw Error(ErrorKind::Usage, "dr:R needs a positive integer R, got '" + spec + "'");
        }
        return make_builtin(Builtin::divisor, d, std::stoi(r));
    }
    if (spec.rfind("file:", 0) == 0) return load_class_function(spec.substr(5), d);
    throw Error(ErrorKind::Usage, "unknown class function '" + spec + "' (prime, mu, dr:R, file:PATH)");
}

}  // namespace shortint
