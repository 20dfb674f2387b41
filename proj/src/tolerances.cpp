#include <shortint/error.hpp>
#include <shortint/tolerance_fixture.hpp>
#include <shortint/tolerances.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace shortint {

Tolerances Tolerances::builtin() {
    Tolerances t = from_json(detail::kToleranceFixture);
    t.source_ = "builtin";
    return t;
}

Tolerances Tolerances::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::OutOfRange, "cannot read tolerance file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    Tolerances t = from_json(buf.str());
    t.source_ = path;
    return t;
}

Tolerances Tolerances::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(e.byte, "tolerance JSON: " + std::string(e.what()));
    }
    Tolerances t;
    try {
        for (const auto& [name, item] : doc.at("families").items()) {
            ToleranceEntry e;
            e.C = item.at("C").get<double>();
            e.observed_max = item.value("observed_max", 0.0);
            e.samples = item.value("samples", 0);
            e.pilot_primes = item.value("pilot_primes", std::vector<std::int64_t>{});
            if (!(e.C > 0)) throw Error(ErrorKind::OutOfRange, "tolerance " + name + " must be positive");
            t.families_[name] = e;
        }
        if (doc.contains("morse_scan")) {
            const auto& scan = doc.at("morse_scan");
            t.morse_bound_factor_ = scan.value("bound_factor", 3);
            if (scan.contains("observed_max")) {
                for (const auto& [key, value] : scan.at("observed_max").items()) t.morse_observed_[key] = value.get<std::int64_t>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::OutOfRange, "tolerance JSON schema: " + std::string(e.what()));
    }
    t.source_ = "inline";
    return t;
}

const ToleranceEntry& Tolerances::entry(const std::string& family) const {
    auto it = families_.find(family);
    if (it == families_.end()) throw Error(ErrorKind::OutOfRange, "no tolerance for family '" + family + "'");
    return it->second;
}

double Tolerances::C(const std::string& family) const {
    return entry(family).C;
}

}  // namespace shortint
