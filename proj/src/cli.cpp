#include <shortint/cli.hpp>

#include <shortint/acceptance_suite.hpp>
#include <shortint/poly_expr.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace shortint {

namespace {

struct Flags {
    std::int64_t p = 0;
    unsigned ext = 1;
    std::string f;
    std::string shifts;
    std::vector<std::string> phi;
    std::string out = "json";
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string tolerance_file;
    bool quick = false;
    bool no_timings = false;
    int d = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FieldPtr field(const Flags& fl) {
    auto F = make_prime_field(fl.p);
    return fl.ext > 1 ? make_extension(F, fl.ext, 0) : F;
}

Poly monic_poly(const Flags& fl, const FieldPtr& F) {
    Poly f = parse_poly(fl.f, F, 2);
    if (!f.is_monic()) throw UsageError("--f must be monic, got " + f.to_string());
    return f;
}

Json params_json(const std::string& verb, const Flags& fl) {
    Json j;
    if (verb == "paper-suite") {
        j["quick"] = fl.quick;
        j["seed"] = fl.seed;
        if (!fl.tolerance_file.empty()) j["tolerance_file"] = fl.tolerance_file;
        return j;
    }
    if (fl.p) j["p"] = fl.p;
    if (fl.ext > 1) j["ext"] = fl.ext;
    if (!fl.f.empty()) j["f"] = fl.f;
    if (!fl.shifts.empty()) j["shifts"] = fl.shifts;
    if (!fl.phi.empty()) j["phi"] = fl.phi;
    if (fl.d) j["d"] = fl.d;
    return j;
}

struct Outcome {
    Json report;
    std::string table;
    std::optional<bool> pass;
};

Outcome run_verb(const std::string& verb, const Flags& fl, std::ostream& err) {
    const ReportOptions ro{!fl.no_timings};
    const SweepOptions sw{fl.workers};
    if (verb == "paper-suite") {
        SuiteOptions so;
        so.quick = fl.quick;
        so.seed = fl.seed;
        so.workers = fl.workers;
        if (!fl.tolerance_file.empty()) so.tolerances = Tolerances::from_file(fl.tolerance_file);
        const auto r = run_acceptance_suite(so, [&err](const CheckResult& c) { err << summary_line(c) << '\n'; });
        return {to_json(r, ro), "checks", r.all_pass()};
    }
    if (verb == "gauss") {
        const auto g = gauss_census(fl.p, fl.d, sw);
        return {to_json(g), "", g.enumerated == g.formula};
    }
    if (verb == "large-q-demo") {
        return {to_json(large_q_demo(static_cast<std::uint32_t>(fl.p), fl.ext, sw), ro), "", std::nullopt};
    }
    const FieldPtr F = field(fl);
    if (verb == "field-info") return {field_info_json(*F), "", std::nullopt};
    if (verb == "factor") {
        const Poly g = parse_poly(fl.f, F, 1);
        return {to_json(factor(g, fl.seed), *F), "factors", std::nullopt};
    }
    const Poly f = monic_poly(fl, F);
    if (verb == "classify") {
        Json j = to_json(classify_mu_cancellation(f));
        j["f"] = f.to_string();
        j["field"] = F->describe();
        return {j, "", std::nullopt};
    }
    if (verb == "morse") {
        Json j = to_json(is_morse(f));
        j["f"] = f.to_string();
        j["field"] = F->describe();
        try {
            const auto cd = critical_data(f, fl.seed);
            Json vals = Json::array();
            for (const auto& v : cd.distinct_values()) vals.push_back(cd.ext->to_string(v));
            j["critical_field"] = cd.ext->describe();
            j["critical_values"] = vals;
            Json bad = Json::array();
            for (const auto& b : bad_set(f)) bad.push_back(F->to_string(b));
            j["bad_set"] = bad;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ExtensionTooLarge) throw;
            j["critical_values"] = nullptr;
        }
        return {j, "", std::nullopt};
    }
    if (verb == "scan-morse") return {to_json(morse_density_scan(f, sw)), "", std::nullopt};
    if (verb == "sum") {
        if (fl.phi.size() > 1) throw UsageError("sum takes one --phi");
        const auto phi = parse_phi(fl.phi.empty() ? "prime" : fl.phi[0], f.degree());
        return {to_json(class_sum(f, phi, sw), ro), "cycle_type_counts", std::nullopt};
    }
    const auto shifts = parse_element_list(fl.shifts.empty() ? "0" : fl.shifts, F);
    if (verb == "chebotarev") return {to_json(chebotarev_empirical(f, shifts, sw), ro), "rows", std::nullopt};
    if (verb == "correlate") {
        if (fl.shifts.empty()) throw UsageError("correlate needs --shifts");
        if (fl.phi.size() != shifts.size()) {
            throw UsageError("correlate needs one --phi per shift: " + std::to_string(shifts.size()) + " shifts, " +
                             std::to_string(fl.phi.size()) + " --phi");
        }
        IntervalSpec spec{f, shifts, {}};
        for (const auto& s : fl.phi) spec.phis.push_back(parse_phi(s, f.degree()));
        return {to_json(correlation_sum(spec, sw), ro), "cycle_type_counts", std::nullopt};
    }
    throw UsageError("unknown command " + verb);
}

bool usage_kind(ErrorKind k) {
    switch (k) {
        case ErrorKind::SyntaxError:
        case ErrorKind::Usage:
        case ErrorKind::NotPrime:
        case ErrorKind::DegreeZero:
        case ErrorKind::DegreeMismatch:
        case ErrorKind::OutOfRange:
            return true;
        default:
            return false;
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Very short interval statistics over finite fields"};
    app.require_subcommand(1);
    Flags fl;

    auto add_field = [&fl](CLI::App* c, bool ext) {
        c->add_option("--p", fl.p, "Characteristic")->required()->check(CLI::PositiveNumber);
        if (ext) c->add_option("--ext", fl.ext, "Extension degree l, q = p^l")->check(CLI::Range(1u, 64u));
    };
    auto add_common = [&fl](CLI::App* c) {
        c->add_option("--out", fl.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--seed", fl.seed, "Seed for randomized factoring");
        c->add_flag("--no-timings", fl.no_timings, "Omit elapsed_ms and worker_count");
    };
    auto add_workers = [&fl](CLI::App* c) { c->add_option("--workers", fl.workers, "Sweep threads (0 = all cores)"); };
    auto add_f = [&fl](CLI::App* c) { c->add_option("--f", fl.f, "Polynomial, e.g. \"x^4-2*x^2\"")->required(); };

    struct VerbSpec {
        const char* name;
        const char* help;
    };
    const VerbSpec verbs[] = {
        {"field-info", "Describe F_q"},
        {"factor", "Factor a polynomial"},
        {"classify", "Moebius cancellation verdict from the discriminant in t"},
        {"sum", "Sum a class function over f + a"},
        {"correlate", "Sum a product of shifted class functions"},
        {"chebotarev", "Joint cycle-type frequencies against 1/z"},
        {"morse", "Morse diagnostics, critical values and bad shifts"},
        {"gauss", "Count irreducibles of degree d by enumeration"},
        {"scan-morse", "Count s with f + s x not Morse"},
        {"large-q-demo", "Shifted Moebius products for x^3 + s x over F_{p^l}"},
        {"paper-suite", "Run every acceptance check"},
    };
    std::map<std::string, CLI::App*> sub;
    for (const auto& v : verbs) sub[v.name] = app.add_subcommand(v.name, v.help);

    add_field(sub["field-info"], true);
    for (const char* v : {"factor", "classify", "sum", "correlate", "chebotarev", "morse", "scan-morse"}) {
        add_field(sub[v], true);
        add_f(sub[v]);
    }
    sub["sum"]->add_option("--phi", fl.phi, "prime | mu | dr:R | file:PATH");
    sub["correlate"]->add_option("--phi", fl.phi, "One per shift: prime | mu | dr:R | file:PATH")->required();
    sub["correlate"]->add_option("--shifts", fl.shifts, "Comma list; extension elements as a0:a1")->required();
    sub["chebotarev"]->add_option("--shifts", fl.shifts, "Comma list (default 0)");
    add_field(sub["gauss"], false);
    sub["gauss"]->add_option("--d", fl.d, "Degree")->required()->check(CLI::Range(1, 64));
    add_field(sub["large-q-demo"], false);
    sub["large-q-demo"]->add_option("--ext", fl.ext, "Extension degree l")->required()->check(CLI::Range(1u, 64u));
    sub["paper-suite"]->add_flag("--quick", fl.quick, "Primes near 10^3 instead of 10^4");
    sub["paper-suite"]->add_option("--tolerance-file", fl.tolerance_file, "Calibrated constants (JSON)");
    for (const char* v : {"sum", "correlate", "chebotarev", "gauss", "scan-morse", "large-q-demo", "paper-suite"}) add_workers(sub[v]);
    for (auto& [name, c] : sub) add_common(c);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto chosen = app.get_subcommands();
        err << (chosen.empty() ? app.help() : chosen[0]->help());
        return 2;
    }
    const std::string verb = app.get_subcommands().at(0)->get_name();

    try {
        const Outcome o = run_verb(verb, fl, err);
        if (fl.out == "csv") {
            out << to_csv(o.report, o.table);
        } else {
            Json doc;
            doc["command"] = verb;
            doc["params"] = params_json(verb, fl);
            doc["report"] = o.report;
            if (o.pass) doc["pass"] = *o.pass;
            out << doc.dump(2) << '\n';
        }
        return o.pass.value_or(true) ? 0 : 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.get_subcommands().at(0)->help();
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage_kind(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace shortint
