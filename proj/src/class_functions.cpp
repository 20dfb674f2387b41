#include <shortint/class_functions.hpp>

#include <array>
#include <cmath>
#include <mutex>

namespace shortint {

std::string to_string(const Rational& r) {
    return r.str();
}

Rational parse_rational(const std::string& raw) {
    std::string text = raw;
    // U+2212 MINUS SIGN
    static const std::string kUnicodeMinus = "\xE2\x88\x92";
    if (text.rfind(kUnicodeMinus, 0) == 0) text = "-" + text.substr(kUnicodeMinus.size());
    std::size_t pos = 0;
    while (pos < text.size() && text[pos] == ' ') ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    auto read_uint = [&](BigInt& out) {
        const std::size_t start = pos;
        out = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            out = out * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) throw SyntaxError(pos, "expected digits in rational '" + raw + "'");
    };
    BigInt num;
    BigInt den = 1;
    read_uint(num);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        read_uint(den);
        if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + raw + "'");
    }
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos != text.size()) throw SyntaxError(pos, "trailing characters in rational '" + raw + "'");
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

namespace {

void build_partitions(int remaining, int max_part, std::vector<int>& prefix, std::vector<CycleType>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        build_partitions(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

constexpr int kMaxPartitionDegree = 12;

}  // namespace

const std::vector<CycleType>& partitions_of(int d) {
    if (d < 1 || d > kMaxPartitionDegree) {
        throw Error(ErrorKind::OutOfRange, "partitions_of supports 1 <= d <= 12, got " + std::to_string(d));
    }
    static std::array<std::vector<CycleType>, kMaxPartitionDegree + 1> cache;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int n = 1; n <= kMaxPartitionDegree; ++n) {
            std::vector<int> prefix;
            build_partitions(n, n, prefix, cache[static_cast<std::size_t>(n)]);
        }
    });
    return cache[static_cast<std::size_t>(d)];
}

std::size_t partition_index(const CycleType& lambda) {
    const auto& all = partitions_of(lambda.degree());
    // Descending order: binary search with the reversed comparator.
    auto it = std::lower_bound(all.begin(), all.end(), lambda,
                               [](const CycleType& a, const CycleType& b) { return a > b; });
    if (it == all.end() || *it != lambda) throw Error(ErrorKind::OutOfRange, "unknown partition");
    return static_cast<std::size_t>(it - all.begin());
}

BigInt centralizer_order(const CycleType& lambda) {
    BigInt z = 1;
    const auto& parts = lambda.parts();
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        const int len = parts[i];
        const std::size_t mult = j - i;
        for (std::size_t k = 1; k <= mult; ++k) z *= BigInt(len) * BigInt(k);
        i = j;
    }
    return z;
}

ClassFunction::ClassFunction(int d, std::string name, const std::map<CycleType, Rational>& table,
                             Rational default_nonsquarefree)
    : d_(d), name_(std::move(name)), default_(std::move(default_nonsquarefree)) {
    const auto& all = partitions_of(d);
    values_.assign(all.size(), Rational(0));
    for (const auto& [lambda, value] : table) {
        if (lambda.degree() != d) {
            throw Error(ErrorKind::OutOfRange, "partition " + lambda.to_string() + " is not of degree " + std::to_string(d));
        }
        values_[partition_index(lambda)] = value;
    }
    Rational bound = 0;
    for (const auto& v : values_) bound = std::max(bound, Rational(abs(v)));
    if (abs(default_) > bound + 1) {
        throw Error(ErrorKind::OutOfRange, "non-squarefree default exceeds max |value| + 1");
    }
}

const Rational& ClassFunction::value(const CycleType& lambda) const {
    if (lambda.degree() != d_) throw Error(ErrorKind::DegreeMismatch, "cycle type degree differs from class function degree");
    return values_[partition_index(lambda)];
}

ClassFunction make_builtin(Builtin kind, int d, int r) {
    if (d < 2) throw Error(ErrorKind::OutOfRange, "builtin class functions need d >= 2");
    std::map<CycleType, Rational> table;
    std::string name;
    switch (kind) {
        case Builtin::prime:
            name = "prime";
            table[CycleType({d})] = 1;
            break;
        case Builtin::moebius:
            name = "mu";
            for (const auto& lambda : partitions_of(d)) table[lambda] = lambda.mu_value();
            break;
        case Builtin::divisor: {
            if (r < 2) throw Error(ErrorKind::OutOfRange, "divisor function needs r >= 2");
            name = "d" + std::to_string(r);
            for (const auto& lambda : partitions_of(d)) {
                BigInt v = 1;
                for (int i = 0; i < lambda.num_parts(); ++i) v *= r;
                table[lambda] = Rational(v);
            }
            break;
        }
    }
    return ClassFunction(d, std::move(name), table, 0);
}

ClassFunction make_custom(int d, std::string name, const std::map<CycleType, Rational>& table,
                          Rational default_nonsquarefree) {
    return ClassFunction(d, std::move(name), table, std::move(default_nonsquarefree));
}

Rational mean_constant(const ClassFunction& phi) {
    Rational acc = 0;
    const auto& all = partitions_of(phi.degree());
    for (std::size_t i = 0; i < all.size(); ++i) {
        acc += phi.value_at(i) / Rational(centralizer_order(all[i]));
    }
    return acc;
}

Rational coset_constant(const ClassFunction& phi, const std::map<CycleType, Rational>& weights) {
    Rational total = 0;
    Rational acc = 0;
    for (const auto& [lambda, w] : weights) {
        total += w;
        acc += w * phi.value(lambda);
    }
    if (total != 1) throw Error(ErrorKind::WeightsNotNormalized, "weights sum to " + to_string(total));
    return acc;
}

Rational evaluate(const ClassFunction& phi, const Poly& g) {
    if (g.degree() != phi.degree()) {
        throw Error(ErrorKind::DegreeMismatch, "polynomial degree " + std::to_string(g.degree()) +
                                                   " differs from class function degree " + std::to_string(phi.degree()));
    }
    if (!is_squarefree(g)) return phi.default_nonsquarefree();
    return phi.value(degree_pattern(g));
}

}  // namespace shortint
