#include <shortint/cycle_type.hpp>
#include <shortint/error.hpp>

#include <algorithm>
#include <functional>
#include <numeric>

namespace shortint {

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int part : parts_) {
        if (part < 1) throw Error(ErrorKind::OutOfRange, "cycle lengths must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    d_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string CycleType::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

CycleType CycleType::parse(const std::string& text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        const std::size_t start = pos;
        long value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            if (value > 1000) throw SyntaxError(start, "cycle length too large");
            ++pos;
        }
        if (pos == start) throw SyntaxError(pos, "expected a cycle length");
        if (value == 0) throw SyntaxError(start, "cycle length must be positive");
        parts.push_back(static_cast<int>(value));
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos == text.size()) break;
        if (text[pos] != ',') throw SyntaxError(pos, "expected ','");
        ++pos;
        if (pos == text.size()) throw SyntaxError(pos, "trailing ','");
    }
    if (parts.empty()) throw SyntaxError(0, "empty partition");
    return CycleType(std::move(parts));
}

}  // namespace shortint
