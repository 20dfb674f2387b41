#ifndef SHORTINT_ERROR_HPP
#define SHORTINT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace shortint {

enum class ErrorKind {
    NotPrime,
    OutOfRange,
    DivisionByZero,
    CtxMismatch,
    NotSquarefree,
    ZeroInput,
    FieldTooSmall,
    TooLarge,
    DegreeMismatch,
    WeightsNotNormalized,
    DerivativeVanishes,
    ExtensionTooLarge,
    EvenCharacteristic,
    DichotomyViolation,
    NoSuitableS,
    HypothesisViolated,
    SyntaxError,
    DegreeZero,
    Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so
// callers (and tests) can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parse failures report the byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : Error(ErrorKind::SyntaxError, what + " at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace shortint

#endif
