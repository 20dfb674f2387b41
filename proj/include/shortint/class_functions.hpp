#ifndef SHORTINT_CLASS_FUNCTIONS_HPP
#define SHORTINT_CLASS_FUNCTIONS_HPP

#include <shortint/cycle_type.hpp>
#include <shortint/polynomial.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

namespace shortint {

using Rational = boost::multiprecision::cpp_rational;

/// "n" for integers, "n/d" otherwise (reduced, positive denominator).
std::string to_string(const Rational& r);
/// Accepts "n", "-n", "n/d"; a leading U+2212 minus is accepted as well.
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);

/// All partitions of d in reverse-lexicographic order ({d} first, {1,...,1} last).
/// Throws OutOfRange unless 1 <= d <= 12.
const std::vector<CycleType>& partitions_of(int d);

/// Size of the centralizer of a permutation of this type:
/// z = prod_i i^{m_i} m_i!, so the class has d!/z elements.
BigInt centralizer_order(const CycleType& lambda);

/// A class function on S_d, extended to non-squarefree polynomials by a
/// bounded default value.
class ClassFunction {
public:
    /// Missing partitions default to 0. Throws OutOfRange when the default
    /// exceeds max |value| + 1 in magnitude or a key has the wrong degree.
    ClassFunction(int d, std::string name, const std::map<CycleType, Rational>& table,
                  Rational default_nonsquarefree = 0);

    int degree() const noexcept { return d_; }
    const std::string& name() const noexcept { return name_; }
    const Rational& value(const CycleType& lambda) const;
    /// Value by position in partitions_of(d).
    const Rational& value_at(std::size_t index) const { return values_.at(index); }
    const Rational& default_nonsquarefree() const noexcept { return default_; }
    const std::vector<Rational>& values() const noexcept { return values_; }

private:
    int d_;
    std::string name_;
    std::vector<Rational> values_;
    Rational default_;
};

/// Position of lambda in partitions_of(lambda.degree()).
std::size_t partition_index(const CycleType& lambda);

enum class Builtin { prime, moebius, divisor };

/// prime: indicator of {d}; moebius: (-1)^{#parts}; divisor(r): r^{#parts}.
/// All builtins use 0 on non-squarefree inputs. Requires d >= 2 and r >= 2.
ClassFunction make_builtin(Builtin kind, int d, int r = 2);
ClassFunction make_custom(int d, std::string name, const std::map<CycleType, Rational>& table,
                          Rational default_nonsquarefree = 0);

/// Exact average over S_d: sum_lambda phi(lambda) / z_lambda.
Rational mean_constant(const ClassFunction& phi);
/// sum_lambda w(lambda) phi(lambda); weights must sum to 1.
Rational coset_constant(const ClassFunction& phi, const std::map<CycleType, Rational>& weights);

/// phi(degree_pattern(g)) for squarefree g, phi's default otherwise.
Rational evaluate(const ClassFunction& phi, const Poly& g);

}  // namespace shortint

#endif
