// Independent reference computations used only by the tests. Nothing here
// calls the factorization, resultant or class-function code under test.
#ifndef SHORTINT_TESTS_ORACLES_HPP
#define SHORTINT_TESTS_ORACLES_HPP

#include <shortint/class_functions.hpp>
#include <shortint/finite_field.hpp>
#include <shortint/polynomial.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using namespace shortint;

inline std::vector<FieldElement> all_elements(const FieldCtx& F) {
    std::vector<FieldElement> out;
    for (std::uint64_t i = 0; i < *F.order_u64(); ++i) out.push_back(F.from_index(i));
    return out;
}

// Roots by evaluating at every element of the field.
inline std::vector<FieldElement> roots_by_search(const Poly& f) {
    std::vector<FieldElement> out;
    for (const auto& a : all_elements(f.field())) {
        if (evaluate(f, a).is_zero()) out.push_back(a);
    }
    return out;
}

// Determinant over the field by Gaussian elimination.
inline FieldElement determinant(const FieldCtx& F, std::vector<std::vector<FieldElement>> m) {
    const std::size_t n = m.size();
    FieldElement det = F.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return F.zero();
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = F.neg(det);
        }
        det = F.mul(det, m[col][col]);
        const FieldElement inv = F.inv(m[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const FieldElement factor = F.mul(m[r][col], inv);
            for (std::size_t c = col; c < n; ++c) m[r][c] = F.sub(m[r][c], F.mul(factor, m[col][c]));
        }
    }
    return det;
}

// Resultant as the determinant of the Sylvester matrix.
inline FieldElement sylvester_resultant(const Poly& f, const Poly& g) {
    const FieldCtx& F = f.field();
    const int m = f.degree();
    const int n = g.degree();
    const std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0) return F.one();
    std::vector<std::vector<FieldElement>> s(size, std::vector<FieldElement>(size, F.zero()));
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f.coeff(m - i);
    }
    for (int r = 0; r < m; ++r) {
        for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = g.coeff(n - i);
    }
    return determinant(F, s);
}

// Irreducible count by the necklace formula.
inline std::int64_t gauss_formula(std::int64_t p, int d) {
    auto mobius = [](int n) {
        int result = 1;
        for (int r = 2; r * r <= n; ++r) {
            if (n % r == 0) {
                n /= r;
                if (n % r == 0) return 0;
                result = -result;
            }
        }
        if (n > 1) result = -result;
        return result;
    };
    std::int64_t total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        total += mobius(d / e) * pe;
    }
    return total / d;
}

// Cycle type of a permutation given as an image vector.
inline CycleType cycle_type_of(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> parts;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return CycleType(parts);
}

// Average of phi over all d! permutations.
inline Rational permutation_average(const ClassFunction& phi) {
    std::vector<int> perm(static_cast<std::size_t>(phi.degree()));
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    std::int64_t count = 0;
    do {
        total += phi.value(cycle_type_of(perm));
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / count;
}

// Number of monic tuples (g_1, ..., g_r) with product g, by recursion over
// all monic divisors found by trial division.
inline std::int64_t ordered_factorizations(const Poly& g, int r) {
    if (r == 1) return 1;
    std::int64_t total = 0;
    const std::uint64_t q = *g.field().order_u64();
    for (int k = 0; k <= g.degree(); ++k) {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= q;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const Poly cand = Poly::monic_from_index(g.ctx(), k, idx);
            const DivMod dm = divmod(g, cand);
            if (dm.remainder.is_zero()) total += ordered_factorizations(dm.quotient, r - 1);
        }
    }
    return total;
}

}  // namespace oracle

#endif
