#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thetalocus {

/// Unbounded sign-magnitude integer. Canonical zero, exact decimal
/// round-trips. Every rank, degree and determinant exponent in the library
/// lives here; nothing is ever evaluated in floating point.
using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction kept in lowest terms with positive denominator.
/// Equality is value equality. All slopes are Rational.
using Rational = boost::multiprecision::cpp_rational;

struct empty_domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Checked construction: a zero denominator is rejected here instead of
/// surfacing later as a normalization failure. The sign always lives in the
/// numerator.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0)
        throw std::domain_error("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// floor/ceil follow the mathematical convention: floor(-1/2) = -1,
// ceil(-1/2) = 0. cpp_int division truncates toward zero, so adjust.
inline BigInt floor_of(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt t = n / d;
    if (n % d != 0 && n < 0)
        --t;
    return t;
}

inline BigInt ceil_of(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt t = n / d;
    if (n % d != 0 && n > 0)
        ++t;
    return t;
}

inline std::string to_decimal(const BigInt& n) { return n.str(); }

inline BigInt bigint_from_decimal(const std::string& s) { return BigInt(s); }

/// "num/den" in lowest terms, denominator always spelled out ("4/1").
inline std::string to_fraction(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Narrow a BigInt to a machine index, or refuse. Used wherever a rank has
/// to index a binomial evaluation.
inline long long to_index(const BigInt& n, const char* what) {
    if (n > std::numeric_limits<long long>::max() ||
        n < std::numeric_limits<long long>::min())
        throw std::domain_error(std::string(what) +
                                " does not fit a machine-size index");
    return n.convert_to<long long>();
}

/// C(n, k), exact for any input; 0 when k > n or either argument is
/// negative. Multiplicative formula: after step i the accumulator equals
/// C(n-k+i, i), itself a binomial, so each division is exact and the
/// intermediates never exceed the result. No factorial tables.
inline BigInt binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

/// All weak compositions (i_1, ..., i_parts) of `total` into `parts`
/// nonnegative parts, in lexicographic order. The count is
/// C(total + parts - 1, parts - 1).
inline std::vector<std::vector<int>> compositions(int total, int parts) {
    if (total < 0 || parts < 0)
        throw empty_domain_error("compositions: arguments must be nonnegative");
    if (parts == 0) {
        if (total > 0)
            throw empty_domain_error(
                "compositions: zero parts cannot sum to a positive total");
        return {{}};  // the empty composition of 0
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    auto rec = [&](auto&& self, int idx, int rem) -> void {
        if (idx + 1 == parts) {
            cur[static_cast<std::size_t>(idx)] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[static_cast<std::size_t>(idx)] = v;
            self(self, idx + 1, rem - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

}  // namespace thetalocus
