#pragma once

#include <optional>
#include <utility>

#include "exact.hpp"

namespace thetalocus {

/// Raised when an operation would produce the zero bundle (e.g. an exterior
/// power past the rank) or a rank below 1.
struct zero_bundle_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when an exterior/symmetric power index exceeds the configured cap.
/// The cap exists because ranks like C(d-g, p) explode combinatorially; it is
/// a guard, not a correctness limit, and callers may raise it.
struct power_cap_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when a kernel-bundle construction is attempted below its minimal
/// slope; the message names the violated bound.
struct slope_bound_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Default guard on exterior/symmetric power indices.
inline constexpr long long kDefaultPowerCap = 64;

/// Symbolic determinant: a tensor power of a single reference line bundle of
/// known degree. Whenever present, exponent * base_degree equals the degree
/// of the class carrying it.
struct DetPower {
    long long base_degree = 0;
    BigInt exponent;

    friend bool operator==(const DetPower&, const DetPower&) = default;
};

/// Genus of the underlying curve; only g >= 2 is meaningful here.
struct Genus {
    long long g;

    explicit Genus(long long genus) : g(genus) {
        if (genus < 2)
            throw std::domain_error("genus must be >= 2, got " +
                                    std::to_string(genus));
    }
};

/// Numerical class of a vector bundle: rank, degree and an optional symbolic
/// determinant. Stability and semistability are deliberately not modeled;
/// they are imported as certificate justifications, never decided from this
/// data.
struct BundleClass {
    BigInt rank;
    BigInt degree;
    std::optional<DetPower> det;

    BundleClass(BigInt r, BigInt d, std::optional<DetPower> dp = std::nullopt)
        : rank(std::move(r)), degree(std::move(d)), det(std::move(dp)) {
        if (rank < 1)
            throw zero_bundle_error("bundle class requires rank >= 1, got " +
                                    rank.str());
        if (det && det->exponent * det->base_degree != degree)
            throw std::logic_error(
                "determinant descriptor inconsistent with degree");
    }

    friend bool operator==(const BundleClass&, const BundleClass&) = default;
};

/// The class of the trivial bundle O^rank.
inline BundleClass trivial_class(BigInt rank = 1) {
    return BundleClass(std::move(rank), 0);
}

inline Rational slope(const BundleClass& b) {
    return make_rational(b.degree, b.rank);
}

inline BundleClass dual(const BundleClass& b) {
    std::optional<DetPower> det;
    if (b.det)
        det = DetPower{b.det->base_degree, -b.det->exponent};
    return BundleClass(b.rank, -b.degree, std::move(det));
}

/// Tensor by an (anonymous) line bundle of degree t. The determinant
/// descriptor cannot follow along -- the twisting bundle is not a power of
/// the reference -- so it is dropped unless t = 0.
inline BundleClass twist(const BundleClass& b, long long t) {
    if (t == 0)
        return b;
    return BundleClass(b.rank, b.degree + b.rank * t);
}

namespace detail {

// Determinant descriptors combine only when both operands carry one over the
// same reference bundle; a mixed-base combination is dropped, never
// converted.
inline std::optional<DetPower> combine_det(const BundleClass& a,
                                           const BundleClass& b,
                                           const BigInt& ea_weight,
                                           const BigInt& eb_weight) {
    if (!a.det || !b.det || a.det->base_degree != b.det->base_degree)
        return std::nullopt;
    return DetPower{a.det->base_degree,
                    a.det->exponent * ea_weight + b.det->exponent * eb_weight};
}

}  // namespace detail

inline BundleClass tensor(const BundleClass& a, const BundleClass& b) {
    return BundleClass(a.rank * b.rank, a.degree * b.rank + b.degree * a.rank,
                       detail::combine_det(a, b, b.rank, a.rank));
}

inline BundleClass direct_sum(const BundleClass& a, const BundleClass& b) {
    return BundleClass(a.rank + b.rank, a.degree + b.degree,
                       detail::combine_det(a, b, 1, 1));
}

/// Lambda^p of a class: rank C(r, p), degree d * C(r-1, p-1). The slope law
/// mu(Lambda^p) = p * mu follows. The determinant descriptor propagates only
/// in the exponent-1 case (the kernel-bundle family), where
/// det(Lambda^p) = base^C(r-1, p-1); anything else is dropped.
inline BundleClass exterior_power(const BundleClass& b, long long p,
                                  long long power_cap = kDefaultPowerCap) {
    if (p < 0)
        throw std::domain_error("exterior power index must be nonnegative");
    if (p > power_cap)
        throw power_cap_error("exterior power index " + std::to_string(p) +
                              " exceeds the configured cap " +
                              std::to_string(power_cap));
    if (p == 0)
        return trivial_class();
    if (p == 1)
        return b;
    if (b.rank < p)
        throw zero_bundle_error("exterior power vanishes: p = " +
                                std::to_string(p) + " exceeds rank " +
                                b.rank.str());
    const long long r = to_index(b.rank, "rank");
    std::optional<DetPower> det;
    if (b.det && b.det->exponent == 1)
        det = DetPower{b.det->base_degree, binomial(r - 1, p - 1)};
    return BundleClass(binomial(r, p), b.degree * binomial(r - 1, p - 1),
                       std::move(det));
}

/// Sym^p of a class: rank C(r+p-1, p), degree d * C(r+p-1, p-1); slope law
/// mu(Sym^p) = p * mu. No determinant closed form is tracked here.
inline BundleClass symmetric_power(const BundleClass& b, long long p,
                                   long long power_cap = kDefaultPowerCap) {
    if (p < 0)
        throw std::domain_error("symmetric power index must be nonnegative");
    if (p > power_cap)
        throw power_cap_error("symmetric power index " + std::to_string(p) +
                              " exceeds the configured cap " +
                              std::to_string(power_cap));
    if (p == 0)
        return trivial_class();
    if (p == 1)
        return b;
    const long long r = to_index(b.rank, "rank");
    return BundleClass(binomial(r + p - 1, p), b.degree * binomial(r + p - 1, p - 1));
}

/// The class Q_E dual to the kernel of the evaluation map
/// H^0(E) (x) O -> E for a globally generated E of rank rE and degree dE:
/// rank dE - rE*g, degree dE. Requires slope(E) > 2g (for line bundles,
/// degree >= 2g + 1), which forces h^1(E) = 0 so that
/// h^0(E) = dE + rE(1 - g) and the rank formula is exact.
/// For rE = 1 the determinant of Q_E is the line bundle itself, recorded as
/// exponent 1 over base degree dE.
inline BundleClass kernel_dual_class(long long rank_e, long long deg_e,
                                     Genus ctx) {
    if (rank_e < 1)
        throw std::domain_error("source bundle rank must be >= 1");
    if (rank_e == 1) {
        if (deg_e < 2 * ctx.g + 1)
            throw slope_bound_error(
                "kernel construction needs a line bundle of degree >= 2g+1 = " +
                std::to_string(2 * ctx.g + 1) + ", got " +
                std::to_string(deg_e));
    } else if (deg_e <= 2 * ctx.g * rank_e) {
        throw slope_bound_error(
            "kernel construction needs slope > 2g = " +
            std::to_string(2 * ctx.g) + ", got " + std::to_string(deg_e) +
            "/" + std::to_string(rank_e));
    }
    std::optional<DetPower> det;
    if (rank_e == 1)
        det = DetPower{deg_e, 1};
    return BundleClass(BigInt(deg_e) - BigInt(rank_e) * ctx.g, deg_e,
                       std::move(det));
}

}  // namespace thetalocus
