#pragma once

#include <algorithm>
#include <variant>
#include <vector>

#include "constructions.hpp"

namespace thetalocus {

/// How a search result's coverage was established. CompleteByDivisors means
/// the candidate set was enumerated from the divisors of p*g, which provably
/// exhausts it; BoundedScan means a direct scan up to d_max with no claim
/// beyond that bound.
enum class Completeness { CompleteByDivisors, BoundedScan };

struct SearchBox {
    long long g;
    long long p_lo, p_hi;  // exterior power indices searched, p_lo >= gamma_index(g)
    long long rank_e_max;  // 1 for the line-kernel family
    Completeness completeness;
    std::optional<long long> d_max;  // present for BoundedScan only
};

struct FeasiblePoint {
    long long p, d;
    BigInt rank;          // C(d-g, p)
    long long mu;         // the integral slope p*d/(d-g)
};

struct SearchResult {
    BasePointCertificate winner;
    std::vector<FeasiblePoint> all_feasible;
    SearchBox box;
    bool minimal_within_box;
};

/// The complete finite set of degrees d making Lambda^p Q_L certifiable:
/// d >= 2g+1, slope p*d/(d-g) integral and <= g-1. Writing e = d - g, the
/// slope is p + p*g/e, so integrality forces e | p*g; the slope bound is
/// e >= p*g/(g-1-p). Enumerating divisors of p*g therefore exhausts the set.
/// Returns (d, slope) pairs sorted by d; empty when p > g-2 (the slope
/// always exceeds p, so p = g-1 admits nothing).
inline std::vector<std::pair<long long, long long>> feasible_degrees(
    long long g, long long p) {
    Genus ctx(g);
    if (p < gamma_index(g))
        throw std::domain_error("p = " + std::to_string(p) +
                                " is below gamma(g) = " +
                                std::to_string(gamma_index(g)) +
                                "; smaller exterior powers certify nothing");
    std::vector<std::pair<long long, long long>> out;
    if (p > ctx.g - 2)
        return out;
    const long long m = p * g;  // slope = p + m/e must be an integer
    std::vector<long long> divisors;
    for (long long e = 1; e * e <= m; ++e) {
        if (m % e != 0)
            continue;
        divisors.push_back(e);
        if (e != m / e)
            divisors.push_back(m / e);
    }
    std::sort(divisors.begin(), divisors.end());
    for (long long e : divisors) {
        if (e < g + 1)
            continue;  // d = g + e must be >= 2g+1
        if (m > (g - 1 - p) * e)
            continue;  // slope p + m/e must be <= g-1
        out.emplace_back(g + e, p + m / e);
    }
    return out;
}

/// Minimal-rank certificate from the line-kernel family, over all
/// p in [gamma, g-2] and all feasible d for each p. The divisor enumeration
/// makes the box complete, so the winner is a true minimum, not a heuristic.
/// Ties break toward smaller rank, then smaller d, then smaller p.
/// For g in {2, 3} the box is empty -- provably, not for lack of scanning --
/// and an InfeasibleReport says so.
inline std::variant<SearchResult, InfeasibleReport> minimal_rank_line_example(
    long long g, long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    const long long gam = gamma_index(g);
    if (gam > ctx.g - 2)
        return InfeasibleReport{
            "p range [gamma, g-2] nonempty",
            "gamma(" + std::to_string(g) + ") = " + std::to_string(gam) +
                " exceeds g-2 = " + std::to_string(g - 2) +
                "; the line-kernel feasible set is empty (divisor enumeration "
                "is complete, so this is a proof of emptiness)"};
    std::vector<FeasiblePoint> feasible;
    for (long long p = gam; p <= g - 2; ++p)
        for (auto [d, mu] : feasible_degrees(g, p))
            feasible.push_back(FeasiblePoint{p, d, binomial(d - g, p), mu});

    const FeasiblePoint* best = nullptr;
    for (const auto& f : feasible) {
        if (!best || f.rank < best->rank ||
            (f.rank == best->rank &&
             (f.d < best->d || (f.d == best->d && f.p < best->p))))
            best = &f;
    }
    if (!best)
        return InfeasibleReport{
            "feasible set nonempty",
            "no degree passes the integrality and slope bounds for any p in "
            "[" + std::to_string(gam) + ", " + std::to_string(g - 2) +
                "] at g = " + std::to_string(g)};

    BundleClass cls = qe_class(g, 1, best->d, best->p, power_cap);
    BasePointCertificate winner = base_point_certificate(
        cls, g, Justification::StarByKernelClaim,
        ConstructionSpec{LineKernelExterior{g, best->d, best->p}});
    return SearchResult{std::move(winner), std::move(feasible),
                        SearchBox{g, gam, g - 2, 1,
                                  Completeness::CompleteByDivisors,
                                  std::nullopt},
                        true};
}

struct QeCandidate {
    long long rank_e, deg_e, p;
    BigInt rank;  // C(deg_e - rank_e*g, p)
};

/// Kernel-source parameters hitting a prescribed integral slope s with
/// p = gamma. Infeasible (empty) when the required source slope
/// s*g/(s-gamma) fails to exceed 2g, i.e. when s >= 2*gamma.
struct QeSearchReport {
    long long g, target_slope;
    bool feasible;
    std::string note;  // names the violated requirement when infeasible
    std::vector<QeCandidate> rows;
    long long rank_e_max;
};

/// Solve p*deg_e/(deg_e - rank_e*g) = s at p = gamma: deg_e must equal
/// rank_e * s * g / (s - gamma), so the minimal usable source rank is
/// (s - gamma)/gcd(s*g, s - gamma). Emits that rank and its multiples up to
/// rank_e_max. Every row satisfies the slope equation exactly and has source
/// slope s*g/(s-gamma) > 2g.
inline QeSearchReport qe_target_search(long long g, long long s,
                                       long long rank_e_max = 4) {
    Genus ctx(g);
    const long long gam = gamma_index(g);
    if (s <= gam || s > ctx.g - 1)
        throw std::domain_error(
            "target slope " + std::to_string(s) + " is outside (gamma, g-1] = (" +
            std::to_string(gam) + ", " + std::to_string(g - 1) + "]");
    QeSearchReport report{g, s, true, "", {}, rank_e_max};
    if (s >= 2 * gam) {
        // Unreachable for s <= g-1 since 2*gamma >= g, but guarded anyway.
        report.feasible = false;
        report.note = "required source slope s*g/(s-gamma) = " +
                      to_fraction(make_rational(BigInt(s) * g, s - gam)) +
                      " does not exceed 2g = " + std::to_string(2 * g);
        return report;
    }
    const BigInt numer = BigInt(s) * g;
    const BigInt denom = s - gam;
    const BigInt min_rank_e = denom / gcd(numer, denom);
    // The minimal source rank is always emitted, further multiples only up
    // to the cap.
    BigInt re = min_rank_e;
    do {
        const long long rank_e = to_index(re, "source rank");
        const long long deg_e = to_index(re * numer / denom, "source degree");
        report.rows.push_back(QeCandidate{
            rank_e, deg_e, gam, binomial(deg_e - rank_e * g, gam)});
        re += min_rank_e;
    } while (re <= rank_e_max);
    return report;
}

/// Rank bounds above which base points are guaranteed: C(g*gamma, gamma)
/// from the uniform example, and C(k*g*gamma, gamma) from the k-fold family.
inline BigInt rho_uniform(long long g) {
    Genus ctx(g);
    return binomial(ctx.g * gamma_index(g), gamma_index(g));
}

inline BigInt rho_k(long long k, long long g) {
    Genus ctx(g);
    if (k < 2)
        throw std::domain_error("rho_k needs k >= 2, got " + std::to_string(k));
    return binomial(k * ctx.g * gamma_index(g), gamma_index(g));
}

}  // namespace thetalocus
