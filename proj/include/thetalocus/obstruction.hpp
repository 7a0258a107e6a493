#pragma once

#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace thetalocus {

/// Minimal degree of a subbundle that every rank-k, degree-f semistable
/// bundle on a genus-g curve must contain: (f - (k-1)*g)/k, kept as an exact
/// rational. Callers take the ceiling for the integer guarantee.
inline Rational lms_min_subbundle_degree(long long k, long long f,
                                         long long g) {
    if (k < 1)
        throw std::domain_error("subbundle bound needs k >= 1, got " +
                                std::to_string(k));
    return make_rational(BigInt(f) - BigInt(k - 1) * g, k);
}

/// What a feasible instance predicts: a base point of |k*Theta| on the
/// moduli space of rank n^g bundles. The prediction rests on the strange
/// duality conjecture, and every serialization says so.
struct PredictedBasePoint {
    BigInt moduli_rank;        // n^g
    long long theta_multiple;  // the k of |k*Theta|
    std::string conditional_on = "strange duality";
};

/// One (g, n, k) record: the subbundle-degree bound evaluated at the tensor
/// test degree f = k*(g - 1 - g/n), and the feasibility verdict
/// bound >= 0 <=> g/k >= 1 + g/n.
struct ObstructionInstance {
    long long g, n, k;
    Rational mu;                     // g/n, the source slope
    Rational lms_bound;              // exact rational bound
    long long min_subbundle_degree;  // ceil(lms_bound)
    bool feasible;
    std::optional<PredictedBasePoint> predicted;  // present iff feasible
};

inline ObstructionInstance strange_duality_instance(long long g, long long n,
                                                    long long k) {
    Genus ctx(g);
    if (n < 2)
        throw std::domain_error("needs n >= 2, got " + std::to_string(n));
    if (g % n != 0)
        throw std::domain_error("needs n | g; " + std::to_string(n) +
                                " does not divide " + std::to_string(g));
    if (k < 1)
        throw std::domain_error("needs k >= 1, got " + std::to_string(k));
    const long long f = k * (ctx.g - 1 - ctx.g / n);
    const Rational bound = lms_min_subbundle_degree(k, f, g);
    const bool feasible = bound >= 0;
    std::optional<PredictedBasePoint> predicted;
    if (feasible)
        predicted = PredictedBasePoint{
            boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(g)), k};
    return ObstructionInstance{g,
                               n,
                               k,
                               make_rational(g, n),
                               bound,
                               to_index(ceil_of(bound), "subbundle degree"),
                               feasible,
                               std::move(predicted)};
}

/// All feasible instances with 2 <= g <= g_max, n | g, n >= 2,
/// 1 <= k <= k_max, sorted by (g, n, k). A k_max of 1 restricts the scan to
/// the rows that need no conjecture at all.
inline std::vector<ObstructionInstance> sd_scan(long long g_max,
                                                long long k_max) {
    if (g_max < 2)
        throw std::domain_error("scan needs g_max >= 2");
    if (k_max < 1)
        throw std::domain_error("scan needs k_max >= 1");
    std::vector<ObstructionInstance> out;
    for (long long g = 2; g <= g_max; ++g)
        for (long long n = 2; n <= g; ++n) {
            if (g % n != 0)
                continue;
            for (long long k = 1; k <= k_max; ++k) {
                ObstructionInstance inst = strange_duality_instance(g, n, k);
                if (inst.feasible)
                    out.push_back(std::move(inst));
            }
        }
    return out;
}

/// Verdict on whether Lambda^gamma Q_L itself sits as a base point on its
/// own fixed-determinant moduli space. The required conditions are read as:
/// slope gamma*d/(d-g) integral and <= g-1 (the same two demands the
/// twisting argument makes). This reading is an interpretation and is
/// flagged as such in all output. Only |Theta| itself is checked: for
/// multiples k >= 2 the subbundle-degree bound can go negative on these
/// classes, so no verdict is offered there.
struct FlThetaVerdict {
    long long g, d;
    Rational mu;                           // gamma*d/(d-g)
    bool holds;
    std::vector<std::string> failed;       // names of failing conditions
    std::optional<BigInt> moduli_rank;     // C(d-g, gamma) when holds
    std::optional<DetPower> det;           // L^C(d-g-1, gamma-1) when holds
};

inline FlThetaVerdict fl_theta_check(long long g, long long d) {
    Genus ctx(g);
    if (d < 2 * ctx.g + 1)
        throw slope_bound_error("needs d >= 2g+1 = " +
                                std::to_string(2 * ctx.g + 1) + ", got " +
                                std::to_string(d));
    const long long gam = gamma_index(g);
    const Rational mu = make_rational(BigInt(gam) * d, d - g);
    FlThetaVerdict verdict{g, d, mu, true, {}, std::nullopt, std::nullopt};
    if (!is_integer(mu)) {
        verdict.holds = false;
        verdict.failed.push_back("slope " + to_fraction(mu) +
                                 " is not an integer");
    }
    if (mu > ctx.g - 1) {
        verdict.holds = false;
        verdict.failed.push_back("slope " + to_fraction(mu) + " exceeds g-1 = " +
                                 std::to_string(ctx.g - 1));
    }
    if (verdict.holds) {
        verdict.moduli_rank = binomial(d - g, gam);
        verdict.det = DetPower{d, binomial(d - g - 1, gam - 1)};
    }
    return verdict;
}

}  // namespace thetalocus
