#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bundle.hpp"

namespace thetalocus {

/// gamma_index(g) = floor((g+1)/2) = ceil(g/2): the smallest degree such that
/// every degree-0 line bundle on a genus-g curve is a difference of two
/// effective divisors of that degree. Every kernel-bundle construction takes
/// exterior powers of at least this index.
inline long long gamma_index(long long g) {
    Genus ctx(g);
    return (ctx.g + 1) / 2;
}

/// Which argument vouches for the nonvanishing property a certificate
/// asserts. Certificates carry a citation tag, never a proof: the property
/// is cohomological and out of computational reach here.
enum class Justification {
    StarByKernelClaim,    // exterior powers of kernel bundles
    StarByRaynaud,        // Raynaud's rank-n^g examples
    PaddedFromSmallerRank // E (+) O^m from an already certified E
};

inline const char* to_string(Justification j) {
    switch (j) {
    case Justification::StarByKernelClaim: return "star-by-kernel-claim";
    case Justification::StarByRaynaud: return "star-by-raynaud";
    case Justification::PaddedFromSmallerRank: return "padded-from-smaller-rank";
    }
    return "?";
}

struct ConstructionSpec;

struct LineKernelExterior {
    long long g, d, p;
    friend bool operator==(const LineKernelExterior&,
                           const LineKernelExterior&) = default;
};
struct BundleKernelExterior {
    long long g, rank_e, deg_e, p;
    friend bool operator==(const BundleKernelExterior&,
                           const BundleKernelExterior&) = default;
};
struct SymmetricKernel {
    long long g, d, p;
    friend bool operator==(const SymmetricKernel&,
                           const SymmetricKernel&) = default;
};
struct DirectSumKernelExterior {
    long long g, d, k;
    friend bool operator==(const DirectSumKernelExterior&,
                           const DirectSumKernelExterior&) = default;
};
struct Raynaud {
    long long g, n;
    friend bool operator==(const Raynaud&, const Raynaud&) = default;
};
struct Padded {
    std::shared_ptr<const ConstructionSpec> inner;  // never null
    BigInt extra_rank;
    friend bool operator==(const Padded& a, const Padded& b);
};

/// Tagged union naming one of the example families. Serializes to/from JSON
/// so invocations are reproducible from output alone.
struct ConstructionSpec {
    std::variant<LineKernelExterior, BundleKernelExterior, SymmetricKernel,
                 DirectSumKernelExterior, Raynaud, Padded>
        value;

    friend bool operator==(const ConstructionSpec& a,
                           const ConstructionSpec& b) {
        return a.value == b.value;
    }
};

inline bool operator==(const Padded& a, const Padded& b) {
    return a.extra_rank == b.extra_rank && *a.inner == *b.inner;
}

/// The genus a construction lives on.
inline long long genus_of(const ConstructionSpec& spec) {
    return std::visit(
        [](const auto& v) -> long long {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Padded>)
                return genus_of(*v.inner);
            else
                return v.g;
        },
        spec.value);
}

/// A construction ruled out by its own arithmetic. Names the violated
/// condition instead of guessing a fix; callers surface it verbatim.
struct InfeasibleReport {
    std::string condition;  // the requirement that failed, e.g. "d >= 2g+1"
    std::string detail;     // the instantiated numbers
};

/// Why a class cannot be certified: its slope is either not an integer or
/// outside [0, g-1]. These are the only two failure modes.
enum class CertifyFailure { NotIntegral, SlopeOutOfRange };

struct certify_error : std::domain_error {
    CertifyFailure reason;
    certify_error(CertifyFailure r, const std::string& msg)
        : std::domain_error(msg), reason(r) {}
};

/// A bundle class packaged as a base-point witness: the construction it came
/// from, its invariants, the slope-zero ambient data after the trivializing
/// twist, and the justification tag. pic_test_degree = g - 1 - slope is the
/// degree of the test line bundles once the class is twisted to slope 0.
///
/// The kernel-family witnesses are poly-stable, and at least one of their
/// stable summands (same slope) inherits the witness property. That summand
/// is existence-only: nothing here extracts it, so certificates always carry
/// the full poly-stable class.
struct BasePointCertificate {
    ConstructionSpec construction;
    BundleClass cls;
    long long integral_slope;
    BigInt ambient_rank;
    std::optional<DetPower> ambient_det;
    long long pic_test_degree;
    Justification justification;
};

/// Certify a class of integral slope in [0, g-1]. The ambient is the twist
/// by -slope (rank unchanged, degree 0); its determinant descriptor survives
/// only when no twist is needed.
inline BasePointCertificate base_point_certificate(const BundleClass& cls,
                                                   long long g,
                                                   Justification justification,
                                                   ConstructionSpec construction) {
    Genus ctx(g);
    const Rational mu = slope(cls);
    if (!is_integer(mu))
        throw certify_error(CertifyFailure::NotIntegral,
                            "slope " + to_fraction(mu) + " is not an integer");
    const BigInt s = numerator(mu);
    if (s < 0 || s > ctx.g - 1)
        throw certify_error(CertifyFailure::SlopeOutOfRange,
                            "slope " + s.str() + " is outside [0, g-1] = [0, " +
                                std::to_string(ctx.g - 1) + "]");
    const long long islope = to_index(s, "slope");
    const BundleClass ambient = twist(cls, -islope);
    return BasePointCertificate{std::move(construction),
                                cls,
                                islope,
                                ambient.rank,
                                ambient.det,
                                ctx.g - 1 - islope,
                                justification};
}

/// Lambda^gamma of the kernel bundle of a degree-d line bundle:
/// rank C(d-g, gamma), slope gamma*d/(d-g), determinant = L^C(d-g-1, gamma-1).
inline BundleClass lambda_gamma_ql(long long g, long long d,
                                   long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    return exterior_power(kernel_dual_class(1, d, ctx), gamma_index(g), power_cap);
}

/// The uniform choice d = g*(gamma+1), giving slope gamma+1 and rank
/// C(g*gamma, gamma). Validates d >= 2g+1 and gamma+1 <= g-1 first and
/// reports infeasibility (it happens at g = 2 and g = 3) instead of emitting
/// an invalid certificate.
inline std::variant<BasePointCertificate, InfeasibleReport>
uniform_example(long long g, long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    const long long gam = gamma_index(g);
    const long long d = g * (gam + 1);
    if (d < 2 * g + 1)
        return InfeasibleReport{
            "d >= 2g+1", "uniform degree d = g*(gamma+1) = " + std::to_string(d) +
                             " is below 2g+1 = " + std::to_string(2 * g + 1) +
                             " at g = " + std::to_string(g)};
    if (gam + 1 > g - 1)
        return InfeasibleReport{
            "slope <= g-1", "uniform slope gamma+1 = " + std::to_string(gam + 1) +
                                " exceeds g-1 = " + std::to_string(g - 1) +
                                " at g = " + std::to_string(g)};
    BundleClass cls = lambda_gamma_ql(g, d, power_cap);
    return base_point_certificate(cls, g, Justification::StarByKernelClaim,
                                  ConstructionSpec{LineKernelExterior{g, d, gam}});
}

/// Lambda^p of Q_E for a semistable source bundle E = (rank_e, deg_e) of
/// slope > 2g. Slope p * deg_e / (deg_e - rank_e * g).
inline BundleClass qe_class(long long g, long long rank_e, long long deg_e,
                            long long p,
                            long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    if (p < gamma_index(g))
        throw std::domain_error("exterior index p = " + std::to_string(p) +
                                " must be at least gamma(g) = " +
                                std::to_string(gamma_index(g)));
    return exterior_power(kernel_dual_class(rank_e, deg_e, ctx), p, power_cap);
}

/// Sym^p of the kernel bundle of a degree-d line bundle. Same slope p*d/(d-g)
/// and integrality test as the exterior variant, different rank growth.
inline BundleClass symmetric_variant(long long g, long long d, long long p,
                                     long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    return symmetric_power(kernel_dual_class(1, d, ctx), p, power_cap);
}

/// One summand of Lambda^p of a direct sum of kernel bundles: the exponent
/// composition, and the summand's invariants. Per-summand determinant
/// descriptors are deliberately omitted.
struct DecompositionSummand {
    std::vector<int> composition;
    BigInt rank;
    BigInt degree;
    Rational mu;
};

struct Decomposition {
    std::vector<DecompositionSummand> summands;
    bool equal_slopes;  // true iff every summand has the same slope
};

/// Lambda^p(Q_{L_1} (+) ... (+) Q_{L_k}) decomposed as the direct sum over
/// weak compositions i_1 + ... + i_k = p of tensor products
/// Lambda^{i_1} Q_{L_1} (x) ... (x) Lambda^{i_k} Q_{L_k}, in lexicographic
/// composition order. Each L_j must have degree >= 2g+1.
inline Decomposition decompose(long long g,
                               const std::vector<long long>& degrees,
                               long long p,
                               long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    if (degrees.empty())
        throw empty_domain_error("decompose: need at least one line bundle");
    if (p < 0)
        throw std::domain_error("exterior power index must be nonnegative");
    if (p > power_cap)
        throw power_cap_error("exterior power index " + std::to_string(p) +
                              " exceeds the configured cap " +
                              std::to_string(power_cap));
    std::vector<BundleClass> kernels;
    kernels.reserve(degrees.size());
    for (long long d : degrees)
        kernels.push_back(kernel_dual_class(1, d, ctx));

    Decomposition out{{}, true};
    for (const auto& comp :
         compositions(static_cast<int>(p), static_cast<int>(degrees.size()))) {
        BundleClass summand = trivial_class();
        for (std::size_t j = 0; j < kernels.size(); ++j)
            summand = tensor(summand,
                             exterior_power(kernels[j], comp[j], power_cap));
        out.summands.push_back(DecompositionSummand{
            comp, summand.rank, summand.degree, slope(summand)});
    }
    for (const auto& s : out.summands)
        if (s.mu != out.summands.front().mu) {
            out.equal_slopes = false;
            break;
        }
    return out;
}

/// The k-fold family: Lambda^gamma of Q of a rank-k split bundle of
/// determinant degree k*d. Total rank C(k(d-g), gamma), fixed determinant
/// exponent C(k(d-g)-1, gamma-1) over the degree-k*d reference, slope
/// gamma*d/(d-g), and a (k-1)*g dimensional parameter family.
struct FamilyReport {
    BundleClass total;
    DetPower det;
    std::vector<DecompositionSummand> summands;
    BigInt family_dimension;
};

inline FamilyReport direct_sum_family(long long g, long long d, long long k,
                                      long long power_cap = kDefaultPowerCap) {
    Genus ctx(g);
    if (k < 2)
        throw std::domain_error("family needs k >= 2, got " + std::to_string(k));
    if (d < 2 * g + 1)
        throw slope_bound_error("family needs d >= 2g+1 = " +
                                std::to_string(2 * g + 1) + ", got " +
                                std::to_string(d));
    const long long gam = gamma_index(g);
    const long long n = k * (d - g);
    DetPower det{k * d, binomial(n - 1, gam - 1)};
    BundleClass total(binomial(n, gam), BigInt(k) * d * binomial(n - 1, gam - 1),
                      det);
    Decomposition dec =
        decompose(g, std::vector<long long>(static_cast<std::size_t>(k), d),
                  gam, power_cap);
    return FamilyReport{std::move(total), det, std::move(dec.summands),
                        BigInt(k - 1) * g};
}

/// Raynaud's numerical class for n | g: rank n^g, degree g * n^(g-1), slope
/// g/n (an integer exactly when n | g, which is required). Note that n | g
/// with n >= 2 already forces g >= n and gcd(g, n) = n > 1; no extra
/// hypotheses are needed for these classes.
inline BundleClass raynaud_class(long long g, long long n) {
    Genus ctx(g);
    if (n < 2)
        throw std::domain_error("raynaud class needs n >= 2, got " +
                                std::to_string(n));
    if (g % n != 0)
        throw std::domain_error("raynaud class needs n | g; " +
                                std::to_string(n) + " does not divide " +
                                std::to_string(g));
    const BigInt half_power = boost::multiprecision::pow(
        BigInt(n), static_cast<unsigned>(g - 1));
    return BundleClass(half_power * n, half_power * g);
}

/// E (+) O^extra. Trivial summands carry trivial determinant, so the
/// descriptor survives (with the same base) when one is present.
inline BundleClass pad_with_trivial(const BundleClass& b, const BigInt& extra) {
    if (extra < 0)
        throw std::domain_error("cannot pad by a negative rank");
    if (extra == 0)
        return b;
    std::optional<DetPower> pad_det;
    if (b.det)
        pad_det = DetPower{b.det->base_degree, 0};
    return direct_sum(b, BundleClass(extra, 0, std::move(pad_det)));
}

/// E (+) O^(r_target - r): padding with trivial summands. Only slope-0
/// certificates may be padded -- adding trivial bundles preserves the slope
/// (and the witness property) exactly there. Padding by zero is the
/// identity.
inline BasePointCertificate pad_to_rank(const BasePointCertificate& cert,
                                        const BigInt& r_target) {
    if (cert.integral_slope != 0)
        throw std::domain_error(
            "only slope-0 certificates can be padded; twist first (slope is " +
            std::to_string(cert.integral_slope) + ")");
    if (r_target < cert.cls.rank)
        throw std::domain_error("target rank " + r_target.str() +
                                " is below the certificate rank " +
                                cert.cls.rank.str());
    const BigInt extra = r_target - cert.cls.rank;
    if (extra == 0)
        return cert;
    BundleClass padded = pad_with_trivial(cert.cls, extra);
    ConstructionSpec spec{Padded{
        std::make_shared<const ConstructionSpec>(cert.construction), extra}};
    return base_point_certificate(padded, genus_of(cert.construction),
                                  Justification::PaddedFromSmallerRank,
                                  std::move(spec));
}

/// Evaluate the class a construction names, without certifying it.
inline BundleClass realize(const ConstructionSpec& spec,
                           long long power_cap = kDefaultPowerCap) {
    return std::visit(
        [power_cap](const auto& v) -> BundleClass {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineKernelExterior>)
                return qe_class(v.g, 1, v.d, v.p, power_cap);
            else if constexpr (std::is_same_v<T, BundleKernelExterior>)
                return qe_class(v.g, v.rank_e, v.deg_e, v.p, power_cap);
            else if constexpr (std::is_same_v<T, SymmetricKernel>)
                return symmetric_variant(v.g, v.d, v.p, power_cap);
            else if constexpr (std::is_same_v<T, DirectSumKernelExterior>)
                return direct_sum_family(v.g, v.d, v.k, power_cap).total;
            else if constexpr (std::is_same_v<T, Raynaud>)
                return raynaud_class(v.g, v.n);
            else
                return pad_with_trivial(realize(*v.inner, power_cap),
                                        v.extra_rank);
        },
        spec.value);
}

}  // namespace thetalocus
