#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "obstruction.hpp"
#include "search.hpp"

// JSON and CSV forms of every result type. Conventions: BigInt values are
// decimal strings (consumers must not lose precision), rationals are
// "num/den" in lowest terms, machine-size integers are plain JSON numbers.
// Optional fields are omitted when absent. nlohmann::json keeps keys in
// sorted order, so serialization is canonical: parse + re-dump is the
// identity on bytes.

namespace thetalocus {

using json = nlohmann::json;

inline json to_json(const DetPower& det) {
    return json{{"base_degree", det.base_degree},
                {"exponent", to_decimal(det.exponent)}};
}

inline json to_json(const BundleClass& b) {
    json j{{"rank", to_decimal(b.rank)},
           {"degree", to_decimal(b.degree)},
           {"slope", to_fraction(slope(b))}};
    if (b.det)
        j["det"] = to_json(*b.det);
    return j;
}

inline json to_json(const ConstructionSpec& spec) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineKernelExterior>)
                return json{{"variant", "line-kernel-exterior"},
                            {"g", v.g},
                            {"d", v.d},
                            {"p", v.p}};
            else if constexpr (std::is_same_v<T, BundleKernelExterior>)
                return json{{"variant", "bundle-kernel-exterior"},
                            {"g", v.g},
                            {"rank_e", v.rank_e},
                            {"deg_e", v.deg_e},
                            {"p", v.p}};
            else if constexpr (std::is_same_v<T, SymmetricKernel>)
                return json{{"variant", "symmetric-kernel"},
                            {"g", v.g},
                            {"d", v.d},
                            {"p", v.p}};
            else if constexpr (std::is_same_v<T, DirectSumKernelExterior>)
                return json{{"variant", "direct-sum-kernel-exterior"},
                            {"g", v.g},
                            {"d", v.d},
                            {"k", v.k}};
            else if constexpr (std::is_same_v<T, Raynaud>)
                return json{{"variant", "raynaud"}, {"g", v.g}, {"n", v.n}};
            else
                return json{{"variant", "padded"},
                            {"inner", to_json(*v.inner)},
                            {"extra_rank", to_decimal(v.extra_rank)}};
        },
        spec.value);
}

inline ConstructionSpec construction_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    auto ll = [&j](const char* key) { return j.at(key).get<long long>(); };
    if (variant == "line-kernel-exterior")
        return ConstructionSpec{LineKernelExterior{ll("g"), ll("d"), ll("p")}};
    if (variant == "bundle-kernel-exterior")
        return ConstructionSpec{BundleKernelExterior{ll("g"), ll("rank_e"),
                                                     ll("deg_e"), ll("p")}};
    if (variant == "symmetric-kernel")
        return ConstructionSpec{SymmetricKernel{ll("g"), ll("d"), ll("p")}};
    if (variant == "direct-sum-kernel-exterior")
        return ConstructionSpec{
            DirectSumKernelExterior{ll("g"), ll("d"), ll("k")}};
    if (variant == "raynaud")
        return ConstructionSpec{Raynaud{ll("g"), ll("n")}};
    if (variant == "padded")
        return ConstructionSpec{
            Padded{std::make_shared<const ConstructionSpec>(
                       construction_from_json(j.at("inner"))),
                   bigint_from_decimal(j.at("extra_rank").get<std::string>())}};
    throw std::domain_error("unknown construction variant: " + variant);
}

/// One-cell rendering of a construction for CSV and tables (no commas).
inline std::string construction_label(const ConstructionSpec& spec) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineKernelExterior>)
                return "line-kernel-exterior g=" + std::to_string(v.g) +
                       " d=" + std::to_string(v.d) + " p=" + std::to_string(v.p);
            else if constexpr (std::is_same_v<T, BundleKernelExterior>)
                return "bundle-kernel-exterior g=" + std::to_string(v.g) +
                       " rank_e=" + std::to_string(v.rank_e) +
                       " deg_e=" + std::to_string(v.deg_e) +
                       " p=" + std::to_string(v.p);
            else if constexpr (std::is_same_v<T, SymmetricKernel>)
                return "symmetric-kernel g=" + std::to_string(v.g) +
                       " d=" + std::to_string(v.d) + " p=" + std::to_string(v.p);
            else if constexpr (std::is_same_v<T, DirectSumKernelExterior>)
                return "direct-sum-kernel-exterior g=" + std::to_string(v.g) +
                       " d=" + std::to_string(v.d) + " k=" + std::to_string(v.k);
            else if constexpr (std::is_same_v<T, Raynaud>)
                return "raynaud g=" + std::to_string(v.g) +
                       " n=" + std::to_string(v.n);
            else
                return "padded extra=" + to_decimal(v.extra_rank) +
                       " inner=" + construction_label(*v.inner);
        },
        spec.value);
}

inline json to_json(const BasePointCertificate& cert) {
    json j{{"construction", to_json(cert.construction)},
           {"class", to_json(cert.cls)},
           {"slope", cert.integral_slope},
           {"rank", to_decimal(cert.cls.rank)},
           {"ambient_rank", to_decimal(cert.ambient_rank)},
           {"pic_test_degree", cert.pic_test_degree},
           {"justification", to_string(cert.justification)}};
    if (cert.ambient_det)
        j["ambient_det"] = to_json(*cert.ambient_det);
    return j;
}

inline json to_json(const InfeasibleReport& report) {
    return json{{"infeasible", true},
                {"condition", report.condition},
                {"detail", report.detail}};
}

inline json to_json(const DecompositionSummand& s) {
    return json{{"composition", s.composition},
                {"rank", to_decimal(s.rank)},
                {"degree", to_decimal(s.degree)},
                {"slope", to_fraction(s.mu)}};
}

inline json to_json(const FamilyReport& report) {
    json summands = json::array();
    for (const auto& s : report.summands)
        summands.push_back(to_json(s));
    return json{{"total", to_json(report.total)},
                {"det", to_json(report.det)},
                {"summands", std::move(summands)},
                {"family_dimension", to_decimal(report.family_dimension)}};
}

inline json to_json(const SearchBox& box) {
    json j{{"g", box.g},
           {"p_lo", box.p_lo},
           {"p_hi", box.p_hi},
           {"rank_e_max", box.rank_e_max},
           {"completeness", box.completeness == Completeness::CompleteByDivisors
                                ? "complete-by-divisors"
                                : "bounded-scan"}};
    if (box.d_max)
        j["d_max"] = *box.d_max;
    return j;
}

inline json to_json(const FeasiblePoint& f) {
    return json{{"p", f.p},
                {"d", f.d},
                {"rank", to_decimal(f.rank)},
                {"slope", f.mu}};
}

inline json to_json(const SearchResult& result) {
    json feasible = json::array();
    for (const auto& f : result.all_feasible)
        feasible.push_back(to_json(f));
    return json{{"winner", to_json(result.winner)},
                {"all_feasible", std::move(feasible)},
                {"box", to_json(result.box)},
                {"minimal_within_box", result.minimal_within_box}};
}

inline json to_json(const QeSearchReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back(json{{"rank_e", r.rank_e},
                            {"deg_e", r.deg_e},
                            {"p", r.p},
                            {"rank", to_decimal(r.rank)}});
    json j{{"g", report.g},
           {"target_slope", report.target_slope},
           {"feasible", report.feasible},
           {"rank_e_max", report.rank_e_max},
           {"rows", std::move(rows)}};
    if (!report.note.empty())
        j["note"] = report.note;
    return j;
}

inline json to_json(const ObstructionInstance& inst) {
    json j{{"g", inst.g},
           {"n", inst.n},
           {"k", inst.k},
           {"slope", to_fraction(inst.mu)},
           {"lms_bound", to_fraction(inst.lms_bound)},
           {"min_subbundle_degree", inst.min_subbundle_degree},
           {"feasible", inst.feasible}};
    if (inst.predicted)
        j["predicted"] = json{
            {"moduli_rank", to_decimal(inst.predicted->moduli_rank)},
            {"theta_multiple", inst.predicted->theta_multiple},
            {"conditional_on", inst.predicted->conditional_on}};
    return j;
}

inline const char* kFlAssumptionNote =
    "required conditions read as: slope integral and slope <= g-1 "
    "(interpretive)";

inline json to_json(const FlThetaVerdict& verdict) {
    json j{{"g", verdict.g},
           {"d", verdict.d},
           {"slope", to_fraction(verdict.mu)},
           {"holds", verdict.holds},
           {"failed", verdict.failed},
           {"assumption_note", kFlAssumptionNote}};
    if (verdict.moduli_rank)
        j["moduli_rank"] = to_decimal(*verdict.moduli_rank);
    if (verdict.det)
        j["det"] = to_json(*verdict.det);
    return j;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            row += ',';
        row += csv_field(cells[i]);
    }
    row += '\n';
    return row;
}

inline std::string to_csv(const BundleClass& b) {
    return csv_row({"rank", "degree", "slope", "det_base_degree",
                    "det_exponent"}) +
           csv_row({to_decimal(b.rank), to_decimal(b.degree),
                    to_fraction(slope(b)),
                    b.det ? std::to_string(b.det->base_degree) : "",
                    b.det ? to_decimal(b.det->exponent) : ""});
}

inline std::string to_csv(const BasePointCertificate& cert) {
    return csv_row({"construction", "rank", "degree", "slope",
                    "pic_test_degree", "justification", "ambient_rank"}) +
           csv_row({construction_label(cert.construction),
                    to_decimal(cert.cls.rank), to_decimal(cert.cls.degree),
                    std::to_string(cert.integral_slope),
                    std::to_string(cert.pic_test_degree),
                    to_string(cert.justification),
                    to_decimal(cert.ambient_rank)});
}

inline std::string to_csv(const InfeasibleReport& report) {
    return csv_row({"infeasible", "condition", "detail"}) +
           csv_row({"true", report.condition, report.detail});
}

inline std::string composition_label(const std::vector<int>& comp) {
    std::string s;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (i)
            s += '+';
        s += std::to_string(comp[i]);
    }
    return s;
}

inline std::string to_csv(const FamilyReport& report) {
    std::string out = csv_row({"composition", "rank", "degree", "slope"});
    for (const auto& s : report.summands)
        out += csv_row({composition_label(s.composition), to_decimal(s.rank),
                        to_decimal(s.degree), to_fraction(s.mu)});
    return out;
}

inline std::string to_csv(const SearchResult& result) {
    std::string out = csv_row({"p", "d", "rank", "slope", "winner"});
    const auto* win = std::get_if<LineKernelExterior>(
        &result.winner.construction.value);
    for (const auto& f : result.all_feasible) {
        const bool is_winner = win && win->d == f.d && win->p == f.p;
        out += csv_row({std::to_string(f.p), std::to_string(f.d),
                        to_decimal(f.rank), std::to_string(f.mu),
                        is_winner ? "true" : "false"});
    }
    return out;
}

inline std::string to_csv(const QeSearchReport& report) {
    std::string out = csv_row({"rank_e", "deg_e", "p", "rank"});
    for (const auto& r : report.rows)
        out += csv_row({std::to_string(r.rank_e), std::to_string(r.deg_e),
                        std::to_string(r.p), to_decimal(r.rank)});
    return out;
}

inline std::string sd_csv_header() {
    return csv_row({"g", "n", "k", "slope", "lms_bound",
                    "min_subbundle_degree", "feasible", "predicted_rank",
                    "theta_multiple", "conditional_on"});
}

inline std::string sd_csv_row(const ObstructionInstance& inst) {
    return csv_row(
        {std::to_string(inst.g), std::to_string(inst.n), std::to_string(inst.k),
         to_fraction(inst.mu), to_fraction(inst.lms_bound),
         std::to_string(inst.min_subbundle_degree),
         inst.feasible ? "true" : "false",
         inst.predicted ? to_decimal(inst.predicted->moduli_rank) : "",
         inst.predicted ? std::to_string(inst.predicted->theta_multiple) : "",
         inst.predicted ? inst.predicted->conditional_on : ""});
}

inline std::string to_csv(const ObstructionInstance& inst) {
    return sd_csv_header() + sd_csv_row(inst);
}

inline std::string to_csv(const std::vector<ObstructionInstance>& instances) {
    std::string out = sd_csv_header();
    for (const auto& inst : instances)
        out += sd_csv_row(inst);
    return out;
}

inline std::string to_csv(const FlThetaVerdict& verdict) {
    std::string failed;
    for (std::size_t i = 0; i < verdict.failed.size(); ++i) {
        if (i)
            failed += "; ";
        failed += verdict.failed[i];
    }
    return csv_row({"g", "d", "slope", "holds", "moduli_rank",
                    "det_base_degree", "det_exponent", "failed"}) +
           csv_row({std::to_string(verdict.g), std::to_string(verdict.d),
                    to_fraction(verdict.mu), verdict.holds ? "true" : "false",
                    verdict.moduli_rank ? to_decimal(*verdict.moduli_rank) : "",
                    verdict.det ? std::to_string(verdict.det->base_degree) : "",
                    verdict.det ? to_decimal(verdict.det->exponent) : "",
                    failed});
}

}  // namespace thetalocus
