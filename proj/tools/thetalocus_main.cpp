// Command-line front end. Every subcommand prints one result in one of three
// formats (table for humans, json/csv for scripts) and follows a fixed exit
// code contract:
//   0  success with a result
//   1  well-formed query whose outcome is infeasible or empty
//   2  invalid arguments or violated preconditions (message on stderr)

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <thetalocus/thetalocus.hpp>

namespace tl = thetalocus;
using tl::json;

namespace {

struct Rendered {
    json j;
    std::string csv;
    std::string table;
    int exit_code = 0;
};

std::string kv_table(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows)
        width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows)
        os << std::left << std::setw(static_cast<int>(width) + 2) << (k + ":")
           << v << "\n";
    return os.str();
}

std::string grid_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty())
        return "";
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                os << "  ";
            os << std::left << std::setw(static_cast<int>(width[i])) << row[i];
        }
        os << "\n";
    }
    return os.str();
}

std::string det_label(const std::optional<tl::DetPower>& det) {
    if (!det)
        return "(not tracked)";
    return "L^" + tl::to_decimal(det->exponent) + " with deg L = " +
           std::to_string(det->base_degree);
}

Rendered render_class(const tl::BundleClass& cls) {
    Rendered r;
    r.j = tl::to_json(cls);
    r.csv = tl::to_csv(cls);
    r.table = kv_table({{"rank", tl::to_decimal(cls.rank)},
                        {"degree", tl::to_decimal(cls.degree)},
                        {"slope", tl::to_fraction(tl::slope(cls))},
                        {"det", det_label(cls.det)}});
    return r;
}

Rendered render_certificate(const tl::BasePointCertificate& cert) {
    Rendered r;
    r.j = tl::to_json(cert);
    r.csv = tl::to_csv(cert);
    r.table = kv_table(
        {{"construction", tl::construction_label(cert.construction)},
         {"rank", tl::to_decimal(cert.cls.rank)},
         {"degree", tl::to_decimal(cert.cls.degree)},
         {"slope", std::to_string(cert.integral_slope)},
         {"pic test degree", std::to_string(cert.pic_test_degree)},
         {"ambient rank", tl::to_decimal(cert.ambient_rank) +
                              " (degree 0 after twist by -slope)"},
         {"det", det_label(cert.cls.det)},
         {"justification", tl::to_string(cert.justification)}});
    return r;
}

Rendered render_infeasible(const tl::InfeasibleReport& report) {
    Rendered r;
    r.j = tl::to_json(report);
    r.csv = tl::to_csv(report);
    r.table = "infeasible: " + report.condition + "\n  " + report.detail + "\n";
    r.exit_code = 1;
    return r;
}

json load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        return json::object();
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    return j.is_object() ? j : json::object();
}

void store_cache(const std::string& path, const std::string& key,
                 const json& value) {
    json cache = load_cache(path);
    cache[key] = value;
    std::ofstream out(path);
    out << cache.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator and search tool for theta-divisor base "
                 "point constructions"};
    app.require_subcommand(1);

    std::string format = "table";
    std::string out_path;
    std::string cache_path;
    long long pmax = tl::kDefaultPowerCap;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write the result to a file");
    app.add_option("--pmax", pmax, "cap on exterior/symmetric power indices")
        ->capture_default_str();
    app.add_option("--cache", cache_path,
                   "JSON file persisting completed search results");

    std::function<Rendered()> run;

    // gamma <g>
    long long gamma_g = 0;
    auto* cmd_gamma = app.add_subcommand("gamma", "the half-genus index");
    cmd_gamma->add_option("g", gamma_g, "genus")->required();
    cmd_gamma->callback([&] {
        run = [&]() -> Rendered {
            const long long value = tl::gamma_index(gamma_g);
            Rendered r;
            r.j = json{{"g", gamma_g}, {"gamma", value}};
            r.csv = tl::csv_row({"g", "gamma"}) +
                    tl::csv_row({std::to_string(gamma_g), std::to_string(value)});
            r.table = "gamma(" + std::to_string(gamma_g) + ") = " +
                      std::to_string(value) + "\n";
            return r;
        };
    });

    // invariants --construction <json> | --variant <name> + flags
    std::string inv_json;
    std::string inv_variant;
    long long inv_g = 0, inv_d = 0, inv_p = 0, inv_rank_e = 1, inv_deg_e = 0,
              inv_k = 2, inv_n = 2;
    auto* cmd_inv = app.add_subcommand(
        "invariants", "rank/degree/slope/det of a named construction");
    cmd_inv->add_option("--construction", inv_json,
                        "construction as a JSON tagged union");
    cmd_inv->add_option(
        "--variant", inv_variant,
        "one of line-kernel, bundle-kernel, symmetric, direct-sum, raynaud");
    cmd_inv->add_option("--g", inv_g, "genus");
    cmd_inv->add_option("--d", inv_d, "line bundle degree");
    cmd_inv->add_option("--p", inv_p, "power index");
    cmd_inv->add_option("--rank-e", inv_rank_e, "source bundle rank");
    cmd_inv->add_option("--deg-e", inv_deg_e, "source bundle degree");
    cmd_inv->add_option("--k", inv_k, "number of summands");
    cmd_inv->add_option("--n", inv_n, "raynaud divisor of g");
    cmd_inv->callback([&] {
        run = [&]() -> Rendered {
            tl::ConstructionSpec spec = [&]() -> tl::ConstructionSpec {
                if (!inv_json.empty())
                    return tl::construction_from_json(json::parse(inv_json));
                if (inv_variant == "line-kernel")
                    return {tl::LineKernelExterior{inv_g, inv_d, inv_p}};
                if (inv_variant == "bundle-kernel")
                    return {tl::BundleKernelExterior{inv_g, inv_rank_e,
                                                     inv_deg_e, inv_p}};
                if (inv_variant == "symmetric")
                    return {tl::SymmetricKernel{inv_g, inv_d, inv_p}};
                if (inv_variant == "direct-sum")
                    return {tl::DirectSumKernelExterior{inv_g, inv_d, inv_k}};
                if (inv_variant == "raynaud")
                    return {tl::Raynaud{inv_g, inv_n}};
                throw std::domain_error(
                    "need --construction <json> or a known --variant");
            }();
            return render_class(tl::realize(spec, pmax));
        };
    });

    // example uniform <g>
    long long ex_g = 0;
    auto* cmd_example = app.add_subcommand("example", "named example families");
    auto* cmd_uniform =
        cmd_example->add_subcommand("uniform", "the uniform-degree example");
    cmd_uniform->add_option("g", ex_g, "genus")->required();
    cmd_example->require_subcommand(1);
    cmd_uniform->callback([&] {
        run = [&]() -> Rendered {
            auto result = tl::uniform_example(ex_g, pmax);
            if (auto* cert = std::get_if<tl::BasePointCertificate>(&result))
                return render_certificate(*cert);
            return render_infeasible(std::get<tl::InfeasibleReport>(result));
        };
    });

    // search min-rank <g> | search qe <g> --slope <s>
    long long search_g = 0, qe_g = 0, qe_slope = 0, qe_remax = 4;
    auto* cmd_search = app.add_subcommand("search", "parameter searches");
    cmd_search->require_subcommand(1);
    auto* cmd_minrank = cmd_search->add_subcommand(
        "min-rank", "minimal-rank line-kernel certificate (complete search)");
    cmd_minrank->add_option("g", search_g, "genus")->required();
    auto* cmd_qe = cmd_search->add_subcommand(
        "qe", "kernel-source parameters hitting a prescribed slope");
    cmd_qe->add_option("g", qe_g, "genus")->required();
    cmd_qe->add_option("--slope", qe_slope, "target integral slope")->required();
    cmd_qe->add_option("--remax", qe_remax, "largest source rank to emit")
        ->capture_default_str();

    cmd_minrank->callback([&] {
        run = [&]() -> Rendered {
            auto result = tl::minimal_rank_line_example(search_g, pmax);
            Rendered r;
            if (auto* found = std::get_if<tl::SearchResult>(&result)) {
                r.j = tl::to_json(*found);
                r.csv = tl::to_csv(*found);
                const auto& win =
                    std::get<tl::LineKernelExterior>(found->winner.construction.value);
                std::vector<std::vector<std::string>> grid{
                    {"p", "d", "rank", "slope", ""}};
                for (const auto& f : found->all_feasible)
                    grid.push_back({std::to_string(f.p), std::to_string(f.d),
                                    tl::to_decimal(f.rank), std::to_string(f.mu),
                                    (f.d == win.d && f.p == win.p) ? "<- winner"
                                                                   : ""});
                r.table = "complete search over p in [" +
                          std::to_string(found->box.p_lo) + ", " +
                          std::to_string(found->box.p_hi) + "], divisors of p*g\n" +
                          grid_table(grid) + "\nwinner certificate:\n" +
                          render_certificate(found->winner).table;
            } else {
                r = render_infeasible(std::get<tl::InfeasibleReport>(result));
            }
            if (!cache_path.empty())
                store_cache(cache_path,
                            "min-rank g=" + std::to_string(search_g), r.j);
            return r;
        };
    });

    cmd_qe->callback([&] {
        run = [&]() -> Rendered {
            tl::QeSearchReport report =
                tl::qe_target_search(qe_g, qe_slope, qe_remax);
            Rendered r;
            r.j = tl::to_json(report);
            r.csv = tl::to_csv(report);
            if (report.feasible) {
                std::vector<std::vector<std::string>> grid{
                    {"rank_e", "deg_e", "p", "rank"}};
                for (const auto& row : report.rows)
                    grid.push_back({std::to_string(row.rank_e),
                                    std::to_string(row.deg_e),
                                    std::to_string(row.p),
                                    tl::to_decimal(row.rank)});
                r.table = "source bundles whose kernel class hits slope " +
                          std::to_string(qe_slope) + " at p = gamma\n" +
                          grid_table(grid);
            } else {
                r.table = "infeasible: " + report.note + "\n";
                r.exit_code = 1;
            }
            if (!cache_path.empty())
                store_cache(cache_path,
                            "qe g=" + std::to_string(qe_g) +
                                " s=" + std::to_string(qe_slope) +
                                " remax=" + std::to_string(qe_remax),
                            r.j);
            return r;
        };
    });

    // rho <g> [--k <k>]
    long long rho_g = 0, rho_kv = 0;
    auto* cmd_rho = app.add_subcommand(
        "rho", "rank threshold above which base points exist");
    cmd_rho->add_option("g", rho_g, "genus")->required();
    auto* rho_k_opt = cmd_rho->add_option(
        "--k", rho_kv, "family multiplicity (omit for the uniform bound)");
    cmd_rho->callback([&] {
        run = [&]() -> Rendered {
            const bool with_k = rho_k_opt->count() > 0;
            const tl::BigInt value =
                with_k ? tl::rho_k(rho_kv, rho_g) : tl::rho_uniform(rho_g);
            Rendered r;
            r.j = json{{"g", rho_g}, {"rho", tl::to_decimal(value)}};
            if (with_k)
                r.j["k"] = rho_kv;
            r.csv = tl::csv_row({"g", "k", "rho"}) +
                    tl::csv_row({std::to_string(rho_g),
                                 with_k ? std::to_string(rho_kv) : "",
                                 tl::to_decimal(value)});
            r.table = (with_k ? "rho(k=" + std::to_string(rho_kv) + ", g=" +
                                    std::to_string(rho_g) + ")"
                              : "rho(g=" + std::to_string(rho_g) + ")") +
                      " = " + tl::to_decimal(value) + "\n";
            return r;
        };
    });

    // family <g> <d> <k>
    long long fam_g = 0, fam_d = 0, fam_k = 0;
    auto* cmd_family = app.add_subcommand(
        "family", "the k-fold direct-sum family and its decomposition");
    cmd_family->add_option("g", fam_g, "genus")->required();
    cmd_family->add_option("d", fam_d, "summand line bundle degree")->required();
    cmd_family->add_option("k", fam_k, "number of summands")->required();
    cmd_family->callback([&] {
        run = [&]() -> Rendered {
            tl::FamilyReport report =
                tl::direct_sum_family(fam_g, fam_d, fam_k, pmax);
            Rendered r;
            r.j = tl::to_json(report);
            r.csv = tl::to_csv(report);
            std::vector<std::vector<std::string>> grid{
                {"composition", "rank", "degree", "slope"}};
            for (const auto& s : report.summands)
                grid.push_back({tl::composition_label(s.composition),
                                tl::to_decimal(s.rank), tl::to_decimal(s.degree),
                                tl::to_fraction(s.mu)});
            r.table =
                kv_table({{"total rank", tl::to_decimal(report.total.rank)},
                          {"total degree", tl::to_decimal(report.total.degree)},
                          {"slope", tl::to_fraction(tl::slope(report.total))},
                          {"det", det_label(report.total.det)},
                          {"family dimension",
                           tl::to_decimal(report.family_dimension)}}) +
                "\nsummands:\n" + grid_table(grid);
            return r;
        };
    });

    // sd check <g> <n> <k> | sd scan --gmax --kmax
    long long sd_g = 0, sd_n = 0, sd_k = 0, sd_gmax = 0, sd_kmax = 0;
    auto* cmd_sd =
        app.add_subcommand("sd", "strange-duality obstruction instances");
    cmd_sd->require_subcommand(1);
    auto* cmd_sd_check = cmd_sd->add_subcommand("check", "one (g, n, k) record");
    cmd_sd_check->add_option("g", sd_g, "genus")->required();
    cmd_sd_check->add_option("n", sd_n, "divisor of g")->required();
    cmd_sd_check->add_option("k", sd_k, "theta multiple")->required();
    auto* cmd_sd_scan =
        cmd_sd->add_subcommand("scan", "all feasible records in a box");
    cmd_sd_scan->add_option("--gmax", sd_gmax, "largest genus")->required();
    cmd_sd_scan->add_option("--kmax", sd_kmax, "largest theta multiple")
        ->required();

    auto sd_table_row = [](const tl::ObstructionInstance& inst) {
        return std::vector<std::string>{
            std::to_string(inst.g),
            std::to_string(inst.n),
            std::to_string(inst.k),
            tl::to_fraction(inst.mu),
            tl::to_fraction(inst.lms_bound),
            std::to_string(inst.min_subbundle_degree),
            inst.feasible ? "yes" : "no",
            inst.predicted ? tl::to_decimal(inst.predicted->moduli_rank) : "-"};
    };
    const std::vector<std::string> sd_head{"g",     "n",        "k",
                                           "slope", "lms_bound", "min_deg",
                                           "feasible", "rank"};

    cmd_sd_check->callback([&] {
        run = [&]() -> Rendered {
            tl::ObstructionInstance inst =
                tl::strange_duality_instance(sd_g, sd_n, sd_k);
            Rendered r;
            r.j = tl::to_json(inst);
            r.csv = tl::to_csv(inst);
            r.table = grid_table({sd_head, sd_table_row(inst)});
            if (inst.feasible)
                r.table += "predicted: base point of |" +
                           std::to_string(inst.k) +
                           "*Theta| at rank " +
                           tl::to_decimal(inst.predicted->moduli_rank) +
                           " (conditional on " +
                           inst.predicted->conditional_on + ")\n";
            else
                r.exit_code = 1;
            return r;
        };
    });

    cmd_sd_scan->callback([&] {
        run = [&]() -> Rendered {
            std::vector<tl::ObstructionInstance> instances =
                tl::sd_scan(sd_gmax, sd_kmax);
            Rendered r;
            json arr = json::array();
            for (const auto& inst : instances)
                arr.push_back(tl::to_json(inst));
            r.j = json{{"gmax", sd_gmax},
                       {"kmax", sd_kmax},
                       {"instances", std::move(arr)}};
            r.csv = tl::to_csv(instances);
            std::vector<std::vector<std::string>> grid{sd_head};
            for (const auto& inst : instances)
                grid.push_back(sd_table_row(inst));
            r.table = grid_table(grid);
            if (instances.empty()) {
                r.table = "no feasible instances in the box\n";
                r.exit_code = 1;
            }
            return r;
        };
    });

    // fl-check <g> <d>
    long long fl_g = 0, fl_d = 0;
    auto* cmd_fl = app.add_subcommand(
        "fl-check",
        "does the exterior kernel class certify on its own moduli space");
    cmd_fl->add_option("g", fl_g, "genus")->required();
    cmd_fl->add_option("d", fl_d, "line bundle degree")->required();
    cmd_fl->callback([&] {
        run = [&]() -> Rendered {
            tl::FlThetaVerdict verdict = tl::fl_theta_check(fl_g, fl_d);
            Rendered r;
            r.j = tl::to_json(verdict);
            r.csv = tl::to_csv(verdict);
            if (verdict.holds) {
                r.table = kv_table(
                    {{"holds", "yes"},
                     {"slope", tl::to_fraction(verdict.mu)},
                     {"moduli rank", tl::to_decimal(*verdict.moduli_rank)},
                     {"det", det_label(verdict.det)},
                     {"note", tl::kFlAssumptionNote}});
            } else {
                std::string failed;
                for (const auto& f : verdict.failed)
                    failed += "  " + f + "\n";
                r.table = "does not hold:\n" + failed;
                r.exit_code = 1;
            }
            return r;
        };
    });

    // table rho --gmax --kmax
    long long tab_gmax = 0, tab_kmax = 0;
    auto* cmd_table = app.add_subcommand("table", "summary tables");
    cmd_table->require_subcommand(1);
    auto* cmd_table_rho =
        cmd_table->add_subcommand("rho", "rho thresholds for a genus range");
    cmd_table_rho->add_option("--gmax", tab_gmax, "largest genus")->required();
    cmd_table_rho->add_option("--kmax", tab_kmax, "largest family multiplicity")
        ->required();
    cmd_table_rho->callback([&] {
        run = [&]() -> Rendered {
            if (tab_gmax < 2 || tab_kmax < 2)
                throw std::domain_error("table bounds must be >= 2");
            Rendered r;
            json rows = json::array();
            std::vector<std::string> head{"g", "rho_uniform"};
            for (long long k = 2; k <= tab_kmax; ++k)
                head.push_back("rho_k" + std::to_string(k));
            std::vector<std::vector<std::string>> grid{head};
            std::string csv = tl::csv_row(head);
            for (long long g = 2; g <= tab_gmax; ++g) {
                json row{{"g", g},
                         {"rho_uniform", tl::to_decimal(tl::rho_uniform(g))}};
                std::vector<std::string> cells{
                    std::to_string(g), tl::to_decimal(tl::rho_uniform(g))};
                json ks = json::array();
                for (long long k = 2; k <= tab_kmax; ++k) {
                    const tl::BigInt value = tl::rho_k(k, g);
                    ks.push_back(json{{"k", k}, {"rho", tl::to_decimal(value)}});
                    cells.push_back(tl::to_decimal(value));
                }
                row["rho_k"] = std::move(ks);
                rows.push_back(std::move(row));
                grid.push_back(cells);
                csv += tl::csv_row(cells);
            }
            r.j = json{{"gmax", tab_gmax}, {"kmax", tab_kmax}, {"rows", rows}};
            r.csv = std::move(csv);
            r.table = grid_table(grid);
            return r;
        };
    });

    // Global flags (--format, --out, ...) may appear after any subcommand.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (CLI::App* sub : cmd->get_subcommands([](CLI::App*) { return true; }))
            enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Rendered result = run();
        std::string text;
        if (format == "json")
            text = result.j.dump(2) + "\n";
        else if (format == "csv")
            text = result.csv;
        else
            text = result.table;
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out)
                throw std::runtime_error("cannot open output file " + out_path);
            out << text;
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
