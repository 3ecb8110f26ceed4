// Command-line front end: exact counting, table extraction, graded series,
// shuffle-algebra calculations, stratum dimensions and the verification
// suite.  All numeric output is exact; big values are decimal strings.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlab/acceptance.hpp"
#include "qlab/coha.hpp"
#include "qlab/kac.hpp"
#include "qlab/quiver.hpp"
#include "qlab/repenum.hpp"
#include "qlab/shuffle.hpp"
#include "qlab/strata.hpp"

using nlohmann::ordered_json;
using namespace qlab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Quiver load_quiver(const std::string& path) { return quiver_from_json(read_file(path)); }

DimVector parse_dims(const std::string& csv) {
    DimVector v;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
    return v;
}

std::vector<std::int64_t> parse_i64s(const std::string& csv) { return parse_dims(csv); }

CountOptions make_options(int threads, bool serial, bool naive) {
    CountOptions opt;
    opt.threads = threads;
    opt.serial_reference = serial;
    opt.naive_m = naive;
    if (const char* env = std::getenv("QCOHA_BUDGET")) opt.budget = std::strtoull(env, nullptr, 10);
    return opt;
}

std::string rat_str(const mpq_class& x) {
    mpq_class c = x;
    c.canonicalize();
    return c.get_den() == 1 ? c.get_num().get_str()
                            : c.get_num().get_str() + "/" + c.get_den().get_str();
}

ordered_json series_json(const CohaDimSeries& s) {
    ordered_json j;
    j["tau"] = s.tau;
    j["order"] = s.order;
    ordered_json entries = ordered_json::array();
    for (const auto& [e, coeffs] : s.series.c) {
        ordered_json row;
        row["z"] = e;
        ordered_json cs = ordered_json::array();
        for (const mpq_class& c : coeffs) cs.push_back(rat_str(c));
        row["qinv_coeffs"] = cs;
        entries.push_back(row);
    }
    j["entries"] = entries;
    return j;
}

int run_count(const std::string& quiver_path, const std::string& dim, std::int64_t prime,
              const std::string& kind, int threads, bool serial, bool naive) {
    Quiver q = load_quiver(quiver_path);
    CountRecord r =
        count_variety(q, parse_dims(dim), prime, kind_from_name(kind),
                      make_options(threads, serial, naive));
    std::cout << count_record_to_json(r) << "\n";
    return 0;
}

int run_kac(const std::string& quiver_path, const std::string& vmax, const std::string& primes,
            const std::string& kind, int threads) {
    Quiver q = load_quiver(quiver_path);
    CountOptions opt = make_options(threads, false, false);
    KacTable table;
    if (kind == "full")
        table = extract_full_kac(q, parse_dims(vmax), parse_i64s(primes), opt);
    else if (kind == "nilpotent0")
        table = extract_nilpotent_kac(q, 0, parse_dims(vmax), parse_i64s(primes), opt);
    else if (kind == "nilpotent1")
        table = extract_nilpotent_kac(q, 1, parse_dims(vmax), parse_i64s(primes), opt);
    else
        throw CLI::ValidationError("--kind must be full, nilpotent0 or nilpotent1");
    std::cout << kac_table_to_json(table) << "\n";
    return 0;
}

int run_coha(const std::string& quiver_path, const std::string& vmax, int tau, int flat, int order,
             int window, const std::string& primes, int threads) {
    Quiver q = load_quiver(quiver_path);
    CountOptions opt = make_options(threads, false, false);
    DimVector box = parse_dims(vmax);
    KacTable table = extract_nilpotent_kac(q, flat, box, parse_i64s(primes), opt);
    CohaDimSeries series = coha_series_from_kac(table, tau, order, window);
    ordered_json j;
    j["series"] = series_json(series);
    ordered_json rows = ordered_json::array();
    for (const CohaCrossRow& row : coha_cross_check(q, table, flat, box, parse_i64s(primes), tau, opt)) {
        ordered_json r;
        r["v"] = row.v;
        r["prime"] = row.prime;
        r["kac_route"] = rat_str(row.kac_route);
        r["count_route"] = rat_str(row.count_route);
        r["equal"] = row.equal;
        rows.push_back(r);
    }
    j["cross_check"] = rows;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_shuffle_mult(const std::string& f, int fvars, const std::string& g, int gvars) {
    SymPoly a = parse_sympoly(f, fvars), b = parse_sympoly(g, gvars);
    std::cout << shuffle_product(a, b).str() << "\n";
    return 0;
}

int run_shuffle_wheel(const std::string& f, int vars) {
    WheelReport rep = wheel_check(parse_sympoly(f, vars));
    ordered_json j;
    j["ok"] = rep.ok;
    j["vacuous"] = rep.vacuous;
    std::cout << j.dump() << "\n";
    return 0;
}

int run_shuffle_member(const std::string& f, int vars, int kmax, int cap) {
    MembershipResult res =
        membership_in_generated(parse_sympoly(f, vars), d_generator_family(kmax), cap);
    ordered_json j;
    j["status"] = res.status == MembershipStatus::Certified
                      ? "certified"
                      : res.status == MembershipStatus::NotInSpan ? "not-in-span" : "undetermined";
    if (!res.note.empty()) j["note"] = res.note;
    ordered_json cert = ordered_json::array();
    for (const MembershipTerm& t : res.certificate) {
        ordered_json row;
        row["generators"] = t.gens;
        row["coeff"] = t.coeff.str();
        cert.push_back(row);
    }
    j["certificate"] = cert;
    std::cout << j.dump() << "\n";
    return 0;
}

RepType rep_type_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    RepType tau;
    for (const auto& part : j.at("parts")) {
        RepTypePart p;
        p.mult = part.at("mult").get<std::int64_t>();
        p.dim = part.at("dim").get<DimVector>();
        p.framed = part.value("framed", false);
        tau.parts.push_back(std::move(p));
    }
    return tau;
}

int run_strata_scan(const std::string& gs, int v1max, int lmax, int wmax) {
    std::vector<std::int64_t> parsed = parse_i64s(gs);
    HeckeScanReport rep =
        hecke_stratum_scan(std::vector<int>(parsed.begin(), parsed.end()), v1max, lmax, wmax);
    std::cout << "status,detail\n";
    for (const std::string& line : rep.excluded_log) std::cout << "excluded," << line << "\n";
    for (const std::string& line : rep.violations) std::cout << "violation," << line << "\n";
    std::cout << (rep.ok() ? "ok," : "failed,") << rep.checked << " grid points\n";
    return rep.ok() ? 0 : 1;
}

int run_check(const std::string& suite) {
    AcceptanceReport rep = run_acceptance(suite == "quick");
    for (const CriterionResult& r : rep.results)
        std::printf("criterion %2d %-4s %-40s %6.2fs%s%s\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  -- ", r.detail.c_str());
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quiver counting and series toolkit"};
    app.require_subcommand(1);

    std::string quiver_path, dim, kind = "m", primes = "2,3,5", vmax, suite = "full";
    std::string fexpr, gexpr, gs = "2,3", tau_json;
    std::int64_t prime = 2;
    int threads = 0, tau = 0, flat = 0, order = 3, window = 6;
    int fvars = -1, gvars = -1, kmax = 2, cap = 2;
    int v1max = 4, lmax = 3, wmax = 3;
    bool serial = false, naive = false;

    auto* count = app.add_subcommand("count", "count points of one variety at one prime");
    count->add_option("--quiver", quiver_path)->required();
    count->add_option("--dim", dim)->required();
    count->add_option("--prime", prime)->required();
    count->add_option("--kind", kind, "rep | m | lambda0 | lambda1");
    count->add_option("--threads", threads);
    count->add_flag("--serial", serial);
    count->add_flag("--naive-m", naive);

    auto* kac = app.add_subcommand("kac", "extract count polynomials from several primes");
    kac->add_option("--quiver", quiver_path)->required();
    kac->add_option("--vmax", vmax)->required();
    kac->add_option("--primes", primes);
    kac->add_option("--kind", kind, "full | nilpotent0 | nilpotent1")->required();
    kac->add_option("--threads", threads);

    auto* coha = app.add_subcommand("coha", "graded-dimension series with a count cross-check");
    coha->add_option("--quiver", quiver_path)->required();
    coha->add_option("--vmax", vmax)->required();
    coha->add_option("--tau", tau);
    coha->add_option("--flat", flat);
    coha->add_option("--order", order);
    coha->add_option("--window", window);
    coha->add_option("--primes", primes);
    coha->add_option("--threads", threads);

    auto* shuffle = app.add_subcommand("shuffle", "kernel-twisted symmetric polynomial algebra");
    shuffle->require_subcommand(1);
    auto* mult = shuffle->add_subcommand("mult", "product of two symmetric polynomials");
    mult->add_option("--f", fexpr)->required();
    mult->add_option("--fvars", fvars);
    mult->add_option("--g", gexpr)->required();
    mult->add_option("--gvars", gvars);
    auto* wheel = shuffle->add_subcommand("wheel", "wheel-condition test");
    wheel->add_option("--f", fexpr)->required();
    wheel->add_option("--vars", fvars);
    auto* member = shuffle->add_subcommand("member", "membership in the generated subalgebra");
    member->add_option("--f", fexpr)->required();
    member->add_option("--vars", fvars);
    member->add_option("--kmax", kmax);
    member->add_option("--cap", cap);

    auto* strata = app.add_subcommand("strata", "stratum dimension formulas");
    strata->require_subcommand(1);
    auto* m0dim = strata->add_subcommand("m0dim", "semisimple stratum dimension");
    m0dim->add_option("--quiver", quiver_path)->required();
    m0dim->add_option("--w", dim)->required();
    m0dim->add_option("--type", tau_json, "JSON {\"parts\":[{\"mult\",\"dim\",\"framed\"}]}")
        ->required();
    auto* scan = strata->add_subcommand("scan", "grid scan of the two-step dimension bound (CSV)");
    scan->add_option("--gs", gs);
    scan->add_option("--v1max", v1max);
    scan->add_option("--lmax", lmax);
    scan->add_option("--wmax", wmax);

    auto* check = app.add_subcommand("check", "run the verification suite");
    check->add_option("--suite", suite, "quick | full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (count->parsed()) return run_count(quiver_path, dim, prime, kind, threads, serial, naive);
        if (kac->parsed()) return run_kac(quiver_path, vmax, primes, kind, threads);
        if (coha->parsed())
            return run_coha(quiver_path, vmax, tau, flat, order, window, primes, threads);
        if (shuffle->parsed()) {
            if (mult->parsed()) return run_shuffle_mult(fexpr, fvars, gexpr, gvars);
            if (wheel->parsed()) return run_shuffle_wheel(fexpr, fvars);
            if (member->parsed()) return run_shuffle_member(fexpr, fvars, kmax, cap);
        }
        if (strata->parsed()) {
            if (m0dim->parsed()) {
                Quiver q = load_quiver(quiver_path);
                std::cout << dim_M0_stratum(q, parse_dims(dim), rep_type_from_json(tau_json))
                          << "\n";
                return 0;
            }
            if (scan->parsed()) return run_strata_scan(gs, v1max, lmax, wmax);
        }
        if (check->parsed()) return run_check(suite);
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << " (required " << e.required
                  << "; raise QCOHA_BUDGET to allow it)\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
