#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gallai/cnf.hpp"
#include "gallai/json_io.hpp"
#include "gallai/naive.hpp"
#include "gallai/search.hpp"

using namespace gallai;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kMaxVertices = 4096;  // CLI cap, not a library limit

std::string read_payload(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_payload(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

ColouringTemplate load_template(const std::string& path) {
    return template_from_json(json::parse(read_payload(path)));
}

json bipartition_report(const Graph& g) {
    BipartitionOutcome out = bipartition_of(g);
    json j;
    j["bipartite"] = out.bipartition.has_value();
    if (out.bipartition) {
        j["side_a"] = out.bipartition->side_a;
        j["side_b"] = out.bipartition->side_b;
    } else {
        j["odd_closed_walk"] = out.odd_closed_walk;
    }
    return j;
}

int run_check(const std::string& file, int r_flag) {
    ColouringTemplate t = load_template(file);
    json report;
    report["n"] = t.vertex_count();
    report["profile"] = profile_to_json(degree_profile(t));

    auto witness = find_rainbow_triangle(t);
    report["gallai"] = !witness.has_value();
    report["witness"] = witness ? witness_to_json(*witness) : json(nullptr);

    if (t.vertex_count() > 0) {
        auto cut = find_nontrivial_one_cut(t);
        report["one_cut"] =
            cut ? json{{"side_a", cut->side_a}, {"side_b", cut->side_b}} : json(nullptr);
    } else {
        report["one_cut"] = json(nullptr);
    }

    json bip = json::object();
    for (int c = 1; c <= 3; ++c) bip[std::to_string(c)] = bipartition_report(colour_graph(t, c));
    report["bipartite"] = bip;

    // G3 classified against G2's bipartition when one exists
    BipartitionOutcome g2bip = bipartition_of(colour_graph(t, 2));
    report["g3_classification"] =
        g2bip.bipartition ? json(to_string(classify_g3(t, *g2bip.bipartition))) : json(nullptr);

    bool counterexample = false;
    if (r_flag > 0) {
        TheoremVerdict verdict = check_theorem(t, r_flag);
        counterexample = verdict == TheoremVerdict::Counterexample;
        json dich = json::array();
        for (const auto& e : intersection_dichotomy_holds(t, r_flag))
            dich.push_back(json{{"colours", std::to_string(e.colour_i) + std::to_string(e.colour_j)},
                                {"empty", e.intersection_empty},
                                {"min_positive_degree",
                                 e.min_positive_degree ? json(*e.min_positive_degree) : json(nullptr)},
                                {"holds", e.holds}});
        report["theorem"] = json{
            {"verdict", to_string(verdict)},
            {"thresholds",
             thresholds_to_json(thresholds_for(r_flag, std::max(1, t.vertex_count())))},
            {"intersection_dichotomy", dich}};
    } else {
        report["theorem"] = json(nullptr);
    }

    std::cout << report.dump(2) << "\n";
    std::cerr << "check: n=" << t.vertex_count() << " gallai=" << (witness ? "no" : "yes");
    if (r_flag > 0) std::cerr << " verdict=" << report["theorem"]["verdict"].get<std::string>();
    std::cerr << "\n";
    return counterexample ? kExitVerificationFailure : kExitOk;
}

int run_search_cmd(const SearchProblem& p) {
    SearchOutcome o = p.mode == SearchMode::Maximize ? maximize_sum(p) : find_counterexample(p);
    if (o.best_template && !revalidate(o)) {
        std::cerr << "search: outcome failed revalidation\n";
        return kExitVerificationFailure;
    }
    std::cout << outcome_to_json(o).dump(2) << "\n";
    std::cerr << "search: status=" << to_string(o.status) << " nodes=" << o.stats.nodes
              << " elapsed=" << o.stats.elapsed_seconds << "s";
    if (o.best_value) std::cerr << " best=" << *o.best_value;
    std::cerr << "\n";
    if (o.status == SearchStatus::FoundCounterexample) return kExitVerificationFailure;
    if (o.status == SearchStatus::BudgetExceeded) return kExitBudget;
    return kExitOk;
}

int run_table(int n_max, int r_max, long long budget_nodes, int threads) {
    json cells = json::array();
    bool any_budget = false, any_violation = false;
    std::cerr << "  n  r  s*      bound  construction  status\n";
    for (int r = 1; r <= r_max; ++r) {
        for (int n = 2; n <= n_max; ++n) {
            SearchProblem p;
            p.n = n;
            p.r = r;
            p.threads = threads;
            p.budget.max_nodes = budget_nodes;
            SearchOutcome o = maximize_sum(p);
            Thresholds th = thresholds_for(r, n);
            int bound = th.sum_max;
            int construction = 2 * (n / (r + 1) - 1);
            bool completed = o.status == SearchStatus::Optimal;
            json cell;
            cell["n"] = n;
            cell["r"] = r;
            cell["status"] = to_string(o.status);
            cell["s_star"] = o.best_value ? json(*o.best_value) : json(nullptr);
            cell["theorem_bound"] = bound;
            cell["construction_value"] = construction;
            json bracket = json(nullptr);
            if (completed && o.best_value) {
                bool ok = *o.best_value <= bound;
                if (n >= 2 * (r + 1)) ok = ok && *o.best_value >= construction;
                bracket = ok;
                if (!ok) any_violation = true;
            }
            cell["bracket_ok"] = bracket;
            cells.push_back(cell);
            if (o.status == SearchStatus::BudgetExceeded) any_budget = true;
            if (o.status == SearchStatus::FoundCounterexample) any_violation = true;
            std::cerr << std::setw(3) << n << std::setw(3) << r << "  ";
            if (o.best_value)
                std::cerr << std::setw(2) << *o.best_value;
            else
                std::cerr << " -";
            std::cerr << "      " << std::setw(5) << bound << std::setw(14) << construction << "  "
                      << to_string(o.status) << "\n";
        }
    }
    std::cout << json{{"cells", cells}}.dump(2) << "\n";
    if (any_violation) return kExitVerificationFailure;
    if (any_budget) return kExitBudget;
    return kExitOk;
}

int run_verify_constructions(int r_max, int n_max) {
    long long checked = 0, failures = 0;
    json failures_json = json::array();
    for (int r = 1; r <= r_max; ++r) {
        for (int n = r; n <= n_max; ++n) {
            ColouringTemplate t = turan_template(r, n);
            DegreeProfile p = degree_profile(t);
            bool ok = p.colour[0].min_degree == n - (n + r - 1) / r &&
                      p.colour[1].min_degree == n / r - 1 &&
                      p.colour[2].min_degree == n / r - 1 &&
                      !find_rainbow_triangle_naive(t).has_value();
            ++checked;
            if (!ok) {
                ++failures;
                failures_json.push_back(json{{"kind", "turan"}, {"r", r}, {"n", n}});
            }
        }
    }
    for (int r = 1; r <= std::min(r_max, 6); ++r) {
        for (const auto& spec : enumerate_patterns(r)) {
            for (int n : {r, 2 * r, 3 * r, 5 * r + 1}) {
                if (n > n_max) continue;
                ColouringTemplate t = pattern_template(spec, n);
                ConstructionReport rep = construction_report(t, r, n);
                ++checked;
                if (!rep.gallai || !rep.bounds_ok()) {
                    ++failures;
                    failures_json.push_back(json{{"kind", "pattern"},
                                                 {"r", r},
                                                 {"n", n},
                                                 {"spec", pattern_to_json(spec)}});
                }
            }
        }
    }
    std::cout << json{{"checked", checked}, {"failures", failures_json}}.dump(2) << "\n";
    std::cerr << "verify-constructions: " << checked << " checked, " << failures << " failures\n";
    return failures == 0 ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification and search engine for 3-colouring templates"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "generate a template");
    construct->require_subcommand(1);
    int c_r = 0, c_n = 0;
    std::string c_out = "-";
    auto* turan = construct->add_subcommand("turan", "Turán-style template T(r,n)");
    turan->add_option("--r", c_r, "number of parts")->required();
    turan->add_option("--n", c_n, "number of vertices")->required()->check(CLI::Range(0, kMaxVertices));
    turan->add_option("-o,--output", c_out, "output file (default stdout)");

    std::string p_spec;
    auto* pattern = construct->add_subcommand("pattern", "block construction from a pattern spec");
    pattern->add_option("--spec", p_spec, "pattern spec JSON file ('-' for stdin)")->required();
    pattern->add_option("--n", c_n, "number of vertices")->required()->check(CLI::Range(0, kMaxVertices));
    pattern->add_option("-o,--output", c_out, "output file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "full structural report for a template");
    std::string check_file;
    int check_r = 0;
    check->add_option("file", check_file, "template JSON ('-' for stdin)")->required();
    check->add_option("--r", check_r, "family parameter for the theorem verdict");

    // search
    auto* search = app.add_subcommand("search", "branch-and-bound over Gallai templates");
    SearchProblem sp;
    std::string mode = "max";
    bool no_symmetry = false, no_degree = false, no_prop1 = false, assume_lemmas = false;
    search->add_option("--n", sp.n, "vertices")->required()->check(CLI::Range(1, kMaxVertices));
    search->add_option("--r", sp.r, "family parameter")->required()->check(CLI::Range(1, kMaxVertices));
    search->add_option("--mode", mode, "max | counterexample")
        ->check(CLI::IsMember({"max", "counterexample"}));
    search->add_flag("--assume-lemmas", assume_lemmas, "heuristic lemma pruning (counterexample only)");
    search->add_flag("--no-symmetry", no_symmetry, "disable symmetry breaking");
    search->add_flag("--no-degree-bounds", no_degree, "disable degree-bound fathoming");
    search->add_flag("--no-prop1", no_prop1, "disable trivial-bound propagation");
    search->add_option("--budget-nodes", sp.budget.max_nodes, "node budget (unlimited if omitted)");
    search->add_option("--budget-ms", sp.budget.wall_ms, "wall-clock budget in ms");
    search->add_option("--threads", sp.threads, "worker threads for top-level branches")
        ->check(CLI::Range(1, 64));

    // anneal
    auto* ann = app.add_subcommand("anneal", "simulated-annealing lower bounds");
    int a_n = 0, a_r = 0;
    std::uint64_t a_seed = 0;
    long long a_iters = 0;
    ann->add_option("--n", a_n, "vertices")->required()->check(CLI::Range(1, kMaxVertices));
    ann->add_option("--r", a_r, "family parameter")->required();
    ann->add_option("--seed", a_seed, "RNG seed")->required();
    ann->add_option("--iters", a_iters, "iterations")->required();

    // cnf
    auto* cnf = app.add_subcommand("cnf", "export DIMACS certification files");
    int q_n = 0, q_r = 0, q_target = 0;
    std::string cnf_dir;
    cnf->add_option("--n", q_n, "vertices")->required()->check(CLI::Range(1, kMaxVertices));
    cnf->add_option("--r", q_r, "family parameter")->required();
    cnf->add_option("--target-sum", q_target, "target value of the degree sum")->required();
    cnf->add_option("-o,--output", cnf_dir, "output directory")->required();

    // verify-constructions
    auto* verify = app.add_subcommand("verify-constructions", "construction acceptance sweep");
    int v_rmax = 6, v_nmax = 40;
    verify->add_option("--r-max", v_rmax, "largest r");
    verify->add_option("--n-max", v_nmax, "largest n");

    // table
    auto* table = app.add_subcommand("table", "tabulate s*(n,r) against the bounds");
    int t_nmax = 6, t_rmax = 3, t_threads = 1;
    long long t_budget = -1;
    table->add_option("--n-max", t_nmax, "largest n")->check(CLI::Range(2, kMaxVertices));
    table->add_option("--r-max", t_rmax, "largest r");
    table->add_option("--budget-nodes", t_budget, "node budget per cell");
    table->add_option("--threads", t_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return kExitUsage;
    }

    try {
        if (turan->parsed()) {
            write_payload(c_out, template_to_string(turan_template(c_r, c_n)));
            return kExitOk;
        }
        if (pattern->parsed()) {
            PatternSpec spec = pattern_from_json(json::parse(read_payload(p_spec)));
            auto errors = validate_pattern(spec);
            if (!errors.empty()) {
                std::cout << json{{"errors", errors}}.dump(2) << "\n";
                std::cerr << "construct pattern: invalid spec (" << errors.size() << " errors)\n";
                return kExitVerificationFailure;
            }
            write_payload(c_out, template_to_string(pattern_template(spec, c_n)));
            return kExitOk;
        }
        if (check->parsed()) return run_check(check_file, check_r);
        if (search->parsed()) {
            sp.mode = mode == "max" ? SearchMode::Maximize : SearchMode::Counterexample;
            sp.prune.use_symmetry = !no_symmetry;
            sp.prune.use_degree_bounds = !no_degree;
            sp.prune.use_prop1 = !no_prop1;
            sp.prune.assume_lemmas = assume_lemmas;
            return run_search_cmd(sp);
        }
        if (ann->parsed()) {
            SearchOutcome o = anneal(a_n, a_r, a_seed, a_iters);
            if (o.best_template && !revalidate(o)) {
                std::cerr << "anneal: outcome failed revalidation\n";
                return kExitVerificationFailure;
            }
            std::cout << outcome_to_json(o).dump(2) << "\n";
            std::cerr << "anneal: best=" << (o.best_value ? std::to_string(*o.best_value) : "-")
                      << "\n";
            return kExitOk;
        }
        if (cnf->parsed()) {
            auto splits = encode_cnf(q_n, q_r, q_target);
            std::filesystem::create_directories(cnf_dir);
            json files = json::array();
            for (const auto& split : splits) {
                std::string name = "n" + std::to_string(q_n) + "_r" + std::to_string(q_r) +
                                   "_s2_" + std::to_string(split.s2) + "_s3_" +
                                   std::to_string(split.s3) + ".cnf";
                std::ofstream out(std::filesystem::path(cnf_dir) / name);
                if (!out) throw std::runtime_error("cannot write into " + cnf_dir);
                out << split.dimacs();
                files.push_back(json{{"file", name},
                                     {"s2", split.s2},
                                     {"s3", split.s3},
                                     {"vars", split.num_vars},
                                     {"clauses", split.clauses.size()}});
            }
            std::cout << json{{"files", files}}.dump(2) << "\n";
            std::cerr << "cnf: wrote " << splits.size() << " split file(s) to " << cnf_dir << "\n";
            return kExitOk;
        }
        if (verify->parsed()) return run_verify_constructions(v_rmax, v_nmax);
        if (table->parsed()) return run_table(t_nmax, t_rmax, t_budget, t_threads);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
