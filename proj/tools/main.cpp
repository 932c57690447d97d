// branchwork command line: batch subcommands over the word calculus. Every
// result is emitted to stdout as versioned JSON (or CSV for tables), human
// chatter goes to stderr, and the exit code is the machine-readable summary:
// 0 ok, 1 a verification check was falsified, 2 malformed input or usage,
// 3 a resource budget was exhausted.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <vector>

#include <CLI11.hpp>

#include "branchwork/ball.hpp"
#include "branchwork/engine.hpp"
#include "branchwork/group.hpp"
#include "branchwork/json_io.hpp"
#include "branchwork/order.hpp"
#include "branchwork/parallel.hpp"
#include "branchwork/verify.hpp"
#include "branchwork/word.hpp"

namespace bw = branchwork;
using bw::io::json;

namespace {

// Everything a subcommand might need, bound to flags once and reused. The
// BRANCHWORK_* environment variables fill any flag the command line leaves
// unset, so batch jobs can pin budgets globally.
struct RunConfig {
    std::vector<std::string> spec_tokens;
    unsigned level = 0;
    std::string gens = "E";
    unsigned radius = 0;
    unsigned n_max = 0;
    std::string word_text;
    std::string vertex_text;
    std::string format; // empty = subcommand default
    unsigned threads = 1;
    unsigned seed = 1;
    bw::Budgets budgets;
};

json parse_json_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw bw::DomainError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

bool file_exists(const std::string& path) {
    struct stat st {};
    return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode);
}

// --spec accepts three spellings:
//   inline JSON            '{"family":"Kr","r":5}'
//   a config file path     specs/k5.json (same JSON inside)
//   shorthand tokens       Kr r=5   |   G f0=3 base=2
// The shorthand exists so common invocations do not need shell quoting.
bw::GroupSpec parse_spec(const std::vector<std::string>& raw) {
    if (raw.empty())
        throw bw::DomainError("--spec is required");
    if (!raw.front().empty() && raw.front().front() == '{') {
        std::string joined;
        for (const auto& t : raw)
            joined += t;
        return bw::io::spec_from_json(parse_json_text(joined, "--spec"));
    }
    if (raw.size() == 1 && file_exists(raw.front())) {
        std::ifstream in(raw.front());
        std::stringstream buf;
        buf << in.rdbuf();
        return bw::io::spec_from_json(parse_json_text(buf.str(), raw.front().c_str()));
    }
    // shorthand tokens may arrive separately (`--spec Kr r=5`) or shell-quoted
    // as one argument (`--spec 'Kr r=5'`)
    std::vector<std::string> tokens;
    for (const auto& t : raw) {
        std::istringstream split(t);
        std::string piece;
        while (split >> piece)
            tokens.push_back(piece);
    }
    if (tokens.empty())
        throw bw::DomainError("--spec is required");
    const std::string& head = tokens.front();
    if (head != "Kr" && head != "G")
        throw bw::DomainError("--spec shorthand must start with Kr or G, got '" + head + "'");
    std::optional<unsigned> r, f0, base;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw bw::DomainError("--spec shorthand expects key=value, got '" + t + "'");
        std::string key = t.substr(0, eq);
        unsigned value = 0;
        try {
            value = static_cast<unsigned>(std::stoul(t.substr(eq + 1)));
        } catch (const std::exception&) {
            throw bw::DomainError("--spec shorthand: bad number in '" + t + "'");
        }
        if (key == "r")
            r = value;
        else if (key == "f0")
            f0 = value;
        else if (key == "base")
            base = value;
        else
            throw bw::DomainError("--spec shorthand: unknown key '" + key + "'");
    }
    if (head == "Kr") {
        if (!r || f0 || base)
            throw bw::DomainError("--spec Kr takes exactly r=<rank>");
        return bw::GroupSpec::kr(*r);
    }
    if (!f0)
        throw bw::DomainError("--spec G needs f0=<rank seed>");
    return bw::GroupSpec::growing(*f0, base.value_or(0));
}

bw::GenKind parse_gens(const std::string& g) {
    if (g == "E")
        return bw::GenKind::EStyle;
    if (g == "S")
        return bw::GenKind::SStyle;
    throw bw::DomainError("--gens must be E or S, got '" + g + "'");
}

std::string output_format(const RunConfig& cfg, const char* fallback) {
    std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "json" && f != "csv")
        throw bw::DomainError("--format must be json or csv, got '" + f + "'");
    return f;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// Orders are powers of two; small ones are emitted as JSON numbers to match
// how people read them, anything past 2^62 as a decimal string.
json order_value(unsigned exponent) {
    if (exponent <= 62)
        return json(static_cast<std::uint64_t>(1) << exponent);
    bw::BigInt v = bw::BigInt(1) << exponent;
    return json(v.str());
}

bw::Word parse_word(const bw::Engine& eng, const RunConfig& cfg) {
    if (cfg.word_text.empty())
        throw bw::DomainError("--word is required");
    bw::Word w = bw::io::word_from_json(parse_json_text(cfg.word_text, "--word"), cfg.budgets);
    // re-normalize under this group's ranks so equal inputs emit equal bytes
    return eng.make(w.level, w.letters);
}

int cmd_section(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::Word w = parse_word(eng, cfg);
    if (cfg.vertex_text.empty())
        throw bw::DomainError("--vertex is required");
    bw::VertexPath v =
        bw::io::vertex_from_json(parse_json_text(cfg.vertex_text, "--vertex"), cfg.budgets);
    bw::Word s = eng.section(w, v);
    emit(json{{"format", 1}, {"section", bw::io::to_json(s)}});
    return 0;
}

int cmd_act(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::Word w = parse_word(eng, cfg);
    if (cfg.vertex_text.empty())
        throw bw::DomainError("--vertex is required");
    bw::VertexPath v =
        bw::io::vertex_from_json(parse_json_text(cfg.vertex_text, "--vertex"), cfg.budgets);
    bw::VertexPath moved = eng.act(w, v);
    emit(json{{"format", 1}, {"vertex", bw::io::to_json(moved)}});
    return 0;
}

int cmd_order(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::Word w = parse_word(eng, cfg);
    bw::OrderResult r = bw::order(eng, w);
    if (!r.finite()) {
        // not an answer, a budget wall: the exponent only bounds the order
        // from below via the depth-truncated action
        emit(json{{"format", 1},
                  {"error",
                   {{"kind", "budget"},
                    {"message", "order recursion exhausted its depth budget"},
                    {"truncated_exponent", r.exponent},
                    {"truncation_depth", cfg.budgets.order_partial_depth}}}});
        return 3;
    }
    emit(json{{"format", 1}, {"order", order_value(r.exponent)}, {"exponent", r.exponent}});
    return 0;
}

int cmd_ball(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::GeneratingSet gens =
        bw::make_generators(eng.group(), cfg.level, parse_gens(cfg.gens), cfg.budgets);
    bw::Ball ball = bw::ball_enumerate(eng, gens, cfg.radius, cfg.budgets.fingerprint_depth,
                                       cfg.threads);
    if (output_format(cfg, "json") == "csv") {
        std::cout << "# format=1\n"
                  << "n,ball_size\n";
        for (std::size_t n = 0; n < ball.size_at.size(); ++n)
            std::cout << n << "," << ball.size_at[n] << "\n";
        return 0;
    }
    json elements = json::array();
    for (const auto& el : ball.elements)
        elements.push_back(json{{"length", el.length}, {"word", bw::io::to_json(el.word)}});
    emit(json{{"format", 1},
              {"gens", cfg.gens},
              {"level", cfg.level},
              {"radius", cfg.radius},
              {"size_at", ball.size_at},
              {"elements", elements}});
    return 0;
}

int cmd_period_growth(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::GeneratingSet gens =
        bw::make_generators(eng.group(), cfg.level, parse_gens(cfg.gens), cfg.budgets);
    bw::OrderCache cache;
    bw::PeriodTable table = bw::period_growth(eng, gens, cfg.n_max,
                                              cfg.budgets.fingerprint_depth, cfg.threads, &cache);
    if (output_format(cfg, "csv") == "csv") {
        std::cout << bw::io::period_table_csv(table);
        return 0;
    }
    json rows = json::array();
    for (const auto& row : table.rows)
        rows.push_back(json{{"n", row.n},
                            {"ball_size", row.ball_size},
                            {"pi_exponent", row.pi_exponent},
                            {"pi", order_value(row.pi_exponent)},
                            {"witness", bw::io::to_json(row.witness)}});
    emit(json{{"format", 1}, {"gens", cfg.gens}, {"level", cfg.level}, {"rows", rows}});
    return 0;
}

int cmd_min_length(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::GeneratingSet gens =
        bw::make_generators(eng.group(), cfg.level, parse_gens(cfg.gens), cfg.budgets);
    bw::Word w = parse_word(eng, cfg);
    if (w.level != cfg.level)
        throw bw::DomainError("--word level does not match --level");
    std::optional<unsigned> len = bw::min_length(eng, gens, w, cfg.radius,
                                                 cfg.budgets.fingerprint_depth, cfg.threads);
    json out{{"format", 1}, {"found", len.has_value()}, {"radius", cfg.radius}};
    if (len)
        out["length"] = *len;
    emit(out);
    return 0;
}

int cmd_chi(const RunConfig& cfg) {
    bw::Engine eng(parse_spec(cfg.spec_tokens), cfg.budgets);
    bw::GeneratingSet gens =
        bw::make_generators(eng.group(), cfg.level, parse_gens(cfg.gens), cfg.budgets);
    if (cfg.word_text.empty())
        throw bw::DomainError("--word is required (JSON array of signed 1-based letters)");
    json jw = parse_json_text(cfg.word_text, "--word");
    if (!jw.is_array())
        throw bw::DomainError("--word for chi must be a JSON array of integers");
    std::vector<int> abstract;
    for (const auto& x : jw) {
        if (!x.is_number_integer())
            throw bw::DomainError("--word for chi must contain only integers");
        abstract.push_back(x.get<int>());
    }
    bw::ChiResult res = bw::chi_complexity(eng, gens, abstract, cfg.radius, cfg.threads);
    json out{{"format", 1},
             {"found", res.total_length.has_value()},
             {"radius", cfg.radius},
             {"tuples_scanned", res.tuples_scanned}};
    if (res.total_length) {
        out["total_length"] = *res.total_length;
        json witness = json::array();
        for (const auto& w : res.witness)
            witness.push_back(bw::io::to_json(w));
        out["witness"] = witness;
    }
    emit(out);
    return 0;
}

// what `verify all` runs, in order; every entry is desk scale
std::vector<std::pair<std::string, std::function<bw::CheckReport(const RunConfig&, unsigned)>>>
suite() {
    return {
        {"check_two_layer_reduction",
         [](const RunConfig& c, unsigned t) {
             return bw::check_two_layer_reduction(5, 5, t, c.budgets);
         }},
        {"check_growing_reduction",
         [](const RunConfig& c, unsigned t) {
             return bw::check_growing_reduction(3, 3, t, c.budgets);
         }},
        {"check_2667",
         [](const RunConfig& c, unsigned) { return bw::check_2667(c.seed, c.budgets); }},
        {"check_tetration",
         [](const RunConfig& c, unsigned) { return bw::check_tetration(c.budgets); }},
        {"check_commutator_sections",
         [](const RunConfig& c, unsigned t) {
             return bw::check_commutator_sections(6, t, c.budgets);
         }},
        {"check_weakly_branch_generators(K_6)",
         [](const RunConfig& c, unsigned) {
             return bw::check_weakly_branch_generators(bw::GroupSpec::kr(6), c.budgets);
         }},
        {"check_weakly_branch_generators(G_3)",
         [](const RunConfig& c, unsigned) {
             return bw::check_weakly_branch_generators(bw::GroupSpec::growing(3), c.budgets);
         }},
        {"check_weakly_branch_generators(G_127)",
         [](const RunConfig& c, unsigned) {
             return bw::check_weakly_branch_generators(bw::GroupSpec::growing(127), c.budgets);
         }},
        {"check_transitivity(K_3)",
         [](const RunConfig& c, unsigned) {
             return bw::check_transitivity(bw::GroupSpec::kr(3), 2, c.budgets);
         }},
        {"check_transitivity(G_3)",
         [](const RunConfig& c, unsigned) {
             return bw::check_transitivity(bw::GroupSpec::growing(3), 2, c.budgets);
         }},
    };
}

// Reports print with elapsed zeroed so identical runs emit identical bytes;
// wall time goes to stderr where it cannot break diffs.
json report_canonical(bw::CheckReport r, const std::string& label) {
    std::fprintf(stderr, "%s: %s in %.2fs\n", label.c_str(), r.passed() ? "pass" : "FALSIFIED",
                 r.elapsed_seconds);
    r.elapsed_seconds = 0.0;
    return bw::check_report_json(r);
}

struct VerifyArgs {
    std::string check;
    unsigned r = 0; // 0 = use the check's default
    unsigned radius = 0;
    unsigned f0 = 0;
    unsigned max_layer = 2;
};

int cmd_verify(const RunConfig& cfg, const VerifyArgs& va) {
    if (va.check == "all") {
        auto checks = suite();
        // split the thread budget across checks, one thread inside each, so
        // the merged report order stays the list order
        std::vector<bw::CheckReport> reports =
            bw::parallel_map<bw::CheckReport>(checks.size(), cfg.threads,
                                              [&](std::size_t i) {
                                                  return checks[i].second(cfg, 1);
                                              },
                                              1);
        json out = json::array();
        bool all_passed = true;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            out.push_back(report_canonical(reports[i], checks[i].first));
            all_passed = all_passed && reports[i].passed();
        }
        emit(json{{"format", 1}, {"reports", out}});
        return all_passed ? 0 : 1;
    }

    bw::CheckReport report;
    if (va.check == "check_two_layer_reduction") {
        report = bw::check_two_layer_reduction(va.r ? va.r : 5, va.radius ? va.radius : 5,
                                               cfg.threads, cfg.budgets);
    } else if (va.check == "check_growing_reduction") {
        report = bw::check_growing_reduction(va.f0 ? va.f0 : 3, va.radius ? va.radius : 3,
                                             cfg.threads, cfg.budgets);
    } else if (va.check == "check_2667") {
        report = bw::check_2667(cfg.seed, cfg.budgets);
    } else if (va.check == "check_tetration") {
        report = bw::check_tetration(cfg.budgets);
    } else if (va.check == "check_commutator_sections") {
        report = bw::check_commutator_sections(va.r ? va.r : 6, cfg.threads, cfg.budgets);
    } else if (va.check == "check_weakly_branch_generators") {
        report = bw::check_weakly_branch_generators(parse_spec(cfg.spec_tokens), cfg.budgets);
    } else if (va.check == "check_transitivity") {
        report = bw::check_transitivity(parse_spec(cfg.spec_tokens), va.max_layer, cfg.budgets);
    } else {
        throw bw::DomainError("unknown check '" + va.check +
                              "'; see `branchwork verify --help` for the list");
    }
    emit(report_canonical(report, va.check));
    return report.passed() ? 0 : 1;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool wants_spec = true) {
    if (wants_spec)
        cmd->add_option("--spec", cfg.spec_tokens,
                        "group: inline JSON, a JSON file path, or shorthand like `Kr r=5`")
            ->envname("BRANCHWORK_SPEC")
            ->expected(1, 3);
    cmd->add_option("--threads", cfg.threads, "worker threads")
        ->envname("BRANCHWORK_THREADS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "seed for seeded sweeps")->envname("BRANCHWORK_SEED");
    cmd->add_option("--format", cfg.format, "output format: json or csv")
        ->envname("BRANCHWORK_FORMAT");
    cmd->add_option("--fingerprint-depth", cfg.budgets.fingerprint_depth,
                    "portrait depth used to bucket ball candidates")
        ->envname("BRANCHWORK_FINGERPRINT_DEPTH")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-support", cfg.budgets.support, "max stored indices per vector")
        ->envname("BRANCHWORK_BUDGET_SUPPORT")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-vertex-expansion", cfg.budgets.vertex_expansion,
                    "max explicit active-vertex fanout")
        ->envname("BRANCHWORK_BUDGET_VERTEX_EXPANSION")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-recursion-depth", cfg.budgets.recursion_depth,
                    "word-problem recursion depth")
        ->envname("BRANCHWORK_BUDGET_RECURSION_DEPTH")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-ball-size", cfg.budgets.ball_size, "max elements per ball")
        ->envname("BRANCHWORK_BUDGET_BALL_SIZE")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-tower-bits", cfg.budgets.tower_bits,
                    "max bit size of an exact big integer")
        ->envname("BRANCHWORK_BUDGET_TOWER_BITS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-order-partial-depth", cfg.budgets.order_partial_depth,
                    "truncation depth reported when order() hits its budget")
        ->envname("BRANCHWORK_BUDGET_ORDER_PARTIAL_DEPTH")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact word calculus for two families of tree automorphism groups"};
    app.require_subcommand(1);

    RunConfig cfg;
    VerifyArgs va;

    CLI::App* section = app.add_subcommand("section", "section of a word at a vertex");
    add_common_flags(section, cfg);
    section->add_option("--word", cfg.word_text, "word JSON")->required();
    section->add_option("--vertex", cfg.vertex_text, "vertex path JSON")->required();

    CLI::App* act = app.add_subcommand("act", "image of a vertex under a word");
    add_common_flags(act, cfg);
    act->add_option("--word", cfg.word_text, "word JSON")->required();
    act->add_option("--vertex", cfg.vertex_text, "vertex path JSON")->required();

    CLI::App* order = app.add_subcommand("order", "order of a word (always a power of two)");
    add_common_flags(order, cfg);
    order->add_option("--word", cfg.word_text, "word JSON")->required();

    CLI::App* ball = app.add_subcommand("ball", "breadth-first ball in a generating set");
    add_common_flags(ball, cfg);
    ball->add_option("--level", cfg.level, "tree level the generators live at")
        ->envname("BRANCHWORK_LEVEL");
    ball->add_option("--gens", cfg.gens, "generating set style: E or S")
        ->envname("BRANCHWORK_GENS");
    ball->add_option("--radius", cfg.radius, "ball radius")
        ->envname("BRANCHWORK_RADIUS")
        ->required();

    CLI::App* period =
        app.add_subcommand("period-growth", "max element order per ball radius, CSV by default");
    add_common_flags(period, cfg);
    period->add_option("--level", cfg.level, "tree level the generators live at")
        ->envname("BRANCHWORK_LEVEL");
    period->add_option("--gens", cfg.gens, "generating set style: E or S")
        ->envname("BRANCHWORK_GENS");
    period->add_option("--n", cfg.n_max, "largest radius n to tabulate")
        ->envname("BRANCHWORK_N")
        ->required();

    CLI::App* minlen = app.add_subcommand("min-length", "exact word length of an element");
    add_common_flags(minlen, cfg);
    minlen->add_option("--level", cfg.level, "tree level the generators live at")
        ->envname("BRANCHWORK_LEVEL");
    minlen->add_option("--gens", cfg.gens, "generating set style: E or S")
        ->envname("BRANCHWORK_GENS");
    minlen->add_option("--word", cfg.word_text, "word JSON")->required();
    minlen->add_option("--radius", cfg.radius, "give up beyond this length")
        ->envname("BRANCHWORK_RADIUS")
        ->required();

    CLI::App* chi = app.add_subcommand(
        "chi", "minimal total tuple length on which an abstract word survives");
    add_common_flags(chi, cfg);
    chi->add_option("--level", cfg.level, "tree level the generators live at")
        ->envname("BRANCHWORK_LEVEL");
    chi->add_option("--gens", cfg.gens, "generating set style: E or S")
        ->envname("BRANCHWORK_GENS");
    chi->add_option("--word", cfg.word_text, "abstract word: JSON array like [1,2,-1,-2]")
        ->required();
    chi->add_option("--radius", cfg.radius, "tuple entries come from the ball of this radius")
        ->envname("BRANCHWORK_RADIUS")
        ->required();

    CLI::App* verify = app.add_subcommand(
        "verify", "run a named check or `all`: check_two_layer_reduction, "
                  "check_growing_reduction, check_2667, check_tetration, "
                  "check_commutator_sections, check_weakly_branch_generators, "
                  "check_transitivity");
    add_common_flags(verify, cfg);
    verify->add_option("check", va.check, "check name or `all`")->required();
    verify->add_option("--r", va.r, "rank for the constant-rank checks");
    verify->add_option("--radius", va.radius, "sweep radius for the reduction checks");
    verify->add_option("--f0", va.f0, "rank seed for the growing reduction");
    verify->add_option("--max-layer", va.max_layer, "layers to test for transitivity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help goes through the normal printer
        std::ofstream null;
        app.exit(e, null, std::cerr);
        return 2;
    }

    try {
        if (section->parsed())
            return cmd_section(cfg);
        if (act->parsed())
            return cmd_act(cfg);
        if (order->parsed())
            return cmd_order(cfg);
        if (ball->parsed())
            return cmd_ball(cfg);
        if (period->parsed())
            return cmd_period_growth(cfg);
        if (minlen->parsed())
            return cmd_min_length(cfg);
        if (chi->parsed())
            return cmd_chi(cfg);
        if (verify->parsed())
            return cmd_verify(cfg, va);
        std::cerr << app.help();
        return 2;
    } catch (const bw::BudgetError& e) {
        emit(json{{"format", 1}, {"error", {{"kind", "budget"}, {"message", e.what()}}}});
        return 3;
    } catch (const bw::DomainError& e) {
        emit(json{{"format", 1}, {"error", {{"kind", "usage"}, {"message", e.what()}}}});
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"format", 1}, {"error", {{"kind", "internal"}, {"message", e.what()}}}});
        return 2;
    }
}
