// Command-line front end: decide, count and construct nontrivial solutions
// of the modified cube-sum identity through the arithmetic of the norm form
// a^2 + ab + b^2, and run the large-range verification scans.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesum/cubic_identity.hpp"
#include "cubesum/eisenstein.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/factorint.hpp"
#include "cubesum/norm_forms.hpp"
#include "cubesum/pigeonhole.hpp"
#include "cubesum/scanner.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cubesum;

constexpr const char* kSchema = "cubesum/1";

enum class Status { Ok, Counterexample, Error };

const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Counterexample: return "counterexample";
        case Status::Error: return "error";
    }
    return "?";
}

int exit_code(Status s) {
    switch (s) {
        case Status::Ok: return 0;
        case Status::Counterexample: return 1;
        case Status::Error: return 2;
    }
    return 2;
}

// All numeric payloads are serialized as decimal strings; consumers keep
// exactness at 10^14 scale and beyond without 53-bit float surprises.
std::string dec(u64 v) { return std::to_string(v); }
std::string dec(i64 v) { return std::to_string(v); }
std::string dec(i128 v) { return to_string_i128(v); }

struct CommandOutput {
    std::string command;
    json inputs = json::object();
    json result = json::object();
    std::vector<std::string> text;
    Status status = Status::Ok;
};

int emit(const CommandOutput& out, bool json_mode) {
    if (json_mode) {
        json envelope;
        envelope["schema"] = kSchema;
        envelope["command"] = out.command;
        envelope["inputs"] = out.inputs;
        envelope["status"] = status_name(out.status);
        envelope["result"] = out.result;
        std::cout << envelope.dump(2) << '\n';
    } else {
        for (const auto& line : out.text) std::cout << line << '\n';
    }
    return exit_code(out.status);
}

std::string factorization_text(const FactorMap& fm) {
    if (fm.factors.empty()) return "1";
    std::string s;
    for (const auto& f : fm.factors) {
        if (!s.empty()) s += " * ";
        s += std::to_string(f.prime);
        if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
    }
    return s;
}

json factorization_json(const FactorMap& fm) {
    json arr = json::array();
    for (const auto& f : fm.factors)
        arr.push_back({{"prime", dec(u64(f.prime))}, {"exponent", dec(u64(f.exponent))}});
    return arr;
}

std::string pair_text(i64 a, i64 b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

CommandOutput run_reps(u64 N, bool all_mode, bool positive_mode) {
    if (all_mode && positive_mode)
        throw CLI::ValidationError("reps", "choose exactly one of --all and --positive");
    const bool use_all = all_mode;  // default is --positive
    CommandOutput out;
    out.command = "reps";
    out.inputs = {{"N", dec(N)}, {"mode", use_all ? "all" : "positive"}};

    const FactorMap fm = factor(N);
    std::vector<Representation> reps;
    std::optional<u64> formula;
    if (use_all) {
        reps = enumerate_all(N);
        formula = count_all_representations(N);
    } else {
        reps = enumerate_positive(N);
        if (!is_perfect_square(N)) formula = count_positive(N);
    }
    const bool agree = formula.has_value() ? *formula == reps.size() : true;
    out.status = agree ? Status::Ok : Status::Counterexample;

    out.text.push_back("N = " + dec(N) + " = " + factorization_text(fm));
    out.text.push_back(std::string(use_all ? "all" : "positive") + " representations (" +
                       std::to_string(reps.size()) + "):");
    for (const auto& r : reps) out.text.push_back("  " + pair_text(r.a, r.b));
    out.text.push_back("count by enumeration: " + std::to_string(reps.size()));
    out.text.push_back("count by formula: " + (formula ? dec(*formula) : std::string("n/a")));
    out.text.push_back(std::string("agreement: ") + (formula ? (agree ? "yes" : "NO") : "n/a"));

    json pairs = json::array();
    for (const auto& r : reps) pairs.push_back({{"a", dec(r.a)}, {"b", dec(r.b)}});
    out.result = {{"N", dec(N)},
                  {"factorization", factorization_json(fm)},
                  {"pairs", std::move(pairs)},
                  {"count_enumerated", dec(u64(reps.size()))},
                  {"count_formula", formula ? json(dec(*formula)) : json(nullptr)},
                  {"agreement", formula ? json(agree) : json(nullptr)}};
    return out;
}

CommandOutput run_solve(u64 n) {
    CommandOutput out;
    out.command = "solve";
    out.inputs = {{"n", dec(n)}};
    const u64 N = cubic_norm(n);
    const auto sols = solve(n);
    out.text.push_back("n = " + dec(n) + ", N = " + dec(N));
    out.text.push_back("nontrivial solutions (" + std::to_string(sols.size()) + "):");
    json arr = json::array();
    for (const auto& s : sols) {
        const Representation rep = to_representation(s);
        const bool verified = verify_identity(s.k, s.x, s.n);
        out.text.push_back("  (k, x) = " + pair_text(s.k, s.x) + "   [(a, b) = " +
                           pair_text(rep.a, rep.b) + "]" + (verified ? "" : "  UNVERIFIED"));
        arr.push_back({{"k", dec(s.k)},
                       {"x", dec(s.x)},
                       {"a", dec(rep.a)},
                       {"b", dec(rep.b)},
                       {"verified", verified}});
    }
    out.result = {{"n", dec(n)}, {"N", dec(N)}, {"solutions", std::move(arr)}};
    return out;
}

CommandOutput run_verify(i64 k, i64 x, u64 n) {
    CommandOutput out;
    out.command = "verify";
    out.inputs = {{"k", dec(k)}, {"x", dec(x)}, {"n", dec(n)}};
    const IdentitySides sides = identity_sides(k, x, n);
    const SolutionKind kind = classify(k, x, n);
    out.status = sides.equal() ? Status::Ok : Status::Counterexample;
    out.text.push_back("lhs = " + dec(sides.lhs));
    out.text.push_back("rhs = " + dec(sides.rhs));
    out.text.push_back(std::string("equal: ") + (sides.equal() ? "yes" : "no"));
    out.text.push_back(std::string("kind: ") + to_string(kind));
    out.result = {{"lhs", dec(sides.lhs)},
                  {"rhs", dec(sides.rhs)},
                  {"equal", sides.equal()},
                  {"kind", to_string(kind)}};
    return out;
}

CommandOutput run_characterize(u64 n) {
    CommandOutput out;
    out.command = "characterize";
    out.inputs = {{"n", dec(n)}};
    const u64 N = cubic_norm(n);
    const FactorMap fm = factor(N);
    unsigned split_multiplicity = 0;
    for (const auto& f : fm.factors)
        if (f.prime % 3 == 1) split_multiplicity += f.exponent;
    const u64 m = count_positive(N);  // N is never a perfect square
    const bool by_mult = has_nontrivial_by_multiplicity(n);
    const bool by_excl = has_nontrivial_by_exclusion(n);
    const bool prime = is_prime(N);
    const bool three_prime = N % 3 == 0 && is_prime(N / 3);
    const bool agree = by_mult == by_excl;
    out.status = agree ? Status::Ok : Status::Counterexample;

    out.text.push_back("n = " + dec(n));
    out.text.push_back("N = " + dec(N) + " = " + factorization_text(fm));
    out.text.push_back("split prime multiplicity: " + std::to_string(split_multiplicity));
    out.text.push_back("positive representations m = " + dec(m));
    out.text.push_back(std::string("N is prime: ") + (prime ? "yes" : "no") +
                       "; N is three times a prime: " + (three_prime ? "yes" : "no"));
    out.text.push_back(std::string("nontrivial solutions exist (multiplicity >= 2): ") +
                       (by_mult ? "yes" : "no"));
    out.text.push_back(std::string("nontrivial solutions exist (not p, not 3p): ") +
                       (by_excl ? "yes" : "no"));
    out.text.push_back(std::string("verdicts agree: ") + (agree ? "yes" : "NO"));

    out.result = {{"n", dec(n)},
                  {"N", dec(N)},
                  {"factorization", factorization_json(fm)},
                  {"split_multiplicity", dec(u64(split_multiplicity))},
                  {"positive_representations", dec(m)},
                  {"is_prime", prime},
                  {"is_three_times_prime", three_prime},
                  {"nontrivial_by_multiplicity", by_mult},
                  {"nontrivial_by_exclusion", by_excl},
                  {"agreement", agree}};
    return out;
}

CommandOutput run_pigeonhole(u64 n, std::optional<u64> s_override) {
    CommandOutput out;
    out.command = "pigeonhole";
    out.inputs = {{"n", dec(n)},
                  {"s", s_override ? json(dec(*s_override)) : json(nullptr)}};
    const PigeonholeTrace trace = construct_solution_trace(n, s_override);
    const u64 N = trace.params.N;
    const u64 s = trace.params.s;
    const u64 q = N / s;
    const i64 a = trace.rep.a;
    const i64 b = trace.rep.b;
    const i128 an_b = i128(a) * n - b;
    const i128 bn_a = i128(b) * n - a;
    const Solution sol = constructive_solution(n);

    out.text.push_back("n = " + dec(n) + ", N = " + dec(N));
    out.text.push_back("moduli: s = " + dec(s) + ", N/s = " + dec(q) + ", witness t = " +
                       dec(trace.params.t));
    out.text.push_back("collision: (c', d') = (" + dec(trace.collision.c1) + ", " +
                       dec(trace.collision.d1) + "), (c'', d'') = (" + dec(trace.collision.c2) +
                       ", " + dec(trace.collision.d2) + ")");
    out.text.push_back("difference: (a, b) = " + pair_text(a, b));
    out.text.push_back("checks:");
    out.text.push_back("  s | a*n - b: " + dec(an_b) + " = " + dec(s) + " * " + dec(an_b / i128(s)));
    out.text.push_back("  N/s | b*n - a: " + dec(bn_a) + " = " + dec(q) + " * " +
                       dec(bn_a / i128(q)));
    out.text.push_back("  a^2 + a*b + b^2 = " + dec(trace.rep.norm) + " = N");
    out.text.push_back("  2 <= a, b <= n - 1: yes");
    out.text.push_back("solution: (k, x) = " + pair_text(sol.k, sol.x));

    out.result = {{"n", dec(n)},
                  {"N", dec(N)},
                  {"s", dec(s)},
                  {"t", dec(trace.params.t)},
                  {"collision",
                   {{"c1", dec(trace.collision.c1)},
                    {"d1", dec(trace.collision.d1)},
                    {"c2", dec(trace.collision.c2)},
                    {"d2", dec(trace.collision.d2)}}},
                  {"a", dec(a)},
                  {"b", dec(b)},
                  {"checks",
                   {{"an_minus_b", dec(an_b)},
                    {"bn_minus_a", dec(bn_a)},
                    {"s_divides", true},
                    {"q_divides", true},
                    {"norm_equals_N", true},
                    {"within_bounds", true}}},
                  {"solution", {{"k", dec(sol.k)}, {"x", dec(sol.x)}}}};
    return out;
}

json report_json(const ScanReport& r) {
    json j;
    j["mode"] = r.mode == ScanMode::Conjecture ? "conjecture" : "equivalence";
    j["n_lo"] = dec(r.n_lo);
    j["n_hi"] = dec(r.n_hi);
    j["checked"] = dec(r.checked);
    if (r.mode == ScanMode::Equivalence) j["enum_cap"] = dec(r.enum_cap);
    if (r.mode == ScanMode::Conjecture) {
        json ces = json::array();
        for (const auto& ce : r.counterexamples)
            ces.push_back({{"n", dec(ce.n)}, {"prime", dec(ce.prime)}});
        j["counterexamples"] = std::move(ces);
    } else {
        json dis = json::array();
        for (const auto& d : r.disagreements) {
            json entry = {{"n", dec(d.n)},
                          {"by_multiplicity", d.by_multiplicity},
                          {"by_exclusion", d.by_exclusion}};
            if (d.solver_checked) entry["solver"] = d.solver;
            dis.push_back(std::move(entry));
        }
        j["disagreements"] = std::move(dis);
    }
    j["workers"] = dec(u64(r.workers));
    j["elapsed_seconds"] = std::to_string(r.elapsed_seconds);
    j["throughput"] = dec(u64(r.throughput));
    return j;
}

CommandOutput run_scan(u64 n_lo, u64 n_hi, unsigned jobs, const std::string& mode, u64 enum_cap,
                       bool progress) {
    CommandOutput out;
    out.command = "scan";
    out.inputs = {{"min", dec(n_lo)}, {"max", dec(n_hi)},   {"jobs", dec(u64(jobs))},
                  {"mode", mode},     {"enum_cap", dec(enum_cap)}};
    ProgressFn cb;
    if (progress)
        cb = [](u64 processed, u64 total) {
            std::cerr << "progress: " << processed << " / " << total << " checked\n";
        };
    ScanReport rep;
    if (mode == "conjecture")
        rep = scan_conjecture(n_lo, n_hi, jobs, cb);
    else
        rep = scan_equivalence(n_lo, n_hi, enum_cap, jobs, cb);
    out.status = rep.clean() ? Status::Ok : Status::Counterexample;
    // the stable report goes to stdout; the runtime block is kept off it so
    // output is byte-identical across worker counts
    std::string stable = report_text(rep, false);
    if (!stable.empty() && stable.back() == '\n') stable.pop_back();
    out.text.push_back(std::move(stable));
    std::cerr << "workers: " << rep.workers << ", elapsed: " << rep.elapsed_seconds
              << " s, throughput: " << u64(rep.throughput) << " n/s\n";
    out.result = report_json(rep);
    return out;
}

unsigned default_jobs() {
    if (const char* env = std::getenv("CUBESUM_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return unsigned(v);
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-form toolkit for the modified cube-sum identity"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // reps
    auto* reps = app.add_subcommand("reps", "list and count representations a^2+ab+b^2 = N");
    u64 reps_N = 0;
    bool reps_all = false, reps_positive = false;
    reps->add_option("N", reps_N, "the integer to represent")->required();
    reps->add_flag("--all", reps_all, "all integer pairs (N <= 10^9)");
    reps->add_flag("--positive", reps_positive, "positive pairs only (default, N <= 2*10^12)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "nontrivial solutions (k, x) for a given n");
    u64 solve_n = 0;
    solve_cmd->add_option("n", solve_n, "upper summation index (2 <= n <= 10^6)")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "evaluate both sides of the identity exactly");
    i64 verify_k = 0, verify_x = 0;
    u64 verify_n = 0;
    verify->add_option("k", verify_k, "subtracted cube index")->required();
    verify->add_option("x", verify_x, "added cube index")->required();
    verify->add_option("n", verify_n, "upper summation index")->required();

    // characterize
    auto* charac = app.add_subcommand("characterize", "factor N = n^2+n+1 and apply both criteria");
    u64 charac_n = 0;
    charac->add_option("n", charac_n, "upper summation index (n >= 2)")->required();

    // pigeonhole
    auto* pigeon = app.add_subcommand("pigeonhole",
                                      "construct a nontrivial representation by residue collision");
    u64 pigeon_n = 0;
    u64 pigeon_s = 0;
    pigeon->add_option("n", pigeon_n, "upper summation index (n >= 2)")->required();
    auto* pigeon_s_opt = pigeon->add_option("--s", pigeon_s, "override the modulus s");

    // scan
    auto* scan = app.add_subcommand("scan", "range verification scans");
    u64 scan_min = 2, scan_max = 0, scan_enum_cap = 1000;
    unsigned scan_jobs = default_jobs();
    std::string scan_mode = "conjecture";
    bool scan_progress = false;
    scan->add_option("--min", scan_min, "first n")->capture_default_str();
    scan->add_option("--max", scan_max, "last n (< 10^8)")->required();
    scan->add_option("--jobs", scan_jobs, "worker threads (default: CUBESUM_JOBS or 1)");
    scan->add_option("--mode", scan_mode, "what to scan")
        ->check(CLI::IsMember({"conjecture", "equivalence"}))
        ->capture_default_str();
    scan->add_option("--enum-cap", scan_enum_cap,
                     "equivalence mode: solver cross-check bound (<= 10^6)")
        ->capture_default_str();
    scan->add_flag("--progress", scan_progress, "progress lines on stderr every 10^6 values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const bool json_mode = format == "json";
    try {
        CommandOutput out;
        if (*reps)
            out = run_reps(reps_N, reps_all, reps_positive);
        else if (*solve_cmd)
            out = run_solve(solve_n);
        else if (*verify)
            out = run_verify(verify_k, verify_x, verify_n);
        else if (*charac)
            out = run_characterize(charac_n);
        else if (*pigeon)
            out = run_pigeonhole(pigeon_n, pigeon_s_opt->count() > 0
                                               ? std::optional<u64>(pigeon_s)
                                               : std::nullopt);
        else
            out = run_scan(scan_min, scan_max, scan_jobs, scan_mode, scan_enum_cap,
                           scan_progress);
        return emit(out, json_mode);
    } catch (const invariant_violation& e) {
        // a violated mathematical invariant is a finding, not a usage error
        if (json_mode) {
            json envelope = {{"schema", kSchema},
                             {"command", ""},
                             {"inputs", json::object()},
                             {"status", "error"},
                             {"result", {{"message", e.what()}, {"invariant_violation", true}}}};
            std::cout << envelope.dump(2) << '\n';
        }
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        if (json_mode) {
            json envelope = {{"schema", kSchema},
                             {"command", ""},
                             {"inputs", json::object()},
                             {"status", "error"},
                             {"result", {{"message", e.what()}}}};
            std::cout << envelope.dump(2) << '\n';
        }
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
