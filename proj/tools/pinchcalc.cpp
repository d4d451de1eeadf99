// pinchcalc: command-line front end to the pinch-move library.
//
// Exit codes: 0 success, 1 self-test or internal check failure, 2 bad usage or input.

#include <pinchcalc/pinchcalc.hpp>

#include "CLI11.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace pinchcalc;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Integer parse_or_throw(const std::string& text, const std::string& what) {
    auto v = parse_integer(text);
    if (!v) throw UsageError(what + ": '" + text + "' is not an integer");
    return *v;
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& text, const std::string& what, F&& conv) {
    std::vector<T> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(conv(parse_or_throw(item, what)));
    return out;
}

Format parse_format_or_throw(const std::string& s) {
    auto f = parse_format(s);
    if (!f) throw UsageError("unknown format '" + s + "' (expected table, json or csv)");
    return *f;
}

void print_record(const ScanRecord& r, Format f) {
    if (f == Format::Csv) std::cout << csv_header() << '\n';
    std::cout << format_record(r, f);
    if (f != Format::Table) std::cout << '\n';
}

std::string list_str(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::string list_str(const std::vector<Integer>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + "]";
}

int cmd_invariants(const std::string& p, const std::string& q, const std::string& format) {
    const Format f = parse_format_or_throw(format);
    const TorusKnot k = normalize(parse_or_throw(p, "p"), parse_or_throw(q, "q"));
    print_record(evaluate(k), f);
    return kExitOk;
}

int cmd_pinch(const std::string& p, const std::string& q) {
    const Integer pi = abs(parse_or_throw(p, "p")), qi = abs(parse_or_throw(q, "q"));
    const TorusKnot k = normalize(parse_or_throw(p, "p"), parse_or_throw(q, "q"));
    if (k.mirrored) std::cout << "mirror image; moves shown for T(" << k.p << "," << k.q << ")\n";
    if ((pi != k.p || qi != k.q) && pi > 1 && qi > 1) {
        // The move depends on the order of the pair; show it as given before normalizing.
        const PinchStep st = pinch_move(TorusKnot{pi, qi});
        std::cout << "as given: T(" << pi << "," << qi << ") --(" << (st.epsilon > 0 ? "+1" : "-1") << ")--> T("
                  << st.to.p << "," << st.to.q << ")\n"
                  << "normal form T(" << k.p << "," << k.q << "):\n";
    }
    const PinchSequence seq = pinch_sequence(k);
    for (std::size_t i = seq.n(); i >= 1; --i) {
        std::cout << "T(" << seq.p(i) << "," << seq.q(i) << ") --(" << (seq.eps(i) > 0 ? "+1" : "-1") << ")--> T("
                  << seq.p(i - 1) << "," << seq.q(i - 1) << ")\n";
    }
    const SeedData s = seed_of(seq);
    std::cout << "seed {n=" << s.n << ", p0=" << s.p0;
    if (s.n >= 1) std::cout << ", q1=" << s.q1;
    std::cout << ", eps=" << list_str(s.eps) << ", ms=" << list_str(s.ms) << "}\n";
    return kExitOk;
}

int cmd_synthesize(const std::string& p0, const std::string& q1, const std::string& eps, const std::string& ms,
                   const std::string& format) {
    const Format f = parse_format_or_throw(format);
    SeedData seed;
    seed.p0 = parse_or_throw(p0, "--p0");
    seed.eps = parse_list<int>(eps, "--eps", [](const Integer& v) {
        if (v != 1 && v != -1) throw UsageError("--eps entries must be 1 or -1, got " + v.get_str());
        return static_cast<int>(v.get_si());
    });
    seed.n = seed.eps.size();
    seed.q1 = seed.n == 0 ? Integer(0) : parse_or_throw(q1, "--q1");
    seed.ms = parse_list<Integer>(ms, "--ms", [](const Integer& v) { return v; });

    const PinchSequence seq = synthesize(seed);
    const TorusKnot k = seq.top();
    if (!(pinch_sequence(k) == seq)) {
        std::cerr << "error: round trip failed for " << to_string(k) << '\n';
        return kExitFailure;
    }
    std::cout << "T(" << k.p << "," << k.q << ")\n";
    print_record(evaluate(k), f);
    return kExitOk;
}

int cmd_scan(long pmax, long qmax, const std::string& filter, const std::string& format, unsigned jobs) {
    auto pred = parse_predicate(filter);
    if (!pred) throw UsageError("unknown filter '" + filter + "'");
    Format f = parse_format_or_throw(format);
    run_scan(ScanFilter{pmax, qmax, *pred}, f, jobs, std::cout);
    return kExitOk;
}

int cmd_selftest(long pmax, long qmax, std::size_t oracle_cap) {
    SelfTestOptions opt;
    opt.pmax = pmax;
    opt.qmax = qmax;
    opt.oracle_cap = oracle_cap;
    const SelfTestResult res = run_selftest(opt);
    print_selftest(res, std::cout);
    return res.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pinch moves, signature, upsilon and nonorientable 4-genus bounds of torus knots"};
    app.require_subcommand(1);

    std::string p, q, format = "table";
    auto* inv = app.add_subcommand("invariants", "Invariant report for T(p,q)");
    inv->add_option("p", p, "first parameter")->required();
    inv->add_option("q", q, "second parameter")->required();
    inv->add_option("--format", format, "table, json or csv");

    auto* pin = app.add_subcommand("pinch", "Pinch sequence of T(p,q) and its seed data");
    pin->add_option("p", p, "first parameter")->required();
    pin->add_option("q", q, "second parameter")->required();

    std::string p0, q1 = "0", eps, ms;
    auto* syn = app.add_subcommand("synthesize", "Build the knot with the given pinch data");
    syn->add_option("--p0", p0, "unknot parameter p0 >= 0")->required();
    syn->add_option("--q1", q1, "odd q1 >= 3");
    syn->add_option("--eps", eps, "comma-separated signs eps1,...,epsn")->allow_extra_args(false);
    syn->add_option("--ms", ms, "comma-separated even multipliers m1,...,m(n-1)");
    syn->add_option("--format", format, "table, json or csv");

    long pmax = 30, qmax = 30;
    std::string filter = "all", scan_format = "csv";
    unsigned jobs = 1;
    auto* scan = app.add_subcommand("scan", "Scan all normalized knots with p <= pmax, q <= qmax");
    scan->add_option("--pmax", pmax, "largest p");
    scan->add_option("--qmax", qmax, "largest q");
    scan->add_option("--filter", filter, "all, verified, gap-n-1, moebius, counterexample, bounds-only");
    scan->add_option("--format", scan_format, "csv or json");
    scan->add_option("--jobs", jobs, "worker threads (0 = hardware concurrency)");

    long st_pmax = 150, st_qmax = 150;
    std::size_t oracle_cap = 200;
    auto* self = app.add_subcommand("selftest", "Cross-check every formula over a range");
    self->add_option("--pmax", st_pmax, "largest p");
    self->add_option("--qmax", st_qmax, "largest q");
    self->add_option("--oracle-cap", oracle_cap, "largest Seifert matrix dimension for the oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*inv) return cmd_invariants(p, q, format);
        if (*pin) return cmd_pinch(p, q);
        if (*syn) return cmd_synthesize(p0, q1, eps, ms, format);
        if (*scan) {
            if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
            return cmd_scan(pmax, qmax, filter, scan_format, jobs);
        }
        if (*self) return cmd_selftest(st_pmax, st_qmax, oracle_cap);
    } catch (const ConsistencyError& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        // InvalidKnot, ConstraintError, bad bounds and malformed numbers.
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
