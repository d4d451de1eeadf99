#pragma once

/**
 * @file scan.hpp
 * @brief Range scans over normalized torus knots, record formatting, and the
 *        cross-check self-test.
 *
 * A scan visits every nontrivial normalized knot T(p,q) with p <= pmax and
 * q <= qmax (q odd >= 3, gcd 1, p > q when p is odd) in lexicographic order of
 * (p,q). Parallel scans split the work by p and write rows back in order, so
 * output does not depend on the number of workers.
 */

#include "classify.hpp"
#include "core.hpp"
#include "invariants.hpp"
#include "oracle.hpp"
#include "pinch.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace pinchcalc {

inline constexpr long kScanBoundCap = 5000;

enum class Predicate { All, Verified, GapNMinusOne, Moebius, Counterexample, BoundsOnly };

inline std::optional<Predicate> parse_predicate(std::string_view s) {
    if (s == "all") return Predicate::All;
    if (s == "verified") return Predicate::Verified;
    if (s == "gap-n-1") return Predicate::GapNMinusOne;
    if (s == "moebius") return Predicate::Moebius;
    if (s == "counterexample") return Predicate::Counterexample;
    if (s == "bounds-only") return Predicate::BoundsOnly;
    return std::nullopt;
}

struct ScanFilter {
    long pmax = 2;
    long qmax = 2;
    Predicate predicate = Predicate::All;

    /// Throws std::invalid_argument unless 2 <= pmax, qmax <= kScanBoundCap.
    void validate() const {
        for (long b : {pmax, qmax}) {
            if (b < 2 || b > kScanBoundCap) {
                throw std::invalid_argument("scan bounds must lie in [2, " + std::to_string(kScanBoundCap) + "], got " +
                                            std::to_string(b));
            }
        }
    }

    /// "counterexample" selects every knot whose sequence passes T(4,9), whatever its tag.
    bool matches(const Classification& c) const {
        switch (predicate) {
            case Predicate::All: return true;
            case Predicate::Verified: return c.tag == Tag::VerifiedEqualsN;
            case Predicate::GapNMinusOne: return c.tag == Tag::GapNMinusOne;
            case Predicate::Moebius: return c.tag == Tag::MoebiusBand;
            case Predicate::Counterexample: return c.detail.descends_from_4_9;
            case Predicate::BoundsOnly: return c.tag == Tag::BoundsOnly;
        }
        return false;
    }
};

/// q values paired with a given p in a scan, increasing.
inline std::vector<long> scan_row(long p, long qmax) {
    std::vector<long> out;
    for (long q = 3; q <= qmax; q += 2) {
        if (std::gcd(p, q) != 1) continue;
        if (p % 2 == 1 && p <= q) continue;
        out.push_back(q);
    }
    return out;
}

template <typename F>
void for_each_scan_knot(long pmax, long qmax, F&& f) {
    for (long p = 2; p <= pmax; ++p) {
        for (long q : scan_row(p, qmax)) f(p, q);
    }
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct ScanRecord {
    InvariantReport report;
    Classification classification;
};

inline ScanRecord evaluate(const TorusKnot& k, CheckLevel level = CheckLevel::Full) {
    const PinchSequence seq = pinch_sequence(k);
    ScanRecord r;
    r.report = report(seq, level);
    r.classification = classify(seq, r.report);
    return r;
}

enum class Format { Table, Json, Csv };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "table") return Format::Table;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

/// Field order shared by JSON and CSV.
inline constexpr const char* kRecordFields[] = {
    "p", "q", "mirrored", "n", "sigma", "upsilon", "gap", "oss_lower",
    "gamma4_predicted", "gamma4_lower", "gamma4_upper", "classification",
};

inline std::string csv_header() {
    std::string h;
    for (const char* f : kRecordFields) {
        if (!h.empty()) h += ',';
        h += f;
    }
    return h;
}

/// One line of JSON; integers are written in full precision.
inline std::string format_json(const ScanRecord& r) {
    const InvariantReport& x = r.report;
    std::ostringstream os;
    os << "{\"p\":" << x.knot.p << ",\"q\":" << x.knot.q << ",\"mirrored\":" << (x.knot.mirrored ? "true" : "false")
       << ",\"n\":" << x.n << ",\"sigma\":" << x.sigma << ",\"upsilon\":" << x.upsilon << ",\"gap\":" << x.gap
       << ",\"oss_lower\":" << x.oss_lower << ",\"gamma4_predicted\":" << x.gamma4_predicted
       << ",\"gamma4_lower\":" << x.gamma4_lower << ",\"gamma4_upper\":" << x.gamma4_upper << ",\"classification\":\""
       << to_string(r.classification.tag) << "\"}";
    return os.str();
}

inline std::string format_csv(const ScanRecord& r) {
    const InvariantReport& x = r.report;
    std::ostringstream os;
    os << x.knot.p << ',' << x.knot.q << ',' << (x.knot.mirrored ? "true" : "false") << ',' << x.n << ',' << x.sigma
       << ',' << x.upsilon << ',' << x.gap << ',' << x.oss_lower << ',' << x.gamma4_predicted << ','
       << x.gamma4_lower << ',' << x.gamma4_upper << ',' << to_string(r.classification.tag);
    return os.str();
}

inline std::string join(const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + "}";
}

inline std::string format_table(const ScanRecord& r) {
    const InvariantReport& x = r.report;
    const ClassificationDetail& d = r.classification.detail;
    std::ostringstream os;
    os << "knot              " << to_string(x.knot) << '\n'
       << "pinch moves n     " << x.n << '\n'
       << "signature         " << x.sigma << (x.knot.mirrored ? "  (mirror: " + x.signed_sigma().get_str() + ")" : "")
       << '\n'
       << "upsilon           " << x.upsilon
       << (x.knot.mirrored ? "  (mirror: " + x.signed_upsilon().get_str() + ")" : "") << '\n'
       << "gap               " << x.gap << '\n'
       << "OSS lower bound   " << x.oss_lower << '\n'
       << "gamma4 predicted  " << x.gamma4_predicted << '\n'
       << "gamma4 bounds     [" << x.gamma4_lower << ", " << x.gamma4_upper << "]\n"
       << "classification    " << to_string(r.classification.tag) << '\n';
    if (x.n >= 1) {
        os << "index set I       " << join(d.index_I) << '\n' << "index set J       " << join(d.index_J) << '\n';
    }
    if (!d.n_minus_one_clause.empty()) os << "gap = n-1 clause   " << d.n_minus_one_clause << '\n';
    if (d.moebius) {
        os << "Moebius form      T(" << d.moebius->q << "*" << d.moebius->m << (d.moebius->sign > 0 ? " + 2, " : " - 2, ")
           << d.moebius->q << ")\n";
    }
    if (d.improved_upper) os << "improved upper    " << *d.improved_upper << '\n';
    if (d.known_gamma4) os << "gamma4            " << *d.known_gamma4 << '\n';
    for (const auto& note : d.notes) os << "note              " << note << '\n';
    return os.str();
}

inline std::string format_record(const ScanRecord& r, Format f) {
    switch (f) {
        case Format::Json: return format_json(r);
        case Format::Csv: return format_csv(r);
        case Format::Table: return format_table(r);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Scan driver
// ---------------------------------------------------------------------------

/**
 * Writes every record accepted by the filter. Table format falls back to CSV
 * layout (one line per knot). Returns the number of records written.
 */
inline std::size_t run_scan(const ScanFilter& filter, Format format, unsigned jobs, std::ostream& out) {
    filter.validate();
    if (format == Format::Table) format = Format::Csv;
    if (format == Format::Csv) out << csv_header() << '\n';
    jobs = std::max(1u, jobs);

    auto render_row = [&](long p) {
        std::string text;
        std::size_t count = 0;
        for (long q : scan_row(p, filter.qmax)) {
            const ScanRecord r = evaluate(TorusKnot{p, q, false});
            if (!filter.matches(r.classification)) continue;
            text += format_record(r, format);
            text += '\n';
            ++count;
        }
        return std::make_pair(std::move(text), count);
    };

    std::size_t written = 0;
    const long first = 2;
    const long last = filter.pmax;
    // Rows are produced in windows so memory stays bounded for large scans.
    const long window = static_cast<long>(jobs) * 16;
    for (long base = first; base <= last; base += window) {
        const long top = std::min(last, base + window - 1);
        std::vector<std::pair<std::string, std::size_t>> rows(static_cast<std::size_t>(top - base + 1));
        if (jobs == 1) {
            for (long p = base; p <= top; ++p) rows[static_cast<std::size_t>(p - base)] = render_row(p);
        } else {
            std::atomic<long> next{base};
            std::vector<std::exception_ptr> errors(jobs);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (long p = next++; p <= top; p = next++) {
                            rows[static_cast<std::size_t>(p - base)] = render_row(p);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }
        for (auto& [text, count] : rows) {
            out << text;
            written += count;
        }
    }
    out.flush();
    return written;
}

// ---------------------------------------------------------------------------
// Self-test
// ---------------------------------------------------------------------------

using SignatureFn = std::function<Integer(const TorusKnot&)>;

struct SelfTestOptions {
    long pmax = 150;
    long qmax = 150;
    std::size_t oracle_cap = 200;
    /// Replaces signature_recursive everywhere it is used as the reference (test hook).
    SignatureFn signature_override;
};

struct SelfTestSection {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
};

struct SelfTestFailure {
    std::string section;
    std::string knot;
    std::string message;
};

struct SelfTestResult {
    std::vector<SelfTestSection> sections;
    std::vector<SelfTestFailure> failures;  ///< first kMaxListed only
    std::size_t total_failures = 0;

    static constexpr std::size_t kMaxListed = 10;

    bool ok() const { return total_failures == 0; }

    const SelfTestSection* section(std::string_view name) const {
        for (const auto& s : sections) {
            if (s.name == name) return &s;
        }
        return nullptr;
    }
};

inline SelfTestResult run_selftest(const SelfTestOptions& opt) {
    ScanFilter{opt.pmax, opt.qmax, Predicate::All}.validate();
    const SignatureFn sig_rec = opt.signature_override
                                    ? opt.signature_override
                                    : SignatureFn([](const TorusKnot& k) { return signature_recursive(k); });

    SelfTestResult res;
    const std::vector<std::string> names = {
        "signature closed = recursive", "upsilon closed = recursive", "gap identities", "round trip",
        "sequence laws",                "per-step laws",              "rho table",      "stage identities",
        "classification",               "oracle",
    };
    for (const auto& n : names) res.sections.push_back({n, 0, 0});
    auto sec = [&](std::size_t i) -> SelfTestSection& { return res.sections[i]; };

    auto check = [&](std::size_t i, const TorusKnot& k, auto&& body) {
        ++sec(i).checked;
        std::string msg;
        try {
            msg = body();
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        if (msg.empty()) return;
        ++sec(i).failed;
        ++res.total_failures;
        if (res.failures.size() < SelfTestResult::kMaxListed) {
            res.failures.push_back({sec(i).name, to_string(k), msg});
        }
    };
    auto first_of = [](const std::vector<std::string>& v) { return v.empty() ? std::string{} : v.front(); };

    for_each_scan_knot(opt.pmax, opt.qmax, [&](long p, long q) {
        const TorusKnot k{p, q, false};
        const PinchSequence seq = pinch_sequence(k);

        check(0, k, [&] {
            const Integer c = signature_closed(seq), r = sig_rec(k);
            return c == r ? std::string{} : "closed " + c.get_str() + " vs recursive " + r.get_str();
        });
        check(1, k, [&] {
            const Integer c = upsilon_closed(seq), r = upsilon_recursive(k);
            return c == r ? std::string{} : "closed " + c.get_str() + " vs recursive " + r.get_str();
        });
        check(2, k, [&] {
            const Integer g = gap_closed(seq);
            const Integer two_gap = 2 * upsilon_recursive(k) - sig_rec(k);
            if (2 * g != two_gap) return "gap " + g.get_str() + " vs 2(upsilon - sigma/2) = " + two_gap.get_str();
            if (g < 0 || g > static_cast<unsigned long>(seq.n())) return "gap " + g.get_str() + " outside [0, n]";
            return std::string{};
        });
        check(3, k, [&] {
            const PinchSequence back = synthesize(seed_of(seq));
            if (!(back == seq)) return std::string("synthesize(seed_of(.)) differs");
            if (!(pinch_sequence(back.top()) == seq)) return std::string("pinch_sequence(synthesize(.)) differs");
            return std::string{};
        });
        check(4, k, [&] { return first_of(sequence_violations(seq)); });
        check(5, k, [&] {
            for (const auto& st : pinch_steps(seq)) {
                auto v = step_violations(st);
                if (!v.empty()) return v.front() + " at " + to_string(st.from);
            }
            return std::string{};
        });
        check(6, k, [&] { return first_of(rho_violations(seq, rho_table(seq, seq.n()))); });
        check(7, k, [&] {
            const StageReport rep = verify_stage_identities(seq);
            if (rep.ok()) return std::string{};
            const StageCheck& c = rep.failures().front();
            return std::string(to_string(c.form)) + " at k=" + std::to_string(c.k);
        });
        check(8, k, [&] {
            classify(seq, report(seq, CheckLevel::Fast));
            return std::string{};
        });
    });

    for (long a = 2; (a - 1) * (a) <= static_cast<long>(opt.oracle_cap); ++a) {
        for (long b = a + 1; (a - 1) * (b - 1) <= static_cast<long>(opt.oracle_cap); ++b) {
            if (std::gcd(a, b) != 1) continue;
            const TorusKnot k{a, b, false};
            check(9, k, [&] {
                const Integer o = oracle_signature(k, opt.oracle_cap);
                const Integer r = sig_rec(k);
                return o == r ? std::string{} : "oracle " + o.get_str() + " vs recursive " + r.get_str();
            });
        }
    }
    return res;
}

inline void print_selftest(const SelfTestResult& res, std::ostream& os) {
    for (const auto& s : res.sections) {
        os << s.name << ": " << s.checked << " checked, " << s.failed << " failed\n";
    }
    os << res.total_failures << " failures\n";
    for (const auto& f : res.failures) os << "  " << f.knot << " [" << f.section << "] " << f.message << '\n';
}

}  // namespace pinchcalc
