// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// All tolerances are exact equality; the only numeric threshold is the
// runtime budget of criterion 1.

#include <pinchcalc/pinchcalc.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pinchcalc;

namespace {

constexpr long kScanMax = 150;            // full scan: p, q <= 150
constexpr double kScanBudgetSeconds = 10; // criterion 1 runtime budget
constexpr long kOracleDim = 200;          // criterion 2: (p-1)(q-1) <= 200
constexpr int kRandomSeeds = 1000;        // criterion 4
constexpr std::size_t kSeedMaxN = 8;
constexpr long kSeedMaxM = 10;
constexpr int kRhoSeeds = 500;            // criterion 7
constexpr long kTwoStrandMax = 99;        // criterion 5
constexpr unsigned long kFamilyMax = 25;

struct Outcome {
    bool pass = true;
    std::size_t checked = 0;
    std::string first_failure;
    std::string extra;

    void fail(const std::string& why) {
        if (pass) first_failure = why;
        pass = false;
    }
    void expect(bool ok, const std::string& why) {
        ++checked;
        if (!ok) fail(why);
    }
};

std::vector<TorusKnot> full_scan() {
    std::vector<TorusKnot> out;
    for_each_scan_knot(kScanMax, kScanMax, [&](long p, long q) { out.push_back(TorusKnot{p, q}); });
    return out;
}

SeedData random_seed(std::mt19937_64& rng) {
    SeedData s;
    s.n = std::uniform_int_distribution<std::size_t>(1, kSeedMaxN)(rng);
    s.p0 = std::uniform_int_distribution<long>(0, 15)(rng);
    s.q1 = 2 * std::uniform_int_distribution<long>(1, 10)(rng) + 1;
    for (std::size_t i = 0; i < s.n; ++i) s.eps.push_back(rng() % 2 ? 1 : -1);
    if (s.p0 <= 1) s.eps[0] = -1;
    for (std::size_t i = 0; i + 1 < s.n; ++i) {
        s.ms.push_back(2 * std::uniform_int_distribution<long>(1, kSeedMaxM / 2)(rng));
    }
    return s;
}

template <typename F>
Outcome guarded(F&& f) {
    Outcome o;
    try {
        f(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    return o;
}

std::string str(const TorusKnot& k) { return to_string(k); }

}  // namespace

int main() {
    const std::vector<TorusKnot> scan = full_scan();
    int failures = 0;

    auto print = [&](int id, const char* title, const Outcome& o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << o.checked << " checks"
                  << (o.extra.empty() ? "" : ", " + o.extra) << ")";
        if (!o.pass) std::cout << " first failure: " << o.first_failure;
        std::cout << std::endl;
        if (!o.pass) ++failures;
    };

    print(1, "closed = recursive for signature and upsilon, p,q <= 150", guarded([&](Outcome& o) {
              const auto t0 = std::chrono::steady_clock::now();
              for (const auto& k : scan) {
                  const PinchSequence s = pinch_sequence(k);
                  o.expect(signature_closed(s) == signature_recursive(k), "signature " + str(k));
                  o.expect(upsilon_closed(s) == upsilon_recursive(k), "upsilon " + str(k));
              }
              const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              char buf[64];
              std::snprintf(buf, sizeof buf, "%zu knots in %.2fs", scan.size(), secs);
              o.extra = buf;
              o.expect(secs < kScanBudgetSeconds, "runtime " + std::to_string(secs) + "s over budget");
          }));

    print(2, "Seifert oracle = recursion for (p-1)(q-1) <= 200", guarded([&](Outcome& o) {
              for (long p = 2; (p - 1) * p <= kOracleDim; ++p) {
                  for (long q = p + 1; (p - 1) * (q - 1) <= kOracleDim; ++q) {
                      if (std::gcd(p, q) != 1) continue;
                      const TorusKnot k{p, q};
                      o.expect(Integer(oracle_signature(k, kOracleDim)) == signature_recursive(k), str(k));
                  }
              }
          }));

    print(3, "gap = upsilon - sigma/2 and 0 <= gap <= n on the full scan", guarded([&](Outcome& o) {
              for (const auto& k : scan) {
                  const PinchSequence s = pinch_sequence(k);
                  const Integer g = gap_closed(s);
                  o.expect(2 * g == 2 * upsilon_recursive(k) - signature_recursive(k), "identity " + str(k));
                  o.expect(g >= 0, "negative gap " + str(k));
                  o.expect(g <= static_cast<unsigned long>(s.n()), "gap > n " + str(k));
              }
          }));

    print(4, "pinch/synthesize round trips (random seeds and full scan)", guarded([&](Outcome& o) {
              std::mt19937_64 rng(4);
              for (int i = 0; i < kRandomSeeds; ++i) {
                  const SeedData seed = random_seed(rng);
                  const PinchSequence s = synthesize(seed);
                  o.expect(pinch_sequence(s.top()) == s, "seed -> knot -> seed at " + str(s.top()));
                  o.expect(seed_of(s) == seed, "seed_of(synthesize) at " + str(s.top()));
              }
              for (const auto& k : scan) {
                  const PinchSequence s = pinch_sequence(k);
                  o.expect(synthesize(seed_of(s)) == s, "knot -> seed -> knot at " + str(k));
              }
          }));

    print(5, "named values and families", guarded([&](Outcome& o) {
              for (long b = 1; b <= kTwoStrandMax; b += 2) {
                  const TorusKnot k{2, b};
                  o.expect(signature_recursive(k) == -(b - 1), "recursive sigma " + str(k));
                  o.expect(signature_closed(pinch_sequence(k)) == -(b - 1), "closed sigma " + str(k));
                  if (b >= 3) o.expect(oracle_signature(k) == -(b - 1), "oracle sigma " + str(k));
              }

              const PinchSequence s49 = pinch_sequence(TorusKnot{4, 9});
              const InvariantReport r49 = report(s49);
              o.expect(r49.n == 2 && r49.gap == 0 && r49.gamma4_predicted == 2, "T(4,9) values");
              o.expect(classify(s49, r49).tag == Tag::CounterexampleDescended, "T(4,9) tag");

              for (unsigned long k = 1; k <= kFamilyMax; ++k) {
                  const InvariantReport r = report(batson_family(k));
                  o.expect(r.gap == k && r.n == k, "batson k=" + std::to_string(k));
              }

              for (long q = 3; q <= 19; q += 2) {
                  for (long m = 0; m <= 10; ++m) {
                      for (int sign : {1, -1}) {
                          const long p = q * m + 2 * sign;
                          if (std::labs(p) <= 1) continue;  // unknot, outside the hypothesis
                          const TorusKnot k = normalize(p, q);
                          const Classification c = classify(k);
                          o.expect(c.tag == Tag::MoebiusBand && c.detail.n == 1,
                                   "Moebius T(" + std::to_string(p) + "," + std::to_string(q) + ")");
                      }
                  }
              }

              for (std::size_t n = 2; n <= kFamilyMax; ++n) {
                  const Integer nn = static_cast<unsigned long>(n);
                  const TorusKnot k = counterexample_family(n);
                  o.expect(k == TorusKnot{2 * nn, 4 * nn + 1}, "T(2n,4n+1) at n=" + std::to_string(n));
                  o.expect(pinch_sequence(k).visits(4, 9), "passes T(4,9) at n=" + std::to_string(n));
              }
          }));

    print(6, "structural criteria <=> gap = n and gap = n-1 on the full scan", guarded([&](Outcome& o) {
              std::size_t eq_n = 0, eq_n1 = 0;
              for (const auto& k : scan) {
                  const PinchSequence s = pinch_sequence(k);
                  const Integer g = gap_closed(s);
                  const Integer n = static_cast<unsigned long>(s.n());
                  const std::vector<std::size_t> I = index_set_I(s);
                  const bool c_n = detail::equals_n_conditions(s, I);
                  const bool c_n1 = !detail::n_minus_one_clause(s, I).empty();
                  o.expect(c_n == (g == n), "gap = n criterion at " + str(k));
                  o.expect(c_n1 == (g == n - 1), "gap = n-1 criterion at " + str(k));
                  eq_n += c_n;
                  eq_n1 += c_n1;
              }
              o.extra = std::to_string(eq_n) + " with gap = n, " + std::to_string(eq_n1) + " with gap = n-1";
          }));

    print(7, "rho table boundary values, monotonicity, 2r_n < q_n, parity", guarded([&](Outcome& o) {
              std::mt19937_64 rng(7);
              std::size_t entries = 0, literal_parity_misses = 0;
              for (int i = 0; i < kRhoSeeds; ++i) {
                  const PinchSequence s = synthesize(random_seed(rng));
                  const RhoTable t = rho_table(s, s.n());
                  const auto v = rho_violations(s, t);
                  o.expect(v.empty(), v.empty() ? std::string{} : v.front() + " at " + str(s.top()));
                  // The parity statement as worded: rho_{k,n} = n-k (mod 2).
                  for (std::size_t n = 0; n <= t.max_n(); ++n) {
                      for (std::size_t k = 1; k <= n + 1; ++k) {
                          ++entries;
                          const long diff = static_cast<long>(n) - static_cast<long>(k);
                          const bool same = mod_small(t.rho(k, n) - diff, 2) == 0;
                          if (!same) ++literal_parity_misses;
                          o.expect(same, "rho_{" + std::to_string(k) + "," + std::to_string(n) +
                                             "} = " + t.rho(k, n).get_str() + " but n-k = " + std::to_string(diff) +
                                             " at " + str(s.top()));
                      }
                  }
              }
              o.extra = "parity(rho_{k,n}) = parity(n-k) fails on " + std::to_string(literal_parity_misses) + " of " +
                        std::to_string(entries) + " entries; rho_{k,n} = n-k+1 (mod 2) holds on all";
          }));

    print(8, "stage identities on the full scan", guarded([&](Outcome& o) {
              for (const auto& k : scan) {
                  const StageReport r = verify_stage_identities(pinch_sequence(k));
                  o.expect(r.ok(), str(k));
              }
          }));

    print(9, "per-step laws rq - sp = 2eps and (p-2t)(q-2h) >= 0 (= 0 iff p = 2)", guarded([&](Outcome& o) {
              std::size_t steps = 0;
              for (const auto& k : scan) {
                  for (const PinchStep& st : pinch_steps(pinch_sequence(k))) {
                      ++steps;
                      const auto v = step_violations(st);
                      o.expect(v.empty(), v.empty() ? std::string{} : v.front() + " at " + str(st.from));
                  }
              }
              o.extra = std::to_string(steps) + " steps";
          }));

    std::cout << (failures == 0 ? "ALL 9 CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
