#pragma once

/**
 * @file invariants.hpp
 * @brief Signature, upsilon and the gap upsilon - sigma/2 of torus knots.
 *
 * Every quantity has two independent evaluations:
 *
 *  - a recursion on the pair (a,b) itself (the Gordon-Litherland-Murasugi
 *    recursion for sigma, the Feller-Krcatovich recursion for upsilon);
 *  - a closed formula in the pinch data (n, p0, q1, eps, m).
 *
 * report() evaluates both and refuses to return when they disagree.
 *
 * Sign convention: positive torus knots have negative signature, so
 * sigma(T(2,3)) = -2 and upsilon(T(2,3)) = -1. The gap upsilon - sigma/2 is
 * nonnegative and bounds the nonorientable 4-genus from below, while the
 * length n of the pinch sequence bounds it from above.
 */

#include "core.hpp"
#include "pinch.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pinchcalc {

// ---------------------------------------------------------------------------
// Recursions on the pair
// ---------------------------------------------------------------------------

/**
 * GLM recursion with a = min, b = max:
 *
 *     2a < b:       sigma(a,b) =  sigma(b-2a, a) - (a^2-1 | a^2)
 *     a <= b < 2a:  sigma(a,b) = -sigma(2a-b, a) - (a^2-1 | a^2-2)
 *
 * (first alternative for a odd, second for a even), with sigma(1,b) = 0 and
 * sigma(2,b) = -(b-1). Runs of identical first-case steps are collapsed, so
 * the loop count is logarithmic-ish like Euclid rather than linear in b.
 *
 * Accepts any nonnegative pair; returns the value for the positive knot.
 */
inline Integer signature_recursive(Integer a, Integer b) {
    a = abs(a);
    b = abs(b);
    // value = sign * sigma(a,b) + offset
    int sign = 1;
    Integer offset = 0;
    for (;;) {
        if (a > b) std::swap(a, b);
        if (a <= 1) return offset;
        if (a == 2) return offset - sign * (b - 1);

        const bool odd = is_odd(a);
        const Integer sq = a * a;
        if (2 * a < b) {
            const Integer two_a = 2 * a;
            const Integer k = (b - two_a - 1) / two_a + 1;
            offset -= sign * k * (odd ? sq - 1 : sq);
            b -= two_a * k;
        } else {
            offset -= sign * (odd ? sq - 1 : sq - 2);
            sign = -sign;
            Integer next = 2 * a - b;
            b = std::move(a);
            a = std::move(next);
        }
    }
}

inline Integer signature_recursive(const TorusKnot& k) { return signature_recursive(k.p, k.q); }

/**
 * upsilon(a,b) = upsilon(a, b-a) - a^2/4 (a even) or -(a^2-1)/4 (a odd),
 * a = min, base upsilon(1,b) = upsilon(0,b) = 0. Accepts any nonnegative pair.
 */
inline Integer upsilon_recursive(Integer a, Integer b) {
    a = abs(a);
    b = abs(b);
    Integer acc = 0;
    for (;;) {
        if (a > b) std::swap(a, b);
        if (a <= 1) return acc;
        const Integer k = (b - 1) / a;
        const Integer step = is_even(a) ? Integer(a * a / 4) : Integer((a * a - 1) / 4);
        acc -= k * step;
        b -= k * a;
    }
}

inline Integer upsilon_recursive(const TorusKnot& k) { return upsilon_recursive(k.p, k.q); }

// ---------------------------------------------------------------------------
// Index sets of the closed formulas
// ---------------------------------------------------------------------------

/// k in 1..n-1 with m_k = 0 (mod 4), increasing.
inline std::vector<std::size_t> index_set_I(const PinchSequence& seq) {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k + 1 <= seq.n(); ++k) {
        if (mod_small(seq.m(k), 4) == 0) out.push_back(k);
    }
    return out;
}

/// k in 2..n-1 with eps_k eps_{k+1} = -1, increasing.
inline std::vector<std::size_t> index_set_J(const PinchSequence& seq) {
    std::vector<std::size_t> out;
    for (std::size_t k = 2; k + 1 <= seq.n(); ++k) {
        if (seq.eps(k) * seq.eps(k + 1) == -1) out.push_back(k);
    }
    return out;
}

/// sum_i (-1)^(i-1) (n - k_i) over an increasing index list k_1 < k_2 < ...
inline Integer alternating_sum(std::size_t n, const std::vector<std::size_t>& idx) {
    Integer s = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const Integer term = static_cast<unsigned long>(n - idx[i]);
        if (i % 2 == 0) {
            s += term;
        } else {
            s -= term;
        }
    }
    return s;
}

/// q1 - eps1 = 0 (mod 4). Meaningful for n >= 1.
inline bool q1_matches_eps1(const PinchSequence& seq) {
    return mod_small(seq.q1() - seq.eps(1), 4) == 0;
}

// ---------------------------------------------------------------------------
// Closed formulas
// ---------------------------------------------------------------------------

/// (p0 - p*q) / 2; always integral since p0 = p (mod 2) and q is odd.
inline Integer half_p0_minus_pq(const PinchSequence& seq) {
    return exact_div(seq.p0() - seq.p(seq.n()) * seq.q(seq.n()), 2, "half_p0_minus_pq");
}

/// upsilon = n/2 + (p0 - pq)/4, asserting integrality and n = (p0-pq)/2 (mod 2).
inline Integer upsilon_closed(const PinchSequence& seq) {
    const std::size_t n = seq.n();
    if (n == 0) return 0;
    const Integer h = half_p0_minus_pq(seq);
    const Integer n_int = static_cast<unsigned long>(n);
    if (mod_small(n_int - h, 2) != 0) {
        throw ConsistencyError("upsilon_closed: parity n = (p0-pq)/2 (mod 2) fails for " + to_string(seq.top()));
    }
    return exact_div(2 * n_int + seq.p0() - seq.p(n) * seq.q(n), 4, "upsilon_closed");
}

inline Integer signature_closed(const PinchSequence& seq) {
    const std::size_t n = seq.n();
    if (n == 0) return 0;
    const Integer base = half_p0_minus_pq(seq);
    const Integer n_int = static_cast<unsigned long>(n);
    const int e1 = seq.eps(1);

    if (is_odd(seq.p(n))) {
        const Integer bracket = n_int - 2 * alternating_sum(n, index_set_I(seq));
        return q1_matches_eps1(seq) ? Integer(base - bracket) : Integer(base + bracket);
    }
    if (n == 1) return base - e1;
    const Integer bracket = n_int - 2 * alternating_sum(n, index_set_J(seq));
    if (e1 * seq.eps(2) == 1) return base - e1 * bracket;
    return base - 2 * e1 + e1 * bracket;
}

/// upsilon - sigma/2 directly from the pinch data.
inline Integer gap_closed(const PinchSequence& seq) {
    const std::size_t n = seq.n();
    if (n == 0) return 0;
    const Integer n_int = static_cast<unsigned long>(n);

    if (is_odd(seq.p(n))) {
        const Integer s = alternating_sum(n, index_set_I(seq));
        return q1_matches_eps1(seq) ? Integer(n_int - s) : s;
    }
    const int e1 = seq.eps(1);
    if (n == 1) return e1 == 1 ? 1 : 0;
    const int e2 = seq.eps(2);
    const Integer s = alternating_sum(n, index_set_J(seq));
    if (e1 == 1 && e2 == 1) return n_int - s;
    if (e1 == 1) return 1 + s;
    if (e2 == 1) return n_int - 1 - s;
    return s;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/**
 * Invariants of the positive torus knot underlying the input.
 *
 * sigma and upsilon are those of the unmirrored knot; the mirror negates both
 * (signed_sigma/signed_upsilon) and leaves the gap's absolute value and the
 * 4-genus bounds unchanged.
 */
struct InvariantReport {
    TorusKnot knot;
    std::size_t n = 0;
    Integer sigma;
    Integer upsilon;
    Integer gap;
    Integer oss_lower;
    Integer gamma4_predicted;
    Integer gamma4_lower;
    Integer gamma4_upper;

    Integer signed_sigma() const { return knot.mirrored ? Integer(-sigma) : sigma; }
    Integer signed_upsilon() const { return knot.mirrored ? Integer(-upsilon) : upsilon; }

    bool operator==(const InvariantReport&) const = default;
};

enum class CheckLevel {
    Fast,  ///< closed formulas only
    Full,  ///< also the recursions, with every identity asserted
};

inline InvariantReport report(const PinchSequence& seq, CheckLevel level = CheckLevel::Full) {
    InvariantReport r;
    r.knot = seq.top();
    r.n = seq.n();
    r.sigma = signature_closed(seq);
    r.upsilon = upsilon_closed(seq);
    r.gap = gap_closed(seq);

    if (is_odd(r.sigma)) throw ConsistencyError("report: odd signature for " + to_string(r.knot));
    if (level == CheckLevel::Full) {
        const Integer sig_rec = signature_recursive(r.knot);
        const Integer ups_rec = upsilon_recursive(r.knot);
        if (sig_rec != r.sigma) {
            throw ConsistencyError("report: signature closed " + r.sigma.get_str() + " != recursive " +
                                   sig_rec.get_str() + " for " + to_string(r.knot));
        }
        if (ups_rec != r.upsilon) {
            throw ConsistencyError("report: upsilon closed " + r.upsilon.get_str() + " != recursive " +
                                   ups_rec.get_str() + " for " + to_string(r.knot));
        }
    }
    if (2 * r.gap != 2 * r.upsilon - r.sigma) {
        throw ConsistencyError("report: gap " + r.gap.get_str() + " != upsilon - sigma/2 for " + to_string(r.knot));
    }
    const Integer n_int = static_cast<unsigned long>(r.n);
    if (r.gap < 0 || r.gap > n_int) {
        throw ConsistencyError("report: gap " + r.gap.get_str() + " outside [0, n] for " + to_string(r.knot));
    }

    r.oss_lower = abs(r.gap);
    r.gamma4_predicted = n_int;
    r.gamma4_lower = r.oss_lower;
    r.gamma4_upper = n_int;
    return r;
}

inline InvariantReport report(const TorusKnot& k, CheckLevel level = CheckLevel::Full) {
    return report(pinch_sequence(k), level);
}

// ---------------------------------------------------------------------------
// Stage identities
// ---------------------------------------------------------------------------

/**
 * For each k = 1..n, with x = rho_{k,n} and y = rho_{k+1,n}:
 *
 *     upsilon(T(x+y, x-y)) = (n-k)/2 + (y^2 - x^2 + 1)/4
 *     upsilon(T(x-y, 2y))  = (n-k + y^2 - x*y)/2
 *     upsilon(T(x+y, 2y))  = (n-k - y^2 - x*y)/2
 *
 * Left sides by upsilon_recursive, right sides evaluated scaled by 4.
 */
struct StageCheck {
    enum class Form { SumDiff, DiffDouble, SumDouble };

    std::size_t k = 0;
    Form form = Form::SumDiff;
    Integer a;
    Integer b;
    Integer expected4;  ///< 4 * closed value
    Integer actual;     ///< upsilon_recursive(a, b)

    bool ok() const { return 4 * actual == expected4; }
};

inline const char* to_string(StageCheck::Form f) {
    switch (f) {
        case StageCheck::Form::SumDiff: return "T(x+y,x-y)";
        case StageCheck::Form::DiffDouble: return "T(x-y,2y)";
        case StageCheck::Form::SumDouble: return "T(x+y,2y)";
    }
    return "?";
}

struct StageReport {
    std::vector<StageCheck> checks;

    bool ok() const {
        for (const auto& c : checks) {
            if (!c.ok()) return false;
        }
        return true;
    }

    std::vector<StageCheck> failures() const {
        std::vector<StageCheck> out;
        for (const auto& c : checks) {
            if (!c.ok()) out.push_back(c);
        }
        return out;
    }
};

inline StageReport verify_stage_identities(const PinchSequence& seq) {
    StageReport rep;
    const std::size_t n = seq.n();
    if (n == 0) return rep;
    const RhoTable rho = rho_table(seq, n);
    for (std::size_t k = 1; k <= n; ++k) {
        const Integer& x = rho.rho(k, n);
        const Integer& y = rho.rho(k + 1, n);
        const Integer nk = static_cast<unsigned long>(n - k);

        auto add = [&](StageCheck::Form f, Integer a, Integer b, Integer expected4) {
            StageCheck c;
            c.k = k;
            c.form = f;
            c.actual = upsilon_recursive(a, b);
            c.a = std::move(a);
            c.b = std::move(b);
            c.expected4 = std::move(expected4);
            rep.checks.push_back(std::move(c));
        };
        add(StageCheck::Form::SumDiff, x + y, x - y, 2 * nk + y * y - x * x + 1);
        add(StageCheck::Form::DiffDouble, x - y, 2 * y, 2 * (nk + y * y - x * y));
        add(StageCheck::Form::SumDouble, x + y, 2 * y, 2 * (nk - y * y - x * y));
    }
    return rep;
}

}  // namespace pinchcalc
