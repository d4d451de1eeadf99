#pragma once

/**
 * @file classify.hpp
 * @brief Status of each torus knot against the prediction gamma4 = n, and
 *        generators for the named families.
 *
 * The lower bound gap = upsilon - sigma/2 and the upper bound n (length of
 * the pinch sequence) pin gamma4 down exactly when they meet. Two structural
 * criteria in terms of pinch data say when that happens:
 *
 *   gap = n     p odd:  q1 = eps1 (mod 4) and every m_k = 2 (mod 4)
 *               p even: every eps_k = +1
 *
 *   gap = n-1   p odd, q1 = eps1 (mod 4): either I = {n-1}, or I is exactly two
 *                 consecutive indices
 *               p odd, q1 != eps1 (mod 4): I = {1}, or n = 1
 *               p even: exactly one eps_k = -1
 *
 * where I = {k : m_k = 0 (mod 4)}. classify() evaluates these conditions and
 * checks them against the computed gap; a mismatch is a ConsistencyError.
 */

#include "core.hpp"
#include "invariants.hpp"
#include "pinch.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pinchcalc {

enum class Tag {
    Unknot,
    MoebiusBand,
    VerifiedEqualsN,
    GapNMinusOne,
    CounterexampleDescended,
    BoundsOnly,
};

inline const char* to_string(Tag t) {
    switch (t) {
        case Tag::Unknot: return "Unknot";
        case Tag::MoebiusBand: return "MoebiusBand";
        case Tag::VerifiedEqualsN: return "VerifiedEqualsN";
        case Tag::GapNMinusOne: return "GapNMinusOne";
        case Tag::CounterexampleDescended: return "CounterexampleDescended";
        case Tag::BoundsOnly: return "BoundsOnly";
    }
    return "?";
}

/// T(q*m + sign*2, q) with q odd >= 3, m >= 0.
struct MoebiusForm {
    Integer q;
    Integer m;
    int sign = 1;

    TorusKnot knot() const { return normalize(q * m + 2 * sign, q); }
};

struct ClassificationDetail {
    std::size_t n = 0;
    Integer gap;
    Integer gamma4_lower;
    Integer gamma4_upper;
    bool p_odd = false;

    std::vector<std::size_t> index_I;
    std::vector<std::size_t> index_J;

    bool equals_n_conditions = false;     ///< structural criterion for gap = n
    bool n_minus_one_conditions = false;  ///< structural criterion for gap = n-1
    std::string n_minus_one_clause;       ///< which alternative fired, empty if none
    bool descends_from_4_9 = false;

    std::optional<MoebiusForm> moebius;
    std::optional<Integer> known_gamma4;   ///< established value where one is known
    std::optional<Integer> improved_upper; ///< upper bound below n

    std::vector<std::string> notes;
};

struct Classification {
    Tag tag = Tag::BoundsOnly;
    ClassificationDetail detail;
};

namespace detail {

inline bool equals_n_conditions(const PinchSequence& seq, const std::vector<std::size_t>& I) {
    if (is_odd(seq.p(seq.n()))) return q1_matches_eps1(seq) && I.empty();
    for (std::size_t k = 1; k <= seq.n(); ++k) {
        if (seq.eps(k) != 1) return false;
    }
    return true;
}

/// Returns a description of the alternative that holds, or empty.
inline std::string n_minus_one_clause(const PinchSequence& seq, const std::vector<std::size_t>& I) {
    const std::size_t n = seq.n();
    if (is_odd(seq.p(n))) {
        if (q1_matches_eps1(seq)) {
            if (n >= 2 && I.size() == 1 && I[0] == n - 1) return "p odd, q1 = eps1 (mod 4), I = {n-1}";
            if (I.size() == 2 && I[1] == I[0] + 1) return "p odd, q1 = eps1 (mod 4), I = {k, k+1}";
            return {};
        }
        if (n == 1) return "p odd, q1 != eps1 (mod 4), n = 1";
        if (I.size() == 1 && I[0] == 1) return "p odd, q1 != eps1 (mod 4), I = {1}";
        return {};
    }
    std::size_t negatives = 0;
    for (std::size_t k = 1; k <= n; ++k) negatives += seq.eps(k) == -1 ? 1 : 0;
    return negatives == 1 ? "p even, exactly one eps_k = -1" : std::string{};
}

}  // namespace detail

inline Classification classify(const PinchSequence& seq, const InvariantReport& rep) {
    Classification c;
    ClassificationDetail& d = c.detail;
    const std::size_t n = seq.n();
    d.n = n;
    d.gap = rep.gap;
    d.gamma4_lower = rep.gamma4_lower;
    d.gamma4_upper = rep.gamma4_upper;

    if (n == 0) {
        c.tag = Tag::Unknot;
        d.known_gamma4 = Integer(0);
        return c;
    }

    const Integer n_int = static_cast<unsigned long>(n);
    d.p_odd = is_odd(seq.p(n));
    d.index_I = index_set_I(seq);
    d.index_J = index_set_J(seq);
    d.equals_n_conditions = detail::equals_n_conditions(seq, d.index_I);
    d.n_minus_one_clause = detail::n_minus_one_clause(seq, d.index_I);
    d.n_minus_one_conditions = !d.n_minus_one_clause.empty();
    d.descends_from_4_9 = seq.visits(4, 9);

    if (d.equals_n_conditions != (rep.gap == n_int)) {
        throw ConsistencyError("classify: gap = n criterion disagrees with gap " + rep.gap.get_str() + " for " +
                               to_string(rep.knot));
    }
    if (d.n_minus_one_conditions != (rep.gap == n_int - 1)) {
        throw ConsistencyError("classify: gap = n-1 criterion disagrees with gap " + rep.gap.get_str() + " for " +
                               to_string(rep.knot));
    }

    if (d.descends_from_4_9) {
        if (d.equals_n_conditions) {
            throw ConsistencyError("classify: " + to_string(rep.knot) + " descends from T(4,9) but has gap = n");
        }
        // T(4,9) bounds a Moebius band, so replacing the last two pinches by it saves one.
        d.improved_upper = n_int - 1;
        d.notes.push_back("pinch sequence passes through T(4,9), which has gamma4 = 1; gamma4 <= n-1");
        if (seq.p(n) == 4 && seq.q(n) == 9) d.known_gamma4 = Integer(1);
    }

    if (n == 1) {
        c.tag = Tag::MoebiusBand;
        d.moebius = MoebiusForm{seq.q1(), seq.p0(), -seq.eps(1)};
        d.known_gamma4 = Integer(1);
        return c;
    }
    if (d.equals_n_conditions) {
        c.tag = Tag::VerifiedEqualsN;
        d.known_gamma4 = n_int;
        return c;
    }
    if (d.n_minus_one_conditions) {
        c.tag = Tag::GapNMinusOne;
        if (d.improved_upper) d.known_gamma4 = n_int - 1;
        return c;
    }
    c.tag = d.descends_from_4_9 ? Tag::CounterexampleDescended : Tag::BoundsOnly;
    return c;
}

inline Classification classify(const TorusKnot& k) {
    const PinchSequence seq = pinch_sequence(k);
    return classify(seq, report(seq));
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// T(2k+2, 2k+1): every pinch has sign +1, gap = n = k.
inline TorusKnot batson_family(unsigned long k) {
    if (k < 1) throw std::invalid_argument("batson_family: k must be >= 1");
    const Integer kk = k;
    return TorusKnot{2 * kk + 2, 2 * kk + 1, false};
}

/**
 * T(p0 + k(p0(q1-1) - 2 eps), 1 + k(q1-1)), the knots with all m = 2 and all
 * signs equal to eps. Normalized on return.
 */
inline TorusKnot example_family(const Integer& p0, const Integer& q1, int eps, unsigned long k) {
    using C = ConstraintError::Constraint;
    if (eps != 1 && eps != -1) throw ConstraintError(C::SignValue, "example_family: eps must be +1 or -1");
    if (p0 < 0) throw ConstraintError(C::P0Nonnegative, "example_family: p0 must be >= 0");
    if (is_even(q1) || q1 < 3) {
        throw ConstraintError(C::Q1OddAtLeast3, "constraint (c): q1 must be odd and >= 3, got " + q1.get_str());
    }
    if (p0 == 0 && eps == 1) {
        throw ConstraintError(C::SmallP0Sign, "constraint (b): p0 = 0 requires eps = -1");
    }
    const Integer kk = k;
    return normalize(p0 + kk * (p0 * (q1 - 1) - 2 * eps), 1 + kk * (q1 - 1));
}

/// Side conditions under which every member of example_family has gap = n = k.
inline bool example_family_verified(const Integer& p0, const Integer& q1, int eps) {
    if (is_even(p0)) return p0 >= 2 && eps == 1;
    return mod_small(q1 - eps, 4) == 0;
}

/// Seed prefix shared by every knot whose sequence passes through T(4,9).
inline SeedData counterexample_seed(const std::vector<Integer>& ms, const std::vector<int>& eps) {
    using C = ConstraintError::Constraint;
    if (eps.size() < 2 || ms.size() + 1 != eps.size()) {
        throw ConstraintError(C::Lengths, "counterexample_family: need n >= 2 signs and n-1 multipliers");
    }
    if (eps[0] != -1 || eps[1] != -1) {
        throw ConstraintError(C::SignValue, "counterexample_family: eps1 = eps2 = -1 is required to pass T(4,9)");
    }
    if (ms[0] != 2) {
        throw ConstraintError(C::MEvenAtLeast2, "counterexample_family: m1 = 2 is required to pass T(4,9)");
    }
    SeedData seed;
    seed.n = eps.size();
    seed.p0 = 0;
    seed.q1 = 5;
    seed.eps = eps;
    seed.ms = ms;
    validate_seed(seed);
    return seed;
}

inline TorusKnot counterexample_family(std::size_t n, const std::vector<Integer>& ms, const std::vector<int>& eps) {
    if (n != eps.size()) {
        throw ConstraintError(ConstraintError::Constraint::Lengths, "counterexample_family: |eps| must equal n");
    }
    return synthesize_knot(counterexample_seed(ms, eps));
}

/// All m = 2, all eps = -1: T(2n, 4n+1).
inline TorusKnot counterexample_family(std::size_t n) {
    if (n < 2) throw std::invalid_argument("counterexample_family: n must be >= 2");
    return counterexample_family(n, std::vector<Integer>(n - 1, Integer(2)), std::vector<int>(n, -1));
}

}  // namespace pinchcalc
