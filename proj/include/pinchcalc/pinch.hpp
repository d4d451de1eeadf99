#pragma once

/**
 * @file pinch.hpp
 * @brief Pinch moves on torus knots, full reduction sequences, and the
 *        inverse construction from seed data.
 *
 * A pinch move sends T(p,q) to T(|p-2t|, |q-2h|), where (t,h) is the unique
 * solution of p*h - q*t = 1 with 1 <= h <= q-1. Its sign is sign(p-2t); the
 * single degenerate case p-2t = 0 happens only for T(2,l), and is assigned
 * the sign -1 (this is the only sign compatible with reaching T(0,1)).
 *
 * Iterating until the second coordinate becomes 1 gives the chain
 *
 *     T(p_n,q_n) -e_n-> T(p_{n-1},q_{n-1}) -> ... -e_1-> T(p_0,1)
 *
 * which is equivalent to the seed {n, p_0, q_1, e_1..e_n, m_1..m_{n-1}}:
 *
 *     p_1 = p_0 q_1 - 2 e_1,   q_0 = 1,
 *     x_k = m_{k-1} x_{k-1} - e_{k-1} e_k x_{k-2}    (x = p or q, k >= 2),
 *
 * with q_1 >= 3 odd, p_0 in {0,1} forcing e_1 = -1, and every m_k even >= 2.
 */

#include "core.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pinchcalc {

/// Seed data violates one of the constraints of the inverse construction.
class ConstraintError : public std::invalid_argument {
public:
    enum class Constraint {
        P0Nonnegative,     ///< p0 >= 0
        SmallP0Sign,       ///< (b) p0 in {0,1} requires eps1 = -1
        Q1OddAtLeast3,     ///< (c) q1 odd and >= 3
        MEvenAtLeast2,     ///< every m_k even and >= 2
        Lengths,           ///< |eps| = n, |ms| = n - 1
        SignValue,         ///< eps_k in {-1, +1}
    };

    ConstraintError(Constraint c, const std::string& what) : std::invalid_argument(what), constraint_(c) {}

    Constraint constraint() const noexcept { return constraint_; }

private:
    Constraint constraint_;
};

struct PinchStep {
    TorusKnot from;
    TorusKnot to;
    Integer t;
    Integer h;
    int epsilon = 0;
};

struct SeedData {
    std::size_t n = 0;
    Integer p0;
    Integer q1;              ///< unused when n == 0
    std::vector<int> eps;    ///< eps_1 .. eps_n
    std::vector<Integer> ms; ///< m_1 .. m_{n-1}

    bool operator==(const SeedData&) const = default;
};

/**
 * The full record of a reduction to the unknot.
 *
 * Storage is in reduction order (the input knot first, T(p_0,1) last); all
 * accessors take the ascending index k used by the recursions, so p(n) is the
 * input knot and p(0) the unknot parameter.
 */
class PinchSequence {
public:
    PinchSequence() = default;

    /// chain[i] = (p_{n-i}, q_{n-i}); step_eps[i] = e_{n-i}; ms ascending (m_1 first).
    PinchSequence(std::vector<std::pair<Integer, Integer>> chain, std::vector<int> step_eps,
                  std::vector<Integer> ms, bool mirrored = false)
        : chain_(std::move(chain)), step_eps_(std::move(step_eps)), ms_(std::move(ms)), mirrored_(mirrored) {
        if (chain_.empty() || chain_.size() != step_eps_.size() + 1) {
            throw std::invalid_argument("PinchSequence: chain must have exactly n+1 knots");
        }
    }

    std::size_t n() const { return step_eps_.size(); }

    const Integer& p(std::size_t k) const { return chain_.at(index(k)).first; }
    const Integer& q(std::size_t k) const { return chain_.at(index(k)).second; }
    TorusKnot knot(std::size_t k) const { return {p(k), q(k), false}; }

    /// Sign of the move T(p_k,q_k) -> T(p_{k-1},q_{k-1}), 1 <= k <= n.
    int eps(std::size_t k) const {
        if (k < 1 || k > n()) throw std::out_of_range("PinchSequence::eps: index out of range");
        return step_eps_[n() - k];
    }

    /// m_k for 1 <= k <= n-1.
    const Integer& m(std::size_t k) const {
        if (k < 1 || k >= n()) throw std::out_of_range("PinchSequence::m: index out of range");
        return ms_[k - 1];
    }

    const Integer& p0() const { return chain_.back().first; }
    /// q_1; defined for n >= 1.
    const Integer& q1() const { return q(1); }

    const std::vector<Integer>& ms() const { return ms_; }
    std::vector<int> epsilons() const { return {step_eps_.rbegin(), step_eps_.rend()}; }
    const std::vector<std::pair<Integer, Integer>>& chain() const { return chain_; }

    bool mirrored() const { return mirrored_; }
    TorusKnot top() const { return {p(n()), q(n()), mirrored_}; }

    /// True when the chain visits T(p,q) (as stored, unmirrored).
    bool visits(const Integer& p, const Integer& q) const {
        for (const auto& [a, b] : chain_) {
            if (a == p && b == q) return true;
        }
        return false;
    }

    bool operator==(const PinchSequence& o) const {
        return chain_ == o.chain_ && step_eps_ == o.step_eps_ && ms_ == o.ms_;
    }

private:
    std::size_t index(std::size_t k) const {
        if (k > n()) throw std::out_of_range("PinchSequence: knot index out of range");
        return n() - k;
    }

    std::vector<std::pair<Integer, Integer>> chain_;
    std::vector<int> step_eps_;
    std::vector<Integer> ms_;
    bool mirrored_ = false;
};

// ---------------------------------------------------------------------------
// Single moves
// ---------------------------------------------------------------------------

struct PinchParams {
    Integer t;
    Integer h;
};

/// Unique (t,h) with p*h - q*t = 1 and 1 <= h <= q-1. Works on the pair as given.
inline PinchParams pinch_params(const TorusKnot& k) {
    if (k.p <= 1 || k.q <= 1) {
        throw InvalidKnot(InvalidKnot::Reason::Unknot, "pinch_params: " + to_string(k) + " is the unknot");
    }
    Integer h = mod_inverse(k.p, k.q);
    Integer t = exact_div(k.p * h - 1, k.q, "pinch_params");
    return {std::move(t), std::move(h)};
}

inline PinchStep pinch_move(const TorusKnot& k) {
    PinchParams pr = pinch_params(k);
    Integer r = k.p - 2 * pr.t;
    Integer s = k.q - 2 * pr.h;
    const int eps = sgn(r) > 0 ? 1 : -1;
    PinchStep step;
    step.from = k;
    step.to = TorusKnot{abs(r), abs(s), k.mirrored};
    step.t = std::move(pr.t);
    step.h = std::move(pr.h);
    step.epsilon = eps;
    return step;
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/**
 * m_k = (p_{k+1} + e_k e_{k+1} p_{k-1}) / p_k for k = 1..n-1, read off the knots
 * of an existing chain (the ms stored in the sequence are ignored).
 */
inline std::vector<Integer> derive_ms(const PinchSequence& seq) {
    std::vector<Integer> ms;
    if (seq.n() < 2) return ms;
    ms.reserve(seq.n() - 1);
    for (std::size_t k = 1; k + 1 <= seq.n(); ++k) {
        Integer num = seq.p(k + 1) + seq.eps(k) * seq.eps(k + 1) * seq.p(k - 1);
        Integer m = exact_div(num, seq.p(k), "derive_ms");
        if (is_odd(m) || m < 2) {
            throw ConsistencyError("derive_ms: m_" + std::to_string(k) + " = " + m.get_str() +
                                   " is not an even integer >= 2");
        }
        ms.push_back(std::move(m));
    }
    return ms;
}

inline PinchSequence pinch_sequence(const TorusKnot& input) {
    const TorusKnot k = normalize(input);
    std::vector<std::pair<Integer, Integer>> chain{{k.p, k.q}};
    std::vector<int> eps;
    TorusKnot cur{k.p, k.q, false};
    while (cur.q != 1) {
        PinchStep st = pinch_move(cur);
        eps.push_back(st.epsilon);
        chain.emplace_back(st.to.p, st.to.q);
        cur = std::move(st.to);
    }
    PinchSequence bare(chain, eps, {}, k.mirrored);
    return PinchSequence(std::move(chain), std::move(eps), derive_ms(bare), k.mirrored);
}

/// The moves of a sequence, first move (from the input knot) first.
inline std::vector<PinchStep> pinch_steps(const PinchSequence& seq) {
    std::vector<PinchStep> out;
    out.reserve(seq.n());
    for (std::size_t k = seq.n(); k >= 1; --k) out.push_back(pinch_move(seq.knot(k)));
    return out;
}

inline SeedData seed_of(const PinchSequence& seq) {
    SeedData s;
    s.n = seq.n();
    s.p0 = seq.p0();
    s.q1 = seq.n() >= 1 ? seq.q1() : Integer(0);
    s.eps = seq.epsilons();
    s.ms = seq.ms();
    return s;
}

inline void validate_seed(const SeedData& seed) {
    using C = ConstraintError::Constraint;
    if (seed.eps.size() != seed.n || seed.ms.size() != (seed.n == 0 ? 0 : seed.n - 1)) {
        throw ConstraintError(C::Lengths, "seed needs n signs and n-1 multipliers (n=" + std::to_string(seed.n) +
                                              ", got " + std::to_string(seed.eps.size()) + " signs and " +
                                              std::to_string(seed.ms.size()) + " multipliers)");
    }
    if (seed.p0 < 0) throw ConstraintError(C::P0Nonnegative, "p0 must be >= 0, got " + seed.p0.get_str());
    if (seed.n == 0) return;
    for (int e : seed.eps) {
        if (e != 1 && e != -1) throw ConstraintError(C::SignValue, "signs must be +1 or -1, got " + std::to_string(e));
    }
    if (is_even(seed.q1) || seed.q1 < 3) {
        throw ConstraintError(C::Q1OddAtLeast3, "constraint (c): q1 must be odd and >= 3, got " + seed.q1.get_str());
    }
    if ((seed.p0 == 0 || seed.p0 == 1) && seed.eps[0] != -1) {
        throw ConstraintError(C::SmallP0Sign,
                              "constraint (b): p0 = " + seed.p0.get_str() + " requires eps1 = -1");
    }
    for (std::size_t i = 0; i < seed.ms.size(); ++i) {
        if (is_odd(seed.ms[i]) || seed.ms[i] < 2) {
            throw ConstraintError(C::MEvenAtLeast2, "m_" + std::to_string(i + 1) + " must be an even integer >= 2, got " +
                                                        seed.ms[i].get_str());
        }
    }
}

/// Builds the chain from seed data. Inverse of seed_of(pinch_sequence(.)).
inline PinchSequence synthesize(const SeedData& seed) {
    validate_seed(seed);
    const std::size_t n = seed.n;
    std::vector<Integer> ps(n + 1), qs(n + 1);
    ps[0] = seed.p0;
    qs[0] = 1;
    if (n >= 1) {
        ps[1] = seed.p0 * seed.q1 - 2 * seed.eps[0];
        qs[1] = seed.q1;
    }
    for (std::size_t k = 2; k <= n; ++k) {
        const Integer& m = seed.ms[k - 2];
        const int ee = seed.eps[k - 2] * seed.eps[k - 1];
        ps[k] = m * ps[k - 1] - ee * ps[k - 2];
        qs[k] = m * qs[k - 1] - ee * qs[k - 2];
    }
    std::vector<std::pair<Integer, Integer>> chain;
    chain.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) chain.emplace_back(ps[n - i], qs[n - i]);
    std::vector<int> step_eps(seed.eps.rbegin(), seed.eps.rend());
    return PinchSequence(std::move(chain), std::move(step_eps), seed.ms);
}

inline TorusKnot synthesize_knot(const SeedData& seed) { return synthesize(seed).top(); }

// ---------------------------------------------------------------------------
// The doubly indexed table rho_{k,n}
// ---------------------------------------------------------------------------

/**
 * rho_{k,n} for 0 <= n <= max_n and 1 <= k <= n+1:
 *
 *     rho_{1,n} = e_1 (p_0 q_n - p_n) / 2
 *     rho_{2,n} = e_1 e_2 (q_1 rho_{1,n} - q_n)
 *     rho_{k,n} = e_{k-1} e_k (m_{k-2} rho_{k-1,n} - rho_{k-2,n}),   k >= 3
 *
 * Entries whose defining formula needs a sign beyond e_N (N the chain length)
 * are the boundary values rho_{N+1,N} = 0 (and rho_{1,0} = 0 when N = 0).
 */
class RhoTable {
public:
    RhoTable() = default;
    explicit RhoTable(std::vector<std::vector<Integer>> rows) : rows_(std::move(rows)) {}

    std::size_t max_n() const { return rows_.empty() ? 0 : rows_.size() - 1; }

    bool defined(std::size_t k, std::size_t n) const { return k >= 1 && n < rows_.size() && k <= n + 1; }

    const Integer& rho(std::size_t k, std::size_t n) const {
        if (!defined(k, n)) {
            throw std::out_of_range("RhoTable: rho(" + std::to_string(k) + "," + std::to_string(n) + ") is not defined");
        }
        return rows_[n][k - 1];
    }
    const Integer& r(std::size_t n) const { return rho(1, n); }
    const Integer& s(std::size_t n) const { return rho(2, n); }

private:
    std::vector<std::vector<Integer>> rows_;
};

inline RhoTable rho_table(const PinchSequence& seq, std::size_t max_n) {
    const std::size_t N = seq.n();
    if (max_n > N) {
        throw std::out_of_range("rho_table: max_n = " + std::to_string(max_n) + " exceeds chain length " + std::to_string(N));
    }
    std::vector<std::vector<Integer>> rows(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
        auto& row = rows[n];
        row.resize(n + 1);
        for (std::size_t k = 1; k <= n + 1; ++k) {
            Integer& out = row[k - 1];
            if (k > N || N == 0) {
                out = 0;
            } else if (k == 1) {
                out = seq.eps(1) * exact_div(seq.p0() * seq.q(n) - seq.p(n), 2, "rho_table: r_n");
            } else if (k == 2) {
                out = seq.eps(1) * seq.eps(2) * (seq.q1() * row[0] - seq.q(n));
            } else {
                out = seq.eps(k - 1) * seq.eps(k) * (seq.m(k - 2) * row[k - 2] - row[k - 3]);
            }
        }
    }
    return RhoTable(std::move(rows));
}

inline RhoTable rho_table(const SeedData& seed, std::size_t max_n) { return rho_table(synthesize(seed), max_n); }


// ---------------------------------------------------------------------------
// Structural checks (empty result means every law holds)
// ---------------------------------------------------------------------------

/**
 * Laws of a single move from (p,q) to (r,s):
 *   p h - q t = 1 with 1 <= h <= q-1 and 0 <= t <= p-1,
 *   (p-2t)(q-2h) >= 0 with equality iff p = 2 (or q = 2 for pairs not in
 *   normal form),
 *   r q - s p = 2 eps.
 */
inline std::vector<std::string> step_violations(const PinchStep& st) {
    std::vector<std::string> out;
    const Integer& p = st.from.p;
    const Integer& q = st.from.q;
    if (p * st.h - q * st.t != 1) out.push_back("ph - qt != 1");
    if (st.h < 1 || st.h > q - 1) out.push_back("h outside 1..q-1");
    if (st.t < 0 || st.t > p - 1) out.push_back("t outside 0..p-1");
    const Integer prod = (p - 2 * st.t) * (q - 2 * st.h);
    if (prod < 0) out.push_back("(p-2t)(q-2h) < 0");
    if ((prod == 0) != (p == 2 || q == 2)) out.push_back("(p-2t)(q-2h) = 0 does not match p = 2");
    if (st.to.p * q - st.to.q * p != 2 * st.epsilon) out.push_back("rq - sp != 2 eps");
    return out;
}

/// Recursions linking consecutive knots, parity preservation and growth of q.
inline std::vector<std::string> sequence_violations(const PinchSequence& seq) {
    std::vector<std::string> out;
    const std::size_t n = seq.n();
    if (seq.q(0) != 1) out.push_back("q_0 != 1");
    for (std::size_t k = 0; k <= n; ++k) {
        if (is_even(seq.q(k))) out.push_back("q_" + std::to_string(k) + " even");
        if (is_even(seq.p(k)) != is_even(seq.p(n))) out.push_back("parity of p_" + std::to_string(k) + " changed");
        if (k >= 1 && seq.q(k - 1) >= seq.q(k)) out.push_back("q not strictly increasing at " + std::to_string(k));
    }
    if (n >= 1) {
        if (seq.p(1) != seq.p0() * seq.q1() - 2 * seq.eps(1)) out.push_back("p_1 != p_0 q_1 - 2 eps_1");
        if (is_even(seq.q1()) || seq.q1() < 3) out.push_back("q_1 not odd >= 3");
        if ((seq.p0() == 0 || seq.p0() == 1) && seq.eps(1) != -1) out.push_back("p_0 in {0,1} with eps_1 = +1");
    }
    for (std::size_t k = 2; k <= n; ++k) {
        const Integer& m = seq.m(k - 1);
        const int ee = seq.eps(k - 1) * seq.eps(k);
        if (is_odd(m) || m < 2) out.push_back("m_" + std::to_string(k - 1) + " not even >= 2");
        if (seq.p(k) != m * seq.p(k - 1) - ee * seq.p(k - 2)) out.push_back("p recursion fails at " + std::to_string(k));
        if (seq.q(k) != m * seq.q(k - 1) - ee * seq.q(k - 2)) out.push_back("q recursion fails at " + std::to_string(k));
    }
    return out;
}

/// Boundary values, monotonicity in both indices, 2 r_n < q_n, rho_{k,n} = n-k+1 (mod 2).
inline std::vector<std::string> rho_violations(const PinchSequence& seq, const RhoTable& rho) {
    std::vector<std::string> out;
    const std::size_t N = rho.max_n();
    auto at = [](std::size_t k, std::size_t n) { return "(" + std::to_string(k) + "," + std::to_string(n) + ")"; };
    for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t k = 1; k <= n + 1; ++k) {
            const Integer& v = rho.rho(k, n);
            if (k == n + 1 && v != 0) out.push_back("rho" + at(k, n) + " != 0");
            if (k == n && v != 1) out.push_back("rho" + at(k, n) + " != 1");
            if (n >= 1 && k + 1 == n && k < seq.n() && v != seq.m(k)) out.push_back("rho" + at(k, n) + " != m_k");
            // rho_{k,k-1} = 0 and rho_{k,k} = 1 fix the alternation: rho_{k,n} is odd iff n-k is even.
            if (mod_small(v + static_cast<long>(n) - static_cast<long>(k), 2) != 1) {
                out.push_back("rho" + at(k, n) + " parity");
            }
            if (n >= 1 && k <= n && !(rho.rho(k, n - 1) < v)) out.push_back("rho not increasing in n at " + at(k, n));
            if (k >= 2 && !(v < rho.rho(k - 1, n))) out.push_back("rho not decreasing in k at " + at(k, n));
        }
        if (n >= 1 && !(2 * rho.r(n) < seq.q(n))) out.push_back("2 r_n >= q_n at n=" + std::to_string(n));
    }
    return out;
}

}  // namespace pinchcalc
