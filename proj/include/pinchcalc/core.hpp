#pragma once

/**
 * @file core.hpp
 * @brief Exact integer utilities and torus-knot normal form.
 *
 * Every quantity in the library is an arbitrary-precision integer. Knots
 * synthesized from pinch data grow exponentially in the number of moves, so
 * fixed-width arithmetic is never used for knot parameters.
 *
 * Normal form of T(p,q): q is odd, and when p is odd as well p > q. The
 * unknot is kept as (p0, 1) with p0 >= 0, which covers (1,1) and (0,1).
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pinchcalc {

using Integer = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Mathematically undefined input (gcd of (0,0), non-invertible residue, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The integer pair does not describe a torus knot.
class InvalidKnot : public std::invalid_argument {
public:
    enum class Reason { NotCoprime, BothEven, Unknot };

    InvalidKnot(Reason reason, const std::string& what)
        : std::invalid_argument(what), reason_(reason) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

/// An identity that the theory guarantees failed to hold. Seeing one means a bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline int sign(const Integer& v) { return sgn(v); }

inline bool is_even(const Integer& v) { return mpz_even_p(v.get_mpz_t()) != 0; }
inline bool is_odd(const Integer& v) { return !is_even(v); }

/// Least nonnegative residue of v modulo m (m > 0).
inline Integer mod_floor(const Integer& v, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Residue of v modulo a small positive modulus, as a machine int in [0, m).
inline long mod_small(const Integer& v, unsigned long m) {
    return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), m));
}

/// Exact quotient; throws ConsistencyError if den does not divide num.
inline Integer exact_div(const Integer& num, const Integer& den, std::string_view what) {
    if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
        throw ConsistencyError(std::string(what) + ": " + num.get_str() + " is not divisible by " +
                               den.get_str());
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

/// Parse a base-10 integer; std::nullopt on malformed text.
inline std::optional<Integer> parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) return std::nullopt;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return std::nullopt;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

/// Fits in a signed 64-bit value.
inline bool fits_int64(const Integer& v) {
    static const Integer lo("-9223372036854775808");
    static const Integer hi("9223372036854775807");
    return v >= lo && v <= hi;
}

// ---------------------------------------------------------------------------
// Extended gcd and modular inverse
// ---------------------------------------------------------------------------

struct ExtGcdResult {
    Integer g;  ///< gcd(a, b) > 0
    Integer x;  ///< a*x + b*y == g
    Integer y;
};

/// Bezout coefficients by the iterative extended Euclidean algorithm.
inline ExtGcdResult ext_gcd(const Integer& a, const Integer& b) {
    if (a == 0 && b == 0) throw DomainError("ext_gcd: gcd(0, 0) is undefined");

    Integer old_r = a, r = b;
    Integer old_x = 1, x = 0;
    Integer old_y = 0, y = 1;
    while (r != 0) {
        Integer quot;
        mpz_fdiv_q(quot.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
        Integer t = old_r - quot * r;
        old_r = std::move(r);
        r = std::move(t);
        t = old_x - quot * x;
        old_x = std::move(x);
        x = std::move(t);
        t = old_y - quot * y;
        old_y = std::move(y);
        y = std::move(t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    return {old_r, old_x, old_y};
}

/// Inverse of a modulo m, in {1, ..., m-1}. Requires m >= 2 and gcd(a, m) = 1.
inline Integer mod_inverse(const Integer& a, const Integer& m) {
    if (m < 2) throw DomainError("mod_inverse: modulus must be at least 2, got " + m.get_str());
    ExtGcdResult e = ext_gcd(mod_floor(a, m), m);
    if (e.g != 1) {
        throw DomainError("mod_inverse: " + a.get_str() + " is not invertible modulo " + m.get_str());
    }
    return mod_floor(e.x, m);
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// ---------------------------------------------------------------------------
// Torus knots
// ---------------------------------------------------------------------------

struct TorusKnot {
    Integer p;
    Integer q;
    bool mirrored = false;

    /// q == 1 after normalization; covers T(p0,1), T(1,1), T(0,1).
    bool is_unknot() const { return q == 1 || p == 1 || p == 0 || q == 0; }

    bool operator==(const TorusKnot& other) const {
        return p == other.p && q == other.q && mirrored == other.mirrored;
    }
};

inline std::ostream& operator<<(std::ostream& os, const TorusKnot& k) {
    os << (k.mirrored ? "mirror T(" : "T(") << k.p << ',' << k.q << ')';
    return os;
}

inline std::string to_string(const TorusKnot& k) {
    return "T(" + k.p.get_str() + "," + k.q.get_str() + ")" + (k.mirrored ? " [mirror]" : "");
}

/// True when (p,q) already satisfies the normal-form invariants.
inline bool is_normal_form(const Integer& p, const Integer& q) {
    if (p < 0 || q < 0) return false;
    if (is_even(q)) return false;
    if (gcd(p, q) != 1) return false;
    if (is_odd(p) && p <= q && !(p == 1 && q == 1)) return false;
    return true;
}

/**
 * Bring an arbitrary integer pair into normal form.
 *
 * Exactly one negative coordinate means the mirror knot; both negative is the
 * reversed orientation, which for torus knots is the same knot.
 */
inline TorusKnot normalize(const Integer& p_in, const Integer& q_in) {
    const bool mirrored = (p_in < 0) != (q_in < 0) && p_in != 0 && q_in != 0;
    Integer p = abs(p_in);
    Integer q = abs(q_in);

    if (p == 0 && q == 0) {
        throw InvalidKnot(InvalidKnot::Reason::NotCoprime, "T(0,0) is not a knot: not coprime");
    }
    if (is_even(p) && is_even(q)) {
        throw InvalidKnot(InvalidKnot::Reason::BothEven,
                          "T(" + p_in.get_str() + "," + q_in.get_str() + ") is not a knot: both even");
    }
    if (gcd(p, q) != 1) {
        throw InvalidKnot(InvalidKnot::Reason::NotCoprime,
                          "T(" + p_in.get_str() + "," + q_in.get_str() + ") is not a knot: not coprime");
    }

    if (is_even(q)) std::swap(p, q);
    if (is_odd(p) && q > p) std::swap(p, q);
    return TorusKnot{std::move(p), std::move(q), mirrored};
}

inline TorusKnot normalize(long long p, long long q) { return normalize(Integer(std::to_string(p)), Integer(std::to_string(q))); }

/// Re-normalizes an existing knot, composing its mirror flag.
inline TorusKnot normalize(const TorusKnot& k) {
    TorusKnot n = normalize(k.p, k.q);
    n.mirrored = n.mirrored != k.mirrored;
    return n;
}

}  // namespace pinchcalc
