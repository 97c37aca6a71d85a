#pragma once

// Small helpers over GMP integers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/errors.hpp"

namespace dioph {

using Integer = mpz_class;
using Tuple = std::vector<Integer>;

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// floor(sqrt(a)) for a >= 0.
inline Integer isqrt(const Integer& a) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// ceil(sqrt(a)) for a >= 0.
inline Integer isqrt_ceil(const Integer& a) {
    Integer r = isqrt(a);
    if (r * r < a) ++r;
    return r;
}

inline bool is_square(const Integer& a) {
    return sgn(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Integer pow_ui(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer pow2(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

/// 2^(2^k), the tower used by every family in this library.
inline Integer pow2_pow2(unsigned k) {
    if (k >= 40) throw DomainError("exponent 2^" + std::to_string(k) + " is too large");
    return pow2(1UL << k);
}

inline Integer from_u64(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

inline Integer from_u128(unsigned __int128 v) {
    return (from_u64(static_cast<std::uint64_t>(v >> 64)) << 64) + from_u64(static_cast<std::uint64_t>(v));
}

inline std::string to_string(const Integer& a) { return a.get_str(10); }

/// Parses an optionally signed decimal integer; no whitespace, no leading '+'.
inline bool parse_integer(std::string_view text, Integer& out) {
    if (text.empty()) return false;
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) return false;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    return out.set_str(std::string(text), 10) == 0;
}

inline std::string tuple_to_string(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += to_string(t[i]);
    }
    s += ")";
    return s;
}

inline Tuple make_tuple(std::initializer_list<long> values) {
    Tuple t;
    t.reserve(values.size());
    for (long v : values) t.emplace_back(v);
    return t;
}

}  // namespace dioph
