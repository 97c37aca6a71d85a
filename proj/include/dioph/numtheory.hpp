#pragma once

// Primality, factorization, divisor sums and factor tables over GMP naturals.
//
// is_prime is deterministic below 3.3e24 (Miller-Rabin with the first 13
// prime bases). Above that it is a strong probable-prime test with 64
// bases, so a composite slips through with probability below 2^-128.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"

namespace dioph {

using Natural = Integer;

struct PrimePower {
    Natural prime;
    unsigned long exponent{0};

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes strictly increasing; value() is the product of the prime powers.
struct Factorization {
    std::vector<PrimePower> factors;

    Natural value() const {
        Natural v = 1;
        for (const auto& f : factors) v *= pow_ui(f.prime, f.exponent);
        return v;
    }

    /// Multiplies every exponent by `k` (factorization of value()^k).
    Factorization power(unsigned long k) const {
        Factorization out = *this;
        for (auto& f : out.factors) f.exponent *= k;
        return out;
    }

    std::string to_string() const {
        if (factors.empty()) return "1";
        std::string s;
        for (const auto& f : factors) {
            if (!s.empty()) s += " * ";
            s += dioph::to_string(f.prime);
            if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
        }
        return s;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Budget ran out with a composite cofactor left. Carries what was found.
class FactorizationIncomplete : public Error {
public:
    FactorizationIncomplete(Factorization partial, Natural cofactor)
        : Error("factorization incomplete: composite cofactor " + dioph::to_string(cofactor) + " remains"),
          partial_(std::move(partial)),
          cofactor_(std::move(cofactor)) {}

    const Factorization& partial() const noexcept { return partial_; }
    const Natural& cofactor() const noexcept { return cofactor_; }

private:
    Factorization partial_;
    Natural cofactor_;
};

namespace detail {

inline const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        constexpr unsigned long limit = 1UL << 16;
        std::vector<char> composite(limit + 1, 0);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= limit; j += i) composite[j] = 1;
        }
        return out;
    }();
    return primes;
}

// Strong probable-prime test to base a; n odd > 3.
inline bool strong_probable_prime(const Natural& n, const Natural& a) {
    Natural d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Natural x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Natural n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == n1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace detail

inline bool is_prime(const Natural& n) {
    if (n < 2) return false;
    for (unsigned long p : detail::small_primes()) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
        if (Natural(p) * p > n) return true;
    }
    static const Natural deterministic_limit("3317044064679887385961981");
    for (unsigned long a : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL, 41UL}) {
        if (!detail::strong_probable_prime(n, Natural(a))) return false;
    }
    if (n < deterministic_limit) return true;
    std::mt19937_64 rng(0x5eed1234abcdULL);
    const Natural span = n - 3;
    for (int round = 0; round < 64; ++round) {
        Natural a;
        mpz_set_ui(a.get_mpz_t(), 0);
        for (int limb = 0; limb < 4; ++limb) {
            a <<= 64;
            a += from_u64(rng());
        }
        a = a % span + 2;
        if (!detail::strong_probable_prime(n, a)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factor tables
// ---------------------------------------------------------------------------

/// Known complete factorizations keyed by the factored value.
class FactorTable {
public:
    void add(const Natural& n, Factorization f) {
        if (f.value() != n)
            throw ValidationError("factor table entry " + to_string(n) + ": product " + to_string(f.value()) +
                                  " does not match");
        for (const auto& pp : f.factors) {
            if (!is_prime(pp.prime))
                throw ValidationError("factor table entry " + to_string(n) + ": " + to_string(pp.prime) +
                                      " is not prime");
            primes_.push_back(pp.prime);
        }
        std::sort(primes_.begin(), primes_.end());
        primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
        entries_[n] = std::move(f);
    }

    const Factorization* find(const Natural& n) const {
        auto it = entries_.find(n);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Every prime mentioned by any entry, ascending.
    const std::vector<Natural>& primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<Natural, Factorization> entries_;
    std::vector<Natural> primes_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline Natural parse_natural(std::string_view t, std::size_t line) {
    Natural v;
    if (t.empty() || t[0] == '-' || !parse_integer(t, v))
        throw ParseError(line, "expected a decimal natural number, got '" + std::string(t) + "'");
    return v;
}

// Sorts by prime and merges repeated primes.
inline Factorization normalize(std::vector<PrimePower> pps) {
    std::sort(pps.begin(), pps.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    Factorization f;
    for (auto& pp : pps) {
        if (pp.exponent == 0) continue;
        if (!f.factors.empty() && f.factors.back().prime == pp.prime) {
            f.factors.back().exponent += pp.exponent;
        } else {
            f.factors.push_back(std::move(pp));
        }
    }
    return f;
}

}  // namespace detail

/// Lines `<N> : <p1>[^<e1>] * <p2>[^<e2>] * ...`; `#` starts a comment line.
inline FactorTable parse_factor_table(std::string_view text) {
    FactorTable table;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected '<N> : <factors>'");
        Natural n = detail::parse_natural(detail::trim(line.substr(0, colon)), line_no);
        std::string_view rest = line.substr(colon + 1);
        std::vector<PrimePower> pps;
        while (true) {
            auto star = rest.find('*');
            std::string_view item = detail::trim(rest.substr(0, star));
            auto caret = item.find('^');
            PrimePower pp;
            pp.prime = detail::parse_natural(detail::trim(item.substr(0, caret)), line_no);
            pp.exponent = 1;
            if (caret != std::string_view::npos) {
                Natural e = detail::parse_natural(detail::trim(item.substr(caret + 1)), line_no);
                if (e < 1 || !e.fits_ulong_p()) throw ParseError(line_no, "bad exponent");
                pp.exponent = e.get_ui();
            }
            pps.push_back(std::move(pp));
            if (star == std::string_view::npos) break;
            rest = rest.substr(star + 1);
        }
        table.add(n, detail::normalize(std::move(pps)));
    }
    return table;
}

inline FactorTable load_factor_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open factor table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_factor_table(ss.str());
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

inline std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    return (end && *end == '\0' && x > 0) ? x : fallback;
}

inline constexpr std::uint64_t kDefaultRhoBudget = 50'000'000;

namespace detail {

// Brent's cycle-finding variant of Pollard rho. Returns a proper divisor of
// the odd composite n, or 0 when the iteration budget runs out.
inline Natural rho_divisor(const Natural& n, std::uint64_t& budget) {
    mpz_class x, y, ys, q, g, diff;
    for (unsigned long c = 1; budget > 0; ++c) {
        y = 2;
        q = 1;
        g = 1;
        const std::uint64_t m = 128;
        for (std::uint64_t r = 1; g == 1; r *= 2) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                mpz_mul(y.get_mpz_t(), y.get_mpz_t(), y.get_mpz_t());
                mpz_add_ui(y.get_mpz_t(), y.get_mpz_t(), c);
                mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
            }
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                const std::uint64_t steps = std::min(m, r - k);
                if (budget < steps) {
                    budget = 0;
                    return 0;
                }
                budget -= steps;
                for (std::uint64_t i = 0; i < steps; ++i) {
                    mpz_mul(y.get_mpz_t(), y.get_mpz_t(), y.get_mpz_t());
                    mpz_add_ui(y.get_mpz_t(), y.get_mpz_t(), c);
                    mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
                    mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                mpz_mul(ys.get_mpz_t(), ys.get_mpz_t(), ys.get_mpz_t());
                mpz_add_ui(ys.get_mpz_t(), ys.get_mpz_t(), c);
                mpz_mod(ys.get_mpz_t(), ys.get_mpz_t(), n.get_mpz_t());
                mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

inline int moebius(unsigned long n) {
    int mu = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// Phi_d(2) via the Moebius product of (2^e - 1) over e | d.
inline Natural cyclotomic_at_two(unsigned long d) {
    Natural num = 1, den = 1;
    for (unsigned long e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = moebius(d / e);
        if (mu == 1) num *= pow2(e) - 1;
        if (mu == -1) den *= pow2(e) - 1;
    }
    return num / den;
}

// Algebraic pieces of 2^m - 1 (sign < 0) or 2^m + 1 (sign > 0).
inline std::vector<Natural> binomial_pieces(unsigned long m, int sign) {
    std::vector<Natural> out;
    const unsigned long top = sign > 0 ? 2 * m : m;
    for (unsigned long d = 1; d <= top; ++d) {
        if (top % d) continue;
        if (sign > 0 && m % d == 0) continue;
        Natural piece = cyclotomic_at_two(d);
        if (piece > 1) out.push_back(std::move(piece));
    }
    return out;
}

}  // namespace detail

/// Complete factorization by trial division, algebraic splitting of
/// 2^m +- 1 cofactors, factor-table lookup, perfect-power roots and
/// Pollard-Brent rho. Throws FactorizationIncomplete when the rho budget
/// runs out with a composite left.
inline Factorization factorize(const Natural& n, const FactorTable* table = nullptr,
                               std::uint64_t rho_budget = kDefaultRhoBudget) {
    if (n < 1) throw DomainError("factorize needs n >= 1");
    std::vector<PrimePower> found;
    Natural rest = n;
    if (unsigned long twos = mpz_scan1(rest.get_mpz_t(), 0); rest > 1 && twos > 0) {
        found.push_back({Natural(2), twos});
        mpz_tdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), twos);
    }
    if (rest == 1) return detail::normalize(std::move(found));

    // Work items are (value, multiplicity); their product (with multiplicities) is `rest`.
    std::vector<std::pair<Natural, unsigned long>> work;
    {
        std::vector<Natural> pieces;
        for (int sign : {1, -1}) {
            Natural t = rest - sign;
            if (t > 2 && mpz_popcount(t.get_mpz_t()) == 1) {
                unsigned long m = mpz_scan1(t.get_mpz_t(), 0);
                if (m <= 4096) pieces = detail::binomial_pieces(m, sign);
                break;
            }
        }
        if (pieces.empty()) pieces.push_back(rest);
        for (auto& p : pieces) work.emplace_back(std::move(p), 1);
    }

    auto fail = [&](const Natural& cofactor) {
        std::vector<PrimePower> partial = found;
        throw FactorizationIncomplete(detail::normalize(std::move(partial)), cofactor);
    };

    std::uint64_t budget = rho_budget;
    while (!work.empty()) {
        auto [c, mult] = std::move(work.back());
        work.pop_back();
        if (c == 1) continue;
        for (unsigned long p : detail::small_primes()) {
            if (Natural(p) * p > c) break;
            if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
            unsigned long e = 0;
            while (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
                ++e;
            }
            found.push_back({Natural(p), e * mult});
        }
        if (c == 1) continue;
        if (is_prime(c)) {
            found.push_back({c, mult});
            continue;
        }
        if (table) {
            if (const Factorization* f = table->find(c)) {
                for (const auto& pp : f->factors) found.push_back({pp.prime, pp.exponent * mult});
                continue;
            }
            bool split = false;
            for (const auto& p : table->primes()) {
                if (p > 1 && c > p && mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) {
                    Natural q = c / p;
                    work.emplace_back(p, mult);
                    work.emplace_back(std::move(q), mult);
                    split = true;
                    break;
                }
            }
            if (split) continue;
        }
        if (mpz_perfect_power_p(c.get_mpz_t())) {
            bool split = false;
            for (unsigned long e = mpz_sizeinbase(c.get_mpz_t(), 2); e >= 2; --e) {
                Natural r;
                if (mpz_root(r.get_mpz_t(), c.get_mpz_t(), e)) {
                    work.emplace_back(std::move(r), mult * e);
                    split = true;
                    break;
                }
            }
            if (split) continue;
        }
        Natural d = detail::rho_divisor(c, budget);
        if (d == 0) fail(c);
        Natural q = c / d;
        work.emplace_back(std::move(d), mult);
        work.emplace_back(std::move(q), mult);
    }
    return detail::normalize(std::move(found));
}

/// Factorization source shared by the counting routines: table plus rho budget.
struct FactorOracle {
    const FactorTable* table = nullptr;
    std::uint64_t rho_budget = kDefaultRhoBudget;

    Factorization operator()(const Natural& n) const { return factorize(n, table, rho_budget); }
};

/// Product of (p^(a+1) - 1) / (p - 1).
inline Natural sigma(const Factorization& f) {
    Natural s = 1;
    for (const auto& pp : f.factors) s *= (pow_ui(pp.prime, pp.exponent + 1) - 1) / (pp.prime - 1);
    return s;
}

}  // namespace dioph
