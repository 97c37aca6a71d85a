#pragma once

#include <string>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"

namespace dioph {

/// num/den in scientific notation `d.ddd...e<E>` with `digits` significant
/// digits, rounded half to even. Exponent has no '+' and no padding.
inline std::string decimal_approx(const Integer& num, const Integer& den, int digits) {
    if (den < 1) throw DomainError("decimal_approx needs den >= 1");
    if (digits < 1) throw DomainError("decimal_approx needs digits >= 1");
    if (num < 0) return "-" + decimal_approx(-num, den, digits);
    if (num == 0) return digits == 1 ? "0e0" : "0." + std::string(static_cast<std::size_t>(digits - 1), '0') + "e0";

    // Decimal exponent E with 10^E <= num/den < 10^(E+1).
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    auto scaled = [&](long shift, Integer& n, Integer& d) {
        n = num;
        d = den;
        if (shift >= 0) {
            n *= pow_ui(10, static_cast<unsigned long>(shift));
        } else {
            d *= pow_ui(10, static_cast<unsigned long>(-shift));
        }
    };
    Integer n, d;
    for (;;) {
        // num/den >= 10^e  <=>  num * 10^-e >= den
        scaled(-e, n, d);
        if (n < d) {
            --e;
            continue;
        }
        scaled(-(e + 1), n, d);
        if (n >= d) {
            ++e;
            continue;
        }
        break;
    }
    scaled(digits - 1 - e, n, d);
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    int cmp_half = cmp(2 * r, d);
    if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
    if (q == pow_ui(10, static_cast<unsigned long>(digits))) {
        q /= 10;
        ++e;
    }
    std::string ds = q.get_str(10);
    std::string out(1, ds[0]);
    if (digits > 1) out += "." + ds.substr(1);
    return out + "e" + std::to_string(e);
}

}  // namespace dioph
