#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsion_forge/error.hpp"

namespace tforge {

// All integer and rational arithmetic in the library is arbitrary precision.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow_ui(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer powm(const Integer& base, const Integer& e, const Integer& mod) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline unsigned long to_ulong(const Integer& n, const char* what) {
    if (n < 0 || !n.fits_ulong_p())
        throw Error(std::string(what) + " out of range: " + n.get_str());
    return n.get_ui();
}

/// Deterministic Miller-Rabin. The first twelve prime bases decide
/// primality correctly for all n < 3317044064679887385961981 (~3.3e24),
/// which covers every modulus this library is meant for; larger inputs
/// are rejected rather than answered probabilistically.
inline bool is_prime(const Integer& n) {
    static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (unsigned long b : bases) {
        if (n == b) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    static const Integer limit("3317044064679887385961981");
    if (n >= limit)
        throw UnsupportedConfiguration(
            "primality test supports n < 3.3e24 only, got " + n.get_str());
    Integer d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    Integer n1 = n - 1;
    for (unsigned long b : bases) {
        Integer x = powm(Integer(b), d, n);
        if (x == 1 || x == n1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Trial-division factorization; fine at the scale of torsion orders.
inline std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
    if (n < 1) throw Error("factorize requires n >= 1");
    std::vector<std::pair<Integer, unsigned>> out;
    auto strip = [&](const Integer& p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (Integer p = 3; p * p <= n; p += 2) strip(p);
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline Integer parse_integer(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer literal", 0);
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw ParseError("sign without digits", i);
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9')
            throw ParseError("invalid character in integer literal", j);
    return Integer(std::string(text), 10);
}

} // namespace tforge
