#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "torsion_forge/field.hpp"

namespace tforge {

/// F_p for prime p. Elements are residues kept in [0, p); primality of the
/// modulus is established once, at field construction.
class PrimeField {
public:
    using Element = Integer;

    explicit PrimeField(Integer p) : p_(std::move(p)) {
        if (!is_prime(p_))
            throw Error("modulus " + p_.get_str() + " is not prime");
    }

    const Integer& modulus() const { return p_; }

    Element zero() const { return Integer(0); }
    Element one() const { return Integer(1); }

    Element add(const Element& a, const Element& b) const {
        Integer r = a + b;
        if (r >= p_) r -= p_;
        return r;
    }

    Element sub(const Element& a, const Element& b) const {
        Integer r = a - b;
        if (r < 0) r += p_;
        return r;
    }

    Element mul(const Element& a, const Element& b) const { return (a * b) % p_; }

    Element neg(const Element& a) const { return a == 0 ? Integer(0) : Integer(p_ - a); }

    Element inv(const Element& a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in " + name());
        Integer r;
        if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()))
            throw DivisionByZero("no inverse of " + a.get_str() + " in " + name());
        return r;
    }

    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    bool eq(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a == 0; }
    bool is_one(const Element& a) const { return a == 1; }

    Integer characteristic() const { return p_; }

    Element from_integer(const Integer& n) const {
        Integer r = n % p_;
        if (r < 0) r += p_;
        return r;
    }

    /// Image of a rational number in F_p; requires p not dividing the
    /// denominator.
    Element from_rational(const Rational& q) const {
        Integer den = q.get_den();
        if (den % p_ == 0)
            throw BadReduction("denominator " + den.get_str() +
                               " vanishes modulo " + p_.get_str());
        return mul(from_integer(q.get_num()), inv(from_integer(den)));
    }

    std::string format(const Element& a) const { return a.get_str(); }

    Element parse(std::string_view text) const { return from_integer(parse_integer(text)); }

    std::string name() const { return "Fp:" + p_.get_str(); }

    // FiniteField interface
    Integer order() const { return p_; }
    Element element_at(const Integer& i) const { return from_integer(i); }
    Integer index_of(const Element& a) const { return a; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    Integer p_;
};

} // namespace tforge
