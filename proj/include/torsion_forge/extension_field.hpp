#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsion_forge/poly.hpp"
#include "torsion_forge/prime_field.hpp"

namespace tforge {

inline bool is_irreducible(const Poly<PrimeField>& m);

/// F_{p^d} as F_p[g]/(modulus). Elements are coefficient vectors of fixed
/// length d with entries in [0, p); the modulus is monic and its
/// irreducibility is verified at construction.
class ExtensionField {
public:
    using Element = std::vector<Integer>;

    ExtensionField(PrimeField base, Poly<PrimeField> modulus)
        : base_(std::move(base)), mod_(std::move(modulus)) {
        if (!(mod_.field() == base_))
            throw FieldMismatch("modulus is not defined over the base field");
        if (mod_.deg() < 1 || !mod_.is_monic())
            throw Error("extension modulus must be monic of degree >= 1");
        if (!is_irreducible(mod_))
            throw Error("extension modulus " + format_poly(mod_) + " is reducible over " +
                        base_.name());
        d_ = static_cast<std::size_t>(mod_.deg_value());
    }

    const PrimeField& base() const { return base_; }
    const Poly<PrimeField>& modulus_poly() const { return mod_; }
    std::size_t degree() const { return d_; }

    Element zero() const { return Element(d_, Integer(0)); }

    Element one() const {
        Element r(d_, Integer(0));
        r[0] = 1;
        return r;
    }

    Element add(const Element& a, const Element& b) const {
        check(a);
        check(b);
        Element r(d_);
        for (std::size_t i = 0; i < d_; ++i) r[i] = base_.add(a[i], b[i]);
        return r;
    }

    Element sub(const Element& a, const Element& b) const {
        check(a);
        check(b);
        Element r(d_);
        for (std::size_t i = 0; i < d_; ++i) r[i] = base_.sub(a[i], b[i]);
        return r;
    }

    Element neg(const Element& a) const {
        check(a);
        Element r(d_);
        for (std::size_t i = 0; i < d_; ++i) r[i] = base_.neg(a[i]);
        return r;
    }

    Element mul(const Element& a, const Element& b) const {
        check(a);
        check(b);
        std::vector<Integer> prod(2 * d_ - 1, Integer(0));
        for (std::size_t i = 0; i < d_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < d_; ++j)
                prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
        }
        // reduce by the monic modulus
        for (std::size_t i = prod.size(); i-- > d_;) {
            Integer c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (std::size_t j = 0; j < d_; ++j)
                prod[i - d_ + j] = base_.sub(prod[i - d_ + j], base_.mul(c, mod_.coeff(j)));
        }
        prod.resize(d_);
        return prod;
    }

    Element inv(const Element& a) const {
        check(a);
        if (is_zero(a)) throw DivisionByZero("inverse of zero in " + name());
        Poly<PrimeField> ap(base_, std::vector<Integer>(a.begin(), a.end()));
        Poly<PrimeField> s = mod_inv(ap, mod_);
        Element r(d_, Integer(0));
        for (std::size_t i = 0; i < d_; ++i) r[i] = s.coeff(i);
        return r;
    }

    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    bool eq(const Element& a, const Element& b) const { return a == b; }

    bool is_zero(const Element& a) const {
        for (const auto& c : a)
            if (c != 0) return false;
        return true;
    }

    bool is_one(const Element& a) const {
        if (a.empty() || a[0] != 1) return false;
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] != 0) return false;
        return true;
    }

    Integer characteristic() const { return base_.modulus(); }

    Element from_integer(const Integer& n) const {
        Element r(d_, Integer(0));
        r[0] = base_.from_integer(n);
        return r;
    }

    Element embed(const Integer& base_residue) const { return from_integer(base_residue); }

    // Elements print and parse as their enumeration index.
    std::string format(const Element& a) const { return index_of(a).get_str(); }

    Element parse(std::string_view text) const { return element_at(parse_integer(text)); }

    std::string name() const {
        return "Fq:" + base_.modulus().get_str() + "^" + std::to_string(d_);
    }

    // FiniteField interface: base-p digits, constant coefficient least
    // significant.
    Integer order() const { return pow_ui(base_.modulus(), static_cast<unsigned long>(d_)); }

    Element element_at(Integer i) const {
        i %= order();
        if (i < 0) i += order();
        Element r(d_, Integer(0));
        const Integer& p = base_.modulus();
        for (std::size_t j = 0; j < d_ && i != 0; ++j) {
            r[j] = i % p;
            i /= p;
        }
        return r;
    }

    Integer index_of(const Element& a) const {
        check(a);
        Integer idx(0);
        for (std::size_t j = a.size(); j-- > 0;) idx = idx * base_.modulus() + a[j];
        return idx;
    }

    friend bool operator==(const ExtensionField& a, const ExtensionField& b) {
        return a.base_ == b.base_ && a.mod_ == b.mod_;
    }

private:
    void check(const Element& a) const {
        if (a.size() != d_)
            throw FieldMismatch("element has " + std::to_string(a.size()) +
                                " coefficients, field expects " + std::to_string(d_));
    }

    PrimeField base_;
    Poly<PrimeField> mod_;
    std::size_t d_;
};

/// Monic m of degree d over F_p is irreducible iff x^(p^d) = x (mod m) and
/// gcd(x^(p^(d/l)) - x, m) = 1 for every prime l dividing d.
inline bool is_irreducible(const Poly<PrimeField>& m) {
    const PrimeField& fp = m.field();
    if (m.deg() < 1) return false;
    const unsigned long d = static_cast<unsigned long>(m.deg_value());
    if (d == 1) return true;
    Poly<PrimeField> x = Poly<PrimeField>::x(fp);
    if (!(mod_pow(x, pow_ui(fp.modulus(), d), m) == rem(x, m))) return false;
    for (const auto& [l, e] : factorize(Integer(d))) {
        (void)e;
        unsigned long dl = d / to_ulong(l, "degree factor");
        Poly<PrimeField> t = mod_pow(x, pow_ui(fp.modulus(), dl), m) - x;
        if (t.is_zero() || gcd(t, m).deg() != Degree(0)) return false;
    }
    return true;
}

/// First irreducible monic polynomial of degree d, enumerating the non-leading
/// coefficients as base-p digits of 0, 1, 2, ...; deterministic by design.
inline Poly<PrimeField> find_irreducible(const PrimeField& fp, unsigned long d) {
    if (d < 1) throw Error("find_irreducible requires degree >= 1");
    const Integer& p = fp.modulus();
    Integer count = pow_ui(p, d);
    for (Integer idx(0); idx < count; ++idx) {
        std::vector<Integer> c(d + 1, Integer(0));
        Integer i = idx;
        for (unsigned long j = 0; j < d && i != 0; ++j) {
            c[j] = i % p;
            i /= p;
        }
        c[d] = 1;
        Poly<PrimeField> m(fp, std::move(c));
        if (is_irreducible(m)) return m;
    }
    throw Error("no irreducible polynomial found"); // unreachable
}

} // namespace tforge
