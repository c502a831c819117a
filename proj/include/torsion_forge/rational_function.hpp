#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "torsion_forge/poly.hpp"
#include "torsion_forge/prime_field.hpp"
#include "torsion_forge/rational_field.hpp"

namespace tforge {

/// Element of Q(t), kept canonical: gcd(num, den) = 1, den monic, zero = 0/1.
struct RationalFunction {
    Poly<RationalField> num;
    Poly<RationalField> den;

    RationalFunction()
        : num(RationalField{}),
          den(Poly<RationalField>::constant(RationalField{}, Rational(1))) {}

    RationalFunction(Poly<RationalField> n, Poly<RationalField> d)
        : num(std::move(n)), den(std::move(d)) {}

    bool operator==(const RationalFunction& o) const {
        return num == o.num && den == o.den;
    }
};

class RationalFunctionField {
public:
    using Element = RationalFunction;

    Element zero() const { return RationalFunction(); }

    Element one() const {
        RationalFunction r;
        r.num = one_poly();
        return r;
    }

    Element make(Poly<RationalField> num, Poly<RationalField> den) const {
        return normalized(std::move(num), std::move(den));
    }

    Element add(const Element& a, const Element& b) const {
        // gcd of the denominators first keeps the t-degrees down
        Poly<RationalField> g = a.den.is_one() || b.den.is_one()
                                    ? one_poly()
                                    : tforge::gcd(a.den, b.den);
        if (g.is_one())
            return normalized(a.num * b.den + b.num * a.den, a.den * b.den);
        Poly<RationalField> da = exact_div(a.den, g), db = exact_div(b.den, g);
        Poly<RationalField> num = a.num * db + b.num * da;
        if (num.is_zero()) return zero();
        Poly<RationalField> g2 = tforge::gcd(num, g);
        if (!g2.is_one()) {
            num = exact_div(num, g2);
            g = exact_div(g, g2);
        }
        return scale_monic(std::move(num), g * da * db);
    }

    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

    Element neg(const Element& a) const { return RationalFunction(-a.num, a.den); }

    Element mul(const Element& a, const Element& b) const {
        if (a.num.is_zero() || b.num.is_zero()) return zero();
        Poly<RationalField> g1 = tforge::gcd(a.num, b.den);
        Poly<RationalField> g2 = tforge::gcd(b.num, a.den);
        Poly<RationalField> num = exact_div(a.num, g1) * exact_div(b.num, g2);
        Poly<RationalField> den = exact_div(a.den, g2) * exact_div(b.den, g1);
        return scale_monic(std::move(num), std::move(den));
    }

    Element inv(const Element& a) const {
        if (a.num.is_zero()) throw DivisionByZero("inverse of zero in Q(t)");
        return scale_monic(a.den, a.num);
    }

    Element div(const Element& a, const Element& b) const {
        if (b.num.is_zero()) throw DivisionByZero("division by zero in Q(t)");
        return mul(a, inv(b));
    }

    bool eq(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a.num.is_zero(); }
    bool is_one(const Element& a) const { return a.num.is_one() && a.den.is_one(); }

    Integer characteristic() const { return 0; }

    Element from_integer(const Integer& n) const {
        RationalFunction r;
        r.num = Poly<RationalField>::constant(RationalField{}, Rational(n));
        return r;
    }

    Element from_rational(const Rational& q) const {
        RationalFunction r;
        r.num = Poly<RationalField>::constant(RationalField{}, q);
        return r;
    }

    Element t() const {
        RationalFunction r;
        r.num = Poly<RationalField>::x(RationalField{});
        return r;
    }

    std::string format(const Element& a) const {
        if (a.den.is_one()) return format_poly(a.num, "t");
        return "(" + format_poly(a.num, "t") + ")/(" + format_poly(a.den, "t") + ")";
    }

    /// Full expression grammar over t: +, -, *, /, ^ (non-negative integer
    /// exponents), parentheses, integer literals. Covers "(num)/(den)" forms
    /// as well as things like "-(1+t)/t" or "3/t".
    Element parse(std::string_view text) const {
        ExprParser p{*this, text, 0};
        Element v = p.expr();
        p.skip_ws();
        if (p.i != text.size()) throw ParseError("unexpected trailing input", p.i);
        return v;
    }

    std::string name() const { return "Q(t)"; }

    friend bool operator==(const RationalFunctionField&, const RationalFunctionField&) {
        return true;
    }

private:
    static Poly<RationalField> one_poly() {
        return Poly<RationalField>::constant(RationalField{}, Rational(1));
    }

    static Element scale_monic(Poly<RationalField> num, Poly<RationalField> den) {
        Rational lc = den.lc();
        if (lc != 1) {
            Rational ilc = Rational(1) / lc;
            num = num.mul_scalar(ilc);
            den = den.mul_scalar(ilc);
        }
        return RationalFunction(std::move(num), std::move(den));
    }

    static Element normalized(Poly<RationalField> num, Poly<RationalField> den) {
        if (den.is_zero()) throw DivisionByZero("zero denominator in Q(t)");
        if (num.is_zero()) return RationalFunction();
        Poly<RationalField> g = tforge::gcd(num, den);
        if (!g.is_one()) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
        return scale_monic(std::move(num), std::move(den));
    }

    struct ExprParser {
        const RationalFunctionField& k;
        std::string_view s;
        std::size_t i;

        void skip_ws() {
            while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        }

        Element expr() {
            Element v = term();
            while (true) {
                skip_ws();
                if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                    char op = s[i++];
                    Element r = term();
                    v = op == '+' ? k.add(v, r) : k.sub(v, r);
                } else {
                    return v;
                }
            }
        }

        Element term() {
            Element v = factor();
            while (true) {
                skip_ws();
                if (i < s.size() && (s[i] == '*' || s[i] == '/')) {
                    char op = s[i++];
                    Element r = factor();
                    if (op == '/') {
                        if (k.is_zero(r)) throw ParseError("division by zero", i);
                        v = k.div(v, r);
                    } else {
                        v = k.mul(v, r);
                    }
                } else {
                    return v;
                }
            }
        }

        Element factor() {
            skip_ws();
            if (i < s.size() && s[i] == '-') {
                ++i;
                return k.neg(factor());
            }
            if (i < s.size() && s[i] == '+') {
                ++i;
                return factor();
            }
            Element v = atom();
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                std::size_t start = i;
                while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
                if (start == i) throw ParseError("expected exponent digits", i);
                Integer e = parse_integer(s.substr(start, i - start));
                Element acc = k.one();
                for (Integer j(0); j < e; ++j) acc = k.mul(acc, v);
                return acc;
            }
            return v;
        }

        Element atom() {
            skip_ws();
            if (i >= s.size()) throw ParseError("unexpected end of expression", i);
            if (s[i] == '(') {
                ++i;
                Element v = expr();
                skip_ws();
                if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
                ++i;
                return v;
            }
            if (s[i] == 't') {
                std::size_t after = i + 1;
                if (after < s.size()) {
                    char c = s[after];
                    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_')
                        throw ParseError("unknown identifier", i);
                }
                ++i;
                return k.t();
            }
            if (s[i] >= '0' && s[i] <= '9') {
                std::size_t start = i;
                while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
                return k.from_integer(parse_integer(s.substr(start, i - start)));
            }
            throw ParseError("unexpected character in expression", i);
        }
    };
};

/// Image of f in F_p at t = t0. Defined when p divides no coefficient
/// denominator and the denominator polynomial does not vanish at t0.
inline Integer specialize(const RationalFunction& f, const PrimeField& fp, const Integer& t0) {
    auto reduce_poly = [&](const Poly<RationalField>& g) {
        Integer acc(0);
        Integer tv = fp.from_integer(t0);
        for (std::size_t i = g.coeffs().size(); i-- > 0;) {
            Integer c;
            try {
                c = fp.from_rational(g.coeff(i));
            } catch (const BadReduction& e) {
                throw BadSpecialization(std::string("bad specialization: ") + e.what());
            }
            acc = fp.add(fp.mul(acc, tv), c);
        }
        return acc;
    };
    Integer den = reduce_poly(f.den);
    if (den == 0)
        throw BadSpecialization("bad specialization: denominator vanishes at t = " +
                                t0.get_str() + " modulo " + fp.modulus().get_str());
    return fp.mul(reduce_poly(f.num), fp.inv(den));
}

} // namespace tforge
