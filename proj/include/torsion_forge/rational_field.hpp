#pragma once

#include <string>
#include <string_view>

#include "torsion_forge/field.hpp"

namespace tforge {

/// Q with GMP rationals. mpq arithmetic keeps elements canonical
/// (coprime numerator/denominator, positive denominator, zero = 0/1).
class RationalField {
public:
    using Element = Rational;

    Element zero() const { return Rational(0); }
    Element one() const { return Rational(1); }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }

    Element inv(const Element& a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in Q");
        return Rational(1) / a;
    }

    Element div(const Element& a, const Element& b) const {
        if (b == 0) throw DivisionByZero("division by zero in Q");
        return a / b;
    }

    bool eq(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a == 0; }
    bool is_one(const Element& a) const { return a == 1; }

    Integer characteristic() const { return 0; }
    Element from_integer(const Integer& n) const { return Rational(n); }

    std::string format(const Element& a) const { return a.get_str(); }

    // "a", "-a" or "a/b" in base 10.
    Element parse(std::string_view text) const {
        if (text.empty()) throw ParseError("empty rational literal", 0);
        std::size_t slash = std::string_view::npos;
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == '/') {
                if (slash != std::string_view::npos)
                    throw ParseError("second '/' in rational literal", i);
                slash = i;
            } else if (!(c >= '0' && c <= '9') && !((c == '-' || c == '+') && i == 0)) {
                throw ParseError("invalid character in rational literal", i);
            }
        }
        Integer num, den(1);
        if (slash == std::string_view::npos) {
            num = parse_integer(text);
        } else {
            num = parse_integer(text.substr(0, slash));
            den = parse_integer(text.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator", slash + 1);
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string name() const { return "Q"; }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

} // namespace tforge
