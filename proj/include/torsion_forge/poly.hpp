#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsion_forge/field.hpp"

namespace tforge {

/// Polynomial degree with a separate value for the zero polynomial, so that
/// deg(f*g) = deg(f) + deg(g) holds without exceptions for zero operands.
class Degree {
public:
    constexpr Degree() : finite_(false), v_(0) {} // negative infinity
    constexpr Degree(long v) : finite_(true), v_(v) {}

    static constexpr Degree neg_infinity() { return Degree(); }

    constexpr bool is_neg_infinity() const { return !finite_; }

    constexpr long value() const {
        if (!finite_) throw Error("degree of the zero polynomial has no integer value");
        return v_;
    }

    friend constexpr Degree operator+(Degree a, Degree b) {
        if (!a.finite_ || !b.finite_) return neg_infinity();
        return Degree(a.v_ + b.v_);
    }

    friend constexpr bool operator==(Degree a, Degree b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }

    friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) {
        if (a.finite_ != b.finite_) return a.finite_ <=> b.finite_;
        if (!a.finite_) return std::strong_ordering::equal;
        return a.v_ <=> b.v_;
    }

private:
    bool finite_;
    long v_;
};

/// Dense univariate polynomial over a Field. Coefficients are stored by
/// ascending degree and the representation is kept normalized: either the
/// vector is empty (zero polynomial) or its last entry is nonzero.
template <Field K>
class Poly {
public:
    using Elem = typename K::Element;

    explicit Poly(const K& field) : k_(field) {}

    Poly(const K& field, std::vector<Elem> coeffs) : k_(field), c_(std::move(coeffs)) {
        normalize();
    }

    static Poly constant(const K& field, Elem c) {
        return Poly(field, std::vector<Elem>{std::move(c)});
    }

    static Poly monomial(const K& field, Elem c, std::size_t e) {
        std::vector<Elem> v(e + 1, field.zero());
        v[e] = std::move(c);
        return Poly(field, std::move(v));
    }

    static Poly x(const K& field) { return monomial(field, field.one(), 1); }

    /// Coefficients given leading-first, mapped through from_integer.
    static Poly from_integers(const K& field, std::initializer_list<long> desc) {
        std::vector<Elem> v;
        v.reserve(desc.size());
        for (auto it = std::rbegin(desc); it != std::rend(desc); ++it)
            v.push_back(field.from_integer(Integer(*it)));
        return Poly(field, std::move(v));
    }

    const K& field() const { return k_; }

    Degree deg() const {
        return c_.empty() ? Degree::neg_infinity() : Degree(static_cast<long>(c_.size()) - 1);
    }

    long deg_value() const { return deg().value(); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && k_.is_one(c_[0]); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && k_.is_one(c_.back()); }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : k_.zero(); }

    const Elem& lc() const {
        if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    std::span<const Elem> coeffs() const { return c_; }

    Poly operator-() const {
        std::vector<Elem> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(k_.neg(a));
        return Poly(k_, std::move(v));
    }

    Poly operator+(const Poly& o) const {
        require_same_field(o);
        std::vector<Elem> v(std::max(c_.size(), o.c_.size()), k_.zero());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = k_.add(coeff(i), o.coeff(i));
        return Poly(k_, std::move(v));
    }

    Poly operator-(const Poly& o) const {
        require_same_field(o);
        std::vector<Elem> v(std::max(c_.size(), o.c_.size()), k_.zero());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = k_.sub(coeff(i), o.coeff(i));
        return Poly(k_, std::move(v));
    }

    Poly operator*(const Poly& o) const {
        require_same_field(o);
        if (is_zero() || o.is_zero()) return Poly(k_);
        std::vector<Elem> v(c_.size() + o.c_.size() - 1, k_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (k_.is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                v[i + j] = k_.add(v[i + j], k_.mul(c_[i], o.c_[j]));
        }
        return Poly(k_, std::move(v));
    }

    Poly mul_scalar(const Elem& s) const {
        if (k_.is_zero(s)) return Poly(k_);
        std::vector<Elem> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(k_.mul(a, s));
        return Poly(k_, std::move(v));
    }

    Poly pow(const Integer& e) const {
        if (e < 0) throw Error("polynomial power requires a non-negative exponent");
        Poly acc = constant(k_, k_.one());
        if (e == 0) return acc;
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            acc = acc * acc;
            if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * *this;
        }
        return acc;
    }

    Elem eval(const Elem& x0) const {
        Elem acc = k_.zero();
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = k_.add(k_.mul(acc, x0), c_[i]);
        return acc;
    }

    Poly monic() const {
        if (is_zero()) throw Error("cannot normalize the zero polynomial to monic");
        if (is_monic()) return *this;
        return mul_scalar(k_.inv(lc()));
    }

    bool operator==(const Poly& o) const {
        require_same_field(o);
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!k_.eq(c_[i], o.c_[i])) return false;
        return true;
    }

    void require_same_field(const Poly& o) const {
        if (!(k_ == o.k_))
            throw FieldMismatch("operands live in different fields: " + k_.name() +
                                " vs " + o.k_.name());
    }

private:
    void normalize() {
        while (!c_.empty() && k_.is_zero(c_.back())) c_.pop_back();
    }

    K k_;
    std::vector<Elem> c_;
};

template <Field K>
struct DivModResult {
    Poly<K> quotient;
    Poly<K> remainder;
};

template <Field K>
DivModResult<K> divmod(const Poly<K>& f, const Poly<K>& g) {
    f.require_same_field(g);
    if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
    const K& k = f.field();
    if (f.deg() < g.deg()) return {Poly<K>(k), f};
    const long df = f.deg_value(), dg = g.deg_value();
    typename K::Element inv_lc = k.inv(g.lc());
    std::vector<typename K::Element> r(f.coeffs().begin(), f.coeffs().end());
    std::vector<typename K::Element> q(static_cast<std::size_t>(df - dg) + 1, k.zero());
    for (long i = df; i >= dg; --i) {
        if (k.is_zero(r[i])) continue;
        typename K::Element t = k.mul(r[i], inv_lc);
        q[i - dg] = t;
        for (long j = 0; j <= dg; ++j)
            r[i - dg + j] = k.sub(r[i - dg + j], k.mul(t, g.coeff(j)));
    }
    r.resize(dg >= 0 ? static_cast<std::size_t>(dg) : 0);
    return {Poly<K>(k, std::move(q)), Poly<K>(k, std::move(r))};
}

template <Field K>
Poly<K> rem(const Poly<K>& f, const Poly<K>& g) {
    return divmod(f, g).remainder;
}

template <Field K>
Poly<K> quo(const Poly<K>& f, const Poly<K>& g) {
    return divmod(f, g).quotient;
}

/// Division known to be exact; a nonzero remainder is reported, not dropped.
template <Field K>
Poly<K> exact_div(const Poly<K>& f, const Poly<K>& g) {
    auto [q, r] = divmod(f, g);
    if (!r.is_zero())
        throw InexactDivision("division expected to be exact left remainder " +
                              format_poly(r));
    return q;
}

namespace qdetail {

// Integer-polynomial helpers backing the Q-specific gcd paths.

inline std::vector<Integer> scale_to_integers(std::span<const Rational> src) {
    Integer den_lcm(1);
    for (const auto& c : src)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> out;
    out.reserve(src.size());
    for (const auto& c : src) out.push_back(Integer(c.get_num() * (den_lcm / c.get_den())));
    return out;
}

inline Integer content(const std::vector<Integer>& c) {
    Integer g(0);
    for (const auto& a : c) g = gcd(g, a);
    return g;
}

// Content-free with positive leading coefficient.
inline void make_primitive(std::vector<Integer>& c) {
    Integer g = content(c);
    if (g == 0) return;
    if (c.back() < 0) g = -g;
    for (auto& a : c) a /= g;
}

inline void trim(std::vector<Integer>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// Pseudo-remainder: some lc(g)^m * f mod g, enough for a primitive PRS.
inline std::vector<Integer> pseudo_rem(std::vector<Integer> r, const std::vector<Integer>& g) {
    const Integer& d = g.back();
    while (r.size() >= g.size()) {
        Integer c = r.back();
        std::size_t shift = r.size() - g.size();
        for (auto& a : r) a *= d;
        for (std::size_t j = 0; j < g.size(); ++j)
            r[shift + j] -= c * g[j];
        trim(r);
        if (r.empty()) break;
    }
    return r;
}

inline std::vector<Integer> primitive_prs_gcd(std::vector<Integer> a, std::vector<Integer> b) {
    make_primitive(a);
    make_primitive(b);
    if (a.size() < b.size()) a.swap(b);
    while (!b.empty()) {
        std::vector<Integer> r = pseudo_rem(a, b);
        make_primitive(r);
        a.swap(b);
        b.swap(r);
    }
    return a;
}

// One-sided modular certificate: a constant gcd of the reductions mod q
// proves coprimality over Q, provided q divides neither leading coefficient.
inline constexpr std::uint64_t kGcdPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL};

inline std::uint64_t mod_u64(const Integer& a, std::uint64_t q) {
    std::uint64_t r = mpz_fdiv_ui(a.get_mpz_t(), q);
    return r;
}

inline std::size_t gcd_degree_mod(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                  std::uint64_t q) {
    auto reduce = [&](const std::vector<Integer>& src) {
        std::vector<std::uint64_t> v(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) v[i] = mod_u64(src[i], q);
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };
    auto mulmod = [&](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % q);
    };
    auto invmod = [&](std::uint64_t x) {
        // q is prime
        std::uint64_t r = 1, e = q - 2, base = x;
        while (e) {
            if (e & 1) r = mulmod(r, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::uint64_t> f = reduce(a), g = reduce(b);
    if (f.size() < g.size()) f.swap(g);
    while (!g.empty()) {
        std::uint64_t ilc = invmod(g.back());
        while (f.size() >= g.size()) {
            std::uint64_t c = mulmod(f.back(), ilc);
            std::size_t shift = f.size() - g.size();
            for (std::size_t j = 0; j < g.size(); ++j) {
                std::uint64_t sub = mulmod(c, g[j]);
                f[shift + j] = (f[shift + j] >= sub) ? f[shift + j] - sub
                                                     : f[shift + j] + q - sub;
            }
            while (!f.empty() && f.back() == 0) f.pop_back();
            if (f.empty()) break;
        }
        f.swap(g);
    }
    return f.empty() ? 0 : f.size() - 1;
}

// Returns true when the two integer polynomials are provably coprime over Q.
inline bool certify_coprime(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    for (std::uint64_t q : kGcdPrimes) {
        if (mod_u64(a.back(), q) == 0 || mod_u64(b.back(), q) == 0) continue;
        if (gcd_degree_mod(a, b, q) == 0) return true;
    }
    return false;
}

} // namespace qdetail

/// Monic gcd. Over Q the computation runs on primitive integer polynomials
/// (with a cheap modular coprimality certificate first); over other fields a
/// Euclidean remainder sequence with per-step monic scaling is used.
template <Field K>
Poly<K> gcd(const Poly<K>& f, const Poly<K>& g) {
    f.require_same_field(g);
    const K& k = f.field();
    if (f.is_zero() && g.is_zero()) throw Error("gcd(0, 0) is undefined");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    if constexpr (std::same_as<typename K::Element, Rational>) {
        std::vector<Integer> a = qdetail::scale_to_integers(f.coeffs());
        std::vector<Integer> b = qdetail::scale_to_integers(g.coeffs());
        if (f.deg_value() > 0 && g.deg_value() > 0 && qdetail::certify_coprime(a, b))
            return Poly<K>::constant(k, k.one());
        std::vector<Integer> d = qdetail::primitive_prs_gcd(std::move(a), std::move(b));
        std::vector<Rational> qc;
        qc.reserve(d.size());
        for (auto& c : d) qc.emplace_back(c);
        return Poly<K>(k, std::move(qc)).monic();
    } else {
        Poly<K> a = f, b = g;
        while (!b.is_zero()) {
            Poly<K> r = rem(a, b);
            if (!r.is_zero()) r = r.monic();
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
}

template <Field K>
struct XgcdResult {
    Poly<K> d, s, t; // d = s*f + t*g, d monic
};

template <Field K>
XgcdResult<K> xgcd(const Poly<K>& f, const Poly<K>& g) {
    f.require_same_field(g);
    const K& k = f.field();
    if (f.is_zero() && g.is_zero()) throw Error("xgcd(0, 0) is undefined");
    Poly<K> r0 = f, r1 = g;
    Poly<K> s0 = Poly<K>::constant(k, k.one()), s1(k);
    Poly<K> t0(k), t1 = Poly<K>::constant(k, k.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<K> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<K> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    typename K::Element c = k.inv(r0.lc());
    return {r0.mul_scalar(c), s0.mul_scalar(c), t0.mul_scalar(c)};
}

/// f^e mod b by square-and-multiply with every intermediate reduced.
template <Field K>
Poly<K> mod_pow(const Poly<K>& f, const Integer& e, const Poly<K>& b) {
    if (b.deg() < 1) throw Error("mod_pow requires a modulus of degree >= 1");
    if (e < 0) throw Error("mod_pow requires a non-negative exponent");
    const K& k = f.field();
    Poly<K> acc = Poly<K>::constant(k, k.one());
    if (e == 0) return acc;
    Poly<K> base = rem(f, b);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = rem(acc * acc, b);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = rem(acc * base, b);
    }
    return acc;
}

template <Field K>
Poly<K> mod_inv(const Poly<K>& f, const Poly<K>& b) {
    if (b.is_zero()) throw DivisionByZero("modular inverse with zero modulus");
    auto r = xgcd(f, b);
    if (r.d.deg() != Degree(0))
        throw NotInvertible("polynomial is not invertible modulo b", format_poly(r.d));
    return rem(r.s, b);
}

template <Field K>
Poly<K> derivative(const Poly<K>& f) {
    const K& k = f.field();
    if (f.is_constant()) return Poly<K>(k);
    std::vector<typename K::Element> v;
    v.reserve(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i)
        v.push_back(k.mul(k.from_integer(Integer(i)), f.coeff(i)));
    return Poly<K>(k, std::move(v));
}

struct Separability {
    bool separable;
    bool zero_derivative; // set when f' = 0 in characteristic p (p-th power shape)
};

template <Field K>
Separability is_separable(const Poly<K>& f) {
    if (f.is_zero()) throw Error("separability of the zero polynomial is undefined");
    if (f.is_constant()) return {true, false};
    Poly<K> df = derivative(f);
    if (df.is_zero()) return {false, true};
    return {gcd(f, df).deg() == Degree(0), false};
}

// ---------------------------------------------------------------------------
// Text format. Terms are "c*x^e", "x^e", "x" or "c", joined by '+'/'-';
// coefficients that are not plain (possibly signed) numeric literals must be
// parenthesized. Whitespace is insignificant.
// ---------------------------------------------------------------------------

template <Field K>
Poly<K> parse_poly(const K& k, std::string_view text, std::string_view var = "x") {
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, i); };

    auto at_var = [&]() -> bool {
        if (i + var.size() > n || text.substr(i, var.size()) != var) return false;
        std::size_t after = i + var.size();
        if (after < n) {
            char c = text[after];
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '_')
                return false;
        }
        return true;
    };

    Poly<K> acc(k);
    skip_ws();
    if (i == n) fail("empty polynomial");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == n) {
            if (first) fail("expected term");
            break;
        }
        bool negate = false;
        if (text[i] == '+' || text[i] == '-') {
            negate = text[i] == '-';
            ++i;
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        skip_ws();
        if (i == n) fail("expected term");

        typename K::Element c = k.one();
        bool have_coeff = false;
        if (text[i] == '(') {
            std::size_t start = i, depth = 0;
            while (i < n) {
                if (text[i] == '(') ++depth;
                else if (text[i] == ')' && --depth == 0) { ++i; break; }
                ++i;
            }
            if (depth != 0) fail("unbalanced parenthesis");
            std::string_view inner = text.substr(start + 1, i - start - 2);
            try {
                c = k.parse(inner);
            } catch (const Error& e) {
                throw ParseError(std::string("invalid coefficient: ") + e.what(), start);
            }
            have_coeff = true;
        } else if ((text[i] >= '0' && text[i] <= '9')) {
            std::size_t start = i;
            while (i < n && ((text[i] >= '0' && text[i] <= '9') || text[i] == '/')) ++i;
            try {
                c = k.parse(text.substr(start, i - start));
            } catch (const Error& e) {
                throw ParseError(std::string("invalid coefficient: ") + e.what(), start);
            }
            have_coeff = true;
        }
        skip_ws();

        bool want_var = false;
        if (have_coeff && i < n && text[i] == '*') {
            ++i;
            skip_ws();
            want_var = true;
        }

        std::size_t e = 0;
        if (at_var()) {
            i += var.size();
            e = 1;
            skip_ws();
            if (i < n && text[i] == '^') {
                ++i;
                skip_ws();
                if (i == n || text[i] < '0' || text[i] > '9') fail("expected exponent digits");
                std::size_t start = i;
                while (i < n && text[i] >= '0' && text[i] <= '9') ++i;
                Integer exp = parse_integer(text.substr(start, i - start));
                e = to_ulong(exp, "exponent");
            }
        } else if (want_var) {
            fail("expected variable after '*'");
        } else if (!have_coeff) {
            if (i < n && ((text[i] >= 'a' && text[i] <= 'z') || (text[i] >= 'A' && text[i] <= 'Z')))
                fail("unknown variable");
            fail("expected term");
        }

        if (negate) c = k.neg(c);
        acc = acc + Poly<K>::monomial(k, std::move(c), e);
        first = false;
    }
    return acc;
}

namespace detail {

// Plain literals ride the '+'/'-' separators; anything else gets parentheses.
inline bool plain_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!(s[i] >= '0' && s[i] <= '9') && s[i] != '/') return false;
    return true;
}

} // namespace detail

template <Field K>
std::string format_poly(const Poly<K>& f, std::string_view var = "x") {
    if (f.is_zero()) return "0";
    const K& k = f.field();
    std::string out;
    for (long e = f.deg_value(); e >= 0; --e) {
        typename K::Element c = f.coeff(e);
        if (k.is_zero(c)) continue;
        std::string cs = k.format(c);
        char sep = '+';
        if (detail::plain_literal(cs)) {
            if (cs[0] == '-') {
                sep = '-';
                cs.erase(0, 1);
            }
        } else {
            cs = "(" + cs + ")";
        }
        if (!out.empty())
            out += sep;
        else if (sep == '-')
            out += '-';
        if (e == 0) {
            out += cs;
        } else {
            if (cs != "1") {
                out += cs;
                out += '*';
            }
            out += var;
            if (e >= 2) {
                out += '^';
                out += std::to_string(e);
            }
        }
    }
    return out;
}

} // namespace tforge
