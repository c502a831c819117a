#pragma once

#include <optional>
#include <string>
#include <utility>

#include "torsion_forge/certificate.hpp"
#include "torsion_forge/curve.hpp"

namespace tforge {

/// Monic odd-degree model for the k = 2 case. With c = lc(F) and
/// n = deg F = 2g + 1, the map (x, y) -> (c x, c^((n-1)/2) y) carries
/// y^2 = F(x) onto Y^2 = f(X), f(X) = c^(n-1) F(X/c) monic.
template <Field K>
struct MonicModel {
    Poly<K> f;
    typename K::Element c;
    long genus;

    const K& field() const { return f.field(); }

    typename K::Element map_x(const typename K::Element& x0) const {
        return f.field().mul(c, x0);
    }

    typename K::Element map_y(const typename K::Element& y0) const {
        const K& k = f.field();
        return k.mul(element_pow(k, c, Integer((f.deg_value() - 1) / 2)), y0);
    }
};

template <Field K>
MonicModel<K> monicize(const SuperellipticCurve<K>& cur) {
    const K& k = cur.field();
    if (cur.k() != 2)
        throw UnsupportedConfiguration("monic model exists for k = 2 curves only");
    if (k.characteristic() == 2)
        throw UnsupportedConfiguration("characteristic 2 is not supported");
    if (cur.F().is_constant() || cur.F().deg_value() % 2 == 0)
        throw UnsupportedConfiguration("monic model requires odd deg F");
    const long n = cur.F().deg_value();
    typename K::Element c = cur.F().lc();
    std::vector<typename K::Element> v(static_cast<std::size_t>(n) + 1, k.zero());
    v[n] = k.one(); // F_n * c^(n-1-n) = 1
    typename K::Element power = k.one(); // c^(n-1-i) for i < n
    for (long i = n - 1; i >= 0; --i) {
        v[i] = k.mul(cur.F().coeff(i), power);
        if (i > 0) power = k.mul(power, c);
    }
    MonicModel<K> m{Poly<K>(k, std::move(v)), c, (n - 1) / 2};
    // spot check f(c*x) = c^(n-1) F(x) at five sample arguments
    typename K::Element cn1 = element_pow(k, c, Integer(n - 1));
    for (long s = 0; s < 5; ++s) {
        typename K::Element x0 = k.from_integer(Integer(s));
        if (!k.eq(m.f.eval(k.mul(c, x0)), k.mul(cn1, cur.F().eval(x0))))
            throw Error("internal error: monic model identity fails");
    }
    return m;
}

/// Reduced divisor class in Mumford form: U monic, deg V < deg U,
/// U | V^2 - f. The identity element is (1, 0).
template <Field K>
class MumfordDivisor {
public:
    MumfordDivisor(const MonicModel<K>& m, Poly<K> U, Poly<K> V)
        : U_(std::move(U)), V_(std::move(V)) {
        if (U_.is_zero() || !U_.is_monic())
            throw Error("Mumford U must be monic");
        if (U_.deg() > Degree(m.genus))
            throw Error("divisor is not reduced: deg U exceeds the genus");
        if (!(V_.deg() < U_.deg())) V_ = rem(V_, U_);
        if (!rem(V_ * V_ - m.f, U_).is_zero())
            throw Error("certificate does not induce a Mumford divisor: U does not divide V^2 - f");
    }

    static MumfordDivisor identity(const MonicModel<K>& m) {
        const K& k = m.field();
        return MumfordDivisor(m, Poly<K>::constant(k, k.one()), Poly<K>(k));
    }

    bool is_identity() const { return U_.deg() == Degree(0); }
    const Poly<K>& U() const { return U_; }
    const Poly<K>& V() const { return V_; }

    bool operator==(const MumfordDivisor& o) const { return U_ == o.U_ && V_ == o.V_; }

private:
    Poly<K> U_, V_;
};

/// Degree-one divisor [(x0, y0) - infinity] for a point on the original
/// curve; coordinates are transported through the monic model map.
template <Field K>
MumfordDivisor<K> point_divisor(const MonicModel<K>& m, const SuperellipticCurve<K>& cur,
                                const typename K::Element& x0,
                                const typename K::Element& y0) {
    const K& k = m.field();
    if (!k.eq(k.mul(y0, y0), cur.F().eval(x0)))
        throw PreconditionError("point does not lie on the curve");
    Poly<K> U = Poly<K>::x(k) - Poly<K>::constant(k, m.map_x(x0));
    Poly<K> V = Poly<K>::constant(k, m.map_y(y0));
    return MumfordDivisor<K>(m, std::move(U), std::move(V));
}

/// Divisor class supported at the roots of u, with y = -a/b on the support
/// (psi = a + b y vanishes there). Transported to the monic model.
template <Field K>
MumfordDivisor<K> divisor_from_certificate(const MonicModel<K>& m,
                                           const TorsionCertificate<K>& cert) {
    const K& k = m.field();
    if (cert.k != 2)
        throw UnsupportedConfiguration("Mumford divisors are built for k = 2 certificates");
    if (!detail::coprime(cert.b, cert.u))
        throw PreconditionError("hypothesis gcd(b, u) = 1 fails");
    if (cert.u.deg() < 1) throw PreconditionError("deg u must be >= 1");
    if (cert.u.deg() > Degree(m.genus))
        throw PreconditionError("deg u exceeds the genus");

    Poly<K> U0 = cert.u.monic();
    Poly<K> binv = mod_inv(rem(cert.b, U0), U0);
    Poly<K> V0 = rem((-cert.a) * binv, U0);

    // x -> c x stretches roots by c: U(X) = c^(deg u) U0(X/c) stays monic,
    // V(X) = c^g V0(X/c) evaluates to the mapped y-values on the support.
    const long du = U0.deg_value();
    std::vector<typename K::Element> uc(static_cast<std::size_t>(du) + 1, k.zero());
    typename K::Element power = k.one();
    for (long i = du; i >= 0; --i) {
        uc[i] = k.mul(U0.coeff(i), power);
        if (i > 0) power = k.mul(power, m.c);
    }
    const long gpow = (m.f.deg_value() - 1) / 2;
    std::vector<typename K::Element> vc(static_cast<std::size_t>(gpow) + 1, k.zero());
    for (long i = 0; i <= gpow; ++i) {
        typename K::Element ci = element_pow(k, m.c, Integer(gpow - i));
        vc[i] = k.mul(V0.coeff(i), ci);
    }
    return MumfordDivisor<K>(m, Poly<K>(k, std::move(uc)), Poly<K>(k, std::move(vc)));
}

template <Field K>
MumfordDivisor<K> cantor_neg(const MonicModel<K>& m, const MumfordDivisor<K>& d) {
    return MumfordDivisor<K>(m, d.U(), rem(-d.V(), d.U()));
}

/// Cantor composition followed by reduction. The composition step follows the
/// textbook formulation: with d = s1 u1 + s2 u2 + s3 (v1 + v2),
///
///   u = u1 u2 / d^2
///   v = (s1 u1 v2 + s2 u2 v1 + s3 (v1 v2 + f)) / d  (mod u)
///
/// and reduction replaces (u, v) by ((f - v^2)/u, -v) until deg u <= g.
template <Field K>
MumfordDivisor<K> cantor_add(const MonicModel<K>& m, const MumfordDivisor<K>& d1,
                             const MumfordDivisor<K>& d2) {
    const K& k = m.field();
    const Poly<K>&u1 = d1.U(), &v1 = d1.V(), &u2 = d2.U(), &v2 = d2.V();

    auto e = xgcd(u1, u2);
    Poly<K> s1(k), s2(k), s3(k), d(k);
    Poly<K> v12 = v1 + v2;
    if (v12.is_zero()) {
        d = e.d;
        s1 = e.s;
        s2 = e.t;
        s3 = Poly<K>(k);
    } else {
        auto e2 = xgcd(e.d, v12);
        d = e2.d;
        s1 = e2.s * e.s;
        s2 = e2.s * e.t;
        s3 = e2.t;
    }

    Poly<K> u = exact_div(u1 * u2, d * d);
    Poly<K> vnum = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + m.f);
    Poly<K> v = rem(exact_div(vnum, d), u);

    while (u.deg() > Degree(m.genus)) {
        Poly<K> unew = exact_div(m.f - v * v, u);
        unew = unew.monic();
        v = rem(-v, unew);
        u = std::move(unew);
    }
    return MumfordDivisor<K>(m, u.monic(), std::move(v));
}

template <Field K>
MumfordDivisor<K> cantor_scalar_mul(const MonicModel<K>& m, const Integer& n,
                                    const MumfordDivisor<K>& d) {
    if (n < 0) throw Error("scalar multiple requires n >= 0");
    MumfordDivisor<K> acc = MumfordDivisor<K>::identity(m);
    if (n == 0) return acc;
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = cantor_add(m, acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), i)) acc = cantor_add(m, acc, d);
    }
    return acc;
}

struct OrderReport {
    bool order_divides = false;
    std::optional<Integer> order_exact;
    long steps_checked = 0;
    std::string model;
    std::string note;
};

/// N D0 = O and D0 != O certify ord(D0) | N. Exactness: for prime N up to a
/// few thousand every proper multiple is checked by direct iteration; for
/// composite N it suffices that (N/q) D0 != O for each prime q | N.
template <Field K>
OrderReport verify_order(const TorsionCertificate<K>& cert) {
    OrderReport rep;
    if (cert.k != 2) {
        rep.order_divides = verify_certificate(cert).valid;
        rep.note = "divisibility asserted by certificate identity only";
        return rep;
    }
    SuperellipticCurve<K> cur(cert.k, cert.F);
    MonicModel<K> m = monicize(cur);
    rep.model = format_poly(m.f);
    MumfordDivisor<K> d0 = divisor_from_certificate(m, cert);
    if (d0.is_identity()) {
        rep.note = "divisor class is trivial";
        return rep;
    }
    MumfordDivisor<K> nd = cantor_scalar_mul(m, cert.N, d0);
    rep.steps_checked = 1;
    rep.order_divides = nd.is_identity();
    if (!rep.order_divides) return rep;

    if (is_prime(cert.N) && cert.N <= 4096) {
        MumfordDivisor<K> acc = d0;
        for (Integer i(1); i < cert.N; ++i) {
            if (acc.is_identity()) return rep; // order < N: divides but not exact
            if (i + 1 < cert.N) acc = cantor_add(m, acc, d0);
            ++rep.steps_checked;
        }
        rep.order_exact = cert.N;
    } else {
        for (const auto& [q, e] : factorize(cert.N)) {
            (void)e;
            ++rep.steps_checked;
            if (cantor_scalar_mul(m, cert.N / q, d0).is_identity()) return rep;
        }
        rep.order_exact = cert.N;
    }
    return rep;
}

} // namespace tforge
