#pragma once

#include <utility>

#include "torsion_forge/poly.hpp"

namespace tforge {

/// Affine model y^k = F(x). The constructor enforces k >= 2, F != 0 and
/// gcd(k, char) = 1; separability and deg F >= 5 are exposed as validity
/// queries rather than rejections so that degenerate curves can still be
/// inspected and reported on.
template <Field K>
class SuperellipticCurve {
public:
    SuperellipticCurve(int k, Poly<K> F) : k_(k), F_(std::move(F)) {
        if (k_ < 2) throw PreconditionError("superelliptic curve requires k >= 2");
        if (F_.is_zero()) throw PreconditionError("superelliptic curve requires F != 0");
        Integer ch = F_.field().characteristic();
        if (ch != 0 && Integer(k_) % ch == 0)
            throw PreconditionError("hypothesis gcd(k, char) = 1 fails for k = " +
                                    std::to_string(k_));
    }

    int k() const { return k_; }
    const Poly<K>& F() const { return F_; }
    const K& field() const { return F_.field(); }

    Separability separability() const { return is_separable(F_); }
    bool degree_ok() const { return F_.deg() >= Degree(5); }
    bool is_valid() const { return degree_ok() && separability().separable; }

private:
    int k_;
    Poly<K> F_;
};

/// (k-1)(deg F - 1)/2; only defined when gcd(k, deg F) = 1.
template <Field K>
long genus(const SuperellipticCurve<K>& c) {
    if (c.F().is_constant())
        throw UnsupportedConfiguration("genus requires deg F >= 1");
    long n = c.F().deg_value();
    if (gcd(Integer(c.k()), Integer(n)) != 1)
        throw UnsupportedConfiguration(
            "genus formula requires gcd(k, deg F) = 1; got k = " + std::to_string(c.k()) +
            ", deg F = " + std::to_string(n));
    return (long(c.k()) - 1) * (n - 1) / 2;
}

template <Field K>
int points_at_infinity(const SuperellipticCurve<K>& c) {
    if (c.F().is_constant())
        throw UnsupportedConfiguration("points at infinity require deg F >= 1");
    long n = c.F().deg_value();
    if (gcd(Integer(c.k()), Integer(n)) == 1) return 1;
    if (n % c.k() == 0) return c.k();
    throw UnsupportedConfiguration("unsupported configuration: gcd(k, deg F) not 1 and k does not divide deg F");
}

/// Norm of psi = a + b*y from K(C) down to K(x): a^k + (-1)^(k+1) b^k F.
template <Field K>
Poly<K> norm_psi(const Poly<K>& a, const Poly<K>& b, int k, const Poly<K>& F) {
    if (k < 2) throw PreconditionError("norm requires k >= 2");
    Poly<K> t = b.pow(Integer(k)) * F;
    Poly<K> ak = a.pow(Integer(k));
    return k % 2 == 0 ? ak - t : ak + t;
}

} // namespace tforge
