#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torsion_forge/curve.hpp"
#include "torsion_forge/hensel.hpp"
#include "torsion_forge/rational_field.hpp"
#include "torsion_forge/rational_function.hpp"

namespace tforge {

struct CertificateChecks {
    bool identity = false;     // a^k + (-1)^(k+1) b^k F = eps^k u^N
    bool separable = false;    // gcd(F, F') = 1
    bool coprime_ab = false;   // gcd(a, b) = 1
    bool coprime_bu = false;   // gcd(b, u) = 1
    bool deg_u_bound = false;  // 1 <= deg u <= (k-1)(deg F - 1)/2
    bool gcd_k_degF = false;   // gcd(k, deg F) = 1
    bool degF_ge_5 = false;

    bool all() const {
        return identity && separable && coprime_ab && coprime_bu && deg_u_bound &&
               gcd_k_degF && degF_ge_5;
    }
};

/// Constructive witness of an N-division point: the polynomial identity
/// a^k + (-1)^(k+1) b^k F = eps^k u^N forces the class of the divisor
/// supported at the roots of u to be killed by N in Jac(y^k = F).
template <Field K>
struct TorsionCertificate {
    int k = 2;
    Integer N;
    Poly<K> b, u, R1, Rk, a, F;
    typename K::Element epsilon;
    long genus = 0; // (k-1)(deg F - 1)/2; the curve genus when gcd_k_degF holds
    CertificateChecks checks;

    const K& field() const { return b.field(); }

    std::string psi_note() const {
        return "psi = (" + format_poly(a) + ") + (" + format_poly(b) + ")*y";
    }
};

namespace detail {

template <Field K>
bool coprime(const Poly<K>& f, const Poly<K>& g) {
    if (f.is_zero() && g.is_zero()) return false;
    return gcd(f, g).deg() == Degree(0);
}

inline long genus_bound(int k, Degree degF) {
    if (degF < 1) return 0;
    return (long(k) - 1) * (degF.value() - 1) / 2;
}

} // namespace detail

template <Field K>
CertificateChecks recompute_checks(int k, const Integer& N, const Poly<K>& b,
                                   const Poly<K>& u, const Poly<K>& a, const Poly<K>& F,
                                   const typename K::Element& epsilon) {
    const K& field = b.field();
    CertificateChecks c;
    Poly<K> rhs = u.pow(N).mul_scalar(element_pow(field, epsilon, Integer(k)));
    c.identity = norm_psi(a, b, k, F) == rhs;
    c.separable = !F.is_zero() && is_separable(F).separable;
    c.coprime_ab = detail::coprime(a, b);
    c.coprime_bu = detail::coprime(b, u);
    long gb = detail::genus_bound(k, F.deg());
    c.deg_u_bound = u.deg() >= 1 && u.deg() <= Degree(gb);
    c.gcd_k_degF = !F.is_zero() && gcd(Integer(k), Integer(F.deg_value())) == 1;
    c.degF_ge_5 = F.deg() >= 5;
    return c;
}

/// Runs the full pipeline: lift R1 to level k, take the least-degree residue
/// a of eps * Rk^N mod b^k, and solve the norm identity for F (the division
/// by b^k must be exact; anything else is a bug, not an input error).
template <Field K>
TorsionCertificate<K> construct(int k, const Integer& N, const Poly<K>& b, const Poly<K>& u,
                                const Poly<K>& R1, const typename K::Element& epsilon) {
    const K& field = b.field();
    if (N < 1) throw PreconditionError("construct requires N >= 1");
    if (field.is_zero(epsilon)) throw PreconditionError("epsilon must be nonzero");
    if (!detail::coprime(b, u)) throw PreconditionError("hypothesis gcd(b, u) = 1 fails");

    LiftProblem<K> pr{k, b, u, R1, k};
    LiftResult<K> lifted = lift(pr); // validates gcd(R1,b), R1^k = u (mod b), char

    Poly<K> bk = b.pow(Integer(k));
    Poly<K> a = mod_pow(lifted.R, N, bk).mul_scalar(epsilon);
    Poly<K> rhs = u.pow(N).mul_scalar(element_pow(field, epsilon, Integer(k)));
    Poly<K> F = exact_div(rhs - a.pow(Integer(k)), bk);
    if (k % 2 == 0) F = -F;

    TorsionCertificate<K> cert{k,     N, b, u, R1, lifted.R, a, F, epsilon,
                               detail::genus_bound(k, F.deg()),
                               recompute_checks(k, N, b, u, a, F, epsilon)};
    if (!cert.checks.identity)
        throw Error("internal error: norm identity fails after construction");
    return cert;
}

struct VerificationReport {
    CertificateChecks checks;
    bool genus_matches = false;
    bool valid = false;

    std::vector<std::pair<std::string, bool>> lines() const {
        return {{"identity", checks.identity},
                {"separable", checks.separable},
                {"coprime_ab", checks.coprime_ab},
                {"coprime_bu", checks.coprime_bu},
                {"deg_u_bound", checks.deg_u_bound},
                {"gcd_k_degF", checks.gcd_k_degF},
                {"degF_ge_5", checks.degF_ge_5},
                {"genus", genus_matches}};
    }
};

/// Recomputes every flag from the certificate data alone. Reports rather than
/// throws: a tampered certificate yields a report full of failures.
template <Field K>
VerificationReport verify_certificate(const TorsionCertificate<K>& cert) {
    VerificationReport r;
    try {
        r.checks = recompute_checks(cert.k, cert.N, cert.b, cert.u, cert.a, cert.F,
                                    cert.epsilon);
        r.genus_matches = cert.genus == detail::genus_bound(cert.k, cert.F.deg());
    } catch (const Error&) {
        r.checks = CertificateChecks{};
        r.genus_matches = false;
    }
    r.valid = r.checks.all() && r.genus_matches;
    return r;
}

// ---------------------------------------------------------------------------
// The three certificate families shipped with the tool.
// ---------------------------------------------------------------------------

/// b = +-1, u = x, N = p: F = a^k - x^p and psi = a - y give a p-division
/// point outright, no lifting involved. Requires a in Z[x], gcd(a(0), k) = 1
/// and an odd prime p > k deg(a); the sign of the constant b tracks the parity
/// of k so the norm identity holds as stated.
inline TorsionCertificate<RationalField> family_example1(int k, const Poly<RationalField>& a,
                                                         const Integer& p) {
    const RationalField field = a.field();
    if (k < 2) throw PreconditionError("family requires k >= 2");
    if (a.is_zero()) throw PreconditionError("a must be nonzero");
    for (const auto& c : a.coeffs())
        if (c.get_den() != 1)
            throw PreconditionError("a must have integer coefficients");
    Integer a0 = a.coeff(0).get_num();
    if (gcd(a0, Integer(k)) != 1)
        throw PreconditionError("hypothesis gcd(a(0), k) = 1 fails");
    if (p == 2 || !is_prime(p))
        throw PreconditionError("p must be an odd prime, got " + p.get_str());
    if (p <= Integer(k) * a.deg_value())
        throw PreconditionError("hypothesis p > k*deg(a) fails");

    Poly<RationalField> x = Poly<RationalField>::x(field);
    Poly<RationalField> F = a.pow(Integer(k)) - x.pow(p);
    Poly<RationalField> b =
        Poly<RationalField>::constant(field, Rational(k % 2 == 0 ? 1 : -1));
    Rational eps(1);
    TorsionCertificate<RationalField> cert{
        k, p, b, x, a, a, a, F, eps,
        detail::genus_bound(k, F.deg()),
        recompute_checks(k, p, b, x, a, F, eps)};
    if (!cert.checks.identity)
        throw Error("internal error: norm identity fails in family construction");
    return cert;
}

inline Poly<RationalField> example2_modulus(const RationalField& field) {
    return Poly<RationalField>::from_integers(field, {1, 0, 3, 0, 3, -1, 1});
}

/// k = 3, b the fixed sextic, u = x, R1 = x^2 + 1, eps = 1, N = p. Yields a
/// genus p - 19 curve whose jacobian has a rational point of order dividing
/// (and, p being prime, exactly) p, provided F_p comes out separable.
inline TorsionCertificate<RationalField> family_example2(const Integer& p) {
    if (!is_prime(p)) throw PreconditionError(p.get_str() + " is not prime");
    if (p < 51) throw PreconditionError("family requires a prime p >= 51");
    RationalField field;
    Poly<RationalField> b = example2_modulus(field);
    Poly<RationalField> u = Poly<RationalField>::x(field);
    Poly<RationalField> R1 = Poly<RationalField>::from_integers(field, {1, 0, 1});
    TorsionCertificate<RationalField> cert = construct(3, p, b, u, R1, Rational(1));
    if (Integer(cert.genus) != p - 19)
        throw Error("internal error: genus is not p - 19");
    return cert;
}

/// Fixed genus-two curve over Q(t) with a 13-division point: the printed
/// model, plus the (b, R1, u) data that reconstructs it via the pipeline.
struct Example3Seed {
    int k = 2;
    Integer N = 13;
    RationalFunctionField field;
    Poly<RationalFunctionField> F, b, R1, u;
};

inline Example3Seed seed_example3() {
    RationalFunctionField field;
    auto P = [&](std::string_view s) { return parse_poly(field, s); };
    Example3Seed seed{
        2, Integer(13), field,
        P("-4*x^5+(t^2+10*t+1)*x^4+(-8*t^2-4*t)*x^3+(2*t^3+6*t^2)*x^2+(-4*t^3)*x+(t^4)"),
        P("x^4-3*x^3+(2*t+1)*x^2+(-2*t)*x+(t^2)"),
        P("(-1/t)*x^3+(3/t)*x^2+(-(1+t)/t)*x+1"),
        P("x")};
    return seed;
}

} // namespace tforge
