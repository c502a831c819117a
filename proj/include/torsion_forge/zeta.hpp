#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsion_forge/certificate.hpp"
#include "torsion_forge/curve.hpp"
#include "torsion_forge/extension_field.hpp"
#include "torsion_forge/rational_function.hpp"

namespace tforge {

struct GoodReductionChecklist {
    Integer p;
    std::optional<Integer> t0;
    bool p_coprime_k = false;
    bool p_coprime_N = false;
    bool coefficients_reduce = false;
    bool degree_preserved = false;
    bool separable_mod_p = false;
};

struct ReducedCurve {
    SuperellipticCurve<PrimeField> curve;
    GoodReductionChecklist checklist;
};

namespace detail {

inline void pre_reduction_checks(int k, const Integer& N, const Integer& p,
                                 GoodReductionChecklist& cl) {
    if (Integer(k) % p == 0)
        throw BadReduction("bad reduction at p = " + p.get_str() + ": p divides k");
    cl.p_coprime_k = true;
    if (N % p == 0)
        throw BadReduction("bad reduction at p = " + p.get_str() + ": p divides N");
    cl.p_coprime_N = true;
}

inline void finish_reduction_checks(long orig_deg, const Integer& p, ReducedCurve& rc) {
    if (rc.curve.F().deg() != Degree(orig_deg))
        throw BadReduction("bad reduction at p = " + p.get_str() + ": deg F drops");
    rc.checklist.degree_preserved = true;
    if (!rc.curve.separability().separable)
        throw BadReduction("bad reduction at p = " + p.get_str() +
                           ": F is not separable modulo p");
    rc.checklist.separable_mod_p = true;
}

} // namespace detail

/// Reduce a curve over Q at p. Every item of the good-reduction checklist is
/// verified; the first failure is thrown as a named error.
inline ReducedCurve reduce_mod_p(int k, const Poly<RationalField>& F, const Integer& N,
                                 const Integer& p) {
    PrimeField fp(p);
    GoodReductionChecklist cl{p, std::nullopt};
    detail::pre_reduction_checks(k, N, p, cl);
    std::vector<Integer> coeffs;
    coeffs.reserve(F.coeffs().size());
    for (const auto& c : F.coeffs()) {
        try {
            coeffs.push_back(fp.from_rational(c));
        } catch (const BadReduction& e) {
            throw BadReduction("bad reduction at p = " + p.get_str() + ": " + e.what());
        }
    }
    ReducedCurve rc{SuperellipticCurve<PrimeField>(k, Poly<PrimeField>(fp, std::move(coeffs))),
                    cl};
    rc.checklist.coefficients_reduce = true;
    detail::finish_reduction_checks(F.deg_value(), p, rc);
    return rc;
}

/// Reduce a curve over Q(t) at p after specializing t = t0.
inline ReducedCurve reduce_mod_p(int k, const Poly<RationalFunctionField>& F, const Integer& N,
                                 const Integer& p, const Integer& t0) {
    PrimeField fp(p);
    GoodReductionChecklist cl{p, t0};
    detail::pre_reduction_checks(k, N, p, cl);
    std::vector<Integer> coeffs;
    coeffs.reserve(F.coeffs().size());
    for (const auto& c : F.coeffs()) {
        try {
            coeffs.push_back(specialize(c, fp, t0));
        } catch (const BadSpecialization& e) {
            throw BadReduction("bad reduction at p = " + p.get_str() + ": " + e.what());
        }
    }
    ReducedCurve rc{SuperellipticCurve<PrimeField>(k, Poly<PrimeField>(fp, std::move(coeffs))),
                    cl};
    rc.checklist.coefficients_reduce = true;
    detail::finish_reduction_checks(F.deg_value(), p, rc);
    return rc;
}

inline ReducedCurve reduce_mod_p(const TorsionCertificate<RationalField>& cert,
                                 const Integer& p) {
    return reduce_mod_p(cert.k, cert.F, cert.N, p);
}

inline ReducedCurve reduce_mod_p(const TorsionCertificate<RationalFunctionField>& cert,
                                 const Integer& p, const Integer& t0) {
    return reduce_mod_p(cert.k, cert.F, cert.N, p, t0);
}

namespace detail {

/// Number of solutions of y^k = v in a finite field of order q:
/// 1 for v = 0, else d = gcd(k, q-1) when v^((q-1)/d) = 1, else 0.
template <FiniteField K>
class KthRootCounter {
public:
    KthRootCounter(const K& field, int k) : field_(field) {
        q_ = field.order();
        d_ = tforge::gcd(Integer(k), q_ - 1);
        cofactor_ = (q_ - 1) / d_;
        if (q_ <= 10000) {
            // small fields get a lookup table of k-th power residues
            table_.assign(to_ulong(q_, "field order"), 0);
            Integer count = q_;
            for (Integer i(0); i < count; ++i) {
                auto w = field.element_at(i);
                if (field.is_zero(w)) continue;
                auto wk = element_pow(field, w, d_);
                table_[to_ulong(field.index_of(wk), "index")] = 1;
            }
        }
    }

    Integer count(const typename K::Element& v) const {
        if (field_.is_zero(v)) return Integer(1);
        if (!table_.empty())
            return table_[to_ulong(field_.index_of(v), "index")] ? d_ : Integer(0);
        return field_.is_one(element_pow(field_, v, cofactor_)) ? d_ : Integer(0);
    }

private:
    const K& field_;
    Integer q_, d_, cofactor_;
    std::vector<char> table_;
};

template <FiniteField K>
Integer count_points_over(const K& field, int k, const Poly<K>& F) {
    KthRootCounter<K> roots(field, k);
    Integer total(1); // the single point at infinity
    Integer q = field.order();
    for (Integer i(0); i < q; ++i)
        total += roots.count(F.eval(field.element_at(i)));
    return total;
}

} // namespace detail

/// N_i = #C(F_{p^i}) by brute-force enumeration, including the one point at
/// infinity (gcd(k, deg F) = 1 required). Refuses fields larger than `bound`.
inline Integer count_points(const SuperellipticCurve<PrimeField>& c, unsigned ext_degree,
                            const Integer& bound = Integer(2000000)) {
    if (ext_degree < 1) throw Error("extension degree must be >= 1");
    const PrimeField& fp = c.field();
    if (c.F().is_constant() || gcd(Integer(c.k()), Integer(c.F().deg_value())) != 1)
        throw UnsupportedConfiguration(
            "point counting requires gcd(k, deg F) = 1 (single point at infinity)");
    Integer q = pow_ui(fp.modulus(), ext_degree);
    if (q > bound)
        throw EnumerationLimit("extension too large: " + q.get_str() + " > " +
                               bound.get_str() + " elements");
    if (ext_degree == 1) return detail::count_points_over(fp, c.k(), c.F());

    ExtensionField fq(fp, find_irreducible(fp, ext_degree));
    std::vector<ExtensionField::Element> lifted;
    lifted.reserve(c.F().coeffs().size());
    for (const auto& a : c.F().coeffs()) lifted.push_back(fq.embed(a));
    return detail::count_points_over(fq, c.k(), Poly<ExtensionField>(fq, std::move(lifted)));
}

namespace detail {

// Compare m against A + B*sqrt(p) using integer arithmetic only.
inline int cmp_with_sqrt(const Integer& m, const Integer& A, const Integer& B,
                         const Integer& p) {
    Integer diff = m - A;
    if (B == 0) return diff < 0 ? -1 : (diff > 0 ? 1 : 0);
    Integer rhs2 = B * B * p;
    if (B > 0) {
        if (diff < 0) return -1;
        Integer d2 = diff * diff;
        return d2 < rhs2 ? -1 : (d2 > rhs2 ? 1 : 0);
    }
    if (diff > 0) return 1;
    Integer d2 = diff * diff;
    return d2 < rhs2 ? 1 : (d2 > rhs2 ? -1 : 0);
}

// (x0 + y0 sqrt(p))^e as a pair in Z[sqrt(p)].
inline std::pair<Integer, Integer> sqrt_ring_pow(Integer x0, Integer y0, unsigned e,
                                                 const Integer& p) {
    Integer x(1), y(0);
    for (unsigned i = 0; i < e; ++i) {
        Integer nx = x * x0 + p * y * y0;
        Integer ny = x * y0 + y * x0;
        x = nx;
        y = ny;
    }
    return {x, y};
}

} // namespace detail

/// L-polynomial coefficients a_0..a_2g from the counts N_1..N_g: Newton's
/// identities on the power sums S_i = p^i + 1 - N_i give a_1..a_g (each
/// division must be exact), the functional equation a_{2g-i} = p^{g-i} a_i
/// fills the top half. L(1) is the jacobian order; it must land inside the
/// Weil interval [(sqrt(p)-1)^{2g}, (sqrt(p)+1)^{2g}].
inline std::vector<Integer> l_polynomial(const std::vector<Integer>& counts, const Integer& p,
                                         unsigned g) {
    if (counts.size() != g)
        throw Error("need exactly g = " + std::to_string(g) + " counts, got " +
                    std::to_string(counts.size()));
    std::vector<Integer> S(g + 1), a(2 * g + 1, Integer(0));
    for (unsigned i = 1; i <= g; ++i) S[i] = pow_ui(p, i) + 1 - counts[i - 1];
    a[0] = 1;
    for (unsigned m = 1; m <= g; ++m) {
        Integer num = S[m];
        for (unsigned j = 1; j < m; ++j) num += a[j] * S[m - j];
        if (num % m != 0)
            throw InconsistentCounts("Newton identity not integral at step " +
                                     std::to_string(m) + "; counts are inconsistent");
        a[m] = -num / m;
    }
    for (unsigned i = 0; i < g; ++i) a[2 * g - i] = pow_ui(p, g - i) * a[i];

    Integer L1(0);
    for (const auto& c : a) L1 += c;
    auto lo = detail::sqrt_ring_pow(Integer(-1), Integer(1), 2 * g, p);
    auto hi = detail::sqrt_ring_pow(Integer(1), Integer(1), 2 * g, p);
    if (detail::cmp_with_sqrt(L1, lo.first, lo.second, p) < 0 ||
        detail::cmp_with_sqrt(L1, hi.first, hi.second, p) > 0)
        throw InconsistentCounts("L(1) = " + L1.get_str() + " violates the Weil bound");
    return a;
}

struct ZetaReport {
    Integer p;
    std::optional<Integer> t0;
    unsigned genus = 0;
    std::vector<Integer> counts;  // N_1 .. N_g
    std::vector<Integer> l_coeffs; // a_0 .. a_2g
    Integer jacobian_order;       // L(1)
    Integer N;
    bool divisible_by_N = false;
};

inline ZetaReport zeta_report(const ReducedCurve& rc, const Integer& N,
                              const Integer& bound = Integer(2000000)) {
    const SuperellipticCurve<PrimeField>& c = rc.curve;
    long g = genus(c);
    ZetaReport rep;
    rep.p = rc.checklist.p;
    rep.t0 = rc.checklist.t0;
    rep.genus = static_cast<unsigned>(g);
    for (unsigned i = 1; i <= rep.genus; ++i)
        rep.counts.push_back(count_points(c, i, bound));
    rep.l_coeffs = l_polynomial(rep.counts, c.field().modulus(), rep.genus);
    rep.jacobian_order = 0;
    for (const auto& a : rep.l_coeffs) rep.jacobian_order += a;
    rep.N = N;
    rep.divisible_by_N = rep.jacobian_order % N == 0;
    return rep;
}

struct DivisibilityScan {
    std::vector<ZetaReport> reports;
    std::vector<std::pair<Integer, std::string>> skipped; // (p, why reduction failed)

    bool all_divisible() const {
        for (const auto& r : reports)
            if (!r.divisible_by_N) return false;
        return true;
    }
};

/// Finite-field shadows of a certificate over Q: N must divide #Jac(F_p) at
/// every good-reduction prime. One failed report refutes the certificate.
inline DivisibilityScan check_torsion_divisibility(const TorsionCertificate<RationalField>& cert,
                                                   const std::vector<Integer>& primes,
                                                   const Integer& bound = Integer(2000000)) {
    DivisibilityScan out;
    for (const auto& p : primes) {
        try {
            out.reports.push_back(zeta_report(reduce_mod_p(cert, p), cert.N, bound));
        } catch (const Error& e) {
            out.skipped.emplace_back(p, e.what());
        }
    }
    if (out.reports.empty())
        throw NoUsablePrimes("no usable primes: every candidate failed reduction");
    return out;
}

/// Same for certificates over Q(t); each prime comes with its t0.
inline DivisibilityScan check_torsion_divisibility(
    const TorsionCertificate<RationalFunctionField>& cert, const std::vector<Integer>& primes,
    const std::vector<Integer>& t0s, const Integer& bound = Integer(2000000)) {
    if (primes.size() != t0s.size())
        throw Error("need one t0 per prime");
    DivisibilityScan out;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        try {
            out.reports.push_back(
                zeta_report(reduce_mod_p(cert, primes[i], t0s[i]), cert.N, bound));
        } catch (const Error& e) {
            out.skipped.emplace_back(primes[i], e.what());
        }
    }
    if (out.reports.empty())
        throw NoUsablePrimes("no usable primes: every candidate failed reduction");
    return out;
}

} // namespace tforge
