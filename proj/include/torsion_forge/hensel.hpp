#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torsion_forge/poly.hpp"

namespace tforge {

/// Lifting a polynomial k-th root: given R1 with R1^k = u (mod b) and
/// gcd(R1, b) = 1, refine it to R_l with R_l^k = u (mod b^l). Each level
/// applies one Newton-style correction
///
///     lambda1 = (R^k - u) / b^(l-1)          (exact division)
///     lambda2 = lambda1 * (k R^(k-1))^-1     (mod b, deg < deg b)
///     R      <- R - lambda2 * b^(l-1)
///
/// valid whenever the characteristic does not divide k.
template <Field K>
struct LiftProblem {
    int k;
    Poly<K> b;
    Poly<K> u;
    Poly<K> R1;
    int target_level;
};

template <Field K>
struct LiftStep {
    int level;
    Poly<K> lambda1;
    Poly<K> lambda2;
    Poly<K> R;
};

template <Field K>
struct LiftResult {
    Poly<K> R;
    int level;
    std::optional<std::vector<LiftStep<K>>> trace;
};

template <Field K>
void validate_lift_problem(const LiftProblem<K>& pr) {
    const K& k = pr.b.field();
    if (pr.k < 2) throw PreconditionError("lift requires k >= 2");
    if (pr.target_level < 1) throw PreconditionError("lift requires target level >= 1");
    if (pr.b.deg() < 1) throw PreconditionError("lift requires deg(b) >= 1");
    Integer ch = k.characteristic();
    if (ch != 0 && Integer(pr.k) % ch == 0)
        throw PreconditionError("hypothesis gcd(k, char) = 1 fails: characteristic " +
                                ch.get_str() + " divides k = " + std::to_string(pr.k));
    if (gcd(pr.R1, pr.b).deg() != Degree(0))
        throw PreconditionError("hypothesis gcd(R1, b) = 1 fails");
    if (!rem(pr.R1.pow(pr.k) - pr.u, pr.b).is_zero())
        throw PreconditionError("hypothesis R1^k = u (mod b) fails");
}

template <Field K>
LiftStep<K> lift_step(const Poly<K>& R_prev, int level, const LiftProblem<K>& pr) {
    if (level < 2) throw PreconditionError("lift_step applies to levels >= 2");
    const K& k = pr.b.field();
    Poly<K> b_pow = pr.b.pow(Integer(level - 1));
    Poly<K> lambda1(k);
    try {
        lambda1 = exact_div(R_prev.pow(pr.k) - pr.u, b_pow);
    } catch (const InexactDivision&) {
        throw PreconditionError("hypothesis R^k = u (mod b^(l-1)) fails at level " +
                                std::to_string(level));
    }
    Poly<K> unit = rem(R_prev.pow(pr.k - 1).mul_scalar(k.from_integer(Integer(pr.k))), pr.b);
    Poly<K> inv(k);
    try {
        inv = mod_inv(unit, pr.b);
    } catch (const NotInvertible& e) {
        throw PreconditionError(std::string("k*R^(k-1) is not invertible modulo b: ") +
                                e.what());
    }
    Poly<K> lambda2 = rem(rem(lambda1, pr.b) * inv, pr.b);
    Poly<K> R = R_prev - lambda2 * b_pow;
    return {level, std::move(lambda1), std::move(lambda2), std::move(R)};
}

template <Field K>
LiftResult<K> lift(const LiftProblem<K>& pr, bool keep_trace = false) {
    validate_lift_problem(pr);
    LiftResult<K> out{pr.R1, 1, std::nullopt};
    if (keep_trace) out.trace.emplace();
    for (int level = 2; level <= pr.target_level; ++level) {
        LiftStep<K> step = lift_step(out.R, level, pr);
        out.R = step.R;
        out.level = level;
        if (out.trace) out.trace->push_back(std::move(step));
    }
    out.level = pr.target_level;
    return out;
}

/// Checks both congruences of the lift directly (modular exponentiation and
/// subtraction only), independent of how the result was produced.
template <Field K>
bool verify_lift(const LiftResult<K>& res, const LiftProblem<K>& pr) {
    try {
        if (res.level < 1) return false;
        Poly<K> bl = pr.b.pow(Integer(res.level));
        if (!(mod_pow(res.R, Integer(pr.k), bl) == rem(pr.u, bl))) return false;
        return rem(res.R - pr.R1, pr.b).is_zero();
    } catch (const Error&) {
        return false;
    }
}

/// Brute-force search for a level-1 root: R with R^k = u (mod b) and
/// gcd(R, b) = 1. Finite fields only, and only at toy sizes (the search is
/// exhaustive over all q^deg(b) residues); meant for seeding test problems.
template <FiniteField K>
std::optional<Poly<K>> find_kth_root(int k, const Poly<K>& u, const Poly<K>& b,
                                     const Integer& search_bound = Integer(1000000)) {
    const K& field = b.field();
    if (b.deg() < 1) throw Error("find_kth_root requires deg(b) >= 1");
    const long d = b.deg_value();
    Integer count(1);
    for (long i = 0; i < d; ++i) count *= field.order();
    if (count > search_bound)
        throw EnumerationLimit("root search space " + count.get_str() + " exceeds bound");
    std::vector<typename K::Element> coeffs(static_cast<std::size_t>(d), field.zero());
    for (Integer idx(0); idx < count; ++idx) {
        Integer i = idx;
        for (long j = 0; j < d; ++j) {
            coeffs[j] = field.element_at(i % field.order());
            i /= field.order();
        }
        Poly<K> r(field, coeffs);
        if (r.is_zero()) continue;
        if (gcd(r, b).deg() != Degree(0)) continue;
        if (mod_pow(r, Integer(k), b) == rem(u, b)) return r;
    }
    return std::nullopt;
}

} // namespace tforge
