#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torsion_forge/mumford.hpp"
#include "torsion_forge/zeta.hpp"

using namespace tforge;

TEST_CASE("reduce a curve over Q") {
    RationalField q;
    auto cert = family_example1(2, parse_poly(q, "x+1"), Integer(5));
    auto rc = reduce_mod_p(cert, Integer(7));
    REQUIRE(rc.curve.F().deg() == Degree(5));
    REQUIRE(rc.checklist.separable_mod_p);
    REQUIRE_THROWS_WITH(reduce_mod_p(cert, Integer(2)),
                        Catch::Matchers::ContainsSubstring("p divides k"));
    REQUIRE_THROWS_WITH(reduce_mod_p(cert, Integer(5)),
                        Catch::Matchers::ContainsSubstring("p divides N"));
}

TEST_CASE("reduce the Q(t) curve by specializing t") {
    auto seed = seed_example3();
    auto rc = reduce_mod_p(seed.k, seed.F, seed.N, Integer(11), Integer(2));
    REQUIRE(rc.curve.field().modulus() == 11);
    REQUIRE(genus(rc.curve) == 2);
    // at t0 = 0 the specialized F is x^4 (1 - 4x): inseparable
    REQUIRE_THROWS_AS(reduce_mod_p(seed.k, seed.F, seed.N, Integer(11), Integer(0)),
                      BadReduction);
}

TEST_CASE("counts over tiny fields match enumeration by hand") {
    PrimeField f3{Integer(3)};
    SuperellipticCurve<PrimeField> c(2, parse_poly(f3, "x^5+1"));
    REQUIRE(count_points(c, 1) == 4);
    REQUIRE(count_points(c, 2) == 10);
    REQUIRE_THROWS_AS(count_points(c, 9, Integer(100)), EnumerationLimit);

    PrimeField f7{Integer(7)};
    // nonzero cubes in F_7 are {1, 6}: x^4 + 2 hits 6 at x = 3, 4 (3 roots
    // each) and non-cubes elsewhere, so N_1 = 1 + 2*3
    SuperellipticCurve<PrimeField> c3(3, parse_poly(f7, "x^4+2"));
    REQUIRE(count_points(c3, 1) == 7);
}

TEST_CASE("root counting agrees with direct enumeration on both paths") {
    // table path (order <= 10^4) and exponent path (order > 10^4)
    for (long p : {13L, 10007L}) {
        PrimeField fp{Integer(p)};
        for (int k : {2, 3}) {
            detail::KthRootCounter<PrimeField> counter(fp, k);
            std::mt19937_64 rng(60 + p);
            for (int trial = 0; trial < 8; ++trial) {
                Integer v(rng() % p);
                Integer direct(0);
                for (Integer y(0); y < p; ++y) {
                    Integer yk = k == 2 ? fp.mul(y, y) : fp.mul(fp.mul(y, y), y);
                    if (yk == v) ++direct;
                }
                REQUIRE(counter.count(v) == direct);
            }
        }
    }
}

TEST_CASE("k | deg F is refused") {
    PrimeField f5{Integer(5)};
    SuperellipticCurve<PrimeField> c(2, parse_poly(f5, "x^6+x+1"));
    REQUIRE_THROWS_AS(count_points(c, 1), UnsupportedConfiguration);
}

TEST_CASE("L-polynomial small identities") {
    // g = 1 with N_1 = p + 1: L(T) = 1 + p T^2
    auto a = l_polynomial({Integer(8)}, Integer(7), 1);
    REQUIRE(a == std::vector<Integer>{1, 0, 7});
    Integer l1(0);
    for (const auto& c : a) l1 += c;
    REQUIRE(l1 == 8);

    // g = 2 with both power sums zero: L(T) = 1 + p^2 T^4
    auto b = l_polynomial({Integer(8), Integer(50)}, Integer(7), 2);
    REQUIRE(b == std::vector<Integer>{1, 0, 0, 0, 49});

    // y^2 = x^5 + 1 over F_3
    auto c = l_polynomial({Integer(4), Integer(10)}, Integer(3), 2);
    REQUIRE(c == std::vector<Integer>{1, 0, 0, 0, 9});
}

TEST_CASE("inconsistent counts are rejected") {
    REQUIRE_THROWS_AS(l_polynomial({Integer(4), Integer(11)}, Integer(3), 2),
                      InconsistentCounts);
    // wildly wrong count violates the Weil interval
    REQUIRE_THROWS_AS(l_polynomial({Integer(100), Integer(10000)}, Integer(3), 2),
                      InconsistentCounts);
}

TEST_CASE("functional equation and forward recursion reproduce the counts") {
    std::mt19937_64 rng(51);
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeField fp{Integer(p)};
        // random separable quintic
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Integer> cf;
            for (int i = 0; i < 5; ++i) cf.push_back(Integer(rng() % p));
            cf.push_back(Integer(1));
            Poly<PrimeField> F(fp, cf);
            if (!is_separable(F).separable) continue;
            SuperellipticCurve<PrimeField> c(2, F);
            std::vector<Integer> counts{count_points(c, 1), count_points(c, 2)};
            auto a = l_polynomial(counts, Integer(p), 2);
            REQUIRE(a[0] == 1);
            REQUIRE(a[3] == Integer(p) * a[1]);
            REQUIRE(a[4] == Integer(p) * Integer(p));
            // Newton forward: S_m = -(m a_m + sum_{j<m} a_j S_{m-j})
            std::vector<Integer> S(3);
            S[1] = -a[1];
            S[2] = -(2 * a[2] + a[1] * S[1]);
            REQUIRE(counts[0] == Integer(p) + 1 - S[1]);
            REQUIRE(counts[1] == Integer(p) * Integer(p) + 1 - S[2]);
        }
    }
}

TEST_CASE("divisibility reports for the quintic family") {
    RationalField q;
    auto cert = family_example1(2, parse_poly(q, "x+1"), Integer(5));
    auto scan = check_torsion_divisibility(cert, {Integer(7), Integer(11), Integer(13)});
    REQUIRE(scan.reports.size() == 3);
    REQUIRE(scan.all_divisible());
    // frozen oracle values (independent brute-force enumeration)
    REQUIRE(scan.reports[0].counts == std::vector<Integer>{9, 53});
    REQUIRE(scan.reports[0].l_coeffs == std::vector<Integer>{1, 1, 2, 7, 49});
    REQUIRE(scan.reports[0].jacobian_order == 60);
    REQUIRE(scan.reports[1].jacobian_order == 120);
    REQUIRE(scan.reports[2].jacobian_order == 160);
}

TEST_CASE("divisibility reports for the Q(t) curve") {
    auto seed = seed_example3();
    auto cert = construct(2, Integer(13), seed.b, seed.u, seed.R1,
                          seed.field.from_integer(Integer(2)));
    auto scan = check_torsion_divisibility(cert, {Integer(11), Integer(11), Integer(23)},
                                           {Integer(2), Integer(3), Integer(5)});
    REQUIRE(scan.reports.size() == 3);
    REQUIRE(scan.all_divisible());
    REQUIRE(scan.reports[0].jacobian_order == 156);
    REQUIRE(scan.reports[1].jacobian_order == 104);
    REQUIRE(scan.reports[2].jacobian_order == 832);
}

TEST_CASE("a tampered certificate is refuted or unreducible") {
    RationalField q;
    auto cert = family_example1(2, parse_poly(q, "x+1"), Integer(5));
    cert.F = cert.F + Poly<RationalField>::constant(q, Rational(1));
    bool refuted = false, all_bad = true;
    try {
        auto scan = check_torsion_divisibility(cert, {Integer(7), Integer(11), Integer(13)});
        all_bad = scan.reports.empty();
        refuted = !scan.all_divisible();
    } catch (const NoUsablePrimes&) {
        all_bad = true;
    }
    REQUIRE((refuted || all_bad));
}

TEST_CASE("all primes bad raises no-usable-primes") {
    RationalField q;
    auto cert = family_example1(2, parse_poly(q, "x+1"), Integer(5));
    REQUIRE_THROWS_AS(check_torsion_divisibility(cert, {Integer(2), Integer(5)}),
                      NoUsablePrimes);
}

TEST_CASE("jacobian order annihilates the Cantor group") {
    std::mt19937_64 rng(52);
    for (long p : {7L, 11L}) {
        PrimeField fp{Integer(p)};
        SuperellipticCurve<PrimeField> c(2, parse_poly(fp, "x^5+1"));
        auto counts = std::vector<Integer>{count_points(c, 1), count_points(c, 2)};
        auto a = l_polynomial(counts, Integer(p), 2);
        Integer order(0);
        for (const auto& cc : a) order += cc;
        auto m = monicize(c);
        for (int i = 0; i < 20; ++i) {
            // random reduced divisor from two random points
            auto rand_pt = [&]() -> MumfordDivisor<PrimeField> {
                for (;;) {
                    Integer x0(rng() % p);
                    Integer v = c.F().eval(x0);
                    for (Integer y0(0); y0 < p; ++y0)
                        if (fp.mul(y0, y0) == v) return point_divisor(m, c, x0, y0);
                }
            };
            auto d = cantor_add(m, rand_pt(), rand_pt());
            REQUIRE(cantor_scalar_mul(m, order, d).is_identity());
        }
    }
}
