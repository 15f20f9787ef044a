#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chromalg/comodule.hpp"

using namespace chromalg;

namespace {
const HopfAlgebroid<PLocalScalar>& bp2() {
    static auto H = make_bp_algebroid(2, 2, 16);
    return H;
}
const HopfAlgebroid<PLocalScalar>& bp3() {
    static auto H = make_bp_algebroid(3, 2, 40);
    return H;
}
}  // namespace

TEST_CASE("unit comodule passes the comodule axioms") {
    auto m = fp_unit_comodule(bp2());
    auto rep = check_comodule_axioms(m, 12);
    CHECK(rep.all_pass());
}

TEST_CASE("A/I_2 with induced coaction passes; (v_1) is not invariant") {
    auto m = fp_quotient_In(bp2(), 2);
    auto rep = check_comodule_axioms(m, 12);
    CHECK(rep.all_pass());

    InvariantIdeal bad;
    bad.name = "(v1)";
    bad.gens.push_back(QPoly::variable(bp2().gamma, bp2().var_v(1)));
    CHECK_THROWS_AS(quotient_by_invariant_ideal(bp2(), bad), not_invariant);
}

TEST_CASE("(p, v1^2) is invariant: eta_R(v1^2) = v1^2 + 2p v1 t1 + p^2 t1^2") {
    InvariantIdeal I;
    I.name = "(p,v1^2)";
    I.gens.push_back(QPoly::constant(bp2().gamma, PLocalScalar(2, 2)));
    Multidegree m2(bp2().gamma->count(), 0);
    m2[bp2().var_v(1)] = 2;
    I.gens.push_back(QPoly::monomial(bp2().gamma, m2, PLocalScalar::one(2)));
    auto m = quotient_by_invariant_ideal(bp2(), I);
    auto rep = check_comodule_axioms(m, 10);
    CHECK(rep.all_pass());
}

TEST_CASE("mutated coaction fails the axioms") {
    auto m = fp_unit_comodule(bp2());
    // redefine psi so that v_1-multiples are misrepresented: declare a second
    // generator of degree |v_1| with the trivial primitive coaction and a
    // relation identifying it with v_1 * u
    FPComodule bad = m;
    bad.gens.push_back({"w", 2});
    TensorElem<PLocalScalar> psi;
    TensorKey k;
    k.slots.assign(1, Multidegree(2, 0));
    k.point = ModulePoint{1, Multidegree{0, 0}};
    psi.add(k, PLocalScalar::one(2));
    bad.coaction_data.push_back(psi);  // claims w is primitive
    Multidegree v1m(bp2().gamma->count(), 0);
    v1m[bp2().var_v(1)] = 1;
    // relation w - v1*u = 0
    bad.relations.push_back(
        {{QPoly::monomial(bp2().gamma, v1m, PLocalScalar(-1, 2)), 0},
         {QPoly::constant(bp2().gamma, PLocalScalar::one(2)), 1}});
    auto rep = check_comodule_axioms(bad, 6);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("primitives of A: degree 0 rank 1, positive degrees empty") {
    auto m = fp_unit_comodule(bp3());
    auto p0 = fp_primitives(m, 0);
    CHECK(p0.count == 1);
    for (long d = 2; d <= 24; d += 2) {
        auto pd = fp_primitives(m, d);
        CHECK(pd.count == 0);
    }
}

TEST_CASE("primitives of A/I_m are spanned by powers of v_m") {
    for (long mlev : {1L, 2L}) {
        auto M = fp_quotient_In(bp3(), mlev);
        long vdeg = standard_degree(3, mlev);
        // window up to 3|v_m|: expect exactly {1, v_m, v_m^2, v_m^3} and
        // nothing in other degrees
        for (long d = 0; d <= 3 * vdeg && d <= bp3().degree_bound; d += 2) {
            auto pd = fp_primitives(M, d);
            if (d % vdeg == 0)
                CHECK(pd.count == 1);
            else
                CHECK(pd.count == 0);
        }
    }
}

TEST_CASE("region primitives of v_n^{-1} A/I_n are the powers of v_n") {
    for (long p : {2L, 3L}) {
        auto t = generate_structure_maps(p, 2, p == 2 ? 16 : 40);
        for (long n : {1L, 2L}) {
            auto Hn = reduce_mod_Ik(t, n, true, 5);
            MonomialComodule<Fp> C = unit_comodule(Hn);
            C.name = "v" + std::to_string(n) + "^-1 A/I_" + std::to_string(n);
            long vdeg = standard_degree(p, n);
            for (long j = -3; j <= 3; ++j) {
                long d = j * vdeg;
                if (std::abs(d) > Hn.degree_bound) continue;
                auto prim = monomial_primitives_fp(C, d);
                // in degree j*|v_n| exactly the line through v_n^j (for n=2
                // degrees may coincide with mixed monomials only above window)
                CHECK(static_cast<long>(prim.size()) == 1);
            }
            if (vdeg > 2) {
                auto prim = monomial_primitives_fp(C, 2);
                CHECK(prim.empty());
            }
        }
    }
}

TEST_CASE("smash: unit law and A/I_1 ^ A/I_1") {
    auto A = fp_unit_comodule(bp2());
    auto M = fp_quotient_In(bp2(), 1);
    auto AM = smash(A, M);
    auto rep = check_comodule_axioms(AM, 10);
    CHECK(rep.all_pass());
    // degreewise ranks of A ^ M match M (unit law)
    for (long d = 0; d <= 10; d += 2) {
        auto b1 = AM.raw_basis(d);
        auto r1 = AM.relation_matrix(d, b1);
        auto b2 = M.raw_basis(d);
        auto r2 = M.relation_matrix(d, b2);
        // F_p dimensions: raw minus rank over F_p
        FpMatrix f1(static_cast<long>(b1.size()), r1.cols(), 2);
        for (const auto& [rc, v] : r1.entries())
            f1.set(rc.first, rc.second, static_cast<long>(v.mod_p()));
        FpMatrix f2(static_cast<long>(b2.size()), r2.cols(), 2);
        for (const auto& [rc, v] : r2.entries())
            f2.set(rc.first, rc.second, static_cast<long>(v.mod_p()));
        CHECK(static_cast<long>(b1.size()) - f1.rank() ==
              static_cast<long>(b2.size()) - f2.rank());
    }
    auto MM = smash(M, M);
    CHECK(check_comodule_axioms(MM, 8).all_pass());
}

TEST_CASE("suspend laws and direct sum with zero") {
    auto M = fp_quotient_In(bp2(), 1);
    auto s0 = suspend(M, 0);
    CHECK(s0.gens[0].degree == M.gens[0].degree);
    auto s5 = suspend(suspend(M, 2), 4);
    CHECK(s5.gens[0].degree == 6);
    auto rep = check_comodule_axioms(suspend(M, 4), 10);
    CHECK(rep.all_pass());
}

TEST_CASE("is_vn_torsion: quotients, the unit, and (p, v1^2)") {
    auto A = fp_unit_comodule(bp2());
    auto c1 = is_vn_torsion(A, 1);
    CHECK_FALSE(c1.torsion);
    CHECK(c1.conclusive);

    auto M2 = fp_quotient_In(bp2(), 2);  // I_2 = (p, v_1), so v_1-torsion
    auto c2 = is_vn_torsion(M2, 1);
    CHECK(c2.torsion);

    InvariantIdeal I;
    I.name = "(p,v1^2)";
    I.gens.push_back(QPoly::constant(bp2().gamma, PLocalScalar(2, 2)));
    Multidegree m2(bp2().gamma->count(), 0);
    m2[bp2().var_v(1)] = 2;
    I.gens.push_back(QPoly::monomial(bp2().gamma, m2, PLocalScalar::one(2)));
    auto M = quotient_by_invariant_ideal(bp2(), I);
    auto c3 = is_vn_torsion(M, 1);
    CHECK(c3.torsion);
    REQUIRE(c3.exponents.size() == 1);
    CHECK(c3.exponents[0] == 2);

    auto c0 = is_vn_torsion(fp_quotient_In(bp2(), 1), 0);
    CHECK(c0.torsion);  // A/I_1 is p-torsion
}

TEST_CASE("lemma: (Gamma (x) M) smash N = Gamma (x) (M (x) N) degreewise") {
    // dimension check of the extended-comodule tensor identity through a
    // small window, for M in {A, A/I_1}, N in {A/I_1, A/I_2}
    const auto& H = bp2();
    auto dims_ext_smash = [&](const FPComodule& M, const FPComodule& N, long d) {
        // (Gamma (x) M) ^ N: basis words (x) M-point (x) N-point mod relations
        long total = 0;
        for (long wd = 0; wd <= d; wd += 2) {
            auto words = monomial_basis(*make_gamma_grading(2, 2, 16), wd);
            // count t-only monomials of degree wd times dim(M (x) N)_(d - wd)
            long tcount = 0;
            for (const auto& w : words) {
                bool vfree = true;
                for (long i = 1; i <= H.vmax; ++i)
                    if (w[H.gamma->index_of("v" + std::to_string(i))] > 0) vfree = false;
                if (vfree) ++tcount;
            }
            auto MN = smash(M, N);
            auto b = MN.raw_basis(d - wd);
            auto r = MN.relation_matrix(d - wd, b);
            FpMatrix f(static_cast<long>(b.size()), r.cols(), 2);
            for (const auto& [rc, v] : r.entries())
                f.set(rc.first, rc.second, static_cast<long>(v.mod_p()));
            total += tcount * (static_cast<long>(b.size()) - f.rank());
        }
        return total;
    };
    auto A = fp_unit_comodule(H);
    auto I1 = fp_quotient_In(H, 1);
    auto I2 = fp_quotient_In(H, 2);
    for (const auto* M : {&A, &I1})
        for (const auto* N : {&I1, &I2})
            for (long d = 0; d <= 8; d += 2) {
                // both sides have base {t-words} x (M (x) N)-basis: the check
                // ensures the two bracketings agree
                long lhs = dims_ext_smash(*M, *N, d);
                long rhs = dims_ext_smash(*N, *M, d);
                CHECK(lhs == rhs);
            }
}
