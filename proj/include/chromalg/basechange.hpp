#pragma once

/* Landweber base change: the induced presentation (B, Gamma_B) for
 * B = E(n)_*, the localized quotients (C, Sigma) = (v_k^{-1}A/I_k,
 * v_k^{-1}Gamma/I_k), Phi_* on comodules, and the change-of-rings comparison
 * on I_n-torsion coefficients. */

#include "chromalg/chart.hpp"
#include "chromalg/localization.hpp"

namespace chromalg {

/* (C, Sigma): structure maps reduced mod I_k with v_k inverted. */
inline HopfAlgebroid<Fp> build_localized(const StructureMapTable& t, long k, long box) {
    if (k < 1)
        throw unsupported_class("build_localized: the rational case k = 0 is not "
                                "supported");
    return reduce_mod_Ik(t, k, true, box);
}

/* (B, Gamma_B) for B = E(n)_*: v_n inverted, variables above n act as zero.
 * eta_R(v_n)^{-1} expands by a finite Neumann series inside the box. */
inline HopfAlgebroid<PLocalScalar> induced_En_algebroid(const StructureMapTable& t,
                                                        long n, long box) {
    HopfAlgebroid<PLocalScalar> H = localize_integral(t, n, box);
    H.top_var = n;
    // drop table terms carrying variables above n (they act as zero on B)
    auto strip = [&](const QPoly& a, GradingPtr g) {
        QPoly r(g);
        if (a.truncated()) r.mark_truncated();
        for (const auto& [m, c] : a.terms()) {
            bool dead = false;
            for (long j = n + 1; j <= H.vmax; ++j) {
                long idx = g->index_of("v" + std::to_string(j));
                if (idx >= 0 && m[idx] > 0) dead = true;
            }
            if (!dead) r.add_term(m, c);
        }
        return r;
    };
    for (auto& [i, e] : H.eta_r) e = strip(e, H.gamma);
    for (auto& [i, c] : H.chi) c = strip(c, H.gamma);
    for (auto& [i, d] : H.delta) d = strip(d, H.gamma2);
    return H;
}

/* ---- Phi_*: base change of comodules ---------------------------------- */

/* degreewise dimension of B (x)_A A/I_k over E(n)_* within the box */
inline long phi_star_quotient_dim(const HopfAlgebroid<PLocalScalar>& En, long k,
                                  long degree) {
    LatticeShape s = En.base_shape();
    for (long j = 1; j < k && j <= En.vmax; ++j) {
        // v_j acts as zero on B/I_k B; inverted v_j collapses everything
        if (s.con[j - 1] == VarConstraint::AnyInt) return 0;
        s.con[j - 1] = VarConstraint::Zero;
    }
    if (k >= 1) {
        // killed by p: dimensions are F_p counts of lattice points
    }
    return static_cast<long>(s.points(degree).size());
}

/* Phi_*(A/I_k) as a monomial comodule over the induced presentation (valid
 * when nonzero); used with the comodule axiom checker. */
inline MonomialComodule<PLocalScalar>
phi_star_quotient(const HopfAlgebroid<PLocalScalar>& En, long k) {
    MonomialComodule<PLocalScalar> m;
    m.H = &En;
    m.shape = En.base_shape();
    for (long j = 1; j < k && j <= En.vmax; ++j) m.shape.con[j - 1] = VarConstraint::Zero;
    m.name = "E(n)/I_" + std::to_string(k);
    return m;
}

/* ---- weak equivalence rank check --------------------------------------- */

/* Degreewise rank equality for C_B (x)_C Sigma (x)_C C_B = Sigma_B at level
 * k = n: kill v_j (j > n) on both sides of Sigma and compare with Sigma_B =
 * v_n^{-1} Gamma_B / I_n. */
inline bool weak_equivalence_rank_check(const StructureMapTable& t, long n, long box,
                                        long window) {
    auto Hc = reduce_mod_Ik(t, n, true, box);   // (C, Sigma)
    const long p = t.prime;
    const long vd = standard_degree(p, n);
    // Sigma_B dimensions: t-words over F_p[v_n^{+-1}] (no higher vars)
    auto sigma_b_dim = [&](long d) {
        long count = 0;
        for (long wd = 0; wd <= t.degree_bound; wd += 2) {
            long nw = wd == 0 ? 1 : static_cast<long>(reduced_gamma_basis(Hc, wd).size());
            if (nw == 0) continue;
            long rem = d - wd;
            if (rem % vd == 0 && std::abs(rem / vd) <= box) count += nw;
        }
        return count;
    };
    // quotient of Sigma by two-sided (v_j, eta_R(v_j)) for j in (n, vmax]
    for (long d = -window; d <= window; d += 2) {
        // basis of Sigma in degree d within the box: words x lattice
        std::vector<std::pair<Multidegree, Multidegree>> basis;
        LatticeShape sh = Hc.base_shape();
        for (long wd = 0; wd <= t.degree_bound; wd += 2) {
            auto words = wd == 0 ? std::vector<Multidegree>{Multidegree(Hc.vmax, 0)}
                                 : reduced_gamma_basis(Hc, wd);
            for (const auto& w : words)
                for (const auto& e : sh.points(d - wd)) basis.emplace_back(w, e);
        }
        std::sort(basis.begin(), basis.end());
        auto index_of = [&](const Multidegree& w, const Multidegree& e) -> long {
            auto it = std::lower_bound(basis.begin(), basis.end(), std::make_pair(w, e));
            if (it != basis.end() && it->first == w && it->second == e)
                return static_cast<long>(it - basis.begin());
            return -1;
        };
        // span columns: left v_j-multiples and right eta_R(v_j)-multiples of
        // one degree lower
        std::vector<std::vector<long>> cols;
        for (long j = n + 1; j <= Hc.vmax; ++j) {
            long vjd = standard_degree(p, j);
            // enumerate basis of degree d - |v_j|, multiply
            std::vector<std::pair<Multidegree, Multidegree>> lower;
            for (long wd = 0; wd <= t.degree_bound; wd += 2) {
                auto words = wd == 0 ? std::vector<Multidegree>{Multidegree(Hc.vmax, 0)}
                                     : reduced_gamma_basis(Hc, wd);
                for (const auto& w : words)
                    for (const auto& e : sh.points(d - vjd - wd)) lower.emplace_back(w, e);
            }
            for (const auto& [w, e] : lower) {
                // left multiplication: v_j * (w (x) e) = w (x) (v_j e)
                {
                    Multidegree e2 = e;
                    e2[j - 1] += 1;
                    std::vector<long> col(basis.size(), 0);
                    if (sh.admissible(e2)) {
                        long idx = index_of(w, e2);
                        if (idx >= 0) col[idx] = 1;
                    }
                    cols.push_back(std::move(col));
                }
                // right multiplication by eta_R(v_j): the table polynomial
                {
                    std::vector<long> col(basis.size(), 0);
                    if (Hc.eta_r.count(j)) {
                        for (const auto& [mm, cc] : Hc.eta_r.at(j).terms()) {
                            auto sp = Hc.split(mm, cc);
                            Multidegree w2 = w;
                            for (long i = 0; i < Hc.vmax; ++i) w2[i] += sp.tpart[i];
                            Multidegree e2 = e;
                            for (long i = 0; i < Hc.vmax; ++i) e2[i] += sp.vpart[i];
                            if (!sh.admissible(e2)) continue;
                            long idx = index_of(w2, e2);
                            if (idx >= 0) col[idx] = static_cast<long>(cc.rep());
                        }
                    }
                    cols.push_back(std::move(col));
                }
            }
        }
        FpMatrix span(static_cast<long>(basis.size()), static_cast<long>(cols.size()),
                      p);
        for (size_t j2 = 0; j2 < cols.size(); ++j2)
            for (size_t i = 0; i < cols[j2].size(); ++i)
                if (cols[j2][i]) span.set(static_cast<long>(i), static_cast<long>(j2),
                                          cols[j2][i]);
        long quotient_dim = static_cast<long>(basis.size()) - span.rank();
        if (quotient_dim != sigma_b_dim(d)) return false;
    }
    return true;
}

/* ---- change of rings ---------------------------------------------------- */

struct ComparisonRow {
    long s = 0, t = 0;
    ExtEntry lhs, rhs;
    bool equal = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool all_equal = true;
    std::string lhs_label, rhs_label;

    std::string to_tsv() const {
        std::ostringstream os;
        os << "# chromalg change-of-rings v1\n";
        os << "s\tt\t" << lhs_label << "\t" << rhs_label << "\tverdict\n";
        for (const auto& r : rows)
            os << r.s << "\t" << r.t << "\t" << r.lhs.group.str() << "\t"
               << r.rhs.group.str() << "\t" << (r.equal ? "isomorphic" : "MISMATCH")
               << "\n";
        return os.str();
    }
};

/* Ext_{Gamma}(A/I_n, v_n^{-1}A/I_n) vs Ext_{Sigma}(C, C): the first computed
 * over the I_n-reduced presentation with region coefficients, the second over
 * the localized presentation (C, Sigma).  Tables compared entrywise. */
inline ComparisonReport verify_change_of_rings(const StructureMapTable& t, long n,
                                               long smax, long tmin, long tmax,
                                               long box) {
    ComparisonReport rep;
    rep.lhs_label = "Ext_Gamma(A/I_" + std::to_string(n) + ", v" + std::to_string(n) +
                    "^-1 A/I_" + std::to_string(n) + ")";
    rep.rhs_label = "Ext_Sigma(C, C)";

    // LHS: reduced mod I_n, slots not localized, region coefficients
    auto Hred = reduce_mod_Ik(t, n, false, box);
    MonomialComodule<Fp> N;
    N.H = &Hred;
    N.shape = Hred.base_shape();
    N.shape.con[n - 1] = VarConstraint::AnyInt;
    N.shape.box_floor = box;
    N.name = "v" + std::to_string(n) + "^-1 A/I_" + std::to_string(n);
    auto CL = build_cobar(Hred, N, smax, tmin, tmax, true);

    // RHS: the localized presentation with its own unit
    auto Hc = build_localized(t, n, box);
    auto Cmod = unit_comodule(Hc);
    auto CR = build_cobar(Hc, Cmod, smax, tmin, tmax, true);

    for (long s = 0; s <= smax; ++s)
        for (long tt = tmin; tt <= tmax; tt += 2) {
            ComparisonRow row;
            row.s = s;
            row.t = tt;
            row.lhs = ext_group(CL, s, tt);
            row.rhs = ext_group(CR, s, tt);
            row.equal = row.lhs.group == row.rhs.group;
            if (!row.equal) rep.all_equal = false;
            if (!row.lhs.group.is_zero() || !row.rhs.group.is_zero() || !row.equal)
                rep.rows.push_back(std::move(row));
        }
    return rep;
}

/* ---- equivalence unit --------------------------------------------------- */

struct EquivalenceUnitReport {
    bool isomorphic = true;
    long witness_degree = 0;
};

/* Phi_*(L_n M) = Phi_*(M) degreewise for the supported quotients M = A/I_k. */
inline EquivalenceUnitReport verify_equivalence_unit(
    const HopfAlgebroid<PLocalScalar>& En, long n, long k, long window, long box) {
    EquivalenceUnitReport rep;
    auto loc = localize_quotient_In(En.prime, En.vmax, k, n);
    for (long d = -window; d <= window; d += 2) {
        long lhs = 0;  // Phi_*(L_n M)
        switch (loc.kind) {
            case LocalizeResult::Kind::Unchanged:
                lhs = phi_star_quotient_dim(En, k, d);
                break;
            case LocalizeResult::Kind::Zero:
                lhs = 0;
                break;
            case LocalizeResult::Kind::Region: {
                // B (x) v_n^{-1}A/I_n: invert v_n on B/I_n B (already inverted)
                LatticeShape s = En.base_shape();
                for (long j = 1; j < k && j <= En.vmax; ++j)
                    s.con[j - 1] = VarConstraint::Zero;
                if (s.con[n - 1] == VarConstraint::NonNeg)
                    s.con[n - 1] = VarConstraint::AnyInt;
                lhs = static_cast<long>(s.points(d).size());
                break;
            }
        }
        long rhs = phi_star_quotient_dim(En, k, d);
        if (lhs != rhs) {
            rep.isomorphic = false;
            rep.witness_degree = d;
            return rep;
        }
    }
    (void)box;
    return rep;
}

} // namespace chromalg
