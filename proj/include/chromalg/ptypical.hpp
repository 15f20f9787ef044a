#pragma once

/* Generation of the truncated (BP_*, BP_*BP) structure maps from p-typical
 * formal group law data, using Hazewinkel generators.  Everything is computed
 * rationally in the log basis and converted; p-integrality of the final
 * tables is asserted, not assumed. */

#include "chromalg/poly.hpp"

#include <map>

namespace chromalg {

struct LogCoefficients {
    long prime = 0;
    long vmax = 0;
    long degree_bound = 0;
    GradingPtr base;              // Z_(p)[v_1..v_N]
    std::map<long, QPoly> ell;    // n -> l_n, n >= 1; l_0 = 1 implicitly

    QPoly ell_or_one(long n) const {
        if (n == 0) return QPoly::constant(base, PLocalScalar::one(prime));
        auto it = ell.find(n);
        if (it == ell.end()) return QPoly::zero(base);
        return it->second;
    }
};

/* l_n = (sum_{0<=i<n} l_i v_{n-i}^{p^i}) / p, for all n <= vmax with
 * |v_n| <= D. */
inline LogCoefficients compute_log(long p, long vmax, long D) {
    LogCoefficients log;
    log.prime = p;
    log.vmax = vmax;
    log.degree_bound = D;
    log.base = make_base_grading(p, vmax, D);
    for (long n = 1; n <= vmax; ++n) {
        if (standard_degree(p, n) > D) break;
        QPoly acc = QPoly::zero(log.base);
        long pi = 1;  // p^i
        for (long i = 0; i < n; ++i) {
            long vidx = log.base->index_of("v" + std::to_string(n - i));
            QPoly term = log.ell_or_one(i) * QPoly::variable(log.base, vidx).pow(pi);
            acc += term;
            pi *= p;
        }
        log.ell[n] = acc * PLocalScalar(mpq_class(1, p), p);
        // Hazewinkel recursion residual must vanish exactly
        QPoly residual = log.ell[n] * PLocalScalar(p, p) - acc;
        if (!residual.is_zero())
            throw integrality_failure("compute_log: recursion residual nonzero");
    }
    return log;
}

/* Structure maps of the truncated Hopf algebroid, tabulated on generators.
 * eta_R(v_n) and chi(t_n) live in Gamma = Z_(p)[v][t]; Delta(t_n) lives in
 * Gamma (x) Gamma rendered on variables v (left coefficients), tL (first
 * slot), tR (second slot). */
struct StructureMapTable {
    long prime = 0;
    long vmax = 0;
    long degree_bound = 0;
    GradingPtr base;       // v_1..v_N
    GradingPtr gamma;      // v_1..v_N, t_1..t_N
    GradingPtr gamma2;     // v, tL, tR
    std::map<long, QPoly> eta_r;  // n -> eta_R(v_n) in gamma
    std::map<long, QPoly> delta;  // n -> Delta(t_n) in gamma2
    std::map<long, QPoly> chi;    // n -> chi(t_n) in gamma

    long var_v(long i) const { return gamma->index_of("v" + std::to_string(i)); }
    long var_t(long i) const { return gamma->index_of("t" + std::to_string(i)); }
};

inline GradingPtr make_gamma2_grading(long p, long vmax, long D) {
    auto g = std::make_shared<Grading>();
    g->prime = p;
    g->degree_bound = D;
    for (long i = 1; i <= vmax; ++i)
        g->vars.push_back({"v" + std::to_string(i), standard_degree(p, i), 0});
    for (long i = 1; i <= vmax; ++i)
        g->vars.push_back({"tL" + std::to_string(i), standard_degree(p, i), 0});
    for (long i = 1; i <= vmax; ++i)
        g->vars.push_back({"tR" + std::to_string(i), standard_degree(p, i), 0});
    return g;
}

/* Embed a base-grading polynomial into a larger grading sharing var names. */
inline QPoly embed(const QPoly& a, GradingPtr target) {
    QPoly r(target);
    if (a.truncated()) r.mark_truncated();
    std::vector<long> where;
    for (const auto& v : a.grading()->vars) where.push_back(target->index_of(v.name));
    for (const auto& [m, c] : a.terms()) {
        Multidegree big(target->count(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0) big[where[i]] = m[i];
        }
        r.add_term(big, c);
    }
    return r;
}

/* eta_R(v_n) from the log: with m_n = sum_{i+j=n} l_i t_j^{p^i} (t_0 = 1),
 * solve p m_n = sum_{0<=i<n} m_i eta_R(v_{n-i})^{p^i} for eta_R(v_n). */
inline std::map<long, QPoly> compute_right_unit(const LogCoefficients& log,
                                                GradingPtr gamma) {
    const long p = log.prime;
    std::map<long, QPoly> mn;  // eta_R of the log coefficients
    auto m_of = [&](long n) -> QPoly {
        if (n == 0) return QPoly::constant(gamma, PLocalScalar::one(p));
        return mn.at(n);
    };
    std::map<long, QPoly> eta;
    for (long n = 1; n <= log.vmax; ++n) {
        if (standard_degree(p, n) > log.degree_bound) break;
        // m_n
        QPoly m = QPoly::zero(gamma);
        long pi = 1;
        for (long i = 0; i <= n; ++i) {
            long j = n - i;
            QPoly tj = j == 0 ? QPoly::constant(gamma, PLocalScalar::one(p))
                              : QPoly::variable(gamma, gamma->index_of("t" + std::to_string(j)));
            m += embed(log.ell_or_one(i), gamma) * tj.pow(pi);
            pi *= p;
        }
        mn[n] = m;
        // solve for eta_R(v_n)
        QPoly rhs = m * PLocalScalar(p, p);
        pi = p;
        for (long i = 1; i < n; ++i) {
            rhs -= m_of(i) * eta.at(n - i).pow(pi);
            pi *= p;
        }
        if (!rhs.all_p_integral())
            throw integrality_failure("compute_right_unit: eta_R(v_" +
                                      std::to_string(n) + ") not p-integral");
        eta[n] = rhs;
    }
    return eta;
}

/* Delta(t_n) and chi(t_n) through the degree bound, from the standard
 * p-typical identities; p-integrality asserted. */
inline void compute_diagonal_and_conjugation(const LogCoefficients& log,
                                             StructureMapTable& table) {
    const long p = log.prime;
    GradingPtr g2 = table.gamma2;
    GradingPtr g1 = table.gamma;

    auto tL = [&](long j) {
        return j == 0 ? QPoly::constant(g2, PLocalScalar::one(p))
                      : QPoly::variable(g2, g2->index_of("tL" + std::to_string(j)));
    };
    auto tR = [&](long k) {
        return k == 0 ? QPoly::constant(g2, PLocalScalar::one(p))
                      : QPoly::variable(g2, g2->index_of("tR" + std::to_string(k)));
    };
    auto t1 = [&](long j) {
        return j == 0 ? QPoly::constant(g1, PLocalScalar::one(p))
                      : QPoly::variable(g1, g1->index_of("t" + std::to_string(j)));
    };

    auto delta_of = [&](long j) -> QPoly {
        if (j == 0) return QPoly::constant(g2, PLocalScalar::one(p));
        return table.delta.at(j);
    };
    auto chi_of = [&](long k) -> QPoly {
        if (k == 0) return QPoly::constant(g1, PLocalScalar::one(p));
        return table.chi.at(k);
    };

    for (long n = 1; n <= log.vmax; ++n) {
        if (standard_degree(p, n) > log.degree_bound) break;

        // Delta: sum_{i+j=n} l_i Delta(t_j)^{p^i} = sum_{i+j+k=n} l_i tL_j^{p^i} tR_k^{p^{i+j}}
        QPoly rhs = QPoly::zero(g2);
        {
            long pi = 1;
            for (long i = 0; i <= n; ++i) {
                long pij = pi;
                for (long j = 0; i + j <= n; ++j) {
                    long k = n - i - j;
                    rhs += embed(log.ell_or_one(i), g2) * tL(j).pow(pi) * tR(k).pow(pij);
                    pij *= p;
                }
                pi *= p;
            }
        }
        {
            long pi = p;
            for (long i = 1; i <= n; ++i) {
                rhs -= embed(log.ell_or_one(i), g2) * delta_of(n - i).pow(pi);
                pi *= p;
            }
        }
        if (!rhs.all_p_integral())
            throw integrality_failure("Delta(t_" + std::to_string(n) + ") not p-integral");
        table.delta[n] = rhs;

        // chi: sum_{i+j+k=n} l_i t_j^{p^i} chi(t_k)^{p^{i+j}} = l_n
        QPoly acc = embed(log.ell_or_one(n), g1);
        {
            long pi = 1;
            for (long i = 0; i <= n; ++i) {
                long pij = pi;
                for (long j = 0; i + j <= n; ++j) {
                    long k = n - i - j;
                    if (k == n) { pij *= p; continue; }  // the unknown chi(t_n) term
                    acc -= embed(log.ell_or_one(i), g1) * t1(j).pow(pi) * chi_of(k).pow(pij);
                    pij *= p;
                }
                pi *= p;
            }
        }
        if (!acc.all_p_integral())
            throw integrality_failure("chi(t_" + std::to_string(n) + ") not p-integral");
        table.chi[n] = acc;
    }
}

/* Full generation pass.  Checks eta_R(v_1) = v_1 + p t_1 and chi(t_1) = -t_1
 * as built-in sanity anchors. */
inline StructureMapTable generate_structure_maps(long p, long vmax, long D) {
    LogCoefficients log = compute_log(p, vmax, D);
    StructureMapTable table;
    table.prime = p;
    table.vmax = vmax;
    table.degree_bound = D;
    table.base = log.base;
    table.gamma = make_gamma_grading(p, vmax, D);
    table.gamma2 = make_gamma2_grading(p, vmax, D);
    table.eta_r = compute_right_unit(log, table.gamma);
    compute_diagonal_and_conjugation(log, table);

    if (table.eta_r.count(1)) {
        QPoly expect = QPoly::variable(table.gamma, table.var_v(1)) +
                       QPoly::variable(table.gamma, table.var_t(1)) * PLocalScalar(p, p);
        if (table.eta_r.at(1) != expect)
            throw integrality_failure("eta_R(v_1) != v_1 + p t_1");
        QPoly mt1 = -QPoly::variable(table.gamma, table.var_t(1));
        if (table.chi.at(1) != mt1)
            throw integrality_failure("chi(t_1) != -t_1");
    }
    return table;
}

/* eta_R on a base-grading polynomial (multiplicative extension of the table,
 * with v_i above the table treated as absent). */
inline QPoly eta_r_of(const StructureMapTable& t, const QPoly& a) {
    QPoly r = QPoly::zero(t.gamma);
    if (a.truncated()) r.mark_truncated();
    for (const auto& [m, c] : a.terms()) {
        QPoly term = QPoly::constant(t.gamma, c);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            long n = i + 1;  // base vars are v_1..v_N in order
            term *= t.eta_r.at(n).pow(m[i]);
        }
        r += term;
    }
    return r;
}

/* eta_R(v_n) - v_n lies in I_n Gamma degreewise: every term is divisible by
 * p or by some v_j with j < n. */
inline bool right_unit_congruent_mod_In(const StructureMapTable& t, long n) {
    QPoly diff = t.eta_r.at(n) - QPoly::variable(t.gamma, t.var_v(n));
    for (const auto& [m, c] : diff.terms()) {
        bool in_ideal = c.valuation() >= 1;
        for (long j = 1; j < n && !in_ideal; ++j)
            if (m[t.var_v(j)] > 0) in_ideal = true;
        if (!in_ideal) return false;
    }
    return true;
}

} // namespace chromalg
