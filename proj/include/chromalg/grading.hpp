#pragma once

/* Gradings for truncated polynomial algebras: a variable list with even
 * degrees, a degree bound D, and per-variable exponent floors (negative
 * floors model inverted variables inside a padded box). */

#include "chromalg/scalar.hpp"

#include <cassert>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace chromalg {

struct GradedVar {
    std::string name;
    long degree = 0;
    long floor = 0;  // minimal allowed exponent
};

using Multidegree = std::vector<long>;

struct Grading {
    long prime = 0;
    std::vector<GradedVar> vars;
    long degree_bound = 0;   // D
    long exponent_floor = 0; // E, used by region modules

    long count() const { return static_cast<long>(vars.size()); }

    long degree_of(const Multidegree& m) const {
        long d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * vars[i].degree;
        return d;
    }

    /* least degree reachable within the variable floors */
    long degree_floor() const {
        long s = 0;
        for (const auto& v : vars)
            if (v.floor < 0) s += v.floor * v.degree;
        return s;
    }

    bool in_bounds(const Multidegree& m) const {
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] < vars[i].floor) return false;
        long d = degree_of(m);
        return d <= degree_bound && d >= degree_floor();
    }

    long index_of(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name) return static_cast<long>(i);
        return -1;
    }

    bool operator==(const Grading& o) const {
        if (prime != o.prime || degree_bound != o.degree_bound ||
            vars.size() != o.vars.size())
            return false;
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name != o.vars[i].name || vars[i].degree != o.vars[i].degree ||
                vars[i].floor != o.vars[i].floor)
                return false;
        return true;
    }
};

using GradingPtr = std::shared_ptr<const Grading>;

/* Standard variable degrees: |v_i| = |t_i| = 2(p^i - 1). */
inline long standard_degree(long p, long i) {
    long d = 1;
    for (long k = 0; k < i; ++k) d *= p;
    return 2 * (d - 1);
}

/* Z_(p)[v_1..v_N] truncated at D. */
inline GradingPtr make_base_grading(long p, long vmax, long D) {
    auto g = std::make_shared<Grading>();
    g->prime = p;
    g->degree_bound = D;
    for (long i = 1; i <= vmax; ++i)
        g->vars.push_back({"v" + std::to_string(i), standard_degree(p, i), 0});
    return g;
}

/* Z_(p)[v_1..v_N][t_1..t_N] truncated at D. */
inline GradingPtr make_gamma_grading(long p, long vmax, long D) {
    auto g = std::make_shared<Grading>();
    g->prime = p;
    g->degree_bound = D;
    for (long i = 1; i <= vmax; ++i)
        g->vars.push_back({"v" + std::to_string(i), standard_degree(p, i), 0});
    for (long i = 1; i <= vmax; ++i)
        g->vars.push_back({"t" + std::to_string(i), standard_degree(p, i), 0});
    return g;
}

/* All multidegrees with given floors/ceilings and total degree d, lex order.
 * Degree-zero variables must have finite ceilings. */
inline void enumerate_multidegrees(const std::vector<GradedVar>& vars, long d,
                                   const std::vector<long>& floors,
                                   const std::vector<long>& ceilings,
                                   const std::function<void(const Multidegree&)>& emit) {
    const long n = static_cast<long>(vars.size());
    Multidegree cur(n, 0);
    std::function<void(long, long)> rec = [&](long idx, long remaining) {
        if (idx == n) {
            if (remaining == 0) emit(cur);
            return;
        }
        // degree available from the tail if every later var sits at its floor
        long tail_min = 0, tail_neg_room = 0;
        for (long j = idx + 1; j < n; ++j) {
            long fd = floors[j] * vars[j].degree;
            long cd = ceilings[j] * vars[j].degree;
            tail_min += std::min(fd, cd);
            tail_neg_room += std::max(fd, cd);
        }
        const long deg = vars[idx].degree;
        for (long e = floors[idx]; e <= ceilings[idx]; ++e) {
            long rem = remaining - e * deg;
            if (deg > 0 && rem < tail_min) break;  // larger e only shrinks rem
            if (rem < tail_min || rem > tail_neg_room) continue;
            cur[idx] = e;
            rec(idx + 1, rem);
        }
        cur[idx] = 0;
    };
    rec(0, d);
}

/* Monomial basis of the graded piece of degree d, lex order on exponents. */
inline std::vector<Multidegree> monomial_basis(const Grading& g, long d) {
    if (d > g.degree_bound)
        throw degree_bound_exceeded("monomial_basis: degree above bound");
    std::vector<Multidegree> out;
    if (d < 0) {
        bool has_negative_room = false;
        for (const auto& v : g.vars)
            if (v.floor < 0) has_negative_room = true;
        if (!has_negative_room) return out;
    }
    std::vector<long> floors, ceilings;
    for (const auto& v : g.vars) {
        floors.push_back(v.floor);
        if (v.degree == 0) {
            ceilings.push_back(0);  // degree-zero vars capped at 0 here
        } else {
            // ceiling: degree budget left if everything else sits at its floor
            long others_min = 0;
            for (const auto& w : g.vars)
                if (&w != &v && w.floor < 0) others_min += w.floor * w.degree;
            ceilings.push_back(std::max<long>(v.floor, (d - others_min) / v.degree));
        }
    }
    enumerate_multidegrees(g.vars, d, floors, ceilings,
                           [&](const Multidegree& m) { out.push_back(m); });
    return out;
}

} // namespace chromalg
