#pragma once

/* Invariant prime ideals, heights, and the Landweber filtration algorithm:
 * pick a lowest-degree primitive, multiply by p, v_1, ... until the
 * annihilator is an invariant prime, adjoin the lift, repeat. */

#include "chromalg/comodule.hpp"

namespace chromalg {

class height_mismatch : public std::runtime_error {
public:
    explicit height_mismatch(const std::string& w) : std::runtime_error(w) {}
};

class no_primitive_found : public std::runtime_error {
public:
    explicit no_primitive_found(const std::string& w) : std::runtime_error(w) {}
};

/* A Landweber-exact base algebra presented as a lattice ring over the
 * integral presentation: E(n)_* = Z_(p)[v_1..v_{n-1}, v_n^{+-1}]. */
struct LandweberAlgebra {
    std::string name;
    const HopfAlgebroid<PLocalScalar>* H = nullptr;
    LatticeShape lattice;
    long declared_height = 0;
};

inline LandweberAlgebra make_En_algebra(const HopfAlgebroid<PLocalScalar>& H, long n,
                                        long box) {
    LandweberAlgebra B;
    B.name = "E(" + std::to_string(n) + ")";
    B.H = &H;
    B.declared_height = n;
    B.lattice = LatticeShape::nonneg(H.prime, H.vmax);
    for (long j = n + 1; j <= H.vmax; ++j)
        B.lattice.con[j - 1] = VarConstraint::Zero;
    B.lattice.con[n - 1] = VarConstraint::AnyInt;
    B.lattice.box_floor = box;
    return B;
}

inline LandweberAlgebra make_bp_algebra(const HopfAlgebroid<PLocalScalar>& H) {
    LandweberAlgebra B;
    B.name = "BP";
    B.H = &H;
    B.declared_height = -1;  // infinite (capped by the truncation)
    B.lattice = LatticeShape::nonneg(H.prime, H.vmax);
    return B;
}

/* B/I_n B = 0 iff some v_j with j < n acts invertibly on B (p never does);
 * nonzero is witnessed by the image of a lattice point. */
inline bool quotient_In_nonzero(const LandweberAlgebra& B, long n) {
    for (long j = 1; j < n && j <= B.H->vmax; ++j)
        if (B.lattice.con[j - 1] == VarConstraint::AnyInt ||
            B.lattice.con[j - 1] == VarConstraint::Neg)
            return false;
    return true;
}

struct HeightResult {
    long height = 0;
    bool capped = false;  // nonzero through the truncation cap
};

inline HeightResult height(const LandweberAlgebra& B) {
    HeightResult r;
    long n = 0;
    while (n <= B.H->vmax && quotient_In_nonzero(B, n + 1)) ++n;
    r.capped = n > B.H->vmax;  // nonzero through the truncation: height >= N
    r.height = r.capped ? B.H->vmax : n;
    if (!r.capped && B.declared_height >= 0 && r.height != B.declared_height)
        throw height_mismatch(B.name + ": declared " +
                              std::to_string(B.declared_height) + ", computed " +
                              std::to_string(r.height));
    return r;
}

/* regularity witness: multiplication by v_k on B/I_k B is injective
 * degreewise (Landweber exactness at level k) */
inline bool regularity_witness(const LandweberAlgebra& B, long k, long through) {
    LatticeShape q = B.lattice;
    for (long j = 1; j < k; ++j) q.con[j - 1] = VarConstraint::Zero;
    for (long d = -through; d + standard_degree(B.H->prime, k) <= through; d += 2) {
        auto pts = q.points(d);
        std::vector<Multidegree> images;
        for (const auto& e : pts) {
            Multidegree f = e;
            f[k - 1] += 1;
            if (!q.admissible(f)) return false;  // v_k kills a class
            images.push_back(f);
        }
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end())
            return false;
    }
    return true;
}

/* degreewise span of an ideal inside the lattice ring B */
inline PLocalMatrix ideal_span_in_B(const LandweberAlgebra& B,
                                    const std::vector<QPoly>& gens, long degree,
                                    const std::vector<Multidegree>& basis) {
    const auto& H = *B.H;
    std::vector<std::vector<PLocalScalar>> cols;
    auto index_of = [&](const Multidegree& e) -> long {
        auto it = std::lower_bound(basis.begin(), basis.end(), e);
        if (it != basis.end() && *it == e) return static_cast<long>(it - basis.begin());
        return -1;
    };
    for (const auto& g : gens) {
        long gd = g.top_degree();
        for (const auto& e : B.lattice.points(degree - gd)) {
            std::vector<PLocalScalar> col(basis.size(), PLocalScalar::zero(H.prime));
            bool any = false;
            for (const auto& [m, c] : g.terms()) {
                Multidegree f = e;
                bool dead = false;
                for (long i = 1; i <= H.vmax; ++i) f[i - 1] += m[H.var_v(i)];
                if (!B.lattice.admissible(f)) dead = true;
                if (!dead) {
                    long idx = index_of(f);
                    if (idx >= 0) {
                        col[idx] += c;
                        any = true;
                    }
                }
            }
            if (any) cols.push_back(std::move(col));
        }
    }
    PLocalMatrix mat(static_cast<long>(basis.size()), static_cast<long>(cols.size()),
                     H.prime);
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < cols[j].size(); ++i) mat.set(i, j, cols[j][i]);
    return mat;
}

/* I * B = I_m * B degreewise (both inclusions) through the window */
inline bool ideal_equals_Im_in_B(const LandweberAlgebra& B,
                                 const std::vector<QPoly>& gens, long m, long through) {
    const auto& H = *B.H;
    std::vector<QPoly> im_gens;
    if (m >= 1) im_gens.push_back(QPoly::constant(H.gamma, H.scalar(H.prime)));
    for (long j = 1; j < m; ++j) im_gens.push_back(QPoly::variable(H.gamma, H.var_v(j)));
    for (long d = 0; d <= through; d += 2) {
        auto basis = B.lattice.points(d);
        std::sort(basis.begin(), basis.end());
        auto span_I = ideal_span_in_B(B, gens, d, basis);
        auto span_m = ideal_span_in_B(B, im_gens, d, basis);
        for (long j = 0; j < span_m.cols(); ++j) {
            std::vector<PLocalScalar> v(basis.size(), PLocalScalar::zero(H.prime));
            for (long i = 0; i < static_cast<long>(basis.size()); ++i)
                v[i] = span_m.at(i, j);
            if (!in_column_span(span_I, v)) return false;
        }
        for (long j = 0; j < span_I.cols(); ++j) {
            std::vector<PLocalScalar> v(basis.size(), PLocalScalar::zero(H.prime));
            for (long i = 0; i < static_cast<long>(basis.size()); ++i)
                v[i] = span_I.at(i, j);
            if (!in_column_span(span_m, v)) return false;
        }
    }
    return true;
}

struct ClassifyResult {
    bool is_prime = false;
    long m = -1;
    bool unit_ideal = false;  // B/I_m B = 0 at the reported level
};

/* I invariant radical in B: find the m with I B = I_m B (Landweber
 * classification); NotPrime when no level matches within the window. */
inline ClassifyResult classify_invariant_radical_ideal(const LandweberAlgebra& B,
                                                       const std::vector<QPoly>& gens,
                                                       long through) {
    ClassifyResult r;
    for (long m = 0; m <= B.H->vmax + 1; ++m) {
        if (ideal_equals_Im_in_B(B, gens, m, through)) {
            r.is_prime = true;
            r.m = m;
            r.unit_ideal = !quotient_In_nonzero(B, m);
            return r;
        }
    }
    return r;
}

/* ---- the filtration algorithm ---------------------------------------- */

struct FiltrationStep {
    long shift = 0;       // suspension r
    long ideal_level = 0; // k in s^r A/I_k
    FPComodule::Element lift;
    std::string lift_rendered;
};

struct Filtration {
    std::vector<FiltrationStep> steps;
    bool complete = false;
    std::string note;
};

namespace detail {

inline std::string render_element(const FPComodule& m, const FPComodule::Element& el) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [poly, g] : el) {
        if (!first) os << " + ";
        first = false;
        os << "(" << poly.str() << ")*" << m.gens[g].name;
    }
    return os.str();
}

inline bool is_primitive_element(const FPComodule& m, const FPComodule::Element& el,
                                 long degree) {
    TensorElem<PLocalScalar> diff;
    const auto& H = *m.H;
    for (const auto& [poly, g] : el)
        for (const auto& [mm, cc] : poly.terms()) {
            ModulePoint pt{g, m.vexp_of(mm)};
            TensorElem<PLocalScalar> pc = m.coaction(pt);
            for (const auto& [k, c] : pc.terms) diff.add(k, c * cc);
            TensorKey self;
            self.slots.assign(1, Multidegree(H.vmax, 0));
            self.point = pt;
            diff.add(self, -cc);
        }
    return reduces_to_zero(m, diff, degree);
}

inline FPComodule::Element scale_element(const FPComodule& m,
                                         const FPComodule::Element& el,
                                         const QPoly& factor) {
    FPComodule::Element out;
    for (const auto& [poly, g] : el) out.emplace_back(poly * factor, g);
    return out;
}

} // namespace detail

/* F_p dimension and rational rank of M in one degree */
inline long fp_dim(const FPComodule& m, long degree) {
    auto basis = m.raw_basis(degree);
    std::sort(basis.begin(), basis.end());
    auto rel = m.relation_matrix(degree, basis);
    FpMatrix f(static_cast<long>(basis.size()), rel.cols(), m.prime());
    for (const auto& [rc, v] : rel.entries())
        f.set(rc.first, rc.second, static_cast<long>(v.mod_p()));
    return static_cast<long>(basis.size()) - f.rank();
}

inline long q_rank(const FPComodule& m, long degree) {
    auto basis = m.raw_basis(degree);
    std::sort(basis.begin(), basis.end());
    auto rel = m.relation_matrix(degree, basis);
    auto f = smith_normal_form(rel);
    long r = 0;
    for (const auto& d : f.diag)
        if (!d.is_zero()) ++r;
    return static_cast<long>(basis.size()) - r;
}

/* dimensions of s^r A/I_k in one degree (monomial count) */
inline long quotient_dim(const HopfAlgebroid<PLocalScalar>& H, long r, long k,
                         long degree) {
    LatticeShape s = LatticeShape::nonneg(H.prime, H.vmax);
    for (long j = 1; j < k; ++j) s.con[j - 1] = VarConstraint::Zero;
    return static_cast<long>(s.points(degree - r).size());
}

inline Filtration landweber_filtration(const FPComodule& input, long cap) {
    const auto& H = *input.H;
    Filtration out;
    FPComodule q = input;
    const long max_steps = 256;

    auto module_zero = [&](const FPComodule& m) {
        for (long g = 0; g < static_cast<long>(m.gens.size()); ++g) {
            FPComodule::Element el{
                {QPoly::constant(H.gamma, PLocalScalar::one(H.prime)), g}};
            if (!m.is_zero_mod_relations(el, m.gens[g].degree)) return false;
        }
        return true;
    };

    for (long step = 0; step < max_steps; ++step) {
        if (module_zero(q)) {
            out.complete = true;
            return out;
        }
        // lowest degree carrying a nonzero primitive
        FPComodule::Element z;
        long zdeg = -1;
        for (long d = 0; d <= H.degree_bound && zdeg < 0; d += 2) {
            auto prim = fp_primitives(q, d);
            if (prim.count == 0) continue;
            // deterministic choice: first representative over the sorted basis
            const auto& vec = prim.vectors[0];
            for (size_t i = 0; i < prim.basis_points.size(); ++i) {
                if (vec[i].is_zero()) continue;
                const auto& pt = prim.basis_points[i];
                Multidegree mm(H.gamma->count(), 0);
                for (long v = 1; v <= H.vmax; ++v) mm[H.var_v(v)] = pt.exp[v - 1];
                z.emplace_back(QPoly::monomial(H.gamma, mm, vec[i]), pt.gen);
            }
            zdeg = d;
        }
        if (zdeg < 0) {
            out.note = "DegreeBoundExceeded: no primitive below the degree bound";
            return out;
        }

        // multiply by p, v_1, ... until the annihilator is an invariant prime
        long k = 0;
        while (k <= cap) {
            // least a with v_k^{a+1} z = 0 (v_0 = p)
            bool torsion = false;
            long a = 0;
            for (;; ++a) {
                QPoly factor(H.gamma);
                long fdeg = 0;
                if (k == 0) {
                    mpz_class pe = pow_p(H.prime, a + 1);
                    factor = QPoly::constant(H.gamma,
                                             PLocalScalar(mpq_class(pe), H.prime));
                } else {
                    Multidegree mm(H.gamma->count(), 0);
                    mm[H.var_v(k)] = a + 1;
                    factor = QPoly::monomial(H.gamma, mm, H.unit());
                    fdeg = (a + 1) * standard_degree(H.prime, k);
                }
                if (zdeg + fdeg > H.degree_bound) break;
                auto scaled = detail::scale_element(q, z, factor);
                if (q.is_zero_mod_relations(scaled, zdeg + fdeg)) {
                    torsion = true;
                    break;
                }
                if (k == 0 && a > 8) break;
                if (k > 0 && a > 8) break;
            }
            if (!torsion) break;  // annihilator is I_k
            if (a > 0) {
                QPoly factor(H.gamma);
                if (k == 0) {
                    mpz_class pe = pow_p(H.prime, a);
                    factor = QPoly::constant(H.gamma,
                                             PLocalScalar(mpq_class(pe), H.prime));
                } else {
                    Multidegree mm(H.gamma->count(), 0);
                    mm[H.var_v(k)] = a;
                    factor = QPoly::monomial(H.gamma, mm, H.unit());
                    zdeg += a * standard_degree(H.prime, k);
                }
                z = detail::scale_element(q, z, factor);
            }
            ++k;
        }
        if (k > cap) {
            out.note = "DegreeBoundExceeded: annihilator exceeds the height cap";
            return out;
        }
        if (!detail::is_primitive_element(q, z, zdeg))
            throw no_primitive_found("landweber_filtration: bumped element lost "
                                     "primitivity");

        FiltrationStep st;
        st.shift = zdeg;
        st.ideal_level = k;
        st.lift = z;
        st.lift_rendered = detail::render_element(q, z);
        out.steps.push_back(st);
        q.relations.push_back(z);
    }
    out.note = "step limit reached";
    return out;
}

/* Rebuild check: the multiset of filtration quotients reproduces the
 * degreewise F_p dimensions and rational ranks of the input. */
inline bool filtration_rebuilds_ranks(const FPComodule& m, const Filtration& f,
                                      long through) {
    const auto& H = *m.H;
    for (long d = 0; d <= through; d += 2) {
        long dim = 0, rank = 0;
        for (const auto& st : f.steps) {
            long qd = quotient_dim(H, st.shift, st.ideal_level, d);
            // A/I_k has free rank only for k = 0
            dim += st.ideal_level == 0 ? qd : qd;
            rank += st.ideal_level == 0 ? qd : 0;
        }
        if (fp_dim(m, d) != dim) return false;
        if (q_rank(m, d) != rank) return false;
    }
    return true;
}

/* spec'd fallback: decide v_n-torsion through the filtration when the direct
 * membership test is inconclusive */
inline TorsionCertificate is_vn_torsion_decided(const FPComodule& m, long n) {
    TorsionCertificate direct = is_vn_torsion(m, n);
    if (direct.conclusive || direct.torsion) return direct;
    Filtration f = landweber_filtration(m, m.H->vmax + 1);
    if (!f.complete) return direct;  // keep the inconclusive verdict
    TorsionCertificate cert;
    cert.conclusive = true;
    cert.torsion = true;
    for (const auto& st : f.steps)
        if (st.ideal_level <= n) {
            cert.torsion = false;
            cert.witness = "filtration quotient s^" + std::to_string(st.shift) +
                           " A/I_" + std::to_string(st.ideal_level);
        }
    return cert;
}

} // namespace chromalg
