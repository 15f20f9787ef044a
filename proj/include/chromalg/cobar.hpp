#pragma once

/* The reduced cobar complex Gamma-bar^{(x)s} (x) M and Ext^{s,t} computation
 * over a presented Hopf algebroid, with chart assembly.
 *
 * Differential (faces ordered with the coaction last, signs alternating):
 *   d(g_1|..|g_s.m) = sum_i (-1)^i g_1|..|Dbar(g_i)|..|g_s.m
 *                   + (-1)^{s+1} g_1|..|g_s|psibar(m),
 * verified by the d.d = 0 hard gate at every computed bidegree. */

#include "chromalg/comodule.hpp"

namespace chromalg {

class infinite_graded_piece : public std::runtime_error {
public:
    explicit infinite_graded_piece(const std::string& w) : std::runtime_error(w) {}
};

struct CobarBidegree {
    std::vector<TensorKey> basis;  // sorted
    bool computed = false;
};

template <class R, class M>
struct CobarComplex {
    const HopfAlgebroid<R>* H = nullptr;
    const M* mod = nullptr;
    long smax = 0;
    long tmin = 0, tmax = 0;

    mutable std::map<std::pair<long, long>, CobarBidegree> spaces;
    mutable std::map<Multidegree, TensorElem<R>> psibar_cache;

    /* basis of Gamma-bar^{(x)s} (x) M in internal degree t */
    const std::vector<TensorKey>& basis(long s, long t) const {
        auto key = std::make_pair(s, t);
        auto it = spaces.find(key);
        if (it != spaces.end() && it->second.computed) return it->second.basis;
        CobarBidegree bd;
        bd.computed = true;
        const long p = H->prime;
        const long mmin = module_min_degree();
        // words of s slots, each a nonzero t-monomial
        std::vector<Multidegree> word(s);
        std::function<void(long, long)> rec = [&](long slot, long rem) {
            if (slot == s) {
                for (const auto& pt : mod->basis(rem)) {
                    TensorKey k;
                    k.slots = word;
                    k.point = pt;
                    bd.basis.push_back(k);
                }
                return;
            }
            long min_left = 2 * (p - 1) * (s - slot - 1);
            for (long wd = 2 * (p - 1); wd <= rem - min_left - mmin; wd += 2) {
                for (const auto& alpha : reduced_gamma_basis(*H, wd)) {
                    word[slot] = alpha;
                    rec(slot + 1, rem - wd);
                }
            }
            word[slot].assign(H->vmax, 0);
        };
        rec(0, t);
        std::sort(bd.basis.begin(), bd.basis.end());
        auto& stored = spaces[key];
        stored = std::move(bd);
        return stored.basis;
    }

    /* lower bound for module point degrees (exact for bounded lattices,
     * box floor for inverted variables) */
    long module_min_degree() const {
        long d = mod->suspension;
        for (long i = 0; i < H->vmax; ++i) {
            auto c = mod->shape.con[i];
            if (c == VarConstraint::AnyInt || c == VarConstraint::Neg)
                d -= mod->shape.box_floor * mod->shape.var_degree[i];
        }
        return d;
    }

    TensorElem<R> psibar(const ModulePoint& pt) const {
        auto it = psibar_cache.find(pt.exp);
        if (it != psibar_cache.end()) return it->second;
        TensorElem<R> psi = mod->coaction(pt);
        TensorElem<R> out;
        out.truncated = psi.truncated;
        for (const auto& [k, c] : psi.terms) {
            bool zero_word = true;
            for (long v : k.slots[0])
                if (v) zero_word = false;
            if (zero_word) continue;  // reduced: drop the primitive part
            out.add(k, c);
        }
        psibar_cache.emplace(pt.exp, out);
        return out;
    }

    /* d applied to one basis element */
    TensorElem<R> differential(const TensorKey& x) const {
        const long s = static_cast<long>(x.slots.size());
        RingModule<R> ring(mod->shape);
        TensorElem<R> out;
        TensorElem<R> single;
        single.add(x, H->unit());
        for (long i = 1; i <= s; ++i) {
            TensorElem<R> ins = apply_delta(*H, ring, single, i, true);
            R sign = (i % 2 == 1) ? -H->unit() : H->unit();
            out.truncated = out.truncated || ins.truncated;
            for (const auto& [k, c] : ins.terms) out.add(k, c * sign);
        }
        {
            TensorElem<R> psi = psibar(x.point);
            R sign = ((s + 1) % 2 == 1) ? -H->unit() : H->unit();
            out.truncated = out.truncated || psi.truncated;
            for (const auto& [pk, pc] : psi.terms) {
                TensorKey nk;
                nk.slots = x.slots;
                nk.slots.push_back(pk.slots[0]);
                nk.point = pk.point;
                out.add(nk, pc * sign);
            }
        }
        return out;
    }
};

/* lane-specific matrix assembly */
template <class M>
PLocalMatrix cobar_matrix(const CobarComplex<PLocalScalar, M>& C, long s, long t) {
    const auto& from = C.basis(s, t);
    const auto& to = C.basis(s + 1, t);
    PLocalMatrix mat(static_cast<long>(to.size()), static_cast<long>(from.size()),
                     C.H->prime);
    for (size_t j = 0; j < from.size(); ++j) {
        auto img = C.differential(from[j]);
        for (const auto& [k, c] : img.terms) {
            auto it = std::lower_bound(to.begin(), to.end(), k);
            if (it == to.end() || !(*it == k))
                throw std::logic_error("cobar_matrix: image outside enumerated basis");
            mat.add_to(static_cast<long>(it - to.begin()), static_cast<long>(j), c);
        }
    }
    return mat;
}

template <class M>
FpMatrix cobar_matrix_fp(const CobarComplex<Fp, M>& C, long s, long t) {
    const auto& from = C.basis(s, t);
    const auto& to = C.basis(s + 1, t);
    FpMatrix mat(static_cast<long>(to.size()), static_cast<long>(from.size()),
                 C.H->prime);
    for (size_t j = 0; j < from.size(); ++j) {
        auto img = C.differential(from[j]);
        for (const auto& [k, c] : img.terms) {
            auto it = std::lower_bound(to.begin(), to.end(), k);
            if (it == to.end() || !(*it == k))
                throw std::logic_error("cobar_matrix_fp: image outside basis");
            mat.add_to(static_cast<long>(it - to.begin()), static_cast<long>(j),
                       static_cast<long>(c.rep()));
        }
    }
    return mat;
}

/* ---- Ext groups with named generators --------------------------------- */

struct ExtEntry {
    FGPGroup group;
    std::vector<std::string> generators;
    bool operator==(const ExtEntry& o) const {
        return group == o.group && generators == o.generators;
    }
};

namespace detail {

inline std::string render_point(const ModulePoint& pt, long vmax) {
    std::ostringstream os;
    bool any = false;
    for (long i = 0; i < vmax; ++i) {
        if (pt.exp[i] == 0) continue;
        if (any) os << "*";
        os << "v" << (i + 1);
        if (pt.exp[i] != 1) os << "^" << pt.exp[i];
        any = true;
    }
    if (!any) return "1";
    return os.str();
}

inline std::string render_word(const TensorKey& k, long vmax) {
    std::ostringstream os;
    if (!k.slots.empty()) {
        os << "[";
        for (size_t s = 0; s < k.slots.size(); ++s) {
            if (s) os << "|";
            bool any = false;
            for (long i = 0; i < vmax; ++i) {
                if (k.slots[s][i] == 0) continue;
                if (any) os << " ";
                os << "t" << (i + 1);
                if (k.slots[s][i] != 1) os << "^" << k.slots[s][i];
                any = true;
            }
            if (!any) os << "1";
        }
        os << "]";
    }
    std::string pt = render_point(k.point, vmax);
    if (k.slots.empty()) return pt;
    if (pt == "1") return os.str();
    return os.str() + " " + pt;
}

} // namespace detail

/* homology at (s, t) with generator names, integral lane */
template <class M>
ExtEntry ext_group(const CobarComplex<PLocalScalar, M>& C, long s, long t) {
    PLocalMatrix d_out = cobar_matrix(C, s, t);
    PLocalMatrix d_in = s == 0
                            ? PLocalMatrix(static_cast<long>(C.basis(0, t).size()), 0,
                                           C.H->prime)
                            : cobar_matrix(C, s - 1, t);
    auto h = homology_group(d_in, d_out);
    ExtEntry e;
    e.group = h.group;
    const auto& basis = C.basis(s, t);
    for (const auto& rep : h.representatives) {
        std::string name;
        for (size_t i = 0; i < rep.size(); ++i) {
            if (rep[i].is_zero()) continue;
            name = (rep[i].is_one() ? "" : rep[i].str() + "*") +
                   detail::render_word(basis[i], C.H->vmax);
            break;
        }
        e.generators.push_back(name);
    }
    return e;
}

template <class M>
ExtEntry ext_group(const CobarComplex<Fp, M>& C, long s, long t) {
    FpMatrix d_out = cobar_matrix_fp(C, s, t);
    FpMatrix d_in = s == 0 ? FpMatrix(static_cast<long>(C.basis(0, t).size()), 0,
                                      C.H->prime)
                           : cobar_matrix_fp(C, s - 1, t);
    auto h = fp_homology(d_in, d_out);
    ExtEntry e;
    e.group = h.group;
    const auto& basis = C.basis(s, t);
    for (const auto& rep : h.representatives) {
        std::string name;
        for (size_t i = 0; i < rep.size(); ++i) {
            if (rep[i].is_zero()) continue;
            name = (rep[i].is_one() ? "" : rep[i].str() + "*") +
                   detail::render_word(basis[i], C.H->vmax);
            break;
        }
        e.generators.push_back(name);
    }
    return e;
}

/* d.d = 0 across the window: the hard gate */
template <class R, class M>
bool differential_squares_to_zero(const CobarComplex<R, M>& C, long smax, long tmin,
                                  long tmax) {
    for (long t = tmin; t <= tmax; t += 2) {
        for (long s = 0; s <= smax; ++s) {
            if constexpr (std::is_same_v<R, PLocalScalar>) {
                auto d1 = cobar_matrix(C, s, t);
                auto d2 = cobar_matrix(C, s + 1, t);
                if (!(d2 * d1).is_zero()) return false;
            } else {
                auto d1 = cobar_matrix_fp(C, s, t);
                auto d2 = cobar_matrix_fp(C, s + 1, t);
                if (!(d2 * d1).is_zero()) return false;
            }
        }
    }
    return true;
}

template <class R, class M>
CobarComplex<R, M> build_cobar(const HopfAlgebroid<R>& H, const M& mod, long smax,
                               long tmin, long tmax, bool check_dd = true) {
    CobarComplex<R, M> C;
    C.H = &H;
    C.mod = &mod;
    C.smax = smax;
    C.tmin = tmin;
    C.tmax = tmax;
    if (check_dd && !differential_squares_to_zero(C, smax, tmin, tmax))
        throw std::logic_error("build_cobar: d.d != 0");
    return C;
}

} // namespace chromalg
