#pragma once

/* Elements of a truncated graded polynomial algebra.  Terms of degree above
 * the bound (or below a variable floor) are discarded and a sticky truncation
 * flag records that the value is only exact below the bound. */

#include "chromalg/grading.hpp"
#include "chromalg/scalar.hpp"

#include <map>
#include <sstream>

namespace chromalg {

template <class R>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(GradingPtr g) : grading_(std::move(g)) {}

    static Polynomial zero(GradingPtr g) { return Polynomial(std::move(g)); }
    static Polynomial constant(GradingPtr g, const R& c) {
        Polynomial p(std::move(g));
        p.add_term(Multidegree(p.grading_->count(), 0), c);
        return p;
    }
    static Polynomial variable(GradingPtr g, long idx, long exp = 1) {
        Polynomial p(g);
        Multidegree m(g->count(), 0);
        m[idx] = exp;
        p.add_term(m, one_of(g->prime));
        return p;
    }
    static Polynomial monomial(GradingPtr g, const Multidegree& m, const R& c) {
        Polynomial p(std::move(g));
        p.add_term(m, c);
        return p;
    }

    const GradingPtr& grading() const { return grading_; }
    const std::map<Multidegree, R>& terms() const { return terms_; }
    bool truncated() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }
    bool is_zero() const { return terms_.empty(); }

    R coefficient(const Multidegree& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero_of(grading_->prime) : it->second;
    }

    void add_term(const Multidegree& m, const R& c) {
        if (c.is_zero()) return;
        if (!grading_->in_bounds(m)) {
            truncated_ = true;
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(grading_);
        r.truncated_ = truncated_;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Polynomial operator+(const Polynomial& o) const {
        check(o);
        Polynomial r = *this;
        r.truncated_ = truncated_ || o.truncated_;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        check(o);
        Polynomial r(grading_);
        r.truncated_ = truncated_ || o.truncated_;
        for (const auto& [m, c] : terms_)
            for (const auto& [n, d] : o.terms_) {
                Multidegree s(m.size());
                for (size_t i = 0; i < m.size(); ++i) s[i] = m[i] + n[i];
                r.add_term(s, c * d);
            }
        return r;
    }

    Polynomial operator*(const R& c) const {
        Polynomial r(grading_);
        r.truncated_ = truncated_;
        for (const auto& [m, v] : terms_) r.add_term(m, v * c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(long e) const {
        Polynomial r = constant(grading_, one_of(grading_->prime));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    Polynomial homogeneous_component(long d) const {
        Polynomial r(grading_);
        r.truncated_ = truncated_;
        for (const auto& [m, c] : terms_)
            if (grading_->degree_of(m) == d) r.terms_[m] = c;
        return r;
    }

    /* max total degree among stored terms; 0 for the zero polynomial */
    long top_degree() const {
        long d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, grading_->degree_of(m));
        return d;
    }

    bool is_homogeneous_of(long d) const {
        for (const auto& [m, c] : terms_)
            if (grading_->degree_of(m) != d) return false;
        return true;
    }

    bool all_p_integral() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_p_integral()) return false;
        return true;
    }

    /* `c*v1^a*t1^b` terms joined by " + ", sorted by multidegree */
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            bool any_var = false;
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) any_var = true;
            os << c.str();
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                os << "*" << grading_->vars[i].name;
                if (m[i] != 1) os << "^" << m[i];
            }
            (void)any_var;
        }
        if (truncated_) os << "  [truncated above degree " << grading_->degree_bound << "]";
        return os.str();
    }

private:
    static R zero_of(long p);
    static R one_of(long p);

    void check(const Polynomial& o) const {
        if (!(*grading_ == *o.grading_))
            throw grading_mismatch("Polynomial: gradings differ");
    }

    GradingPtr grading_;
    std::map<Multidegree, R> terms_;
    bool truncated_ = false;
};

template <> inline PLocalScalar Polynomial<PLocalScalar>::zero_of(long p) {
    return PLocalScalar::zero(p);
}
template <> inline PLocalScalar Polynomial<PLocalScalar>::one_of(long p) {
    return PLocalScalar::one(p);
}
template <> inline Fp Polynomial<Fp>::zero_of(long p) { return Fp::zero(p); }
template <> inline Fp Polynomial<Fp>::one_of(long p) { return Fp::one(p); }

using QPoly = Polynomial<PLocalScalar>;
using FpPoly = Polynomial<Fp>;

/* Reduce an integral polynomial mod p onto an F_p grading with the same
 * variable list (possibly relaxed floors). */
inline FpPoly reduce_mod_p(const QPoly& a, GradingPtr target) {
    FpPoly r(target);
    if (a.truncated()) r.mark_truncated();
    for (const auto& [m, c] : a.terms()) r.add_term(m, Fp::from_scalar(c));
    return r;
}

} // namespace chromalg
