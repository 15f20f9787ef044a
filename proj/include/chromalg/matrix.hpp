#pragma once

/* Sparse matrices over Z_(p) with Smith normal form, plus dense F_p matrices.
 * Z_(p) is a local PID, so SNF reduces to valuation pivoting: the pivot with
 * minimal p-valuation clears its row and column exactly. */

#include "chromalg/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace chromalg {

class composition_not_zero : public std::runtime_error {
public:
    explicit composition_not_zero(const std::string& w) : std::runtime_error(w) {}
};

class PLocalMatrix {
public:
    PLocalMatrix() : rows_(0), cols_(0), prime_(0) {}
    PLocalMatrix(long rows, long cols, long prime)
        : rows_(rows), cols_(cols), prime_(prime) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    long prime() const { return prime_; }

    static PLocalMatrix identity(long n, long prime) {
        PLocalMatrix m(n, n, prime);
        for (long i = 0; i < n; ++i) m.set(i, i, PLocalScalar::one(prime));
        return m;
    }

    const PLocalScalar& at(long r, long c) const {
        static const PLocalScalar zero;
        auto it = entries_.find({r, c});
        return it == entries_.end() ? zero : it->second;
    }

    void set(long r, long c, const PLocalScalar& v) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        if (v.is_zero())
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add_to(long r, long c, const PLocalScalar& v) {
        if (v.is_zero()) return;
        auto key = std::make_pair(r, c);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_[key] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    const std::map<std::pair<long, long>, PLocalScalar>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    bool all_p_integral() const {
        for (const auto& [rc, v] : entries_)
            if (!v.is_p_integral()) return false;
        return true;
    }

    PLocalMatrix operator*(const PLocalMatrix& o) const {
        assert(cols_ == o.rows_);
        PLocalMatrix r(rows_, o.cols_, prime_);
        for (const auto& [rc, v] : entries_) {
            for (long c = 0; c < o.cols_; ++c) {
                const PLocalScalar& w = o.at(rc.second, c);
                if (!w.is_zero()) r.add_to(rc.first, c, v * w);
            }
        }
        return r;
    }

    std::vector<PLocalScalar> apply(const std::vector<PLocalScalar>& x) const {
        assert(static_cast<long>(x.size()) == cols_);
        std::vector<PLocalScalar> y(rows_, PLocalScalar::zero(prime_));
        for (const auto& [rc, v] : entries_)
            if (!x[rc.second].is_zero()) y[rc.first] += v * x[rc.second];
        return y;
    }

    void swap_rows(long a, long b) { permute(true, a, b); }
    void swap_cols(long a, long b) { permute(false, a, b); }

    /* row_a += c * row_b */
    void row_op(long a, long b, const PLocalScalar& c) {
        if (c.is_zero()) return;
        std::vector<std::pair<long, PLocalScalar>> brow;
        for (const auto& [rc, v] : entries_)
            if (rc.first == b) brow.emplace_back(rc.second, v);
        for (const auto& [col, v] : brow) add_to(a, col, c * v);
    }
    /* col_a += c * col_b */
    void col_op(long a, long b, const PLocalScalar& c) {
        if (c.is_zero()) return;
        std::vector<std::pair<long, PLocalScalar>> bcol;
        for (const auto& [rc, v] : entries_)
            if (rc.second == b) bcol.emplace_back(rc.first, v);
        for (const auto& [row, v] : bcol) add_to(row, a, c * v);
    }
    void scale_row(long a, const PLocalScalar& c) {
        std::vector<std::pair<long, PLocalScalar>> arow;
        for (const auto& [rc, v] : entries_)
            if (rc.first == a) arow.emplace_back(rc.second, v);
        for (const auto& [col, v] : arow) set(a, col, c * v);
    }
    void scale_col(long a, const PLocalScalar& c) {
        std::vector<std::pair<long, PLocalScalar>> acol;
        for (const auto& [rc, v] : entries_)
            if (rc.second == a) acol.emplace_back(rc.first, v);
        for (const auto& [row, v] : acol) set(row, a, c * v);
    }

private:
    void permute(bool rows, long a, long b) {
        if (a == b) return;
        std::map<std::pair<long, long>, PLocalScalar> out;
        for (auto& [rc, v] : entries_) {
            auto key = rc;
            long& idx = rows ? key.first : key.second;
            if (idx == a) idx = b;
            else if (idx == b) idx = a;
            out[key] = std::move(v);
        }
        entries_ = std::move(out);
    }

    long rows_, cols_, prime_;
    std::map<std::pair<long, long>, PLocalScalar> entries_;
};

struct SmithNormalForm {
    std::vector<PLocalScalar> diag;   // p-powers, ascending valuation, then zeros trimmed
    PLocalMatrix left;                // left * m * right = diagonal
    PLocalMatrix right;
    PLocalMatrix left_inv;
    PLocalMatrix right_inv;
    long rank = 0;
};

/* SNF over Z_(p). Pivot choice: minimal p-valuation, ties by (row, col).
 * Diagonal entries are normalized to exact powers of p. */
inline SmithNormalForm smith_normal_form(const PLocalMatrix& m) {
    if (!m.all_p_integral())
        throw integrality_failure("smith_normal_form: entries not in Z_(p)");
    const long p = m.prime();
    SmithNormalForm f;
    PLocalMatrix a = m;
    f.left = PLocalMatrix::identity(m.rows(), p);
    f.left_inv = PLocalMatrix::identity(m.rows(), p);
    f.right = PLocalMatrix::identity(m.cols(), p);
    f.right_inv = PLocalMatrix::identity(m.cols(), p);

    const long n = std::min(m.rows(), m.cols());
    long k = 0;
    for (; k < n; ++k) {
        // locate pivot among remaining entries
        std::optional<std::pair<long, long>> pivot;
        long best_val = 0;
        for (const auto& [rc, v] : a.entries()) {
            if (rc.first < k || rc.second < k) continue;
            long val = v.valuation();
            if (!pivot || val < best_val ||
                (val == best_val && rc < *pivot)) {
                pivot = rc;
                best_val = val;
            }
        }
        if (!pivot) break;

        if (pivot->first != k) {
            a.swap_rows(k, pivot->first);
            f.left.swap_rows(k, pivot->first);
            f.left_inv.swap_cols(k, pivot->first);
        }
        if (pivot->second != k) {
            a.swap_cols(k, pivot->second);
            f.right.swap_cols(k, pivot->second);
            f.right_inv.swap_rows(k, pivot->second);
        }

        // normalize pivot to p^val (unit folded into the left basis)
        PLocalScalar piv = a.at(k, k);
        PLocalScalar target(mpq_class(pow_p(p, piv.valuation())), p);
        PLocalScalar unit = piv / target;            // p-unit
        PLocalScalar unit_inv = target / piv;
        a.scale_row(k, unit_inv);
        f.left.scale_row(k, unit_inv);
        f.left_inv.scale_col(k, unit);

        // clear column k below/above and row k
        piv = a.at(k, k);
        for (long r = 0; r < a.rows(); ++r) {
            if (r == k) continue;
            PLocalScalar e = a.at(r, k);
            if (e.is_zero()) continue;
            PLocalScalar q = e / piv;                // exact in Z_(p) by pivot minimality
            a.row_op(r, k, -q);
            f.left.row_op(r, k, -q);
            f.left_inv.col_op(k, r, q);
        }
        for (long c = 0; c < a.cols(); ++c) {
            if (c == k) continue;
            PLocalScalar e = a.at(k, c);
            if (e.is_zero()) continue;
            PLocalScalar q = e / piv;
            a.col_op(c, k, -q);
            f.right.col_op(c, k, -q);
            f.right_inv.row_op(k, c, q);
        }
    }
    f.rank = k;
    f.diag.reserve(n);
    for (long i = 0; i < n; ++i) f.diag.push_back(a.at(i, i));
    return f;
}

/* Solve m * x = b over Z_(p); returns nullopt if no p-integral solution. */
inline std::optional<std::vector<PLocalScalar>>
solve(const PLocalMatrix& m, const std::vector<PLocalScalar>& b) {
    SmithNormalForm f = smith_normal_form(m);
    const long p = m.prime();
    // L m R = D => x = R y with D y = L b
    std::vector<PLocalScalar> lb = f.left.apply(b);
    std::vector<PLocalScalar> y(m.cols(), PLocalScalar::zero(p));
    const long n = std::min(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i) {
        PLocalScalar rhs = lb[i];
        if (i < n && !f.diag[i].is_zero()) {
            PLocalScalar q = rhs / f.diag[i];
            if (!q.is_p_integral()) return std::nullopt;
            y[i] = q;
        } else if (!rhs.is_zero()) {
            return std::nullopt;
        }
    }
    return f.right.apply(y);
}

/* Is b in the column span of m over Z_(p)? */
inline bool in_column_span(const PLocalMatrix& m, const std::vector<PLocalScalar>& b) {
    return solve(m, b).has_value();
}

/* Basis of ker(m) as columns (saturated: a direct summand of the domain). */
inline std::vector<std::vector<PLocalScalar>> kernel_basis(const PLocalMatrix& m) {
    SmithNormalForm f = smith_normal_form(m);
    std::vector<std::vector<PLocalScalar>> out;
    for (long j = 0; j < m.cols(); ++j) {
        bool zero_diag = j >= static_cast<long>(f.diag.size()) || f.diag[j].is_zero();
        if (!zero_diag) continue;
        std::vector<PLocalScalar> col(m.cols(), PLocalScalar::zero(m.prime()));
        for (long i = 0; i < m.cols(); ++i) col[i] = f.right.at(i, j);
        out.push_back(std::move(col));
    }
    return out;
}

struct HomologyResult {
    FGPGroup group;
    /* one representative (in the ambient basis) per summand: free generators
     * first, then torsion generators in diag order */
    std::vector<std::vector<PLocalScalar>> representatives;
};

/* ker(d_out) / im(d_in) with d_out ∘ d_in = 0 (checked). */
inline HomologyResult homology_group(const PLocalMatrix& d_in, const PLocalMatrix& d_out) {
    assert(d_in.rows() == d_out.cols());
    const long p = d_in.prime() != 0 ? d_in.prime() : d_out.prime();
    const long ambient = d_in.rows();
    if (!(d_out * d_in).is_zero())
        throw composition_not_zero("homology_group: d_out * d_in != 0");

    // kernel of d_out
    SmithNormalForm fo = smith_normal_form(d_out);
    std::vector<long> kernel_cols;
    for (long j = 0; j < ambient; ++j) {
        bool zero_diag = j >= static_cast<long>(fo.diag.size()) || fo.diag[j].is_zero();
        if (zero_diag) kernel_cols.push_back(j);
    }
    const long kdim = static_cast<long>(kernel_cols.size());

    // express columns of d_in in kernel coordinates: y = R^{-1} * d_in_col is
    // supported on kernel positions since d_out d_in = 0
    PLocalMatrix q(kdim, d_in.cols(), p);
    {
        PLocalMatrix y = fo.right_inv * d_in;
        for (long j = 0; j < d_in.cols(); ++j) {
            for (long ki = 0; ki < kdim; ++ki)
                q.set(ki, j, y.at(kernel_cols[ki], j));
            // positions with nonzero diag must vanish
            for (long i = 0; i < ambient; ++i) {
                bool zero_diag =
                    i >= static_cast<long>(fo.diag.size()) || fo.diag[i].is_zero();
                if (!zero_diag && !y.at(i, j).is_zero())
                    throw composition_not_zero("homology_group: image not in kernel");
            }
        }
    }

    SmithNormalForm fq = smith_normal_form(q);
    HomologyResult res;
    res.group.prime = p;

    // kernel basis in ambient coordinates, then change basis by L_q^{-1}
    auto kernel_vec = [&](long ki) {
        std::vector<PLocalScalar> v(ambient, PLocalScalar::zero(p));
        for (long i = 0; i < ambient; ++i) v[i] = fo.right.at(i, kernel_cols[ki]);
        return v;
    };

    std::vector<long> torsion;
    for (long i = 0; i < kdim; ++i) {
        PLocalScalar d = i < static_cast<long>(fq.diag.size()) ? fq.diag[i]
                                                               : PLocalScalar::zero(p);
        long val = d.is_zero() ? -1 : d.valuation();
        std::vector<PLocalScalar> rep(ambient, PLocalScalar::zero(p));
        for (long ki = 0; ki < kdim; ++ki) {
            PLocalScalar c = fq.left_inv.at(ki, i);
            if (c.is_zero()) continue;
            auto kv = kernel_vec(ki);
            for (long r = 0; r < ambient; ++r) rep[r] += c * kv[r];
        }
        if (d.is_zero()) {
            res.group.free_rank++;
            res.representatives.insert(res.representatives.begin() + res.group.free_rank - 1,
                                       std::move(rep));
        } else if (val > 0) {
            torsion.push_back(val);
            res.representatives.push_back(std::move(rep));
        }
        // val == 0: killed summand, drop
    }
    std::sort(torsion.begin(), torsion.end());
    res.group.torsion_exponents = std::move(torsion);
    return res;
}

/* Dense matrix over F_p with Gaussian elimination. */
class FpMatrix {
public:
    FpMatrix() : rows_(0), cols_(0), p_(0) {}
    FpMatrix(long rows, long cols, long p)
        : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    long prime() const { return p_; }

    long at(long r, long c) const { return data_[r * cols_ + c]; }
    void set(long r, long c, long v) {
        long m = v % p_;
        if (m < 0) m += p_;
        data_[r * cols_ + c] = m;
    }
    void add_to(long r, long c, long v) { set(r, c, at(r, c) + v); }

    bool is_zero() const {
        for (long v : data_)
            if (v) return false;
        return true;
    }

    FpMatrix operator*(const FpMatrix& o) const {
        assert(cols_ == o.rows_);
        FpMatrix r(rows_, o.cols_, p_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                long v = at(i, k);
                if (!v) continue;
                for (long j = 0; j < o.cols_; ++j)
                    if (o.at(k, j)) r.add_to(i, j, v * o.at(k, j));
            }
        return r;
    }

    long rank() const {
        FpMatrix a = *this;
        return a.reduce();
    }

    /* Row-reduce in place, returns rank. */
    long reduce() {
        long r = 0;
        for (long c = 0; c < cols_ && r < rows_; ++c) {
            long piv = -1;
            for (long i = r; i < rows_; ++i)
                if (at(i, c)) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != r)
                for (long j = 0; j < cols_; ++j) {
                    long t = at(r, j);
                    set(r, j, at(piv, j));
                    set(piv, j, t);
                }
            long inv = Fp(at(r, c), p_).inverse().rep();
            for (long j = 0; j < cols_; ++j) set(r, j, at(r, j) * inv);
            for (long i = 0; i < rows_; ++i) {
                if (i == r) continue;
                long f = at(i, c);
                if (!f) continue;
                for (long j = 0; j < cols_; ++j)
                    set(i, j, at(i, j) + (p_ - f) * at(r, j));
            }
            ++r;
        }
        return r;
    }

    std::vector<std::vector<long>> kernel_basis() const {
        FpMatrix a = *this;
        a.reduce();
        std::vector<long> pivot_col;
        std::vector<bool> is_pivot(cols_, false);
        for (long i = 0; i < rows_; ++i) {
            long c = 0;
            while (c < cols_ && a.at(i, c) == 0) ++c;
            if (c < cols_) { pivot_col.push_back(c); is_pivot[c] = true; }
        }
        std::vector<std::vector<long>> out;
        for (long c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<long> v(cols_, 0);
            v[c] = 1;
            for (size_t i = 0; i < pivot_col.size(); ++i) {
                long coeff = a.at(static_cast<long>(i), c);
                if (coeff) v[pivot_col[i]] = p_ - coeff;
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    std::optional<std::vector<long>> solve(const std::vector<long>& b) const {
        FpMatrix aug(rows_, cols_ + 1, p_);
        for (long i = 0; i < rows_; ++i) {
            for (long j = 0; j < cols_; ++j) aug.set(i, j, at(i, j));
            aug.set(i, cols_, b[i]);
        }
        aug.reduce();
        std::vector<long> x(cols_, 0);
        for (long i = 0; i < rows_; ++i) {
            long c = 0;
            while (c < cols_ && aug.at(i, c) == 0) ++c;
            if (c == cols_) {
                if (aug.at(i, cols_)) return std::nullopt;  // inconsistent row
                continue;
            }
            // fully reduced: pivot row gives the coordinate directly
            x[c] = aug.at(i, cols_);
        }
        return x;
    }

private:
    long rows_, cols_, p_;
    std::vector<long> data_;
};

/* Homology of an F_p complex at one spot: dim ker(d_out) - rank(d_in),
 * reported as (Z/p)^dim with representatives from a kernel basis reduced
 * against the image. */
inline HomologyResult fp_homology(const FpMatrix& d_in, const FpMatrix& d_out) {
    assert(d_in.rows() == d_out.cols());
    const long p = d_in.prime() != 0 ? d_in.prime() : d_out.prime();
    if (!(d_out * d_in).is_zero())
        throw composition_not_zero("fp_homology: d_out * d_in != 0");
    auto ker = d_out.kernel_basis();
    const long ambient = d_in.rows();
    // stack image columns then kernel vectors; kernel vectors that increase
    // the rank represent homology classes
    FpMatrix probe(ambient, d_in.cols(), p);
    for (long i = 0; i < ambient; ++i)
        for (long j = 0; j < d_in.cols(); ++j) probe.set(i, j, d_in.at(i, j));
    long base_rank = probe.rank();

    HomologyResult res;
    res.group.prime = p;
    std::vector<std::vector<long>> kept;
    for (const auto& kv : ker) {
        FpMatrix trial(ambient, d_in.cols() + static_cast<long>(kept.size()) + 1, p);
        for (long i = 0; i < ambient; ++i)
            for (long j = 0; j < d_in.cols(); ++j) trial.set(i, j, d_in.at(i, j));
        for (size_t c = 0; c < kept.size(); ++c)
            for (long i = 0; i < ambient; ++i)
                trial.set(i, d_in.cols() + static_cast<long>(c), kept[c][i]);
        for (long i = 0; i < ambient; ++i)
            trial.set(i, trial.cols() - 1, kv[i]);
        if (trial.rank() > base_rank + static_cast<long>(kept.size()))
            kept.push_back(kv);
    }
    for (const auto& kv : kept) {
        res.group.torsion_exponents.push_back(1);
        std::vector<PLocalScalar> rep;
        rep.reserve(kv.size());
        for (long v : kv) rep.emplace_back(v, p);
        res.representatives.push_back(std::move(rep));
    }
    return res;
}

} // namespace chromalg
