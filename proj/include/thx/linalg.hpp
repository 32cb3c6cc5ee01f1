#pragma once

#include "thx/rat.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace thx {

using RatVec = std::vector<Rat>;

inline void axpy(RatVec& y, const Rat& a, const RatVec& x)
{
    if (a == 0)
        return;
    for (size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0)
            y[i] += a * x[i];
}

inline bool is_zero(const RatVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r == 0; });
}

// Dense row-major matrix over Rat.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int r, int c) : rows_(r), cols_(c), a_(size_t(r) * c) {}

    static RatMatrix identity(int n)
    {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    static RatMatrix from_rows(const std::vector<RatVec>& rows)
    {
        if (rows.empty())
            return RatMatrix(0, 0);
        RatMatrix m(int(rows.size()), int(rows[0].size()));
        for (int i = 0; i < m.rows(); ++i) {
            if (rows[i].size() != size_t(m.cols()))
                throw Error("DimensionMismatch", "ragged row list");
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    RatVec row(int i) const
    {
        return RatVec(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_);
    }
    RatVec col(int j) const
    {
        RatVec v(rows_);
        for (int i = 0; i < rows_; ++i)
            v[i] = at(i, j);
        return v;
    }
    void set_row(int i, const RatVec& v)
    {
        for (int j = 0; j < cols_; ++j)
            at(i, j) = v[j];
    }
    void set_col(int j, const RatVec& v)
    {
        for (int i = 0; i < rows_; ++i)
            at(i, j) = v[i];
    }

    RatMatrix transpose() const
    {
        RatMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const Rat& r) { return r == 0; });
    }

    friend bool operator==(const RatMatrix& x, const RatMatrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    RatMatrix operator*(const RatMatrix& o) const
    {
        if (cols_ != o.rows_)
            throw Error("DimensionMismatch", "matrix product shapes");
        RatMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& v = at(i, k);
                if (v == 0)
                    continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    RatVec operator*(const RatVec& v) const
    {
        if (int(v.size()) != cols_)
            throw Error("DimensionMismatch", "matrix-vector shapes");
        RatVec r(rows_);
        for (int i = 0; i < rows_; ++i) {
            Rat s = 0;
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0)
                    s += at(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    RatMatrix operator+(const RatMatrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error("DimensionMismatch", "matrix sum shapes");
        RatMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i)
            r.a_[i] += o.a_[i];
        return r;
    }

    RatMatrix operator-(const RatMatrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error("DimensionMismatch", "matrix difference shapes");
        RatMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i)
            r.a_[i] -= o.a_[i];
        return r;
    }

    RatMatrix operator*(const Rat& s) const
    {
        RatMatrix r = *this;
        for (auto& x : r.a_)
            x *= s;
        return r;
    }

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct RrefResult {
    RatMatrix reduced;
    std::vector<int> pivots;
    int rank = 0;
};

// Unique reduced row-echelon form: pivot entries 1, pivot columns cleared,
// zero rows at the bottom.
inline RrefResult rref(RatMatrix m)
{
    RrefResult res;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m.at(p, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (int j = c; j < m.cols(); ++j)
            if (m.at(r, j) != 0)
                m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0)
                continue;
            Rat f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (m.at(r, j) != 0)
                    m.at(i, j) -= f * m.at(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.reduced = std::move(m);
    return res;
}

// Subspace of Q^n with canonical basis: rref rows, full row rank. Equal
// subspaces compare equal as matrices.
struct Subspace {
    int ambient_dim = 0;
    RatMatrix basis; // dim x ambient_dim

    int dim() const { return basis.rows(); }

    static Subspace zero(int n) { return Subspace{n, RatMatrix(0, n)}; }
    static Subspace full(int n) { return Subspace{n, RatMatrix::identity(n)}; }

    static Subspace span_rows(const RatMatrix& rows)
    {
        std::vector<RatVec> rr;
        for (int i = 0; i < rows.rows(); ++i)
            rr.push_back(rows.row(i));
        return span_rows(rr, rows.cols());
    }

    // Dependent rows are dropped by forward elimination before the full
    // reduction; the generating sets here are usually very redundant.
    static Subspace span_rows(const std::vector<RatVec>& rows, int ambient);

    bool contains(const RatVec& v) const
    {
        RatVec w = v;
        for (int i = 0; i < basis.rows(); ++i) {
            // pivot of rref row i
            int p = 0;
            while (p < ambient_dim && basis.at(i, p) == 0)
                ++p;
            if (p < ambient_dim && w[p] != 0)
                axpy(w, -w[p], basis.row(i));
        }
        return is_zero(w);
    }

    bool contains(const Subspace& other) const
    {
        for (int i = 0; i < other.basis.rows(); ++i)
            if (!contains(other.basis.row(i)))
                return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_dim == b.ambient_dim && a.basis == b.basis;
    }
};

inline Subspace kernel(const RatMatrix& m)
{
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivots)
        is_pivot[c] = true;
    std::vector<RatVec> rows;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c])
            continue;
        RatVec v(m.cols());
        v[c] = 1;
        for (int i = 0; i < rr.rank; ++i)
            v[rr.pivots[i]] = -rr.reduced.at(i, c);
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(rows, m.cols());
}

inline Subspace image(const RatMatrix& m)
{
    return Subspace::span_rows(m.transpose());
}

inline Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim != b.ambient_dim)
        throw Error("DimensionMismatch", "intersect: ambient dims differ");
    // null space of [A^T | B^T] stacked: x in both spans
    int da = a.dim(), db = b.dim();
    if (da == 0 || db == 0)
        return Subspace::zero(a.ambient_dim);
    RatMatrix sys(a.ambient_dim, da + db);
    for (int i = 0; i < a.ambient_dim; ++i) {
        for (int j = 0; j < da; ++j)
            sys.at(i, j) = a.basis.at(j, i);
        for (int j = 0; j < db; ++j)
            sys.at(i, da + j) = -b.basis.at(j, i);
    }
    Subspace ker = kernel(sys);
    std::vector<RatVec> rows;
    for (int k = 0; k < ker.dim(); ++k) {
        RatVec v(a.ambient_dim);
        for (int j = 0; j < da; ++j)
            if (ker.basis.at(k, j) != 0)
                axpy(v, ker.basis.at(k, j), a.basis.row(j));
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(rows, a.ambient_dim);
}

// {x : m x in w}
inline Subspace preimage(const RatMatrix& m, const Subspace& w)
{
    if (m.rows() != w.ambient_dim)
        throw Error("DimensionMismatch", "preimage: target dims differ");
    // m x in w  <=>  [m | -W^T] (x, c)^T = 0 projected to x
    int dw = w.dim();
    RatMatrix sys(m.rows(), m.cols() + dw);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j)
            sys.at(i, j) = m.at(i, j);
        for (int j = 0; j < dw; ++j)
            sys.at(i, m.cols() + j) = -w.basis.at(j, i);
    }
    Subspace ker = kernel(sys);
    std::vector<RatVec> rows;
    for (int k = 0; k < ker.dim(); ++k) {
        RatVec v(m.cols());
        for (int j = 0; j < m.cols(); ++j)
            v[j] = ker.basis.at(k, j);
        rows.push_back(std::move(v));
    }
    return Subspace::span_rows(rows, m.cols());
}

// Quotient of Q^n by a subspace. The section lifts through the non-pivot
// standard coordinates of the kernel basis, so proj . sect = id and the
// data depend only on the subspace, not on how it was presented.
struct QuotientData {
    int ambient_dim = 0;
    Subspace kern;
    RatMatrix proj; // (n - k) x n
    RatMatrix sect; // n x (n - k)

    int dim() const { return proj.rows(); }
};

inline QuotientData quotient(int ambient_dim, const Subspace& k)
{
    if (k.ambient_dim != ambient_dim)
        throw Error("DimensionMismatch", "quotient: ambient dims differ");
    int kd = k.dim();
    std::vector<int> pivots;
    for (int i = 0; i < kd; ++i) {
        int p = 0;
        while (p < ambient_dim && k.basis.at(i, p) == 0)
            ++p;
        pivots.push_back(p);
    }
    std::vector<bool> is_pivot(ambient_dim, false);
    for (int p : pivots)
        is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    int qd = int(free_cols.size());

    QuotientData q;
    q.ambient_dim = ambient_dim;
    q.kern = k;
    q.sect = RatMatrix(ambient_dim, qd);
    for (int j = 0; j < qd; ++j)
        q.sect.at(free_cols[j], j) = 1;
    // v - sum_i v[pivot_i] * basisrow_i has zero pivot coordinates; read off
    // the free coordinates.
    q.proj = RatMatrix(qd, ambient_dim);
    for (int j = 0; j < qd; ++j) {
        q.proj.at(j, free_cols[j]) = 1;
        for (int i = 0; i < kd; ++i)
            q.proj.at(j, pivots[i]) -= k.basis.at(i, free_cols[j]);
    }
    return q;
}

// Solve A x = b; empty when inconsistent. The solution with zero free
// coordinates is returned, so the result is deterministic.
inline std::optional<RatVec> solve(const RatMatrix& A, const RatVec& b)
{
    if (int(b.size()) != A.rows())
        throw Error("DimensionMismatch", "solve: rhs size");
    RatMatrix aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j)
            aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    RrefResult rr = rref(std::move(aug));
    RatVec x(A.cols());
    for (int i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] == A.cols())
            return std::nullopt;
        x[rr.pivots[i]] = rr.reduced.at(i, A.cols());
    }
    return x;
}

// Right inverse of a surjective matrix through its pivot columns.
inline RatMatrix section_of_surjection(const RatMatrix& q)
{
    RrefResult rr = rref(q);
    if (rr.rank != q.rows())
        throw Error("NotSurjective", "section_of_surjection: matrix has deficient rank");
    RatMatrix sub(q.rows(), q.rows());
    for (int j = 0; j < q.rows(); ++j)
        sub.set_col(j, q.col(rr.pivots[j]));
    // invert sub by solving sub X = I
    RatMatrix inv(q.rows(), q.rows());
    for (int j = 0; j < q.rows(); ++j) {
        RatVec e(q.rows());
        e[j] = 1;
        auto x = solve(sub, e);
        inv.set_col(j, *x);
    }
    RatMatrix sect(q.cols(), q.rows());
    for (int j = 0; j < q.rows(); ++j)
        for (int i = 0; i < q.rows(); ++i)
            sect.at(rr.pivots[i], j) = inv.at(i, j);
    return sect;
}

// Growing span with original (unreduced) generators kept for coordinate
// solves. Used by every orbit-closure computation.
class IncrementalSpan {
public:
    explicit IncrementalSpan(int ambient) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int dim() const { return int(orig_.size()); }
    const std::vector<RatVec>& generators() const { return orig_; }

    bool contains(const RatVec& v) const { return reduce(v).first; }

    // Adds v if it enlarges the span; returns whether it did.
    bool add(const RatVec& v)
    {
        auto [inside, red] = reduce(v);
        if (inside)
            return false;
        int p = 0;
        while (red[p] == 0)
            ++p;
        Rat inv = Rat(1) / red[p];
        for (auto& x : red)
            x *= inv;
        orig_.push_back(v);
        reduced_.push_back(std::move(red));
        pivot_.push_back(p);
        return true;
    }

    // Coordinates of v in terms of the retained original generators.
    std::optional<RatVec> coords(const RatVec& v) const
    {
        if (orig_.empty())
            return is_zero(v) ? std::optional<RatVec>(RatVec{}) : std::nullopt;
        RatMatrix A(ambient_, dim());
        for (int j = 0; j < dim(); ++j)
            A.set_col(j, orig_[j]);
        return solve(A, v);
    }

    Subspace to_subspace() const
    {
        return Subspace::span_rows(orig_, ambient_);
    }

private:
    std::pair<bool, RatVec> reduce(const RatVec& v) const
    {
        RatVec w = v;
        for (size_t i = 0; i < reduced_.size(); ++i)
            if (w[pivot_[i]] != 0)
                axpy(w, -w[pivot_[i]], reduced_[i]);
        return {is_zero(w), std::move(w)};
    }

    int ambient_;
    std::vector<RatVec> orig_;
    std::vector<RatVec> reduced_;
    std::vector<int> pivot_;
};

inline Subspace Subspace::span_rows(const std::vector<RatVec>& rows, int ambient)
{
    IncrementalSpan span(ambient);
    std::vector<RatVec> independent;
    for (const auto& r : rows)
        if (span.add(r))
            independent.push_back(r);
    if (independent.empty())
        return zero(ambient);
    RrefResult rr = rref(RatMatrix::from_rows(independent));
    RatMatrix b(rr.rank, ambient);
    for (int i = 0; i < rr.rank; ++i)
        b.set_row(i, rr.reduced.row(i));
    return Subspace{ambient, std::move(b)};
}

} // namespace thx
