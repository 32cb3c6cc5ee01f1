#pragma once

#include "thx/linalg.hpp"
#include "thx/triple.hpp"

#include <vector>

namespace thx {

// ---------------------------------------------------------------------------
// Free graded Lie algebra F_- = Free(V[1]) realized inside the tensor algebra
// of V. An element of word degree i lives in V^{tensor i} and carries
// hierarchy degree -i; the graded bracket is the graded commutator
//   [u, v] = u (x) v - (-1)^{jk} v (x) u,      u in V^{(x)j}, v in V^{(x)k}.
// Tensor indices are mixed-radix words, first letter most significant.
// ---------------------------------------------------------------------------

inline long ipow(int n, int e)
{
    long r = 1;
    while (e-- > 0)
        r *= n;
    return r;
}

struct TensorElem {
    int word_degree = 0; // lives in V^{tensor word_degree}, degree -word_degree
    RatVec coords;

    static TensorElem unit(int n, int degree, long idx)
    {
        TensorElem e;
        e.word_degree = degree;
        e.coords = RatVec(size_t(ipow(n, degree)));
        e.coords[size_t(idx)] = 1;
        return e;
    }
};

inline RatVec tensor_outer(int n, int j, const RatVec& u, int k, const RatVec& v)
{
    RatVec r(ipow(n, j + k));
    long vk = ipow(n, k);
    for (long a = 0; a < long(u.size()); ++a) {
        if (u[a] == 0)
            continue;
        for (long b = 0; b < long(v.size()); ++b)
            if (v[b] != 0)
                r[a * vk + b] = u[a] * v[b];
    }
    return r;
}

inline RatVec graded_bracket(int n, int j, const RatVec& u, int k, const RatVec& v)
{
    RatVec r = tensor_outer(n, j, u, k, v);
    RatVec w = tensor_outer(n, k, v, j, u);
    Rat sign = (j * k) % 2 == 0 ? Rat(1) : Rat(-1);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] -= sign * w[i];
    return r;
}

inline TensorElem graded_bracket(int n, const TensorElem& u, const TensorElem& v)
{
    TensorElem r;
    r.word_degree = u.word_degree + v.word_degree;
    r.coords = graded_bracket(n, u.word_degree, u.coords, v.word_degree, v.coords);
    return r;
}

// Diagonal derivation action of one g generator on V^{tensor i}.
inline RatVec apply_diagonal(const RatMatrix& rho_a, int i, const RatVec& v)
{
    int n = rho_a.cols();
    RatVec r(v.size());
    for (long idx = 0; idx < long(v.size()); ++idx) {
        if (v[idx] == 0)
            continue;
        for (int p = 0; p < i; ++p) {
            long stride = ipow(n, i - 1 - p);
            int d = int((idx / stride) % n);
            for (int u = 0; u < n; ++u)
                if (rho_a.at(u, d) != 0)
                    r[idx + (u - d) * stride] += rho_a.at(u, d) * v[idx];
        }
    }
    return r;
}

struct FreeLevel {
    int degree = 0;          // the level F_{-degree}
    Subspace basis;          // rref rows inside V^{tensor degree}
    std::vector<int> pivots; // pivot columns of the basis rows
    GAction action;          // diagonal g-action in level coordinates

    int dim() const { return basis.dim(); }

    RatVec to_ambient(const RatVec& coords) const
    {
        RatVec r(basis.ambient_dim);
        for (int i = 0; i < dim(); ++i)
            if (coords[i] != 0)
                axpy(r, coords[i], basis.basis.row(i));
        return r;
    }

    // rref coordinates are read off the pivot columns; verifies membership.
    std::optional<RatVec> to_coords(const RatVec& ambient) const
    {
        RatVec c(dim());
        for (int i = 0; i < dim(); ++i)
            c[i] = ambient[pivots[i]];
        RatVec check = to_ambient(c);
        for (size_t i = 0; i < check.size(); ++i)
            if (check[i] != ambient[i])
                return std::nullopt;
        return c;
    }
};

class FreeTower {
public:
    FreeTower() = default;

    // rho: the g-action on V, used for the diagonal action on each level.
    FreeTower(int n, int depth, const GAction& rho) : n_(n), rho_(rho)
    {
        extend(depth);
    }

    int dimV() const { return n_; }
    int depth() const { return int(levels_.size()); }

    const FreeLevel& level(int i) const { return levels_.at(i - 1); }

    std::vector<int> dims(int upto) const
    {
        std::vector<int> d(upto + 1, 0);
        for (int i = 1; i <= upto; ++i)
            d[i] = level(i).dim();
        return d;
    }

    void extend(int depth)
    {
        while (int(levels_.size()) < depth)
            levels_.push_back(build_level(int(levels_.size()) + 1));
    }

    // Bracket in level coordinates: (F_{-j}, F_{-k}) -> F_{-(j+k)}.
    RatVec bracket_coords(int j, const RatVec& u, int k, const RatVec& v) const
    {
        RatVec amb = graded_bracket(n_, j, level(j).to_ambient(u), k, level(k).to_ambient(v));
        auto c = level(j + k).to_coords(amb);
        if (!c)
            throw Error("ActionLeak", "bracket left the free level span");
        return *c;
    }

private:
    FreeLevel build_level(int i) const
    {
        FreeLevel lv;
        lv.degree = i;
        if (i == 1) {
            lv.basis = Subspace::full(n_);
            for (int p = 0; p < n_; ++p)
                lv.pivots.push_back(p);
            lv.action = rho_;
            return lv;
        }
        std::vector<RatVec> rows;
        for (int j = 1; 2 * j <= i; ++j) {
            const FreeLevel& a = level(j);
            const FreeLevel& b = level(i - j);
            for (int r = 0; r < a.dim(); ++r)
                for (int s = 0; s < b.dim(); ++s)
                    rows.push_back(
                        graded_bracket(n_, j, a.basis.basis.row(r), i - j, b.basis.basis.row(s)));
        }
        lv.basis = Subspace::span_rows(rows, int(ipow(n_, i)));
        for (int r = 0; r < lv.basis.dim(); ++r) {
            int p = 0;
            while (lv.basis.basis.at(r, p) == 0)
                ++p;
            lv.pivots.push_back(p);
        }
        lv.action.target_dim = lv.dim();
        for (size_t a = 0; a < rho_.mats.size(); ++a) {
            RatMatrix m(lv.dim(), lv.dim());
            for (int r = 0; r < lv.dim(); ++r) {
                auto c = lv.to_coords(apply_diagonal(rho_.mats[a], i, lv.basis.basis.row(r)));
                if (!c)
                    throw Error("ActionLeak", "diagonal action left free level " + std::to_string(i));
                m.set_col(r, *c);
            }
            lv.action.mats.push_back(std::move(m));
        }
        return lv;
    }

    int n_ = 0;
    GAction rho_;
    std::vector<FreeLevel> levels_;
};

// ---------------------------------------------------------------------------
// Wedge powers of a graded space concentrated in degrees -1..-N, given by its
// per-level dimensions. Basis conventions (fixed; serialization relies on
// them):
//   - components (j,k), j <= k, j + k = total, ordered by j;
//   - j < k: pairs (r,s), r over level j, s over level k, lexicographic;
//   - j = k odd level: symmetric pairs r <= s (odd degree squares are
//     symmetric since x^y = -(-1)^{|x||y|} y^x);
//   - j = k even level: antisymmetric pairs r < s.
// ---------------------------------------------------------------------------

struct Wedge2Space {
    struct Block {
        int j, k, offset, dim;
    };
    struct BasisElt {
        int j, r, k, s;
    };

    int total = 0;
    std::vector<int> dims; // dims[i] = dim of level i, index 0 unused
    std::vector<Block> blocks;
    int dim = 0;

    const Block* block(int j, int k) const
    {
        for (const auto& b : blocks)
            if (b.j == j && b.k == k)
                return &b;
        return nullptr;
    }

    BasisElt basis_elt(int idx) const
    {
        for (const auto& b : blocks) {
            if (idx < b.offset || idx >= b.offset + b.dim)
                continue;
            int loc = idx - b.offset;
            if (b.j < b.k)
                return {b.j, loc / dims[b.k], b.k, loc % dims[b.k]};
            int d = dims[b.j];
            if (b.j % 2 == 1) {
                Sym2Index s2(d);
                auto [r, s] = s2.unidx(loc);
                return {b.j, r, b.k, s};
            }
            // antisymmetric pairs r < s, lexicographic
            for (int r = 0; r < d; ++r) {
                int len = d - r - 1;
                if (loc < len)
                    return {b.j, r, b.k, r + 1 + loc};
                loc -= len;
            }
        }
        throw Error("IndexError", "Wedge2Space::basis_elt");
    }

    // Coordinates of the pure wedge x ^ y with x at level j, y at level k.
    RatVec coords_pure(int j, const RatVec& x, int k, const RatVec& y) const
    {
        RatVec out(dim);
        if (j > k) {
            RatVec flipped = coords_pure(k, y, j, x);
            Rat sign = (j * k) % 2 == 0 ? Rat(-1) : Rat(1); // -(-1)^{jk}
            for (int i = 0; i < dim; ++i)
                out[i] = sign * flipped[i];
            return out;
        }
        const Block* b = block(j, k);
        if (!b)
            return out; // a zero-dimensional component
        if (j < k) {
            for (int r = 0; r < dims[j]; ++r)
                for (int s = 0; s < dims[k]; ++s)
                    out[b->offset + r * dims[k] + s] = x[r] * y[s];
            return out;
        }
        int d = dims[j];
        if (j % 2 == 1) {
            Sym2Index s2(d);
            for (int r = 0; r < d; ++r)
                for (int s = r; s < d; ++s)
                    out[b->offset + s2.idx(r, s)] =
                        r == s ? x[r] * y[r] : x[r] * y[s] + x[s] * y[r];
            return out;
        }
        int loc = 0;
        for (int r = 0; r < d; ++r)
            for (int s = r + 1; s < d; ++s)
                out[b->offset + loc++] = x[r] * y[s] - x[s] * y[r];
        return out;
    }
};

inline Wedge2Space wedge2(const std::vector<int>& level_dims, int total)
{
    Wedge2Space w;
    w.total = total;
    w.dims = level_dims;
    int maxlevel = int(level_dims.size()) - 1;
    for (int j = 1; 2 * j <= total; ++j) {
        int k = total - j;
        if (j > maxlevel || k > maxlevel)
            continue;
        Wedge2Space::Block b;
        b.j = j;
        b.k = k;
        b.offset = w.dim;
        if (j < k)
            b.dim = level_dims[j] * level_dims[k];
        else if (j % 2 == 1)
            b.dim = level_dims[j] * (level_dims[j] + 1) / 2;
        else
            b.dim = level_dims[j] * (level_dims[j] - 1) / 2;
        w.dim += b.dim;
        w.blocks.push_back(b);
    }
    return w;
}

struct Wedge3Space {
    struct BasisElt {
        int j, r, k, s, l, t;
    };
    std::vector<BasisElt> elts;
};

// Basis of the third wedge power at the given total degree: within equal
// levels, odd levels take non-decreasing indices and even levels strictly
// increasing ones.
inline Wedge3Space wedge3(const std::vector<int>& level_dims, int total)
{
    Wedge3Space w;
    int maxlevel = int(level_dims.size()) - 1;
    for (int j = 1; j <= maxlevel; ++j)
        for (int k = j; k <= maxlevel; ++k) {
            int l = total - j - k;
            if (l < k || l > maxlevel)
                continue;
            for (int r = 0; r < level_dims[j]; ++r)
                for (int s = 0; s < level_dims[k]; ++s) {
                    if (j == k) {
                        if (k % 2 == 1 ? s < r : s <= r)
                            continue;
                    }
                    for (int t = 0; t < level_dims[l]; ++t) {
                        if (k == l) {
                            if (l % 2 == 1 ? t < s : t <= s)
                                continue;
                        }
                        w.elts.push_back({j, r, k, s, l, t});
                    }
                }
        }
    return w;
}

// Unshuffle extension of a graded bilinear map to a pure 3-wedge:
//   ext_b(x^y^z) = b(x^y)^z - (-1)^{|y||z|} b(x^z)^y + (-1)^{|x|(|y|+|z|)} b(y^z)^x
// where b(j,x,k,y) returns coordinates at level j+k-value_shift of the target
// grading (shift 0 for degree-0 maps like q, 1 for degree +1 maps like m),
// and the result lands in the given Lambda^2 space.
template <class Bilinear>
RatVec unshuffle_extend_pure(const Wedge2Space& out, Bilinear&& b, int j, const RatVec& x, int k,
                             const RatVec& y, int l, const RatVec& z, int value_shift = 0)
{
    RatVec res(out.dim);
    auto add = [&](const Rat& sign, int lev, const RatVec& val, int lev2, const RatVec& other) {
        if (lev <= 0 || lev >= int(out.dims.size()) || out.dims[lev] == 0 || is_zero(val))
            return;
        RatVec c = out.coords_pure(lev, val, lev2, other);
        for (int i = 0; i < out.dim; ++i)
            res[i] += sign * c[i];
    };
    add(Rat(1), j + k - value_shift, b(j, x, k, y), l, z);
    add((k * l) % 2 == 0 ? Rat(-1) : Rat(1), j + l - value_shift, b(j, x, l, z), k, y);
    add((j * (k + l)) % 2 == 0 ? Rat(1) : Rat(-1), k + l - value_shift, b(k, y, l, z), j, x);
    return res;
}

// Chevalley-Eilenberg d2 on Lambda^2(F)|_{-total}: x^y -> -[x,y].
inline RatMatrix ce_d2(const FreeTower& ft, int total)
{
    Wedge2Space w = wedge2(ft.dims(total - 1), total);
    RatMatrix m(ft.level(total).dim(), w.dim);
    for (int c = 0; c < w.dim; ++c) {
        auto e = w.basis_elt(c);
        RatVec u(ft.level(e.j).dim()), v(ft.level(e.k).dim());
        u[e.r] = 1;
        v[e.s] = 1;
        RatVec br = ft.bracket_coords(e.j, u, e.k, v);
        for (int i = 0; i < int(br.size()); ++i)
            m.at(i, c) = -br[i];
    }
    return m;
}

// Chevalley-Eilenberg d3 on Lambda^3(F)|_{-total}; equals the unshuffle
// extension of d2.
inline RatMatrix ce_d3(const FreeTower& ft, int total)
{
    Wedge2Space w2 = wedge2(ft.dims(total - 1), total);
    Wedge3Space w3 = wedge3(ft.dims(total - 2), total);
    RatMatrix m(w2.dim, int(w3.elts.size()));
    auto d2bil = [&](int j, const RatVec& x, int k, const RatVec& y) {
        RatVec br = ft.bracket_coords(j, x, k, y);
        for (auto& v : br)
            v = -v;
        return br;
    };
    for (size_t c = 0; c < w3.elts.size(); ++c) {
        const auto& e = w3.elts[c];
        RatVec x(ft.level(e.j).dim()), y(ft.level(e.k).dim()), z(ft.level(e.l).dim());
        x[e.r] = 1;
        y[e.s] = 1;
        z[e.t] = 1;
        RatVec val = unshuffle_extend_pure(w2, d2bil, e.j, x, e.k, y, e.l, z);
        m.set_col(int(c), val);
    }
    return m;
}

} // namespace thx
