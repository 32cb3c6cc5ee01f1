#pragma once

#include "thx/freegla.hpp"

#include <vector>

namespace thx {

// ---------------------------------------------------------------------------
// The quotient tower T_{-i} = F_{-i} / K_{-i}:
//   K_{-2} = biggest g-submodule of Ker{.,.} inside F_{-2} (= S^2 V),
//   K_{-i} = span of [F_{-j}, K_{-(i-j)}], 1 <= j <= i-2, for i >= 3,
// with the induced g-actions and the surjections q = proj . [.,.].
// ---------------------------------------------------------------------------

struct HierarchyLevel {
    int degree = 0;          // the level T_{-degree}, degree >= 2
    bool collapsed = false;  // emitted as zero without tensor work
    Subspace K;              // in F-level coordinates
    QuotientData T;          // quotient of the F-level coordinate space
    GAction action;          // induced g-action on T coordinates
    Wedge2Space wedge;       // Lambda^2(T)|_{-degree}
    RatMatrix q;             // wedge.dim -> dim T
    RatMatrix q_sect;        // right inverse of q (empty when dim T = 0)
    Subspace q_kernel;       // Ker(q) inside the wedge coordinates

    int dim() const { return collapsed ? 0 : T.dim(); }
};

class Hierarchy {
public:
    LieLeibnizTriple triple;
    int max_depth = 0;
    FreeTower free;
    std::vector<int> tdims;             // tdims[i] = dim T_{-i}, index 0 unused
    std::vector<HierarchyLevel> levels; // levels 2..max_depth

    const HierarchyLevel& level(int i) const { return levels.at(size_t(i) - 2); }

    const GAction& action(int i) const
    {
        return i == 1 ? triple.rho : level(i).action;
    }

    int dim(int i) const { return tdims.at(i); }

    // class representative in tensor coordinates
    RatVec lift(int i, const RatVec& t) const
    {
        if (i == 1)
            return t;
        const HierarchyLevel& lv = level(i);
        return free.level(i).to_ambient(lv.T.sect * t);
    }

    RatVec proj_ambient(int i, const RatVec& amb) const
    {
        if (i == 1)
            return amb;
        auto f = free.level(i).to_coords(amb);
        if (!f)
            throw Error("ActionLeak", "vector not in free level " + std::to_string(i));
        return level(i).T.proj * *f;
    }

    // bracket of classes; the result lives in T_{-(j+k)}
    RatVec q_eval(int j, const RatVec& x, int k, const RatVec& y) const
    {
        int i = j + k;
        if (tdims.at(i) == 0)
            return RatVec(0);
        if (is_zero(x) || is_zero(y))
            return RatVec(tdims[i]);
        RatVec amb = graded_bracket(triple.dimV, j, lift(j, x), k, lift(k, y));
        return proj_ambient(i, amb);
    }

    RatVec unit(int i, int r) const
    {
        RatVec v(tdims.at(i));
        v[r] = 1;
        return v;
    }
};

namespace detail {

// Ker of the symmetric bracket carried into F_{-2} coordinates: the kernel of
// w -> sum w_{uv} e_u o e_v restricted to the symmetric tensors.
inline Subspace ker_sym_in_f2(const LieLeibnizTriple& t, const FreeLevel& f2)
{
    int n = t.dimV;
    RatMatrix b(n, f2.dim());
    for (int c = 0; c < f2.dim(); ++c) {
        RatVec w = f2.basis.basis.row(c);
        RatVec val(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (w[u * n + v] != 0)
                    axpy(val, w[u * n + v], t.product(t.basis_vec(u), t.basis_vec(v)));
        b.set_col(c, val);
    }
    return kernel(b);
}

inline GAction induced_action(const GAction& big, const QuotientData& q)
{
    GAction act;
    act.target_dim = q.dim();
    for (const auto& m : big.mats) {
        // the quotient action must intertwine proj
        RatMatrix qm = q.proj * m * q.sect;
        if (!(qm * q.proj == q.proj * m))
            throw Error("ActionLeak", "kernel is not invariant under the action");
        act.mats.push_back(std::move(qm));
    }
    return act;
}

} // namespace detail

inline Hierarchy build_hierarchy(const LieLeibnizTriple& t, int max_depth)
{
    if (max_depth < 2)
        throw Error("BadDepth", "max_depth must be at least 2");
    Hierarchy h;
    h.triple = t;
    h.max_depth = max_depth;
    bool collapse = t.flags.is_lie_V;
    h.free = FreeTower(t.dimV, collapse ? 2 : max_depth, t.rho);
    h.tdims.assign(size_t(max_depth) + 1, 0);
    h.tdims[1] = t.dimV;

    for (int i = 2; i <= max_depth; ++i) {
        HierarchyLevel lv;
        lv.degree = i;

        if (i > 2 && collapse) {
            lv.collapsed = true;
            lv.action.target_dim = 0;
            lv.action.mats.assign(size_t(t.g.dim), RatMatrix(0, 0));
            lv.wedge = wedge2(h.tdims, i);
            lv.q = RatMatrix(0, lv.wedge.dim);
            lv.q_sect = RatMatrix(lv.wedge.dim, 0);
            lv.q_kernel = Subspace::full(lv.wedge.dim);
            h.tdims[i] = 0;
            h.levels.push_back(std::move(lv));
            continue;
        }

        const FreeLevel& f = h.free.level(i);
        if (i == 2) {
            Subspace ks = detail::ker_sym_in_f2(t, f);
            lv.K = largest_invariant_subspace(f.action, ks);
        } else {
            std::vector<RatVec> rows;
            for (int j = 1; j <= i - 2; ++j) {
                const FreeLevel& fj = h.free.level(j);
                const HierarchyLevel& kl = h.level(i - j);
                for (int r = 0; r < fj.dim(); ++r)
                    for (int s = 0; s < kl.K.dim(); ++s) {
                        RatVec kamb = h.free.level(i - j).to_ambient(kl.K.basis.row(s));
                        RatVec br = graded_bracket(t.dimV, j, fj.basis.basis.row(r), i - j, kamb);
                        auto c = f.to_coords(br);
                        if (!c)
                            throw Error("ActionLeak", "[F, K] left the free level");
                        rows.push_back(*c);
                    }
            }
            lv.K = Subspace::span_rows(rows, f.dim());
            // K must be a g-submodule (composition of equivariant maps)
            for (int s = 0; s < lv.K.dim(); ++s)
                for (const auto& m : f.action.mats)
                    if (!lv.K.contains(m * lv.K.basis.row(s)))
                        throw Error("ActionLeak", "K level " + std::to_string(i)
                                                      + " is not g-invariant");
        }

        lv.T = quotient(f.dim(), lv.K);
        lv.action = detail::induced_action(f.action, lv.T);
        h.tdims[i] = lv.T.dim();

        lv.wedge = wedge2(h.tdims, i);
        lv.q = RatMatrix(lv.T.dim(), lv.wedge.dim);
        h.levels.push_back(lv); // q_eval below needs lift/proj for this level
        HierarchyLevel& cur = h.levels.back();
        for (int c = 0; c < cur.wedge.dim; ++c) {
            auto e = cur.wedge.basis_elt(c);
            cur.q.set_col(c, h.q_eval(e.j, h.unit(e.j, e.r), e.k, h.unit(e.k, e.s)));
        }
        if (rref(cur.q).rank != cur.T.dim())
            throw Error("ExactnessFailure",
                        "q is not surjective at level " + std::to_string(i));
        cur.q_sect = cur.T.dim() > 0 ? section_of_surjection(cur.q)
                                     : RatMatrix(cur.wedge.dim, 0);
        cur.q_kernel = kernel(cur.q);
    }
    return h;
}

// Exactness of  Lambda^3(T)|_{-i} -> Lambda^2(T)|_{-i} -> T_{-i} -> 0  at the
// middle term, for every built degree i >= 3: Ker(q) equals the image of the
// unshuffle-extended q.
inline VerificationReport check_hierarchy_exactness(const Hierarchy& h)
{
    VerificationReport rep;
    Check& ck = rep.add("hierarchy.exactness");
    auto qbil = [&](int j, const RatVec& x, int k, const RatVec& y) {
        return h.q_eval(j, x, k, y);
    };
    for (int i = 3; i <= h.max_depth; ++i) {
        const HierarchyLevel& lv = h.level(i);
        if (lv.wedge.dim == 0) {
            ck.pass();
            continue;
        }
        Wedge3Space w3 = wedge3(h.tdims, i);
        std::vector<RatVec> img;
        for (const auto& e : w3.elts)
            img.push_back(unshuffle_extend_pure(lv.wedge, qbil, e.j, h.unit(e.j, e.r), e.k,
                                                h.unit(e.k, e.s), e.l, h.unit(e.l, e.t)));
        Subspace im = Subspace::span_rows(img, lv.wedge.dim);
        ck.require(im == lv.q_kernel,
                   "degree -" + std::to_string(i) + ": rank deficit "
                       + std::to_string(lv.q_kernel.dim() - im.dim()));
    }
    return rep;
}

// a.q(x^y) = q(a.x^y) + q(x^a.y) on all basis pairs and g generators.
inline VerificationReport check_hierarchy_equivariance(const Hierarchy& h)
{
    VerificationReport rep;
    Check& ck = rep.add("hierarchy.q_equivariance");
    for (int i = 2; i <= h.max_depth; ++i) {
        const HierarchyLevel& lv = h.level(i);
        if (lv.dim() == 0 && lv.wedge.dim == 0) {
            ck.pass();
            continue;
        }
        for (int c = 0; c < lv.wedge.dim; ++c) {
            auto e = lv.wedge.basis_elt(c);
            for (int a = 0; a < h.triple.g.dim; ++a) {
                RatVec x = h.unit(e.j, e.r), y = h.unit(e.k, e.s);
                RatVec lhs = h.action(i).mats[a] * h.q_eval(e.j, x, e.k, y);
                RatVec rhs = h.q_eval(e.j, h.action(e.j).mats[a] * x, e.k, y);
                axpy(rhs, 1, h.q_eval(e.j, x, e.k, h.action(e.k).mats[a] * y));
                axpy(lhs, -1, rhs);
                ck.require(is_zero(lhs), "degree -" + std::to_string(i) + " pair "
                                             + std::to_string(c) + " generator "
                                             + std::to_string(a));
            }
        }
    }
    return rep;
}

} // namespace thx
