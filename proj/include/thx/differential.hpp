#pragma once

#include "thx/hierarchy.hpp"

#include <string>
#include <vector>

namespace thx {

// ---------------------------------------------------------------------------
// The degree +1 differential on the tower and its cyclic modules:
//   m_{-1} = 2{.,.},   m_{-i}(x^y) = rho_{-i}(Theta x).y on T_{-1}^T_{-i},
//   del_{-1} factors m_{-1} through q_{-2},
//   del_{-n-1} factors j_{-n-1} = m_{-n-1} + q_{-n-1} . del through q_{-n-2},
//   del_0 = Theta,  del_{+1} = -eta(-, Theta),
//   mu_{-i}: R_Theta -> R_{-i} sends Theta_w to w.del_{-i}.
// ---------------------------------------------------------------------------

struct DifferentialTower {
    // partial[i-1] = del_{-i}: T_{-i-1} -> T_{-i}, for 1 <= i <= N-1
    std::vector<RatMatrix> partial;
    RatMatrix partial0;     // Theta: V -> g
    RatMatrix partial_plus; // g -> R_Theta orbit coordinates
    // m_wedge[i-1] = m_{-i} as a matrix Lambda^2(T)|_{-(i+1)} -> T_{-i}
    std::vector<RatMatrix> m_wedge;

    const RatMatrix& del(int i) const { return partial.at(size_t(i) - 1); }
    const RatMatrix& m_mat(int i) const { return m_wedge.at(size_t(i) - 1); }
};

struct MuLevel {
    CyclicModule R;
    RatMatrix mu; // dim R x dim R_Theta
};

struct MuFamily {
    std::vector<MuLevel> neg; // neg[i-1] for degree -i, 1 <= i <= N-1
    MuLevel plus;             // degree +1 (R_{+1} inside Hom(g, R_Theta))
};

namespace detail {

// Operators of a -> (f -> A_a f - f B_a) on flattened rows x cols matrices.
inline std::vector<RatMatrix> hom_action(const std::vector<RatMatrix>& out_act,
                                         const std::vector<RatMatrix>& in_act, int rows, int cols)
{
    std::vector<RatMatrix> ops;
    for (size_t a = 0; a < out_act.size(); ++a) {
        RatMatrix op(rows * cols, rows * cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                RatMatrix unit(rows, cols);
                unit.at(r, c) = 1;
                RatMatrix img = out_act[a] * unit - unit * in_act[a];
                op.set_col(r * cols + c, flatten(img));
            }
        ops.push_back(std::move(op));
    }
    return ops;
}

inline RatVec apply_word(const std::vector<int>& word, RatVec v,
                         const std::vector<RatMatrix>& acts)
{
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        v = acts[*it] * v;
    return v;
}

} // namespace detail

// m as matrices over the wedge coordinates, one per level.
inline std::vector<RatMatrix> build_m(const Hierarchy& h)
{
    std::vector<RatMatrix> out;
    const LieLeibnizTriple& t = h.triple;
    for (int i = 1; i <= h.max_depth - 1; ++i) {
        const Wedge2Space& w = h.level(i + 1).wedge;
        RatMatrix m(h.dim(i), w.dim);
        for (int c = 0; c < w.dim; ++c) {
            auto e = w.basis_elt(c);
            if (i == 1) { // (1,1) block: m(x^y) = 2{x,y}
                RatVec val = t.product(t.basis_vec(e.r), t.basis_vec(e.s));
                axpy(val, 1, t.product(t.basis_vec(e.s), t.basis_vec(e.r)));
                m.set_col(c, val);
            } else if (e.j == 1 && e.k == i) {
                RatVec val = h.action(i).act(t.theta * t.basis_vec(e.r)) * h.unit(i, e.s);
                m.set_col(c, val);
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

// m on a pure wedge (x at level j, y at level k), value in T_{-(j+k-1)}.
inline RatVec m_eval(const Hierarchy& h, const DifferentialTower& d, int j, const RatVec& x, int k,
                     const RatVec& y)
{
    const LieLeibnizTriple& t = h.triple;
    int target = j + k - 1;
    if (target > h.max_depth || h.dim(target) == 0)
        return RatVec(target > h.max_depth ? 0 : h.dim(target));
    RatVec val(h.dim(target));
    if (j == 1 && k == 1) {
        for (int r = 0; r < t.dimV; ++r)
            if (x[r] != 0) {
                axpy(val, x[r], t.rho.act(t.theta * y) * t.basis_vec(r));
                axpy(val, x[r], t.rho.act(t.theta * t.basis_vec(r)) * y);
            }
        return val;
    }
    if (j == 1 && k >= 2)
        return h.action(k).act(t.theta * x) * y;
    if (k == 1 && j >= 2) {
        // m is defined on the wedge: x^y = -(-1)^{jk} y^x
        RatVec flip = m_eval(h, d, k, y, j, x);
        Rat sign = (j * k) % 2 == 0 ? Rat(-1) : Rat(1);
        for (auto& v : flip)
            v *= sign;
        return flip;
    }
    return val; // zero on every other bidegree
}

// Graded derivation extension of the tower differential to a pure wedge,
// with del vanishing on T_{-1}: del(x^y) = del x ^ y + (-1)^{|x|} x ^ del y.
// The result lives in Lambda^2(T) one degree up.
inline RatVec partial_on_wedge(const Hierarchy& h, const DifferentialTower& d,
                               const Wedge2Space& out, int j, const RatVec& x, int k,
                               const RatVec& y)
{
    RatVec res(out.dim);
    if (j >= 2 && h.dim(j - 1) > 0) {
        RatVec dx = d.del(j - 1) * x;
        RatVec c = out.coords_pure(j - 1, dx, k, y);
        for (int i = 0; i < out.dim; ++i)
            res[i] += c[i];
    }
    if (k >= 2 && h.dim(k - 1) > 0) {
        RatVec dy = d.del(k - 1) * y;
        Rat sign = j % 2 == 0 ? Rat(1) : Rat(-1); // (-1)^{|x|} = (-1)^j
        RatVec c = out.coords_pure(j, x, k - 1, dy);
        for (int i = 0; i < out.dim; ++i)
            res[i] += sign * c[i];
    }
    return res;
}

// The same extension as a matrix from wedge level `total` to level total-1.
inline RatMatrix partial_wedge_matrix(const Hierarchy& h, const DifferentialTower& d, int total)
{
    const Wedge2Space& src = h.level(total).wedge;
    Wedge2Space dst = wedge2(h.tdims, total - 1);
    RatMatrix m(dst.dim, src.dim);
    for (int c = 0; c < src.dim; ++c) {
        auto e = src.basis_elt(c);
        m.set_col(c, partial_on_wedge(h, d, dst, e.j, h.unit(e.j, e.r), e.k, h.unit(e.k, e.s)));
    }
    return m;
}

inline DifferentialTower build_differential(const Hierarchy& h)
{
    DifferentialTower d;
    d.m_wedge = build_m(h);
    int N = h.max_depth;

    // del_{-1}: the factorization of m_{-1} through q_{-2}
    const HierarchyLevel& l2 = h.level(2);
    for (int r = 0; r < l2.q_kernel.dim(); ++r)
        if (!is_zero(d.m_mat(1) * l2.q_kernel.basis.row(r)))
            throw Error("FactorizationFailure", "m_{-1} does not vanish on Ker(q_{-2})");
    d.partial.push_back(d.m_mat(1) * l2.q_sect);

    for (int n = 1; n <= N - 2; ++n) {
        // j_{-n-1} = m_{-n-1} + q_{-n-1} . del on Lambda^2(T)|_{-n-2}
        const HierarchyLevel& lsrc = h.level(n + 2);
        RatMatrix j_mat = d.m_mat(n + 1);
        if (h.dim(n + 1) > 0) {
            RatMatrix dq = h.level(n + 1).q * partial_wedge_matrix(h, d, n + 2);
            j_mat = j_mat + dq;
        }
        for (int r = 0; r < lsrc.q_kernel.dim(); ++r)
            if (!is_zero(j_mat * lsrc.q_kernel.basis.row(r)))
                throw Error("WellDefinednessFailure",
                            "j_{-" + std::to_string(n + 1) + "} does not vanish on Ker(q)");
        d.partial.push_back(j_mat * lsrc.q_sect);
    }
    return d;
}

inline void extend_top(const LieLeibnizTriple& t, const CyclicModule& rtheta,
                       DifferentialTower& d)
{
    d.partial0 = t.theta;
    d.partial_plus = RatMatrix(rtheta.dim(), t.g.dim);
    for (int a = 0; a < t.g.dim; ++a) {
        RatVec img = flatten(eta_basis(t, a, t.theta));
        auto c = rtheta.coords(img);
        if (!c)
            throw Error("OrbitNotClosed", "eta(a; Theta) escaped R_Theta");
        for (int r = 0; r < rtheta.dim(); ++r)
            d.partial_plus.at(r, a) = -(*c)[r];
    }
    // del_0 . del_{-1} = 0 (image of del_{-1} is I, inside Ker Theta)
    if (!d.partial.empty() && !(d.partial0 * d.partial[0]).is_zero())
        throw Error("DifferentialSquare", "Theta . del_{-1} != 0");
    // del_{+1} . del_0 = 0 (the quadratic constraint)
    if (!(d.partial_plus * d.partial0).is_zero())
        throw Error("DifferentialSquare", "eta(Theta x; Theta) != 0");
    for (size_t i = 0; i + 1 < d.partial.size(); ++i)
        if (!(d.partial[i] * d.partial[i + 1]).is_zero())
            throw Error("DifferentialSquare",
                        "del_{-" + std::to_string(i + 1) + "} . del_{-" + std::to_string(i + 2)
                            + "} != 0");
}

// h-equivariance of every del: rho(Theta x) intertwines each junction.
inline VerificationReport check_h_equivariance(const Hierarchy& h, const DifferentialTower& d)
{
    VerificationReport rep;
    Check& ck = rep.add("differential.h_equivariance");
    const LieLeibnizTriple& t = h.triple;
    for (int x = 0; x < t.dimV; ++x) {
        RatVec hx = t.theta * t.basis_vec(x);
        // del_0: ad(Theta x) . Theta = Theta . rho(Theta x)
        ck.require((t.g.ad_of(hx) * t.theta) == (t.theta * t.rho.act(hx)),
                   "del_0 with x = " + std::to_string(x));
        for (size_t i = 1; i < d.partial.size() + 1; ++i) {
            if (h.dim(int(i)) == 0 || h.dim(int(i) + 1) == 0) {
                ck.pass();
                continue;
            }
            RatMatrix lhs = h.action(int(i)).act(hx) * d.del(int(i));
            RatMatrix rhs = d.del(int(i)) * h.action(int(i) + 1).act(hx);
            ck.require(lhs == rhs,
                       "del_{-" + std::to_string(i) + "} with x = " + std::to_string(x));
        }
    }
    return rep;
}

// m . q + q . m = 0 on pure wedge triples (Lemma-style sweep).
inline VerificationReport check_m_q_anticommute(const Hierarchy& h, const DifferentialTower& d)
{
    VerificationReport rep;
    Check& ck = rep.add("differential.m_q_anticommute");
    auto qbil = [&](int j, const RatVec& x, int k, const RatVec& y) {
        return h.q_eval(j, x, k, y);
    };
    auto mbil = [&](int j, const RatVec& x, int k, const RatVec& y) {
        return m_eval(h, d, j, x, k, y);
    };
    for (int total = 3; total <= h.max_depth; ++total) {
        Wedge2Space w_same = h.level(total).wedge;
        Wedge2Space w_up = wedge2(h.tdims, total - 1);
        Wedge3Space w3 = wedge3(h.tdims, total);
        for (const auto& e : w3.elts) {
            RatVec x = h.unit(e.j, e.r), y = h.unit(e.k, e.s), z = h.unit(e.l, e.t);
            // m(q_ext(x^y^z))
            RatVec qe = unshuffle_extend_pure(w_same, qbil, e.j, x, e.k, y, e.l, z);
            RatVec lhs = d.m_mat(total - 1) * qe;
            // q(m_ext(x^y^z))
            RatVec me = unshuffle_extend_pure(w_up, mbil, e.j, x, e.k, y, e.l, z, 1);
            if (h.dim(total - 1) > 0)
                axpy(lhs, 1, h.level(total - 1).q * me);
            ck.require(is_zero(lhs), "total degree -" + std::to_string(total));
        }
        if (w3.elts.empty())
            ck.pass();
    }
    return rep;
}

// m . del + del . m = 0 on wedge basis pairs.
inline VerificationReport check_m_del_anticommute(const Hierarchy& h, const DifferentialTower& d)
{
    VerificationReport rep;
    Check& ck = rep.add("differential.m_del_anticommute");
    for (int total = 3; total <= h.max_depth; ++total) {
        const Wedge2Space& w = h.level(total).wedge;
        Wedge2Space w_up = wedge2(h.tdims, total - 1);
        if (w.dim == 0)
            ck.pass();
        for (int c = 0; c < w.dim; ++c) {
            auto e = w.basis_elt(c);
            RatVec x = h.unit(e.j, e.r), y = h.unit(e.k, e.s);
            RatVec dw = partial_on_wedge(h, d, w_up, e.j, x, e.k, y);
            RatVec lhs = d.m_mat(total - 2) * dw;
            RatVec mv = m_eval(h, d, e.j, x, e.k, y);
            if (h.dim(total - 1) > 0 && h.dim(total - 2) > 0)
                axpy(lhs, 1, d.del(total - 2) * mv);
            ck.require(is_zero(lhs),
                       "total degree -" + std::to_string(total) + " pair " + std::to_string(c));
        }
    }
    return rep;
}

// del . q = m + q . del on wedge basis pairs (the defining identity).
inline VerificationReport check_del_q_identity(const Hierarchy& h, const DifferentialTower& d)
{
    VerificationReport rep;
    Check& ck = rep.add("differential.del_q_identity");
    for (int total = 2; total <= h.max_depth; ++total) {
        const Wedge2Space& w = h.level(total).wedge;
        Wedge2Space w_up = wedge2(h.tdims, total - 1);
        if (w.dim == 0)
            ck.pass();
        for (int c = 0; c < w.dim; ++c) {
            auto e = w.basis_elt(c);
            RatVec x = h.unit(e.j, e.r), y = h.unit(e.k, e.s);
            RatVec lhs(h.dim(total - 1));
            if (h.dim(total) > 0 && h.dim(total - 1) > 0)
                lhs = d.del(total - 1) * h.q_eval(e.j, x, e.k, y);
            RatVec rhs = m_eval(h, d, e.j, x, e.k, y);
            if (total >= 3 && h.dim(total - 1) > 0) {
                RatVec dw = partial_on_wedge(h, d, w_up, e.j, x, e.k, y);
                axpy(rhs, 1, h.level(total - 1).q * dw);
            }
            axpy(lhs, -1, rhs);
            ck.require(is_zero(lhs),
                       "total degree -" + std::to_string(total) + " pair " + std::to_string(c));
        }
    }
    return rep;
}

// R_{-i} orbits and the quotient maps mu_{-i}: Theta_w -> w . del_{-i},
// certified on every word visited during the R_Theta closure.
inline MuFamily build_mu(const LieLeibnizTriple& t, const Hierarchy& h,
                         const DifferentialTower& d, const CyclicModule& rtheta)
{
    MuFamily fam;
    int N = h.max_depth;

    // eta operators on flattened Hom(V, g), to replay R_Theta words
    std::vector<RatMatrix> eta_ops =
        detail::hom_action(t.g.ad, t.rho.mats, t.g.dim, t.dimV);

    auto build_level = [&](const RatMatrix& del, const std::vector<RatMatrix>& out_act,
                           const std::vector<RatMatrix>& in_act, const std::string& tag) {
        MuLevel lvl;
        std::vector<RatMatrix> ops =
            detail::hom_action(out_act, in_act, del.rows(), del.cols());
        RatVec seed = flatten(del);
        lvl.R = orbit_closure(seed, ops);
        lvl.mu = RatMatrix(lvl.R.dim(), rtheta.dim());
        std::vector<RatVec> mu_of_word; // images of the retained R_Theta words
        for (int wi = 0; wi < rtheta.dim(); ++wi) {
            RatVec img = detail::apply_word(rtheta.words[wi], seed, ops);
            mu_of_word.push_back(img);
            auto c = lvl.R.coords(img);
            if (!c)
                throw Error("MuIllDefined", tag + ": image of a word escaped R");
            for (int r = 0; r < lvl.R.dim(); ++r)
                lvl.mu.at(r, wi) = (*c)[r];
        }
        // well-definedness: every R_Theta relation annihilates the images
        for (const auto& w : rtheta.visited_words) {
            RatVec tv = detail::apply_word(w, flatten(t.theta), eta_ops);
            auto c = rtheta.coords(tv);
            if (!c)
                throw Error("MuIllDefined", tag + ": visited word escaped R_Theta");
            RatVec expect(seed.size());
            for (int r = 0; r < rtheta.dim(); ++r)
                if ((*c)[r] != 0)
                    axpy(expect, (*c)[r], mu_of_word[r]);
            RatVec actual = detail::apply_word(w, seed, ops);
            axpy(actual, -1, expect);
            if (!is_zero(actual)) {
                std::string ws;
                for (int a : w)
                    ws += (ws.empty() ? "" : ",") + std::to_string(a);
                throw Error("MuIllDefined", tag + ": relation at word (" + ws + ")");
            }
        }
        if (rref(lvl.mu).rank != lvl.R.dim())
            throw Error("MuIllDefined", tag + ": mu is not surjective");
        for (size_t a = 0; a < ops.size(); ++a)
            if (!(lvl.mu * rtheta.action[a] == lvl.R.action[a] * lvl.mu))
                throw Error("MuIllDefined", tag + ": mu is not g-equivariant");
        return lvl;
    };

    for (int i = 1; i <= N - 1; ++i) {
        std::vector<RatMatrix> out_act =
            i == 1 ? t.rho.mats : h.action(i).mats; // codomain T_{-i}
        std::vector<RatMatrix> in_act = h.action(i + 1).mats;
        MuLevel lvl = build_level(d.del(i), out_act, in_act, "mu_{-" + std::to_string(i) + "}");
        // mu(Theta) = del as matrices; Theta is the first retained word
        RatVec rebuilt(size_t(d.del(i).rows()) * d.del(i).cols());
        if (rtheta.dim() > 0)
            for (int r = 0; r < lvl.R.dim(); ++r)
                if (lvl.mu.at(r, 0) != 0)
                    axpy(rebuilt, lvl.mu.at(r, 0), lvl.R.gens[r]);
        if (!(rebuilt == flatten(d.del(i))))
            throw Error("MuIllDefined", "mu_{-" + std::to_string(i) + "}(Theta) != del");
        fam.neg.push_back(std::move(lvl));
    }
    fam.plus = build_level(d.partial_plus, rtheta.action, t.g.ad, "mu_{+1}");
    return fam;
}

} // namespace thx
