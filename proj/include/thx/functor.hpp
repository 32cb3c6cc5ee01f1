#pragma once

#include "thx/dgla.hpp"

namespace thx {

// ---------------------------------------------------------------------------
// Morphisms of Lie-Leibniz triples and the induced dgLa morphisms between
// tensor hierarchies of stringent triples.
// ---------------------------------------------------------------------------

struct TripleMorphism {
    RatMatrix phi; // g -> g'
    RatMatrix chi; // V -> V'
};

inline VerificationReport validate_morphism(const LieLeibnizTriple& src,
                                            const LieLeibnizTriple& dst,
                                            const TripleMorphism& m)
{
    VerificationReport rep;
    if (m.phi.rows() != dst.g.dim || m.phi.cols() != src.g.dim || m.chi.rows() != dst.dimV
        || m.chi.cols() != src.dimV)
        throw Error("DimensionMismatch", "morphism shapes do not match the triples");

    Check& lie = rep.add("morphism.phi_lie_morphism");
    for (int a = 0; a < src.g.dim; ++a)
        for (int b = 0; b < src.g.dim; ++b) {
            RatVec ea(src.g.dim), eb(src.g.dim);
            ea[a] = 1;
            eb[b] = 1;
            RatVec l = m.phi * src.g.bracket(ea, eb);
            RatVec r = dst.g.bracket(m.phi * ea, m.phi * eb);
            axpy(l, -1, r);
            lie.require(is_zero(l), "(" + std::to_string(a) + "," + std::to_string(b) + ")");
        }

    Check& leib = rep.add("morphism.chi_leibniz_morphism");
    for (int i = 0; i < src.dimV; ++i)
        for (int j = 0; j < src.dimV; ++j) {
            RatVec l = m.chi * src.product(src.basis_vec(i), src.basis_vec(j));
            RatVec r = dst.product(m.chi * src.basis_vec(i), m.chi * src.basis_vec(j));
            axpy(l, -1, r);
            leib.require(is_zero(l), "(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }

    Check& theta = rep.add("morphism.theta_square");
    {
        RatMatrix l = dst.theta * m.chi;
        RatMatrix r = m.phi * src.theta;
        theta.require(l == r, "Theta' chi != phi Theta");
    }

    Check& act = rep.add("morphism.action_square");
    for (int a = 0; a < src.g.dim; ++a) {
        RatVec ea(src.g.dim);
        ea[a] = 1;
        RatMatrix l = dst.rho.act(m.phi * ea) * m.chi;
        RatMatrix r = m.chi * src.rho.mats[a];
        act.require(l == r, "generator " + std::to_string(a));
    }
    return rep;
}

struct DglaMorphism {
    int N = 0;
    std::vector<RatMatrix> comp; // comp[d + N], degrees -N..+1

    const RatMatrix& at(int d) const { return comp.at(size_t(d + N)); }
    RatMatrix& at(int d) { return comp.at(size_t(d + N)); }
};

namespace detail {

// chi^{tensor p} on V^{tensor p} coordinates.
inline RatVec tensor_power_apply(const RatMatrix& chi, int p, const RatVec& v)
{
    int n = chi.cols(), np = chi.rows();
    RatVec out(ipow(np, p));
    for (long idx = 0; idx < long(v.size()); ++idx) {
        if (v[idx] == 0)
            continue;
        // expand the image of the basis word letter by letter
        std::vector<std::pair<long, Rat>> partial = {{0, v[idx]}};
        long rest = idx;
        std::vector<int> word(static_cast<size_t>(p), 0);
        for (int pos = p - 1; pos >= 0; --pos) {
            word[size_t(pos)] = int(rest % n);
            rest /= n;
        }
        for (int pos = 0; pos < p; ++pos) {
            std::vector<std::pair<long, Rat>> next;
            for (const auto& [base, coeff] : partial)
                for (int u = 0; u < np; ++u) {
                    const Rat& c = chi.at(u, word[size_t(pos)]);
                    if (c != 0)
                        next.push_back({base * np + u, coeff * c});
                }
            partial = std::move(next);
        }
        for (const auto& [target, coeff] : partial)
            out[size_t(target)] += coeff;
    }
    return out;
}

} // namespace detail

// Induces the dgLa morphism between the tensor hierarchies of two stringent
// triples: chi (.) chi on T_{-2}, wedge-level maps pushed through the
// quotients below, and the word prescription Theta_w -> Theta'_{phi(w)} at
// degree +1.
inline DglaMorphism induce(const Pipeline& src, const Pipeline& dst, const TripleMorphism& m)
{
    if (!src.triple.flags.is_stringent || !dst.triple.flags.is_stringent)
        throw Error("KernelNotPreserved",
                    "induce requires stringent source and target (chi.chi(K) in K' is not "
                    "granted otherwise)");
    VerificationReport val = validate_morphism(src.triple, dst.triple, m);
    if (!val.all_ok()) {
        for (const auto& ck : val.checks)
            if (!ck.ok())
                throw Error("InvalidMorphism", ck.name + " at " + ck.witness);
    }
    if (src.hierarchy.max_depth != dst.hierarchy.max_depth)
        throw Error("DimensionMismatch", "source and target built to different depths");

    int N = src.hierarchy.max_depth;
    DglaMorphism out;
    out.N = N;
    out.comp.assign(size_t(N) + 2, RatMatrix());
    out.at(0) = m.phi;
    out.at(-1) = m.chi;

    // quotient levels, inductively through the wedge maps
    for (int i = 2; i <= N; ++i) {
        const HierarchyLevel& ls = src.hierarchy.level(i);
        const HierarchyLevel& ld = dst.hierarchy.level(i);
        if (i == 2) {
            // phi_{-2} from chi (.) chi; the kernel inclusion is the
            // non-stringent obstruction, so it is certified here
            RatMatrix f2map(ld.T.dim(), ls.T.dim());
            for (int s = 0; s < ls.K.dim(); ++s) {
                RatVec amb = src.hierarchy.free.level(2).to_ambient(ls.K.basis.row(s));
                RatVec img = detail::tensor_power_apply(m.chi, 2, amb);
                auto fc = dst.hierarchy.free.level(2).to_coords(img);
                if (!fc || !ld.K.contains(*fc))
                    throw Error("KernelNotPreserved",
                                "chi.chi(K_{-2}) is not inside K'_{-2} (kernel generator "
                                    + std::to_string(s) + ")");
            }
            for (int c = 0; c < ls.T.dim(); ++c) {
                RatVec amb = src.hierarchy.lift(2, src.hierarchy.unit(2, c));
                RatVec img = detail::tensor_power_apply(m.chi, 2, amb);
                f2map.set_col(c, dst.hierarchy.proj_ambient(2, img));
            }
            out.at(-2) = f2map;
            continue;
        }
        // wedge-level map over Lambda^2(T)|_{-i}
        RatMatrix wmap(ld.wedge.dim, ls.wedge.dim);
        for (int c = 0; c < ls.wedge.dim; ++c) {
            auto e = ls.wedge.basis_elt(c);
            RatVec fx = out.at(-e.j) * src.hierarchy.unit(e.j, e.r);
            RatVec fy = out.at(-e.k) * src.hierarchy.unit(e.k, e.s);
            wmap.set_col(c, ld.wedge.coords_pure(e.j, fx, e.k, fy));
        }
        RatMatrix a = ld.q * wmap;
        for (int r = 0; r < ls.q_kernel.dim(); ++r)
            if (!is_zero(a * ls.q_kernel.basis.row(r)))
                throw Error("KernelNotPreserved",
                            "wedge map does not preserve Ker(q) at degree -" + std::to_string(i));
        out.at(-i) = a * ls.q_sect;
    }

    // degree +1: Theta_w -> Theta'_{phi(w)}, certified on all visited words
    auto push_word = [&](const std::vector<int>& w) {
        RatMatrix img = dst.triple.theta;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            RatVec b = m.phi.col(*it);
            img = eta(dst.triple, b, img);
        }
        return img;
    };
    out.at(1) = RatMatrix(dst.rtheta.dim(), src.rtheta.dim());
    std::vector<RatVec> image_of_word;
    for (int w = 0; w < src.rtheta.dim(); ++w) {
        RatVec img = flatten(push_word(src.rtheta.words[size_t(w)]));
        image_of_word.push_back(img);
        auto c = dst.rtheta.coords(img);
        if (!c)
            throw Error("OrbitNotClosed", "Theta'_{phi(w)} escaped R_Theta'");
        for (int r = 0; r < dst.rtheta.dim(); ++r)
            out.at(1).at(r, w) = (*c)[r];
    }
    for (const auto& w : src.rtheta.visited_words) {
        RatVec tv = detail::apply_word(
            w, flatten(src.triple.theta),
            detail::hom_action(src.triple.g.ad, src.triple.rho.mats, src.triple.g.dim,
                               src.triple.dimV));
        auto c = src.rtheta.coords(tv);
        if (!c)
            throw Error("OrbitNotClosed", "visited word escaped R_Theta");
        RatVec expect(size_t(dst.triple.g.dim) * dst.triple.dimV);
        for (int r = 0; r < src.rtheta.dim(); ++r)
            if ((*c)[r] != 0)
                axpy(expect, (*c)[r], image_of_word[size_t(r)]);
        RatVec actual = flatten(push_word(w));
        axpy(actual, -1, expect);
        if (!is_zero(actual)) {
            std::string ws;
            for (int a : w)
                ws += (ws.empty() ? "" : ",") + std::to_string(a);
            throw Error("Phi1IllDefined", "orbit relation mismatch at word (" + ws + ")");
        }
    }
    return out;
}

// Commutation of the induced morphism with the differentials and brackets,
// within truncation.
inline VerificationReport check_morphism_squares(const Pipeline& src, const Pipeline& dst,
                                                 const DglaMorphism& f)
{
    VerificationReport rep;
    const DgLa& a = src.dgla;
    const DgLa& b = dst.dgla;
    Check& dsq = rep.add("induced.differential_squares");
    for (int d = -a.N; d <= 0; ++d) {
        RatMatrix lhs = b.diff[size_t(b.didx(d))] * f.at(d);
        RatMatrix rhs = f.at(d + 1) * a.diff[size_t(a.didx(d))];
        dsq.require(lhs == rhs, "degree " + std::to_string(d));
    }
    Check& bsq = rep.add("induced.bracket_squares");
    for (int d1 = -a.N; d1 <= 1; ++d1)
        for (int d2 = -a.N; d2 <= 1; ++d2) {
            int dt = d1 + d2;
            if (dt < -a.N || dt > 1)
                continue;
            for (int i1 = 0; i1 < a.dim_at(d1); ++i1)
                for (int i2 = 0; i2 < a.dim_at(d2); ++i2) {
                    RatVec lhs = f.at(dt) * a.bracket(d1, i1, d2, i2);
                    RatVec fx = f.at(d1).col(i1), fy = f.at(d2).col(i2);
                    RatVec rhs(size_t(b.dim_at(dt)));
                    const DgLa::Bideg& tbl = b.table[size_t(b.didx(d1))][size_t(b.didx(d2))];
                    for (size_t u = 0; u < fx.size(); ++u) {
                        if (fx[u] == 0)
                            continue;
                        for (size_t v = 0; v < fy.size(); ++v)
                            if (fy[v] != 0)
                                axpy(rhs, fx[u] * fy[v], tbl.val[u][v]);
                    }
                    axpy(lhs, -1, rhs);
                    bsq.require(is_zero(lhs), "(" + std::to_string(d1) + "," + std::to_string(i1)
                                                  + ")x(" + std::to_string(d2) + ","
                                                  + std::to_string(i2) + ")");
                }
        }
    return rep;
}

inline DglaMorphism identity_morphism(const Pipeline& p)
{
    DglaMorphism f;
    f.N = p.dgla.N;
    for (int d = -f.N; d <= 1; ++d)
        f.comp.push_back(RatMatrix::identity(p.dgla.dim_at(d)));
    return f;
}

inline DglaMorphism compose(const DglaMorphism& g, const DglaMorphism& f)
{
    if (g.N != f.N)
        throw Error("DimensionMismatch", "composing morphisms of different depths");
    DglaMorphism out;
    out.N = f.N;
    for (int d = -f.N; d <= 1; ++d)
        out.comp.push_back(g.at(d) * f.at(d));
    return out;
}

// Functor laws on a composable pair A --m1--> B --m2--> C: identities,
// composition, and the degree 0 / -1 restriction identities.
inline VerificationReport functor_laws(const Pipeline& A, const Pipeline& B, const Pipeline& C,
                                       const TripleMorphism& m1, const TripleMorphism& m2)
{
    VerificationReport rep;
    DglaMorphism f1 = induce(A, B, m1);
    DglaMorphism f2 = induce(B, C, m2);
    TripleMorphism m21{m2.phi * m1.phi, m2.chi * m1.chi};
    DglaMorphism f21 = induce(A, C, m21);

    Check& idlaw = rep.add("functor.identity");
    {
        TripleMorphism idm{RatMatrix::identity(A.triple.g.dim),
                           RatMatrix::identity(A.triple.dimV)};
        DglaMorphism fid = induce(A, A, idm);
        DglaMorphism expected = identity_morphism(A);
        for (int d = -fid.N; d <= 1; ++d)
            idlaw.require(fid.at(d) == expected.at(d), "degree " + std::to_string(d));
    }

    Check& comp = rep.add("functor.composition");
    DglaMorphism f2f1 = compose(f2, f1);
    for (int d = -f1.N; d <= 1; ++d)
        comp.require(f21.at(d) == f2f1.at(d), "degree " + std::to_string(d));

    Check& restr = rep.add("functor.restriction");
    restr.require(f1.at(0) == m1.phi, "degree 0 of m1");
    restr.require(f1.at(-1) == m1.chi, "degree -1 of m1");
    restr.require(f2.at(0) == m2.phi, "degree 0 of m2");
    restr.require(f2.at(-1) == m2.chi, "degree -1 of m2");

    rep.append(check_morphism_squares(A, B, f1));
    return rep;
}

} // namespace thx
