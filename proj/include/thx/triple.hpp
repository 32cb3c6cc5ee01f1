#pragma once

#include "thx/linalg.hpp"
#include "thx/report.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace thx {

inline std::string vec_witness(const RatVec& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

// Finite-dimensional Lie algebra given by structure constants,
// c(i,j,k) = coefficient of e_k in [e_i, e_j]. Stored as the adjoint
// matrices ad[i] with ad[i](k,j) = c(i,j,k).
struct LieAlgebra {
    int dim = 0;
    std::vector<RatMatrix> ad;

    LieAlgebra() = default;
    explicit LieAlgebra(int n) : dim(n), ad(n, RatMatrix(n, n)) {}

    Rat c(int i, int j, int k) const { return ad[i].at(k, j); }
    void set_c(int i, int j, int k, const Rat& v) { ad[i].at(k, j) = v; }

    RatVec bracket(const RatVec& a, const RatVec& b) const
    {
        RatVec r(dim);
        for (int i = 0; i < dim; ++i)
            if (a[i] != 0)
                axpy(r, a[i], ad[i] * b);
        return r;
    }

    RatMatrix ad_of(const RatVec& a) const
    {
        RatMatrix m(dim, dim);
        for (int i = 0; i < dim; ++i)
            if (a[i] != 0)
                m = m + ad[i] * a[i];
        return m;
    }
};

// Representation of g on a vector space, one matrix per g basis element.
struct GAction {
    int target_dim = 0;
    std::vector<RatMatrix> mats;

    RatMatrix act(const RatVec& a) const
    {
        RatMatrix m(target_dim, target_dim);
        for (size_t i = 0; i < mats.size(); ++i)
            if (a[i] != 0)
                m = m + mats[i] * a[i];
        return m;
    }
};

inline VerificationReport validate_lie(const LieAlgebra& g)
{
    VerificationReport rep;
    Check& anti = rep.add("lie.antisymmetry");
    for (int i = 0; i < g.dim; ++i)
        for (int j = i; j < g.dim; ++j) {
            bool ok = true;
            for (int k = 0; k < g.dim; ++k)
                if (g.c(i, j, k) != -g.c(j, i, k))
                    ok = false;
            std::ostringstream w;
            w << "(" << i << "," << j << ")";
            anti.require(ok, w.str());
        }
    Check& jac = rep.add("lie.jacobi");
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j)
            for (int k = j + 1; k < g.dim; ++k) {
                RatVec ei(g.dim), ej(g.dim), ek(g.dim);
                ei[i] = 1;
                ej[j] = 1;
                ek[k] = 1;
                RatVec s = g.bracket(ei, g.bracket(ej, ek));
                axpy(s, 1, g.bracket(ej, g.bracket(ek, ei)));
                axpy(s, 1, g.bracket(ek, g.bracket(ei, ej)));
                std::ostringstream w;
                w << "(" << i << "," << j << "," << k << ") -> " << vec_witness(s);
                jac.require(is_zero(s), w.str());
            }
    return rep;
}

inline VerificationReport validate_action(const LieAlgebra& g, const GAction& rho)
{
    VerificationReport rep;
    Check& morph = rep.add("action.lie_morphism");
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j) {
            RatVec ei(g.dim), ej(g.dim);
            ei[i] = 1;
            ej[j] = 1;
            RatMatrix lhs = rho.act(g.bracket(ei, ej));
            RatMatrix rhs = rho.mats[i] * rho.mats[j] - rho.mats[j] * rho.mats[i];
            std::ostringstream w;
            w << "(" << i << "," << j << ")";
            morph.require(lhs == rhs, w.str());
        }
    return rep;
}

struct TripleFlags {
    bool is_lie_V = false;
    bool is_strict = false;
    bool is_semistrict = false;
    bool is_stringent = false;
    bool is_crossed_module = false;
};

// Index scheme for S^2(V): pairs (r,s) with r <= s, lexicographic.
struct Sym2Index {
    int n = 0;

    explicit Sym2Index(int n_) : n(n_) {}
    int dim() const { return n * (n + 1) / 2; }

    int idx(int r, int s) const
    {
        if (r > s)
            std::swap(r, s);
        return r * n - r * (r - 1) / 2 + (s - r);
    }

    std::pair<int, int> unidx(int k) const
    {
        for (int r = 0; r < n; ++r) {
            int len = n - r;
            if (k < len)
                return {r, r + k};
            k -= len;
        }
        throw Error("IndexError", "Sym2Index::unidx");
    }
};

struct LieLeibnizTriple {
    LieAlgebra g;
    int dimV = 0;
    GAction rho;      // action of g on V
    RatMatrix theta;  // dim g x dimV, the embedding tensor V -> g
    std::vector<RatMatrix> leib; // leib[i] = matrix of e_i o (-), derived
    TripleFlags flags;
    std::string name;

    Rat leib_c(int i, int j, int k) const { return leib[i].at(k, j); }

    RatVec product(const RatVec& x, const RatVec& y) const
    {
        return rho.act(theta * x) * y;
    }

    RatVec sym(const RatVec& x, const RatVec& y) const
    {
        RatVec r = product(x, y);
        axpy(r, 1, product(y, x));
        for (auto& v : r)
            v /= 2;
        return r;
    }

    RatVec basis_vec(int i) const
    {
        RatVec v(dimV);
        v[i] = 1;
        return v;
    }

    // Matrix of the symmetric bracket S^2(V) -> V in the (r<=s) basis.
    RatMatrix sym_bracket_matrix() const
    {
        Sym2Index s2(dimV);
        RatMatrix m(dimV, s2.dim());
        for (int k = 0; k < s2.dim(); ++k) {
            auto [r, s] = s2.unidx(k);
            m.set_col(k, sym(basis_vec(r), basis_vec(s)));
        }
        return m;
    }

    // Diagonal action of g on S^2(V) in the (r<=s) basis.
    GAction sym2_action() const
    {
        Sym2Index s2(dimV);
        GAction act;
        act.target_dim = s2.dim();
        for (int a = 0; a < g.dim; ++a) {
            RatMatrix m(s2.dim(), s2.dim());
            for (int k = 0; k < s2.dim(); ++k) {
                auto [r, s] = s2.unidx(k);
                for (int u = 0; u < dimV; ++u) {
                    if (rho.mats[a].at(u, r) != 0)
                        m.at(s2.idx(u, s), k) += rho.mats[a].at(u, r);
                    if (rho.mats[a].at(u, s) != 0)
                        m.at(s2.idx(r, u), k) += rho.mats[a].at(u, s);
                }
            }
            act.mats.push_back(std::move(m));
        }
        return act;
    }
};

// eta(a; xi)(x) = [a, xi(x)] - xi(a.x), the g-action on Hom(V, g).
inline RatMatrix eta(const LieLeibnizTriple& t, const RatVec& a, const RatMatrix& xi)
{
    return t.g.ad_of(a) * xi - xi * t.rho.act(a);
}

inline RatMatrix eta_basis(const LieLeibnizTriple& t, int a, const RatMatrix& xi)
{
    return t.g.ad[a] * xi - xi * t.rho.mats[a];
}

// Largest subspace K of w with act(a) K inside K for every basis element a.
// Fixpoint of W -> W cap preimage(act(a), W); the dimension strictly drops
// until it stabilizes.
inline Subspace largest_invariant_subspace(const GAction& act, const Subspace& w)
{
    Subspace cur = w;
    for (int iter = 0; iter <= w.ambient_dim + 1; ++iter) {
        Subspace next = cur;
        for (const auto& m : act.mats)
            next = intersect(next, preimage(m, cur));
        if (next == cur)
            return cur;
        cur = next;
    }
    throw Error("FixpointDiverged", "largest_invariant_subspace did not stabilize");
}

// Cyclic g-module generated by one vector in a Hom space, with the words
// that produced each retained basis vector and the action in orbit
// coordinates.
struct CyclicModule {
    int ambient_dim = 0;
    Subspace orbit_basis;                      // canonical span
    std::vector<std::vector<int>> words;       // retained words, BFS order
    std::vector<RatVec> gens;                  // vectors of the retained words
    std::vector<RatMatrix> action;             // g-action on gen coordinates
    std::vector<std::vector<int>> visited_words; // every word examined during closure

    int dim() const { return int(gens.size()); }

    std::optional<RatVec> coords(const RatVec& v) const
    {
        if (gens.empty())
            return is_zero(v) ? std::optional<RatVec>(RatVec{}) : std::nullopt;
        RatMatrix A(ambient_dim, dim());
        for (int j = 0; j < dim(); ++j)
            A.set_col(j, gens[j]);
        return solve(A, v);
    }
};

// Breadth-first orbit closure of seed under the given linear operators,
// words ordered by (length, lex). Words act on the left: word (a1...am)
// means acts[a1] applied to the vector of (a2...am).
inline CyclicModule orbit_closure(const RatVec& seed, const std::vector<RatMatrix>& acts)
{
    int ambient = int(seed.size());
    int cap = ambient + 1;
    CyclicModule cm;
    cm.ambient_dim = ambient;
    IncrementalSpan span(ambient);
    cm.visited_words.push_back({});
    if (span.add(seed)) {
        cm.words.push_back({});
        cm.gens.push_back(seed);
    }
    std::vector<std::pair<std::vector<int>, RatVec>> frontier;
    if (!cm.gens.empty())
        frontier.push_back({{}, seed});
    for (int len = 1; !frontier.empty(); ++len) {
        if (len > cap)
            throw Error("OrbitCapExceeded", "orbit closure exceeded the dimension bound");
        std::vector<std::pair<std::vector<int>, RatVec>> next;
        for (size_t a = 0; a < acts.size(); ++a)
            for (const auto& [w, v] : frontier) {
                RatVec nv = acts[a] * v;
                std::vector<int> nw;
                nw.push_back(int(a));
                nw.insert(nw.end(), w.begin(), w.end());
                cm.visited_words.push_back(nw);
                if (!span.add(nv))
                    continue;
                cm.words.push_back(nw);
                cm.gens.push_back(nv);
                next.push_back({std::move(nw), std::move(nv)});
            }
        frontier = std::move(next);
    }
    cm.orbit_basis = span.to_subspace();
    for (const auto& m : acts) {
        RatMatrix am(cm.dim(), cm.dim());
        for (int j = 0; j < cm.dim(); ++j) {
            auto c = cm.coords(m * cm.gens[j]);
            if (!c)
                throw Error("OrbitNotClosed", "action leaves the orbit span");
            am.set_col(j, *c);
        }
        cm.action.push_back(std::move(am));
    }
    return cm;
}

inline RatVec flatten(const RatMatrix& m)
{
    RatVec v;
    v.reserve(size_t(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            v.push_back(m.at(i, j));
    return v;
}

inline RatMatrix unflatten(const RatVec& v, int rows, int cols)
{
    RatMatrix m(rows, cols);
    size_t k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = v[k++];
    return m;
}

// Orbit of Theta in Hom(V, g) under eta.
inline CyclicModule r_theta(const LieLeibnizTriple& t)
{
    std::vector<RatMatrix> acts;
    for (int a = 0; a < t.g.dim; ++a) {
        // matrix of eta(e_a; -) on flattened dim g x dimV matrices
        int hr = t.g.dim, hc = t.dimV;
        RatMatrix op(hr * hc, hr * hc);
        for (int i = 0; i < hr; ++i)
            for (int j = 0; j < hc; ++j) {
                RatMatrix unit(hr, hc);
                unit.at(i, j) = 1;
                RatMatrix img = t.g.ad[a] * unit - unit * t.rho.mats[a];
                op.set_col(i * hc + j, flatten(img));
            }
        acts.push_back(std::move(op));
    }
    return orbit_closure(flatten(t.theta), acts);
}

inline std::pair<std::vector<RatMatrix>, std::vector<RatMatrix>>
split_product(const LieLeibnizTriple& t)
{
    std::vector<RatMatrix> anti(t.dimV, RatMatrix(t.dimV, t.dimV));
    std::vector<RatMatrix> sym(t.dimV, RatMatrix(t.dimV, t.dimV));
    for (int i = 0; i < t.dimV; ++i)
        for (int j = 0; j < t.dimV; ++j)
            for (int k = 0; k < t.dimV; ++k) {
                Rat ij = t.leib_c(i, j, k), ji = t.leib_c(j, i, k);
                anti[i].at(k, j) = (ij - ji) / 2;
                sym[i].at(k, j) = (ij + ji) / 2;
            }
    return {anti, sym};
}

inline Subspace ideal_of_squares(const LieLeibnizTriple& t)
{
    return image(t.sym_bracket_matrix());
}

inline Subspace center(const LieLeibnizTriple& t)
{
    // x in Z iff x o e_j = 0 for all j; stack the maps x -> x o e_j
    RatMatrix m(t.dimV * t.dimV, t.dimV);
    for (int j = 0; j < t.dimV; ++j)
        for (int k = 0; k < t.dimV; ++k)
            for (int i = 0; i < t.dimV; ++i)
                m.at(j * t.dimV + k, i) = t.leib_c(i, j, k);
    return kernel(m);
}

inline Subspace ker_theta(const LieLeibnizTriple& t)
{
    return kernel(t.theta);
}

inline Subspace ker_sym_bracket(const LieLeibnizTriple& t)
{
    return kernel(t.sym_bracket_matrix());
}

inline void classify(LieLeibnizTriple& t)
{
    TripleFlags f;

    f.is_lie_V = true;
    for (int i = 0; i < t.dimV && f.is_lie_V; ++i)
        for (int j = i; j < t.dimV && f.is_lie_V; ++j)
            if (!is_zero(t.sym(t.basis_vec(i), t.basis_vec(j))))
                f.is_lie_V = false;

    f.is_strict = true;
    for (int a = 0; a < t.g.dim && f.is_strict; ++a)
        if (!eta_basis(t, a, t.theta).is_zero())
            f.is_strict = false;

    // rho(a) is a derivation of the product for every basis a
    f.is_semistrict = true;
    for (int a = 0; a < t.g.dim && f.is_semistrict; ++a)
        for (int i = 0; i < t.dimV && f.is_semistrict; ++i)
            for (int j = 0; j < t.dimV; ++j) {
                RatVec x = t.basis_vec(i), y = t.basis_vec(j);
                RatVec lhs = t.rho.mats[a] * t.product(x, y);
                RatVec rhs = t.product(t.rho.mats[a] * x, y);
                axpy(rhs, 1, t.product(x, t.rho.mats[a] * y));
                axpy(lhs, -1, rhs);
                if (!is_zero(lhs)) {
                    f.is_semistrict = false;
                    break;
                }
            }

    Subspace ks = ker_sym_bracket(t);
    Subspace k = largest_invariant_subspace(t.sym2_action(), ks);
    f.is_stringent = (k == ks);

    f.is_crossed_module = f.is_strict && f.is_lie_V;

    if (f.is_strict && !f.is_semistrict)
        throw Error("ClassificationInconsistency", "strict triple failed the semi-strictness check");

    // g-equivariance of {.,.} forces stringency; semi-strictness forces that
    // equivariance, so this also certifies semistrict => stringent.
    bool sym_equivariant = true;
    GAction s2 = t.sym2_action();
    RatMatrix br = t.sym_bracket_matrix();
    for (int a = 0; a < t.g.dim && sym_equivariant; ++a)
        if (!(t.rho.mats[a] * br - br * s2.mats[a]).is_zero())
            sym_equivariant = false;
    if (f.is_semistrict && !sym_equivariant)
        throw Error("ClassificationInconsistency", "semi-strict triple with non-equivariant symmetric bracket");
    if (sym_equivariant && !f.is_stringent)
        throw Error("ClassificationInconsistency", "equivariant symmetric bracket but non-stringent");

    t.flags = f;
}

// Builds the triple from (g, rho, theta): derives the product from the
// linear constraint, verifies the quadratic constraint and the Leibniz
// identity, checks the central inclusions and fills the flags.
// An input product, when given, is only compared against the derived one.
inline LieLeibnizTriple derive_triple(const LieAlgebra& g, const GAction& rho,
                                      const RatMatrix& theta,
                                      const std::vector<RatMatrix>* leib_input = nullptr,
                                      std::string name = {})
{
    if (rho.target_dim != theta.cols() || theta.rows() != g.dim || int(rho.mats.size()) != g.dim)
        throw Error("DimensionMismatch", "derive_triple: shapes");

    VerificationReport lie_rep = validate_lie(g);
    if (!lie_rep.all_ok())
        throw Error("LieAxiomViolation", lie_rep.checks[0].ok() ? lie_rep.checks[1].witness
                                                                : lie_rep.checks[0].witness);
    VerificationReport act_rep = validate_action(g, rho);
    if (!act_rep.all_ok())
        throw Error("ActionNotMorphism", act_rep.checks[0].witness);

    LieLeibnizTriple t;
    t.g = g;
    t.dimV = rho.target_dim;
    t.rho = rho;
    t.theta = theta;
    t.name = std::move(name);

    for (int i = 0; i < t.dimV; ++i)
        t.leib.push_back(rho.act(theta * t.basis_vec(i)));

    if (leib_input) {
        if (leib_input->size() != t.leib.size())
            throw Error("LeibnizMismatch", "input product has wrong shape");
        for (size_t i = 0; i < t.leib.size(); ++i)
            if (!((*leib_input)[i] == t.leib[i]))
                throw Error("LeibnizMismatch",
                            "input product differs from the derived one at left factor "
                                + std::to_string(i));
    }

    for (int i = 0; i < t.dimV; ++i)
        for (int j = 0; j < t.dimV; ++j) {
            RatVec lhs = theta * t.product(t.basis_vec(i), t.basis_vec(j));
            RatVec rhs = g.bracket(theta * t.basis_vec(i), theta * t.basis_vec(j));
            axpy(lhs, -1, rhs);
            if (!is_zero(lhs))
                throw Error("QuadraticConstraintViolation",
                            "(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }

    // Leibniz identity: implied by the constraints, asserted as a cross-check.
    for (int i = 0; i < t.dimV; ++i)
        for (int j = 0; j < t.dimV; ++j)
            for (int k = 0; k < t.dimV; ++k) {
                RatVec x = t.basis_vec(i), y = t.basis_vec(j), z = t.basis_vec(k);
                RatVec lhs = t.product(x, t.product(y, z));
                axpy(lhs, -1, t.product(t.product(x, y), z));
                axpy(lhs, -1, t.product(y, t.product(x, z)));
                if (!is_zero(lhs))
                    throw Error("LeibnizIdentityViolation",
                                "(" + std::to_string(i) + "," + std::to_string(j) + ","
                                    + std::to_string(k) + ")");
            }

    Subspace i_sq = ideal_of_squares(t);
    Subspace kt = ker_theta(t);
    Subspace z = center(t);
    if (!kt.contains(i_sq) || !z.contains(kt))
        throw Error("InclusionViolation", "I subset Ker(Theta) subset Z failed");

    classify(t);
    return t;
}

} // namespace thx
