#include "thx/catalog.hpp"
#include "thx/hierarchy.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace thx;

namespace {

RatMatrix mat(std::vector<std::vector<int>> rows)
{
    RatMatrix m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = rows[i][j];
    return m;
}

} // namespace

TEST(BuildT2, HeisenbergHandValues)
{
    Hierarchy h = build_hierarchy(catalog_triple("heisenberg_leibniz"), 2);
    const HierarchyLevel& l2 = h.level(2);
    // F_{-2} basis (rref): e(x)e, e(x)f + f(x)e, f(x)f; the invariant kernel
    // of {.,.} is spanned by the last two
    EXPECT_EQ(l2.K.basis, mat({{0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(l2.T.dim(), 1);
    // q(e^e) = 2 [class of e(x)e], q(e^f) = q(f^f) = 0
    EXPECT_EQ(l2.q, mat({{2, 0, 0}}));
}

TEST(BuildT2, LieValuedCollapses)
{
    for (const char* name : {"abelian", "crossed_module_aff1", "sl2_adjoint_crossed"}) {
        Hierarchy h = build_hierarchy(catalog_triple(name), 2);
        EXPECT_EQ(h.dim(2), 0) << name;
        // K is the whole of F_{-2}
        EXPECT_EQ(h.level(2).K.dim(), h.free.level(2).dim()) << name;
    }
}

TEST(BuildT2, StringentTripleQuotientsByTheFullKernel)
{
    // for stringent triples K = Ker{.,.} exactly
    LieLeibnizTriple t = catalog_triple("heisenberg_leibniz");
    ASSERT_TRUE(t.flags.is_stringent);
    Hierarchy h = build_hierarchy(t, 2);
    EXPECT_EQ(h.level(2).K.dim(), 2); // dim Ker{.,.}
}

TEST(BuildT2, NonstringentHandValues)
{
    LieLeibnizTriple t = catalog_triple("nonstringent_swap");
    ASSERT_FALSE(t.flags.is_stringent);
    Hierarchy h = build_hierarchy(t, 2);
    EXPECT_EQ(h.level(2).K.dim(), 4); // strictly smaller than Ker{.,.} (dim 5)
    EXPECT_EQ(h.dim(2), 2);
}

TEST(BuildKLevel, HeisenbergDegree3)
{
    Hierarchy h = build_hierarchy(catalog_triple("heisenberg_leibniz"), 4);
    // K_{-3} = [V, K_{-2}] fills all of F_{-3}, so T_{-3} = 0
    EXPECT_EQ(h.level(3).K.dim(), 2);
    EXPECT_EQ(h.free.level(3).dim(), 2);
    EXPECT_EQ(h.dim(3), 0);
    EXPECT_EQ(h.dim(4), 0);
}

TEST(BuildKLevel, RankBoundFromSurjectivity)
{
    // dim K_{-3} >= dim F_{-3} - dimV * dim T_{-2}
    for (const auto& name : catalog_names()) {
        LieLeibnizTriple t = catalog_triple(name);
        if (t.flags.is_lie_V)
            continue;
        Hierarchy h = build_hierarchy(t, 3);
        EXPECT_GE(h.level(3).K.dim(), h.free.level(3).dim() - t.dimV * h.dim(2)) << name;
    }
}

TEST(BuildTLevel, SurjectivityOfQ)
{
    for (const auto& name : catalog_names()) {
        Hierarchy h = build_hierarchy(catalog_triple(name), 4);
        for (int i = 2; i <= 4; ++i)
            EXPECT_EQ(rref(h.level(i).q).rank, h.dim(i)) << name << " level " << i;
    }
}

TEST(BuildHierarchy, CollapseTheorem)
{
    // crossed modules: all quotient levels vanish
    Hierarchy h5 = build_hierarchy(catalog_triple("crossed_module_aff1"), 5);
    for (int i = 2; i <= 5; ++i)
        EXPECT_EQ(h5.dim(i), 0);
    EXPECT_TRUE(h5.level(4).collapsed);

    Hierarchy ab = build_hierarchy(catalog_triple("abelian"), 3);
    EXPECT_EQ(ab.dim(2), 0);
    EXPECT_EQ(ab.dim(3), 0);

    // conversely a non-Lie product forces dim T_{-2} >= 1
    Hierarchy hh = build_hierarchy(catalog_triple("heisenberg_leibniz"), 2);
    EXPECT_GE(hh.dim(2), 1);
}

TEST(BuildHierarchy, NonstringentTowerIsConsistent)
{
    Hierarchy h = build_hierarchy(catalog_triple("nonstringent_swap"), 4);
    EXPECT_EQ(h.dim(2), 2);
    EXPECT_EQ(rref(h.level(3).q).rank, h.dim(3));
    EXPECT_EQ(rref(h.level(4).q).rank, h.dim(4));
}

TEST(BuildHierarchy, QEvalMatchesMatrix)
{
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> d(-2, 2);
    for (const char* name : {"heisenberg_leibniz", "nonstringent_swap"}) {
        Hierarchy h = build_hierarchy(catalog_triple(name), 4);
        for (int i = 2; i <= 4; ++i) {
            const HierarchyLevel& lv = h.level(i);
            if (lv.wedge.dim == 0)
                continue;
            for (int trial = 0; trial < 10; ++trial)
                for (const auto& blk : lv.wedge.blocks) {
                    RatVec x(h.dim(blk.j)), y(h.dim(blk.k));
                    for (auto& v : x)
                        v = d(rng);
                    for (auto& v : y)
                        v = d(rng);
                    RatVec direct = h.q_eval(blk.j, x, blk.k, y);
                    RatVec viamat = lv.q * lv.wedge.coords_pure(blk.j, x, blk.k, y);
                    EXPECT_EQ(direct, viamat) << name << " level " << i;
                }
        }
    }
}

TEST(BuildHierarchy, GradedJacobiForQ)
{
    for (const auto& name : catalog_names()) {
        Hierarchy h = build_hierarchy(catalog_triple(name), 4);
        for (int j = 1; j <= 2; ++j)
            for (int k = j; k <= 2; ++k)
                for (int l = k; j + k + l <= 4; ++l)
                    for (int r = 0; r < h.dim(j); ++r)
                        for (int s = 0; s < h.dim(k); ++s)
                            for (int u = 0; u < h.dim(l); ++u) {
                                RatVec x = h.unit(j, r), y = h.unit(k, s), z = h.unit(l, u);
                                RatVec lhs = h.q_eval(j, x, k + l, h.q_eval(k, y, l, z));
                                RatVec rhs = h.q_eval(j + k, h.q_eval(j, x, k, y), l, z);
                                RatVec t2 = h.q_eval(k, y, j + l, h.q_eval(j, x, l, z));
                                Rat sign = (j * k) % 2 == 0 ? Rat(1) : Rat(-1);
                                axpy(rhs, sign, t2);
                                axpy(lhs, -1, rhs);
                                EXPECT_TRUE(is_zero(lhs))
                                    << name << " levels " << j << " " << k << " " << l;
                            }
    }
}

TEST(BuildHierarchy, ExactnessAndEquivariance)
{
    for (const auto& name : catalog_names()) {
        Hierarchy h = build_hierarchy(catalog_triple(name), 4);
        VerificationReport ex = check_hierarchy_exactness(h);
        EXPECT_TRUE(ex.all_ok()) << name << ": " << ex.checks[0].witness;
        VerificationReport eq = check_hierarchy_equivariance(h);
        EXPECT_TRUE(eq.all_ok()) << name << ": " << eq.checks[0].witness;
    }
}

TEST(BuildHierarchy, ActionIntertwinesProjection)
{
    for (const char* name : {"heisenberg_leibniz", "nonstringent_swap"}) {
        Hierarchy h = build_hierarchy(catalog_triple(name), 4);
        for (int i = 2; i <= 4; ++i) {
            const HierarchyLevel& lv = h.level(i);
            if (lv.collapsed)
                continue;
            for (size_t a = 0; a < lv.action.mats.size(); ++a)
                EXPECT_EQ(lv.action.mats[a] * lv.T.proj,
                          lv.T.proj * h.free.level(i).action.mats[a])
                    << name << " level " << i;
        }
    }
}

TEST(BuildHierarchy, DepthTooSmallRejected)
{
    EXPECT_THROW(build_hierarchy(catalog_triple("abelian"), 1), Error);
}

TEST(BuildHierarchy, StringentTriplesQuotientByFullKernelEverywhere)
{
    for (const auto& name : catalog_names()) {
        LieLeibnizTriple t = catalog_triple(name);
        Hierarchy h = build_hierarchy(t, 2);
        Subspace ks = detail::ker_sym_in_f2(t, h.free.level(2));
        if (t.flags.is_stringent)
            EXPECT_EQ(h.level(2).K, ks) << name;
        else
            EXPECT_LT(h.level(2).K.dim(), ks.dim()) << name;
    }
}

TEST(BuildHierarchy, DimVFourSmoke)
{
    // V = span{e,f,z,w}, rho(t): e -> f, z -> w, Theta(e) = t: a strict
    // non-Lie triple on a 4-dimensional module
    LieAlgebra g(1);
    GAction rho;
    rho.target_dim = 4;
    RatMatrix r(4, 4);
    r.at(1, 0) = 1;
    r.at(3, 2) = 1;
    rho.mats = {r};
    RatMatrix theta(1, 4);
    theta.at(0, 0) = 1;
    LieLeibnizTriple t = derive_triple(g, rho, theta, nullptr, "dim4_smoke");
    EXPECT_FALSE(t.flags.is_lie_V);
    EXPECT_TRUE(t.flags.is_strict);
    Hierarchy h = build_hierarchy(t, 3);
    EXPECT_GE(h.dim(2), 1);
    VerificationReport ex = check_hierarchy_exactness(h);
    EXPECT_TRUE(ex.all_ok()) << ex.checks[0].witness;
}
