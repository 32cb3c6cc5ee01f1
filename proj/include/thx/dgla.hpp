#pragma once

#include "thx/differential.hpp"

#include <cstdlib>
#include <sstream>
#include <thread>

namespace thx {

inline int thread_budget()
{
    const char* env = std::getenv("THX_THREADS");
    if (!env)
        return 1;
    int v = std::atoi(env);
    if (v < 1)
        return 1;
    return v > 64 ? 64 : v;
}

// Chunked sweep with order-independent aggregation: counts are summed and the
// witness is the first failure in instance order, whatever the thread count.
template <class Fn>
Check sweep(const std::string& name, long n, Fn&& fn)
{
    int nt = thread_budget();
    if (nt > n)
        nt = n > 0 ? int(n) : 1;
    std::vector<Check> locals(nt);
    if (nt <= 1) {
        Check c{name};
        for (long i = 0; i < n; ++i)
            fn(i, c);
        return c;
    }
    std::vector<std::thread> threads;
    long chunk = (n + nt - 1) / nt;
    for (int part = 0; part < nt; ++part)
        threads.emplace_back([&, part] {
            long lo = part * chunk, hi = std::min(n, lo + chunk);
            for (long i = lo; i < hi; ++i)
                fn(i, locals[part]);
        });
    for (auto& th : threads)
        th.join();
    Check total{name};
    for (const Check& c : locals) {
        total.passed += c.passed;
        total.skipped += c.skipped;
        if (c.failed) {
            if (total.failed == 0)
                total.witness = c.witness;
            total.failed += c.failed;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// The assembled differential graded Lie algebra
//   T = T_{-N} ... T_{-1} (+) g (+) R_Theta[-1]
// with the bracket table stored per bidegree and the differential per degree.
// ---------------------------------------------------------------------------

struct DgLa {
    LieLeibnizTriple triple;
    int N = 1; // lowest degree is -N
    std::vector<int> dims;                         // index d + N, degrees -N..+1
    std::vector<std::vector<std::string>> labels;  // same indexing
    struct Bideg {
        bool present = false;
        std::vector<std::vector<RatVec>> val; // val[i1][i2] = coords at d1+d2
    };
    std::vector<std::vector<Bideg>> table;
    std::vector<RatMatrix> diff; // diff[d+N]: degree d -> d+1 (zero rows at +1)

    int didx(int d) const { return d + N; }
    bool deg_ok(int d) const { return d >= -N && d <= 1; }
    int dim_at(int d) const { return deg_ok(d) ? dims[size_t(didx(d))] : 0; }

    const RatVec& bracket(int d1, int i1, int d2, int i2) const
    {
        return table[size_t(didx(d1))][size_t(didx(d2))].val[size_t(i1)][size_t(i2)];
    }

    // Homogeneous element; deg is meaningful only when zero is false.
    struct Elt {
        bool zero = true;
        int deg = 0;
        RatVec v;
    };

    Elt unit_elt(int d, int i) const
    {
        Elt e;
        e.zero = false;
        e.deg = d;
        e.v = RatVec(dim_at(d));
        e.v[i] = 1;
        return e;
    }

    // Bracket of homogeneous elements; nullopt when the target degree falls
    // below the truncation (the instance cannot be evaluated honestly).
    std::optional<Elt> bracket_elt(const Elt& x, const Elt& y) const
    {
        if (x.zero || y.zero)
            return Elt{};
        int d = x.deg + y.deg;
        if (d == 2)
            return Elt{}; // both at +1; the bracket vanishes there
        if (d < -N)
            return std::nullopt;
        Elt r;
        r.zero = false;
        r.deg = d;
        r.v = RatVec(dim_at(d));
        const Bideg& b = table[size_t(didx(x.deg))][size_t(didx(y.deg))];
        for (size_t i = 0; i < x.v.size(); ++i) {
            if (x.v[i] == 0)
                continue;
            for (size_t j = 0; j < y.v.size(); ++j)
                if (y.v[j] != 0)
                    axpy(r.v, x.v[i] * y.v[j], b.val[i][j]);
        }
        return r;
    }

    Elt apply_diff(const Elt& x) const
    {
        if (x.zero || x.deg == 1)
            return Elt{};
        Elt r;
        r.zero = false;
        r.deg = x.deg + 1;
        r.v = diff[size_t(didx(x.deg))] * x.v;
        return r;
    }

    static bool elt_is_zero(const Elt& e) { return e.zero || is_zero(e.v); }

    static Elt elt_sub(const Elt& a, const Elt& b)
    {
        if (b.zero)
            return a;
        Elt r = b;
        if (a.zero) {
            for (auto& x : r.v)
                x = -x;
            return r;
        }
        r = a;
        axpy(r.v, -1, b.v);
        return r;
    }

    static Elt elt_scale(const Rat& s, const Elt& a)
    {
        Elt r = a;
        for (auto& x : r.v)
            x *= s;
        return r;
    }
};

namespace detail {

inline std::string word_label(const std::vector<int>& w)
{
    if (w.empty())
        return "Theta";
    std::string s;
    for (int a : w)
        s += "g" + std::to_string(a) + ".";
    return s + "Theta";
}

} // namespace detail

inline DgLa assemble(const LieLeibnizTriple& t, const Hierarchy& h, const DifferentialTower& d,
                     const MuFamily& mu, const CyclicModule& rtheta)
{
    DgLa g;
    g.triple = t;
    g.N = h.max_depth;
    int N = g.N;
    g.dims.assign(size_t(N) + 2, 0);
    g.labels.assign(size_t(N) + 2, {});
    for (int i = N; i >= 2; --i)
        g.dims[size_t(g.didx(-i))] = h.dim(i);
    g.dims[size_t(g.didx(-1))] = t.dimV;
    g.dims[size_t(g.didx(0))] = t.g.dim;
    g.dims[size_t(g.didx(1))] = rtheta.dim();
    for (int i = N; i >= 2; --i)
        for (int k = 0; k < h.dim(i); ++k)
            g.labels[size_t(g.didx(-i))].push_back("T-" + std::to_string(i) + "_"
                                                   + std::to_string(k));
    for (int k = 0; k < t.dimV; ++k)
        g.labels[size_t(g.didx(-1))].push_back("v" + std::to_string(k));
    for (int k = 0; k < t.g.dim; ++k)
        g.labels[size_t(g.didx(0))].push_back("g" + std::to_string(k));
    for (int k = 0; k < rtheta.dim(); ++k)
        g.labels[size_t(g.didx(1))].push_back(detail::word_label(rtheta.words[k]));

    // matrices of the R_Theta generators acting through mu at each level:
    // bra_plus[j-1][w] is the matrix of [[Theta_w, .]] on T_{-j}
    std::vector<std::vector<RatMatrix>> bra_plus;
    bra_plus.resize(size_t(N));
    for (int w = 0; w < rtheta.dim(); ++w)
        bra_plus[0].push_back(unflatten(rtheta.gens[w], t.g.dim, t.dimV));
    for (int j = 2; j <= N; ++j) {
        const MuLevel& lvl = mu.neg[size_t(j) - 2];
        for (int w = 0; w < rtheta.dim(); ++w) {
            RatVec flat(size_t(h.dim(j - 1)) * h.dim(j));
            for (int r = 0; r < lvl.R.dim(); ++r)
                if (lvl.mu.at(r, w) != 0)
                    axpy(flat, lvl.mu.at(r, w), lvl.R.gens[r]);
            bra_plus[size_t(j) - 1].push_back(unflatten(flat, h.dim(j - 1), h.dim(j)));
        }
    }

    g.table.assign(size_t(N) + 2, std::vector<DgLa::Bideg>(size_t(N) + 2));
    for (int d1 = -N; d1 <= 1; ++d1)
        for (int d2 = -N; d2 <= 1; ++d2) {
            int dt = d1 + d2;
            if (dt < -N || dt > 1)
                continue;
            DgLa::Bideg& b = g.table[size_t(g.didx(d1))][size_t(g.didx(d2))];
            b.present = true;
            int n1 = g.dim_at(d1), n2 = g.dim_at(d2), nt = g.dim_at(dt);
            b.val.assign(size_t(n1), std::vector<RatVec>(size_t(n2), RatVec(size_t(nt))));
            for (int i1 = 0; i1 < n1; ++i1)
                for (int i2 = 0; i2 < n2; ++i2) {
                    RatVec& out = b.val[size_t(i1)][size_t(i2)];
                    if (d1 <= -1 && d2 <= -1) {
                        out = h.q_eval(-d1, h.unit(-d1, i1), -d2, h.unit(-d2, i2));
                    } else if (d1 == 0 && d2 == 0) {
                        for (int k = 0; k < nt; ++k)
                            out[size_t(k)] = t.g.c(i1, i2, k);
                    } else if (d1 == 0 && d2 <= -1) {
                        out = h.action(-d2).mats[size_t(i1)].col(i2);
                    } else if (d1 <= -1 && d2 == 0) {
                        out = h.action(-d1).mats[size_t(i2)].col(i1);
                        for (auto& x : out)
                            x = -x;
                    } else if (d1 == 0 && d2 == 1) {
                        out = rtheta.action[size_t(i1)].col(i2);
                    } else if (d1 == 1 && d2 == 0) {
                        out = rtheta.action[size_t(i2)].col(i1);
                        for (auto& x : out)
                            x = -x;
                    } else if (d1 == 1 && d2 <= -1) {
                        out = bra_plus[size_t(-d2) - 1][size_t(i1)].col(i2);
                    } else if (d1 <= -1 && d2 == 1) {
                        out = bra_plus[size_t(-d1) - 1][size_t(i2)].col(i1);
                        // [[x, xi]] = -(-1)^{|x|} [[xi, x]]
                        if ((-d1) % 2 == 0)
                            for (auto& x : out)
                                x = -x;
                    }
                    // (+1,+1) stays zero
                }
        }

    g.diff.assign(size_t(N) + 2, RatMatrix());
    for (int i = N; i >= 2; --i)
        g.diff[size_t(g.didx(-i))] = d.del(i - 1);
    g.diff[size_t(g.didx(-1))] = d.partial0;
    g.diff[size_t(g.didx(0))] = d.partial_plus;
    g.diff[size_t(g.didx(1))] = RatMatrix(0, rtheta.dim());
    return g;
}

// Every basis element of the dgla as (degree, index), in degree order.
inline std::vector<std::pair<int, int>> basis_list(const DgLa& g)
{
    std::vector<std::pair<int, int>> out;
    for (int d = -g.N; d <= 1; ++d)
        for (int i = 0; i < g.dim_at(d); ++i)
            out.push_back({d, i});
    return out;
}

inline VerificationReport verify_axioms(const DgLa& g)
{
    VerificationReport rep;
    auto basis = basis_list(g);
    long nb = long(basis.size());

    auto witness = [&](std::initializer_list<std::pair<int, int>> elts, const DgLa::Elt& resid) {
        std::ostringstream os;
        for (auto [d, i] : elts)
            os << "(" << d << "," << i << ") ";
        os << "-> ";
        if (resid.zero)
            os << "0";
        else
            os << vec_witness(resid.v) << " at degree " << resid.deg;
        return os.str();
    };

    // graded antisymmetry on every stored pair
    rep.checks.push_back(sweep("dgla.antisymmetry", nb, [&](long a, Check& ck) {
        auto [d1, i1] = basis[size_t(a)];
        for (auto [d2, i2] : basis) {
            auto xy = g.bracket_elt(g.unit_elt(d1, i1), g.unit_elt(d2, i2));
            auto yx = g.bracket_elt(g.unit_elt(d2, i2), g.unit_elt(d1, i1));
            if (!xy || !yx) {
                ck.skip();
                continue;
            }
            Rat sign = (d1 * d2) % 2 == 0 ? Rat(1) : Rat(-1);
            DgLa::Elt resid = DgLa::elt_sub(*xy, DgLa::elt_scale(-sign, *yx));
            ck.require(DgLa::elt_is_zero(resid), witness({{d1, i1}, {d2, i2}}, resid));
        }
    }));

    // graded Jacobi on every in-range triple
    rep.checks.push_back(sweep("dgla.jacobi", nb, [&](long a, Check& ck) {
        auto [d1, i1] = basis[size_t(a)];
        DgLa::Elt x = g.unit_elt(d1, i1);
        for (auto [d2, i2] : basis) {
            DgLa::Elt y = g.unit_elt(d2, i2);
            auto xy = g.bracket_elt(x, y);
            for (auto [d3, i3] : basis) {
                DgLa::Elt z = g.unit_elt(d3, i3);
                auto yz = g.bracket_elt(y, z);
                auto xz = g.bracket_elt(x, z);
                if (!xy || !yz || !xz) {
                    ck.skip();
                    continue;
                }
                auto lhs = g.bracket_elt(x, *yz);
                auto t1 = g.bracket_elt(*xy, z);
                auto t2 = g.bracket_elt(y, *xz);
                if (!lhs || !t1 || !t2) {
                    ck.skip();
                    continue;
                }
                Rat sign = (d1 * d2) % 2 == 0 ? Rat(1) : Rat(-1);
                DgLa::Elt resid =
                    DgLa::elt_sub(DgLa::elt_sub(*lhs, *t1), DgLa::elt_scale(sign, *t2));
                ck.require(DgLa::elt_is_zero(resid),
                           witness({{d1, i1}, {d2, i2}, {d3, i3}}, resid));
            }
        }
    }));

    // Leibniz rule del[[u,v]] = [[del u, v]] + (-1)^{|u|} [[u, del v]]
    rep.checks.push_back(sweep("dgla.leibniz", nb, [&](long a, Check& ck) {
        auto [d1, i1] = basis[size_t(a)];
        DgLa::Elt u = g.unit_elt(d1, i1);
        for (auto [d2, i2] : basis) {
            DgLa::Elt v = g.unit_elt(d2, i2);
            auto uv = g.bracket_elt(u, v);
            auto du_v = g.bracket_elt(g.apply_diff(u), v);
            auto u_dv = g.bracket_elt(u, g.apply_diff(v));
            if (!uv || !du_v || !u_dv) {
                ck.skip();
                continue;
            }
            Rat sign = d1 % 2 == 0 ? Rat(1) : Rat(-1);
            DgLa::Elt resid = DgLa::elt_sub(DgLa::elt_sub(g.apply_diff(*uv), *du_v),
                                            DgLa::elt_scale(sign, *u_dv));
            ck.require(DgLa::elt_is_zero(resid), witness({{d1, i1}, {d2, i2}}, resid));
        }
    }));

    // del . del = 0 at every junction
    {
        Check ck{"dgla.d_squared"};
        for (int d = -g.N; d <= 0; ++d) {
            if (d + 1 > 1)
                continue;
            const RatMatrix& first = g.diff[size_t(g.didx(d))];
            const RatMatrix& second = g.diff[size_t(g.didx(d + 1))];
            if (second.rows() == 0 || first.cols() == 0) {
                ck.pass();
                continue;
            }
            ck.require((second * first).is_zero(), "junction at degree " + std::to_string(d));
        }
        rep.checks.push_back(ck);
    }

    // del[[u,v]] = -[[u, del v]] for u at +1, v at negative degree
    rep.checks.push_back(sweep("dgla.enforced_jacobi2", long(g.dim_at(1)), [&](long a, Check& ck) {
        DgLa::Elt u = g.unit_elt(1, int(a));
        for (int d2 = -g.N; d2 <= -1; ++d2)
            for (int i2 = 0; i2 < g.dim_at(d2); ++i2) {
                DgLa::Elt v = g.unit_elt(d2, i2);
                auto uv = g.bracket_elt(u, v);
                auto u_dv = g.bracket_elt(u, g.apply_diff(v));
                if (!uv || !u_dv) {
                    ck.skip();
                    continue;
                }
                DgLa::Elt resid =
                    DgLa::elt_sub(g.apply_diff(*uv), DgLa::elt_scale(Rat(-1), *u_dv));
                ck.require(DgLa::elt_is_zero(resid), witness({{1, int(a)}, {d2, i2}}, resid));
            }
    }));

    // the differential is bracketing with Theta wherever Theta exists
    {
        Check ck{"dgla.diff_is_theta_bracket"};
        if (g.dim_at(1) == 0)
            ck.pass(); // Theta = 0 and every differential is zero
        for (int d = -g.N; d <= 0 && g.dim_at(1) > 0; ++d) {
            DgLa::Elt theta = g.unit_elt(1, 0);
            bool ok = true;
            for (int i = 0; i < g.dim_at(d); ++i) {
                auto br = g.bracket_elt(theta, g.unit_elt(d, i));
                DgLa::Elt resid = DgLa::elt_sub(g.apply_diff(g.unit_elt(d, i)), *br);
                if (!DgLa::elt_is_zero(resid))
                    ok = false;
            }
            ck.require(ok, "degree " + std::to_string(d));
        }
        rep.checks.push_back(ck);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Homology ranks of the chain complex, reported per degree. At the lowest
// computed degree the incoming rank is unknown (truncation), so H is not
// reported there.
// ---------------------------------------------------------------------------

struct HomologyRow {
    int degree = 0;
    int dim = 0;
    long rank_out = 0;
    long ker_out = 0;
    long rank_in = -1; // -1: unknown at the truncation boundary
    long h = -1;
    bool complete = false;
};

struct HomologyReport {
    std::vector<HomologyRow> rows;
    bool partial1_injective = false;
    bool image_partial1_is_ideal = false;
    bool h_minus2_known = false;
    bool h_minus2_zero = false;
    bool resolution_in_range = false; // H_{-i} = 0 for all complete i <= -2
    VerificationReport consistency;
};

inline HomologyReport homology(const DgLa& g)
{
    HomologyReport hr;
    Check& mono = hr.consistency.add("homology.im_le_ker");
    for (int d = -g.N; d <= 1; ++d) {
        HomologyRow row;
        row.degree = d;
        row.dim = g.dim_at(d);
        row.rank_out = d == 1 ? 0 : rref(g.diff[size_t(g.didx(d))]).rank;
        row.ker_out = row.dim - row.rank_out;
        if (d > -g.N) {
            row.rank_in = rref(g.diff[size_t(g.didx(d - 1))]).rank;
            row.h = row.ker_out - row.rank_in;
            row.complete = true;
            mono.require(row.rank_in <= row.ker_out, "degree " + std::to_string(d));
        }
        hr.rows.push_back(row);
    }
    const RatMatrix& del1 = g.diff[size_t(g.didx(-2))];
    hr.partial1_injective = rref(del1).rank == g.dim_at(-2);
    hr.image_partial1_is_ideal = image(del1) == ideal_of_squares(g.triple);
    for (const auto& row : hr.rows)
        if (row.degree == -2 && row.complete) {
            hr.h_minus2_known = true;
            hr.h_minus2_zero = row.h == 0;
        }
    hr.resolution_in_range = true;
    for (const auto& row : hr.rows)
        if (row.degree <= -2 && row.complete && row.h != 0)
            hr.resolution_in_range = false;
    return hr;
}

// ---------------------------------------------------------------------------
// Direct 3-term assembly for Lie-valued triples (the comparison oracle):
//   V[1] --Theta--> g --(-eta(-;Theta))--> R_Theta[-1]
// built straight from the triple, with no free-algebra machinery.
// ---------------------------------------------------------------------------

inline DgLa experimental_dgla(const LieLeibnizTriple& t, const CyclicModule& rtheta)
{
    if (!t.flags.is_lie_V)
        throw Error("NotLieValued", "the direct 3-term assembly needs V to be a Lie algebra");
    DgLa g;
    g.triple = t;
    g.N = 1;
    g.dims = {t.dimV, t.g.dim, rtheta.dim()};
    g.labels.assign(3, {});
    for (int k = 0; k < t.dimV; ++k)
        g.labels[0].push_back("v" + std::to_string(k));
    for (int k = 0; k < t.g.dim; ++k)
        g.labels[1].push_back("g" + std::to_string(k));
    for (int k = 0; k < rtheta.dim(); ++k)
        g.labels[2].push_back(detail::word_label(rtheta.words[k]));

    g.table.assign(3, std::vector<DgLa::Bideg>(3));
    for (int d1 = -1; d1 <= 1; ++d1)
        for (int d2 = -1; d2 <= 1; ++d2) {
            int dt = d1 + d2;
            if (dt < -1 || dt > 1)
                continue;
            DgLa::Bideg& b = g.table[size_t(d1 + 1)][size_t(d2 + 1)];
            b.present = true;
            int n1 = g.dim_at(d1), n2 = g.dim_at(d2), nt = g.dim_at(dt);
            b.val.assign(size_t(n1), std::vector<RatVec>(size_t(n2), RatVec(size_t(nt))));
            for (int i1 = 0; i1 < n1; ++i1)
                for (int i2 = 0; i2 < n2; ++i2) {
                    RatVec& out = b.val[size_t(i1)][size_t(i2)];
                    if (d1 == 0 && d2 == 0)
                        for (int k = 0; k < nt; ++k)
                            out[size_t(k)] = t.g.c(i1, i2, k);
                    else if (d1 == 0 && d2 == -1)
                        out = t.rho.mats[size_t(i1)].col(i2);
                    else if (d1 == -1 && d2 == 0) {
                        out = t.rho.mats[size_t(i2)].col(i1);
                        for (auto& x : out)
                            x = -x;
                    } else if (d1 == 0 && d2 == 1)
                        out = rtheta.action[size_t(i1)].col(i2);
                    else if (d1 == 1 && d2 == 0) {
                        out = rtheta.action[size_t(i2)].col(i1);
                        for (auto& x : out)
                            x = -x;
                    } else if (d1 == 1 && d2 == -1)
                        out = unflatten(rtheta.gens[size_t(i1)], t.g.dim, t.dimV).col(i2);
                    else if (d1 == -1 && d2 == 1)
                        out = unflatten(rtheta.gens[size_t(i2)], t.g.dim, t.dimV).col(i1);
                    // (-1,-1) and (+1,+1) stay zero
                }
        }

    g.diff.assign(3, RatMatrix());
    g.diff[0] = t.theta;
    g.diff[1] = RatMatrix(rtheta.dim(), t.g.dim);
    for (int a = 0; a < t.g.dim; ++a) {
        auto c = rtheta.coords(flatten(eta_basis(t, a, t.theta)));
        for (int r = 0; r < rtheta.dim(); ++r)
            g.diff[1].at(r, a) = -(*c)[r];
    }
    g.diff[2] = RatMatrix(0, rtheta.dim());
    return g;
}

// Entry-for-entry agreement of two assemblies on their common degree range;
// degrees outside the smaller range must be zero-dimensional in the bigger.
inline VerificationReport compare_dgla(const DgLa& a, const DgLa& b)
{
    VerificationReport rep;
    Check& dims = rep.add("compare.dims");
    int lo = std::min(-a.N, -b.N);
    for (int d = lo; d <= 1; ++d)
        dims.require(a.dim_at(d) == b.dim_at(d),
                     "degree " + std::to_string(d) + ": " + std::to_string(a.dim_at(d)) + " vs "
                         + std::to_string(b.dim_at(d)));
    Check& brackets = rep.add("compare.brackets");
    int common = std::min(a.N, b.N);
    for (int d1 = -common; d1 <= 1; ++d1)
        for (int d2 = -common; d2 <= 1; ++d2) {
            if (d1 + d2 < -common || d1 + d2 > 1)
                continue;
            for (int i1 = 0; i1 < a.dim_at(d1); ++i1)
                for (int i2 = 0; i2 < a.dim_at(d2); ++i2)
                    brackets.require(a.bracket(d1, i1, d2, i2) == b.bracket(d1, i1, d2, i2),
                                     "(" + std::to_string(d1) + "," + std::to_string(i1) + ")x("
                                         + std::to_string(d2) + "," + std::to_string(i2) + ")");
        }
    Check& diffs = rep.add("compare.differentials");
    for (int d = -common; d <= 0; ++d)
        diffs.require(a.diff[size_t(a.didx(d))] == b.diff[size_t(b.didx(d))],
                      "degree " + std::to_string(d));
    return rep;
}

// ---------------------------------------------------------------------------
// One-call pipeline bundle.
// ---------------------------------------------------------------------------

struct Pipeline {
    LieLeibnizTriple triple;
    Hierarchy hierarchy;
    DifferentialTower tower;
    CyclicModule rtheta;
    MuFamily mu;
    DgLa dgla;
};

inline Pipeline run_pipeline(const LieLeibnizTriple& t, int max_depth)
{
    Pipeline p;
    p.triple = t;
    p.hierarchy = build_hierarchy(t, max_depth);
    p.rtheta = r_theta(t);
    p.tower = build_differential(p.hierarchy);
    extend_top(t, p.rtheta, p.tower);
    p.mu = build_mu(t, p.hierarchy, p.tower, p.rtheta);
    p.dgla = assemble(t, p.hierarchy, p.tower, p.mu, p.rtheta);
    return p;
}

// The structural certificates gathered during and after construction.
inline VerificationReport structural_report(const Pipeline& p)
{
    VerificationReport rep;
    rep.append(check_hierarchy_exactness(p.hierarchy));
    rep.append(check_hierarchy_equivariance(p.hierarchy));
    rep.append(check_h_equivariance(p.hierarchy, p.tower));
    rep.append(check_m_q_anticommute(p.hierarchy, p.tower));
    rep.append(check_m_del_anticommute(p.hierarchy, p.tower));
    rep.append(check_del_q_identity(p.hierarchy, p.tower));
    return rep;
}

} // namespace thx
