#pragma once

#include "thx/triple.hpp"

#include <string>
#include <vector>

namespace thx {

struct CatalogEntry {
    std::string name;
    std::string description;
    LieAlgebra g;
    GAction rho;
    RatMatrix theta;
};

inline std::vector<CatalogEntry> catalog()
{
    std::vector<CatalogEntry> out;

    { // 1-dimensional triple with everything trivial
        CatalogEntry e;
        e.name = "abelian";
        e.description = "1-dim abelian g acting trivially on a 1-dim V, Theta = 0";
        e.g = LieAlgebra(1);
        e.rho.target_dim = 1;
        e.rho.mats = {RatMatrix(1, 1)};
        e.theta = RatMatrix(1, 1);
        out.push_back(std::move(e));
    }

    { // aff(1) acting on itself by ad, Theta = id
        CatalogEntry e;
        e.name = "crossed_module_aff1";
        e.description = "aff(1) -> aff(1) with Theta = id and rho = ad";
        e.g = LieAlgebra(2);
        e.g.set_c(0, 1, 1, 1); // [a,b] = b
        e.g.set_c(1, 0, 1, -1);
        e.rho.target_dim = 2;
        e.rho.mats = {e.g.ad[0], e.g.ad[1]};
        e.theta = RatMatrix::identity(2);
        out.push_back(std::move(e));
    }

    { // 2-dim Leibniz algebra e o e = f over a 1-dim g
        CatalogEntry e;
        e.name = "heisenberg_leibniz";
        e.description = "V = span{e,f} with e o e = f, g 1-dim with rho(t): e -> f, Theta(e) = t";
        e.g = LieAlgebra(1);
        e.rho.target_dim = 2;
        RatMatrix r(2, 2);
        r.at(1, 0) = 1;
        e.rho.mats = {r};
        e.theta = RatMatrix(1, 2);
        e.theta.at(0, 0) = 1;
        out.push_back(std::move(e));
    }

    { // sl2 acting on itself by ad, Theta = id
        CatalogEntry e;
        e.name = "sl2_adjoint_crossed";
        e.description = "sl2 -> sl2 with Theta = id and rho = ad; basis (h, e, f)";
        e.g = LieAlgebra(3);
        e.g.set_c(0, 1, 1, 2);  // [h,e] = 2e
        e.g.set_c(1, 0, 1, -2);
        e.g.set_c(0, 2, 2, -2); // [h,f] = -2f
        e.g.set_c(2, 0, 2, 2);
        e.g.set_c(1, 2, 0, 1);  // [e,f] = h
        e.g.set_c(2, 1, 0, -1);
        e.rho.target_dim = 3;
        e.rho.mats = {e.g.ad[0], e.g.ad[1], e.g.ad[2]};
        e.theta = RatMatrix::identity(3);
        out.push_back(std::move(e));
    }

    { // Ker{.,.} is h-stable but not g-stable: the swap generator s moves
      // e(.)e - 2 e(.)z out of the kernel of the symmetric bracket.
        CatalogEntry e;
        e.name = "nonstringent_swap";
        e.description = "abelian g = span{t,s} on V = span{e,f,z}; rho(t): e,z -> f; "
                        "rho(s) swaps e and z; Theta(e) = t; not stringent";
        e.g = LieAlgebra(2);
        e.rho.target_dim = 3;
        RatMatrix t(3, 3), s(3, 3);
        t.at(1, 0) = 1; // e -> f
        t.at(1, 2) = 1; // z -> f
        s.at(2, 0) = 1; // e -> z
        s.at(0, 2) = 1; // z -> e
        s.at(1, 1) = 1; // f -> f
        e.rho.mats = {t, s};
        e.theta = RatMatrix(2, 3);
        e.theta.at(0, 0) = 1;
        out.push_back(std::move(e));
    }

    return out;
}

inline std::vector<std::string> catalog_names()
{
    std::vector<std::string> names;
    for (const auto& e : catalog())
        names.push_back(e.name);
    return names;
}

inline CatalogEntry catalog_entry(const std::string& name)
{
    for (auto& e : catalog())
        if (e.name == name)
            return e;
    throw Error("UnknownCatalogEntry", name);
}

inline LieLeibnizTriple catalog_triple(const std::string& name)
{
    CatalogEntry e = catalog_entry(name);
    return derive_triple(e.g, e.rho, e.theta, nullptr, e.name);
}

} // namespace thx
