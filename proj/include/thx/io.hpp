#pragma once

#include "thx/catalog.hpp"
#include "thx/functor.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace thx {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON file formats. Rationals are canonical strings "p/q" (or "p"); all
// emitters keep a fixed key order so equal objects serialize byte-identically.
// ---------------------------------------------------------------------------

inline json matrix_to_json(const RatMatrix& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RatMatrix matrix_from_json(const json& j, int rows, int cols, const std::string& what)
{
    if (!j.is_array() || int(j.size()) != rows)
        throw Error("ParseError", what + ": expected " + std::to_string(rows) + " rows");
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[size_t(i)];
        if (!row.is_array() || int(row.size()) != cols)
            throw Error("ParseError", what + ": row " + std::to_string(i) + " needs "
                                          + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const json& cell = row[size_t(c)];
            if (!cell.is_string())
                throw Error("ParseError", what + ": entries must be rational strings");
            m.at(i, c) = rat_from_string(cell.get<std::string>());
        }
    }
    return m;
}

struct TripleInput {
    std::string name;
    std::string description;
    LieAlgebra g;
    GAction rho;
    RatMatrix theta;
    bool has_leib = false;
    std::vector<RatMatrix> leib; // leib[i](k,j) = coefficient of e_k in e_i o e_j
};

inline json triple_to_json(const TripleInput& t)
{
    json j;
    j["format"] = "thx-triple";
    j["field"] = "rational";
    if (!t.name.empty())
        j["name"] = t.name;
    if (!t.description.empty())
        j["description"] = t.description;
    json brackets = json::array();
    for (int i = 0; i < t.g.dim; ++i) {
        json bi = json::array();
        for (int jj = 0; jj < t.g.dim; ++jj) {
            json bij = json::array();
            for (int k = 0; k < t.g.dim; ++k)
                bij.push_back(to_string(t.g.c(i, jj, k)));
            bi.push_back(std::move(bij));
        }
        brackets.push_back(std::move(bi));
    }
    j["g"] = {{"dim", t.g.dim}, {"brackets", std::move(brackets)}};
    j["v"] = {{"dim", t.rho.target_dim}};
    json rho = json::array();
    for (const auto& m : t.rho.mats)
        rho.push_back(matrix_to_json(m));
    j["rho"] = std::move(rho);
    j["theta"] = matrix_to_json(t.theta);
    if (t.has_leib) {
        json leib = json::array();
        for (int i = 0; i < t.rho.target_dim; ++i) {
            json li = json::array();
            for (int jj = 0; jj < t.rho.target_dim; ++jj) {
                json lij = json::array();
                for (int k = 0; k < t.rho.target_dim; ++k)
                    lij.push_back(to_string(t.leib[size_t(i)].at(k, jj)));
                li.push_back(std::move(lij));
            }
            leib.push_back(std::move(li));
        }
        j["leibniz"] = std::move(leib);
    }
    return j;
}

inline TripleInput triple_from_json(const json& j)
{
    TripleInput t;
    if (!j.is_object())
        throw Error("ParseError", "triple file: expected an object");
    if (j.value("field", "") != "rational")
        throw Error("ParseError", "triple file: field tag must be \"rational\"");
    t.name = j.value("name", "");
    t.description = j.value("description", "");
    if (!j.contains("g") || !j["g"].contains("dim"))
        throw Error("ParseError", "triple file: missing g.dim");
    int gd = j["g"]["dim"].get<int>();
    if (gd < 0)
        throw Error("ParseError", "triple file: g.dim must be nonnegative");
    t.g = LieAlgebra(gd);
    const json& br = j["g"]["brackets"];
    if (!br.is_array() || int(br.size()) != gd)
        throw Error("ParseError", "triple file: g.brackets must be dim^3");
    for (int i = 0; i < gd; ++i) {
        if (!br[size_t(i)].is_array() || int(br[size_t(i)].size()) != gd)
            throw Error("ParseError", "triple file: g.brackets must be dim^3");
        for (int jj = 0; jj < gd; ++jj) {
            const json& cell = br[size_t(i)][size_t(jj)];
            if (!cell.is_array() || int(cell.size()) != gd)
                throw Error("ParseError", "triple file: g.brackets must be dim^3");
            for (int k = 0; k < gd; ++k)
                t.g.set_c(i, jj, k, rat_from_string(cell[size_t(k)].get<std::string>()));
        }
    }
    if (!j.contains("v") || !j["v"].contains("dim"))
        throw Error("ParseError", "triple file: missing v.dim");
    int vd = j["v"]["dim"].get<int>();
    t.rho.target_dim = vd;
    const json& rho = j.contains("rho") ? j["rho"] : json();
    if (!rho.is_array() || int(rho.size()) != gd)
        throw Error("ParseError", "triple file: rho needs one matrix per g generator");
    for (int a = 0; a < gd; ++a)
        t.rho.mats.push_back(matrix_from_json(rho[size_t(a)], vd, vd, "rho[" + std::to_string(a) + "]"));
    if (!j.contains("theta"))
        throw Error("ParseError", "triple file: missing theta");
    t.theta = matrix_from_json(j["theta"], gd, vd, "theta");
    if (j.contains("leibniz")) {
        t.has_leib = true;
        const json& lb = j["leibniz"];
        if (!lb.is_array() || int(lb.size()) != vd)
            throw Error("ParseError", "triple file: leibniz must be dimV^3");
        for (int i = 0; i < vd; ++i) {
            RatMatrix li(vd, vd);
            const json& row = lb[size_t(i)];
            if (!row.is_array() || int(row.size()) != vd)
                throw Error("ParseError", "triple file: leibniz must be dimV^3");
            for (int jj = 0; jj < vd; ++jj) {
                const json& cell = row[size_t(jj)];
                if (!cell.is_array() || int(cell.size()) != vd)
                    throw Error("ParseError", "triple file: leibniz must be dimV^3");
                for (int k = 0; k < vd; ++k)
                    li.at(k, jj) = rat_from_string(cell[size_t(k)].get<std::string>());
            }
            t.leib.push_back(std::move(li));
        }
    }
    return t;
}

inline json parse_json_text(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error("ParseError", "invalid JSON");
    return j;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("FileError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("FileError", "cannot write " + path);
    out << content;
}

inline TripleInput catalog_input(const CatalogEntry& e)
{
    TripleInput t;
    t.name = e.name;
    t.description = e.description;
    t.g = e.g;
    t.rho = e.rho;
    t.theta = e.theta;
    return t;
}

// Accepts a file path, or a built-in catalog name when no such file exists.
inline TripleInput load_triple_input(const std::string& path_or_name)
{
    std::ifstream probe(path_or_name);
    if (probe.good())
        return triple_from_json(parse_json_text(read_file(path_or_name)));
    for (const auto& e : catalog())
        if (e.name == path_or_name)
            return catalog_input(e);
    throw Error("FileError", "no such file or catalog entry: " + path_or_name);
}

inline LieLeibnizTriple derive_input(const TripleInput& in)
{
    return derive_triple(in.g, in.rho, in.theta, in.has_leib ? &in.leib : nullptr, in.name);
}

// ---------------------------------------------------------------------------
// Hierarchy files: the assembled dgLa presentation (dims, labels, sparse
// bracket table, differentials, R_Theta words, report summary).
// ---------------------------------------------------------------------------

struct HierarchyFile {
    std::string name;
    int max_degree = 0;
    std::vector<int> dims;                        // degrees -N..+1
    std::vector<std::vector<std::string>> labels; // parallel to dims
    std::vector<RatMatrix> diffs;                 // from degree -N..0
    struct Entry {
        int d1, i1, d2, i2;
        std::vector<std::pair<int, std::string>> val;
    };
    std::vector<Entry> brackets; // nonzero entries, (d1,i1,d2,i2) lex order
    std::vector<std::vector<int>> words;
    struct ReportLine {
        std::string check;
        long passed = 0, failed = 0, skipped = 0;
    };
    std::vector<ReportLine> report;
};

inline HierarchyFile hierarchy_file(const Pipeline& p, const VerificationReport& rep)
{
    HierarchyFile f;
    f.name = p.triple.name;
    f.max_degree = p.dgla.N;
    for (int d = -p.dgla.N; d <= 1; ++d) {
        f.dims.push_back(p.dgla.dim_at(d));
        f.labels.push_back(p.dgla.labels[size_t(p.dgla.didx(d))]);
    }
    for (int d = -p.dgla.N; d <= 0; ++d)
        f.diffs.push_back(p.dgla.diff[size_t(p.dgla.didx(d))]);
    for (int d1 = -p.dgla.N; d1 <= 1; ++d1)
        for (int i1 = 0; i1 < p.dgla.dim_at(d1); ++i1)
            for (int d2 = -p.dgla.N; d2 <= 1; ++d2) {
                if (d1 + d2 < -p.dgla.N || d1 + d2 > 1)
                    continue;
                for (int i2 = 0; i2 < p.dgla.dim_at(d2); ++i2) {
                    const RatVec& v = p.dgla.bracket(d1, i1, d2, i2);
                    HierarchyFile::Entry e{d1, i1, d2, i2, {}};
                    for (size_t k = 0; k < v.size(); ++k)
                        if (v[k] != 0)
                            e.val.push_back({int(k), to_string(v[k])});
                    if (!e.val.empty())
                        f.brackets.push_back(std::move(e));
                }
            }
    f.words = p.rtheta.words;
    for (const auto& ck : rep.checks)
        f.report.push_back({ck.name, ck.passed, ck.failed, ck.skipped});
    return f;
}

inline json hierarchy_to_json(const HierarchyFile& f)
{
    json j;
    j["format"] = "thx-hierarchy";
    j["field"] = "rational";
    if (!f.name.empty())
        j["name"] = f.name;
    j["max_degree"] = f.max_degree;
    json degs = json::array();
    for (size_t k = 0; k < f.dims.size(); ++k) {
        json d;
        d["degree"] = int(k) - f.max_degree;
        d["dim"] = f.dims[k];
        d["labels"] = f.labels[k];
        degs.push_back(std::move(d));
    }
    j["degrees"] = std::move(degs);
    json diffs = json::array();
    for (size_t k = 0; k < f.diffs.size(); ++k) {
        json d;
        d["from"] = int(k) - f.max_degree;
        d["matrix"] = matrix_to_json(f.diffs[k]);
        diffs.push_back(std::move(d));
    }
    j["differentials"] = std::move(diffs);
    json brs = json::array();
    for (const auto& e : f.brackets) {
        json b;
        b["x"] = {e.d1, e.i1};
        b["y"] = {e.d2, e.i2};
        json val = json::array();
        for (const auto& [k, s] : e.val)
            val.push_back({k, s});
        b["val"] = std::move(val);
        brs.push_back(std::move(b));
    }
    j["brackets"] = std::move(brs);
    j["r_theta_words"] = f.words;
    json rep = json::array();
    for (const auto& r : f.report) {
        json line;
        line["check"] = r.check;
        line["passed"] = r.passed;
        line["failed"] = r.failed;
        line["skipped"] = r.skipped;
        rep.push_back(std::move(line));
    }
    j["report"] = std::move(rep);
    return j;
}

inline HierarchyFile hierarchy_from_json(const json& j)
{
    HierarchyFile f;
    if (j.value("format", "") != "thx-hierarchy" || j.value("field", "") != "rational")
        throw Error("ParseError", "hierarchy file: bad format tags");
    f.name = j.value("name", "");
    f.max_degree = j.at("max_degree").get<int>();
    int N = f.max_degree;
    const json& degs = j.at("degrees");
    if (int(degs.size()) != N + 2)
        throw Error("ParseError", "hierarchy file: wrong number of degrees");
    for (int k = 0; k < N + 2; ++k) {
        const json& d = degs[size_t(k)];
        if (d.at("degree").get<int>() != k - N)
            throw Error("ParseError", "hierarchy file: degrees out of order");
        f.dims.push_back(d.at("dim").get<int>());
        f.labels.push_back(d.at("labels").get<std::vector<std::string>>());
    }
    const json& diffs = j.at("differentials");
    if (int(diffs.size()) != N + 1)
        throw Error("ParseError", "hierarchy file: wrong number of differentials");
    for (int k = 0; k <= N; ++k) {
        const json& d = diffs[size_t(k)];
        if (d.at("from").get<int>() != k - N)
            throw Error("ParseError", "hierarchy file: differentials out of order");
        f.diffs.push_back(
            matrix_from_json(d.at("matrix"), f.dims[size_t(k) + 1], f.dims[size_t(k)],
                             "differential " + std::to_string(k - N)));
    }
    auto dim_of = [&](int degree) {
        if (degree < -N || degree > 1)
            throw Error("ParseError", "hierarchy file: degree out of range");
        return f.dims[size_t(degree + N)];
    };
    for (const json& b : j.at("brackets")) {
        HierarchyFile::Entry e;
        e.d1 = b.at("x")[0].get<int>();
        e.i1 = b.at("x")[1].get<int>();
        e.d2 = b.at("y")[0].get<int>();
        e.i2 = b.at("y")[1].get<int>();
        if (e.i1 < 0 || e.i1 >= dim_of(e.d1) || e.i2 < 0 || e.i2 >= dim_of(e.d2))
            throw Error("ParseError", "hierarchy file: bracket index out of range");
        int target_dim = dim_of(e.d1 + e.d2);
        for (const json& kv : b.at("val")) {
            int k = kv[0].get<int>();
            if (k < 0 || k >= target_dim)
                throw Error("ParseError", "hierarchy file: coefficient index out of range");
            std::string s = kv[1].get<std::string>();
            (void)rat_from_string(s); // canonical check
            e.val.push_back({k, s});
        }
        f.brackets.push_back(std::move(e));
    }
    f.words = j.at("r_theta_words").get<std::vector<std::vector<int>>>();
    for (const json& line : j.at("report"))
        f.report.push_back({line.at("check").get<std::string>(), line.at("passed").get<long>(),
                            line.at("failed").get<long>(), line.at("skipped").get<long>()});
    return f;
}

inline std::string emit_text(const json& j)
{
    return j.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// Morphism files.
// ---------------------------------------------------------------------------

inline TripleMorphism morphism_from_json(const json& j, const LieLeibnizTriple& src,
                                         const LieLeibnizTriple& dst)
{
    if (!j.is_object() || !j.contains("phi") || !j.contains("chi"))
        throw Error("ParseError", "morphism file: needs phi and chi matrices");
    TripleMorphism m;
    m.phi = matrix_from_json(j["phi"], dst.g.dim, src.g.dim, "phi");
    m.chi = matrix_from_json(j["chi"], dst.dimV, src.dimV, "chi");
    return m;
}

inline json dgla_morphism_to_json(const DglaMorphism& f)
{
    json j;
    j["format"] = "thx-dgla-morphism";
    j["field"] = "rational";
    j["max_degree"] = f.N;
    json comps = json::array();
    for (int d = -f.N; d <= 1; ++d) {
        json c;
        c["degree"] = d;
        c["matrix"] = matrix_to_json(f.at(d));
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    return j;
}

} // namespace thx
