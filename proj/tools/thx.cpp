// thx: build and verify the tensor hierarchy of a Lie-Leibniz triple given by
// rational structure constants.
//
// Subcommands: validate, classify, build, verify, morphism, catalog.
// Exit codes: 0 ok; 2 constraint violation; 3 parse error; 4 pipeline
// diagnostic; 5 verification failure; 6 kernel-preservation obstruction.
// THX_THREADS caps the verification sweep parallelism.

#include "thx/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace thx;

namespace {

constexpr int EXIT_CONSTRAINT = 2;
constexpr int EXIT_PARSE = 3;
constexpr int EXIT_PIPELINE = 4;
constexpr int EXIT_VERIFY = 5;
constexpr int EXIT_KERNEL = 6;

bool is_parse_error(const Error& e)
{
    return e.code == "ParseError" || e.code == "FileError" || e.code == "UnknownCatalogEntry";
}

void print_report(const VerificationReport& rep)
{
    for (const auto& ck : rep.checks) {
        std::cout << (ck.ok() ? "PASS" : "FAIL") << "  " << ck.name << "  (passed " << ck.passed
                  << ", failed " << ck.failed << ", skipped " << ck.skipped << ")";
        if (!ck.ok())
            std::cout << "  witness: " << ck.witness;
        std::cout << "\n";
    }
}

int cmd_validate(const std::string& path)
{
    TripleInput in = load_triple_input(path);
    VerificationReport rep = validate_lie(in.g);
    rep.append(validate_action(in.g, in.rho));
    print_report(rep);
    if (!rep.all_ok())
        return EXIT_CONSTRAINT;
    try {
        derive_input(in);
        std::cout << "PASS  constraints  (linear, quadratic, Leibniz, inclusions)\n";
    } catch (const Error& e) {
        std::cout << "FAIL  constraints  " << e.what() << "\n";
        return EXIT_CONSTRAINT;
    }
    return 0;
}

int cmd_classify(const std::string& path)
{
    LieLeibnizTriple t = derive_input(load_triple_input(path));
    CyclicModule rt = r_theta(t);
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "is_lie_V:          " << flag(t.flags.is_lie_V) << "\n"
              << "is_strict:         " << flag(t.flags.is_strict) << "\n"
              << "is_semistrict:     " << flag(t.flags.is_semistrict) << "\n"
              << "is_stringent:      " << flag(t.flags.is_stringent) << "\n"
              << "is_crossed_module: " << flag(t.flags.is_crossed_module) << "\n"
              << "dim ideal_of_squares: " << ideal_of_squares(t).dim() << "\n"
              << "dim center:           " << center(t).dim() << "\n"
              << "dim ker_theta:        " << ker_theta(t).dim() << "\n"
              << "dim r_theta:          " << rt.dim() << "\n";
    return 0;
}

int cmd_build(const std::string& path, int max_degree, const std::string& out)
{
    LieLeibnizTriple t = derive_input(load_triple_input(path));
    Pipeline p = run_pipeline(t, max_degree);
    VerificationReport rep = structural_report(p);
    std::string text = emit_text(hierarchy_to_json(hierarchy_file(p, rep)));
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return rep.all_ok() ? 0 : EXIT_PIPELINE;
}

int cmd_verify(const std::string& path, int max_degree, bool with_homology)
{
    TripleInput in = load_triple_input(path);
    LieLeibnizTriple t;
    try {
        t = derive_input(in);
    } catch (const Error& e) {
        std::cout << "FAIL  constraints  witness: " << e.what() << "\n";
        return EXIT_VERIFY;
    }
    Pipeline p = run_pipeline(t, max_degree);
    VerificationReport rep = verify_axioms(p.dgla);
    rep.append(structural_report(p));
    print_report(rep);
    if (with_homology) {
        HomologyReport hr = homology(p.dgla);
        std::cout << "homology (Ker out / Im in / H per degree):\n";
        for (const auto& row : hr.rows) {
            std::cout << "  degree " << row.degree << ": dim " << row.dim << ", ker "
                      << row.ker_out;
            if (row.complete)
                std::cout << ", im " << row.rank_in << ", H " << row.h;
            else
                std::cout << ", im n/a (truncation boundary)";
            std::cout << "\n";
        }
        std::cout << "partial_{-1} injective: " << (hr.partial1_injective ? "yes" : "no") << "\n"
                  << "image(partial_{-1}) = ideal of squares: "
                  << (hr.image_partial1_is_ideal ? "yes" : "no") << "\n";
        if (hr.h_minus2_known)
            std::cout << "H_{-2} = 0: " << (hr.h_minus2_zero ? "yes" : "no") << "\n";
        std::cout << "resolution of the ideal of squares within truncation ("
                  << (t.flags.is_stringent ? "stringent" : "not stringent")
                  << " triple, conjecture status only): "
                  << (hr.resolution_in_range ? "yes" : "no") << "\n";
    }
    return rep.all_ok() ? 0 : EXIT_VERIFY;
}

int cmd_morphism(const std::string& srcpath, const std::string& dstpath,
                 const std::string& morphpath, int max_degree, const std::string& out)
{
    LieLeibnizTriple src = derive_input(load_triple_input(srcpath));
    LieLeibnizTriple dst = derive_input(load_triple_input(dstpath));
    TripleMorphism m = morphism_from_json(parse_json_text(read_file(morphpath)), src, dst);
    VerificationReport val = validate_morphism(src, dst, m);
    print_report(val);
    if (!val.all_ok())
        return EXIT_CONSTRAINT;
    Pipeline ps = run_pipeline(src, max_degree);
    Pipeline pd = run_pipeline(dst, max_degree);
    DglaMorphism f = induce(ps, pd, m);
    VerificationReport squares = check_morphism_squares(ps, pd, f);
    print_report(squares);
    if (!out.empty())
        write_file(out, emit_text(dgla_morphism_to_json(f)));
    return squares.all_ok() ? 0 : EXIT_VERIFY;
}

int cmd_catalog(const std::string& action, const std::string& name, const std::string& path)
{
    if (action == "list") {
        for (const auto& e : catalog())
            std::cout << e.name << "  -  " << e.description << "\n";
        return 0;
    }
    CatalogEntry e = catalog_entry(name);
    std::string text = emit_text(triple_to_json(catalog_input(e)));
    if (action == "show") {
        std::cout << text;
        return 0;
    }
    write_file(path, text);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tensor hierarchies of Lie-Leibniz triples"};
    app.require_subcommand(1);

    std::string path, out, src, dst, morph, cat_action, cat_name, cat_path;
    int max_degree = 6;
    bool with_homology = false;

    auto* validate = app.add_subcommand("validate", "check the triple constraints");
    validate->add_option("path", path, "triple file or catalog name")->required();

    auto* classify = app.add_subcommand("classify", "print the classification flags");
    classify->add_option("path", path, "triple file or catalog name")->required();

    auto* build = app.add_subcommand("build", "build the tensor hierarchy");
    build->add_option("path", path, "triple file or catalog name")->required();
    build->add_option("--max-degree", max_degree, "truncation depth (default 6)");
    build->add_option("--out", out, "output file (stdout when absent)");

    auto* verify = app.add_subcommand("verify", "verify the dgLa axioms");
    verify->add_option("path", path, "triple file or catalog name")->required();
    verify->add_option("--max-degree", max_degree, "truncation depth (default 6)");
    verify->add_flag("--homology", with_homology, "print homology ranks and conjecture status");

    auto* morphism = app.add_subcommand("morphism", "induce a dgLa morphism");
    morphism->add_option("src", src, "source triple")->required();
    morphism->add_option("dst", dst, "target triple")->required();
    morphism->add_option("morph", morph, "morphism file (phi, chi)")->required();
    morphism->add_option("--max-degree", max_degree, "truncation depth (default 6)");
    morphism->add_option("--out", out, "write the induced morphism here");

    auto* cat = app.add_subcommand("catalog", "built-in example triples");
    cat->add_option("action", cat_action, "list | show | emit")->required();
    cat->add_option("name", cat_name, "catalog entry");
    cat->add_option("path", cat_path, "output file for emit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(path);
        if (classify->parsed())
            return cmd_classify(path);
        if (build->parsed())
            return cmd_build(path, max_degree, out);
        if (verify->parsed())
            return cmd_verify(path, max_degree, with_homology);
        if (morphism->parsed())
            return cmd_morphism(src, dst, morph, max_degree, out);
        if (cat->parsed()) {
            if (cat_action != "list" && cat_action != "show" && cat_action != "emit") {
                std::cerr << "error: unknown catalog action " << cat_action << "\n";
                return EXIT_PARSE;
            }
            if (cat_action != "list" && cat_name.empty()) {
                std::cerr << "error: catalog " << cat_action << " needs a name\n";
                return EXIT_PARSE;
            }
            if (cat_action == "emit" && cat_path.empty()) {
                std::cerr << "error: catalog emit needs an output path\n";
                return EXIT_PARSE;
            }
            return cmd_catalog(cat_action, cat_name, cat_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (is_parse_error(e))
            return EXIT_PARSE;
        if (e.code == "KernelNotPreserved")
            return EXIT_KERNEL;
        if (validate->parsed() || classify->parsed() || morphism->parsed())
            return EXIT_CONSTRAINT;
        return EXIT_PIPELINE;
    }
    return 0;
}
