#include "thx/io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace thx;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args)
{
    std::string cmd = std::string(THX_BIN_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    while (fgets(buf.data(), int(buf.size()), pipe))
        res.output += buf.data();
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path tmpdir()
{
    fs::path dir = fs::temp_directory_path() / "thx_cli_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST(CliCatalog, ListShowsAtLeastFourNames)
{
    RunResult r = run("catalog list");
    EXPECT_EQ(r.exit_code, 0);
    int names = 0;
    for (const auto& e : catalog())
        if (r.output.find(e.name) != std::string::npos)
            ++names;
    EXPECT_GE(names, 4);
}

TEST(CliCatalog, ShowHeisenbergMatchesDefinition)
{
    RunResult r = run("catalog show heisenberg_leibniz");
    EXPECT_EQ(r.exit_code, 0);
    json j = json::parse(r.output);
    EXPECT_EQ(j["v"]["dim"], 2);
    EXPECT_EQ(j["g"]["dim"], 1);
    EXPECT_EQ(j["rho"][0][1][0], "1");
    EXPECT_EQ(j["theta"][0][0], "1");
}

TEST(CliCatalog, EmitValidateRoundTrip)
{
    fs::path file = tmpdir() / "heis.json";
    RunResult e = run("catalog emit heisenberg_leibniz " + file.string());
    EXPECT_EQ(e.exit_code, 0);
    RunResult v = run("validate " + file.string());
    EXPECT_EQ(v.exit_code, 0) << v.output;
    RunResult unknown = run("catalog show nope");
    EXPECT_EQ(unknown.exit_code, 3);
}

TEST(CliValidate, CatalogEntriesPass)
{
    for (const auto& e : catalog()) {
        RunResult r = run("validate " + e.name);
        EXPECT_EQ(r.exit_code, 0) << e.name << "\n" << r.output;
    }
}

TEST(CliValidate, MalformedRationalExitsThree)
{
    fs::path file = tmpdir() / "bad_rat.json";
    std::string text = run("catalog show heisenberg_leibniz").output;
    size_t pos = text.find("\"1\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 3, "\"1/0\"");
    std::ofstream(file) << text;
    RunResult r = run("validate " + file.string());
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.output.find("ParseError"), std::string::npos);
}

TEST(CliValidate, ConstraintViolationExitsTwo)
{
    // theta with Theta(f) = t violates the quadratic constraint
    fs::path file = tmpdir() / "bad_theta.json";
    json j = json::parse(run("catalog show heisenberg_leibniz").output);
    j["theta"][0][1] = "1";
    std::ofstream(file) << j.dump(1) << "\n";
    RunResult r = run("validate " + file.string());
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.output.find("QuadraticConstraintViolation"), std::string::npos);
}

TEST(CliValidate, OptionalLeibnizCrossCheck)
{
    // a correct product tensor is accepted, a wrong one exits 2
    json j = json::parse(run("catalog show heisenberg_leibniz").output);
    json leib = json::array();
    for (int i = 0; i < 2; ++i) {
        json li = json::array();
        for (int jj = 0; jj < 2; ++jj)
            li.push_back(json::array({"0", "0"}));
        leib.push_back(li);
    }
    leib[0][0][1] = "1"; // e o e = f
    j["leibniz"] = leib;
    fs::path good = tmpdir() / "leib_good.json";
    std::ofstream(good) << j.dump(1) << "\n";
    EXPECT_EQ(run("validate " + good.string()).exit_code, 0);

    j["leibniz"][1][1][0] = "1"; // bogus f o f = e
    fs::path bad = tmpdir() / "leib_bad.json";
    std::ofstream(bad) << j.dump(1) << "\n";
    RunResult r = run("validate " + bad.string());
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.output.find("LeibnizMismatch"), std::string::npos);
}

TEST(CliVerify, OutputIdenticalAcrossThreadCounts)
{
    setenv("THX_THREADS", "1", 1);
    RunResult r1 = run("verify nonstringent_swap --max-degree 4");
    setenv("THX_THREADS", "4", 1);
    RunResult r4 = run("verify nonstringent_swap --max-degree 4");
    unsetenv("THX_THREADS");
    EXPECT_EQ(r1.exit_code, 0);
    EXPECT_EQ(r1.output, r4.output);
}

TEST(CliClassify, FlagsForCatalog)
{
    RunResult cm = run("classify crossed_module_aff1");
    EXPECT_EQ(cm.exit_code, 0);
    EXPECT_NE(cm.output.find("is_lie_V:          yes"), std::string::npos);
    EXPECT_NE(cm.output.find("is_crossed_module: yes"), std::string::npos);

    RunResult h = run("classify heisenberg_leibniz");
    EXPECT_EQ(h.exit_code, 0);
    EXPECT_NE(h.output.find("is_lie_V:          no"), std::string::npos);
    EXPECT_NE(h.output.find("is_strict:         yes"), std::string::npos);
    EXPECT_NE(h.output.find("is_stringent:      yes"), std::string::npos);
    EXPECT_NE(h.output.find("dim r_theta:          1"), std::string::npos);

    RunResult ns = run("classify nonstringent_swap");
    EXPECT_NE(ns.output.find("is_stringent:      no"), std::string::npos);
}

TEST(CliBuild, DeterministicOutput)
{
    fs::path f1 = tmpdir() / "b1.json";
    fs::path f2 = tmpdir() / "b2.json";
    EXPECT_EQ(run("build heisenberg_leibniz --max-degree 4 --out " + f1.string()).exit_code, 0);
    EXPECT_EQ(run("build heisenberg_leibniz --max-degree 4 --out " + f2.string()).exit_code, 0);
    EXPECT_EQ(read_file(f1.string()), read_file(f2.string()));
}

TEST(CliBuild, DeterministicAcrossThreadCounts)
{
    fs::path f1 = tmpdir() / "t1.json";
    fs::path f2 = tmpdir() / "t3.json";
    setenv("THX_THREADS", "1", 1);
    EXPECT_EQ(run("build nonstringent_swap --max-degree 4 --out " + f1.string()).exit_code, 0);
    setenv("THX_THREADS", "3", 1);
    EXPECT_EQ(run("build nonstringent_swap --max-degree 4 --out " + f2.string()).exit_code, 0);
    unsetenv("THX_THREADS");
    EXPECT_EQ(read_file(f1.string()), read_file(f2.string()));
}

TEST(CliBuild, RoundTripIsAFixedPoint)
{
    fs::path f1 = tmpdir() / "rt.json";
    ASSERT_EQ(run("build nonstringent_swap --max-degree 3 --out " + f1.string()).exit_code, 0);
    std::string text = read_file(f1.string());
    HierarchyFile f = hierarchy_from_json(parse_json_text(text));
    EXPECT_EQ(emit_text(hierarchy_to_json(f)), text);
}

TEST(CliBuild, CrossedModuleDims)
{
    RunResult r = run("build crossed_module_aff1 --max-degree 5");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    HierarchyFile f = hierarchy_from_json(parse_json_text(r.output));
    EXPECT_EQ(f.max_degree, 5);
    // dims from degree -5 to +1: 0 0 0 0 2 2 1
    EXPECT_EQ(f.dims, (std::vector<int>{0, 0, 0, 0, 2, 2, 1}));
}

TEST(CliBuild, AbelianDims)
{
    RunResult r = run("build abelian --max-degree 3");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    HierarchyFile f = hierarchy_from_json(parse_json_text(r.output));
    EXPECT_EQ(f.dims, (std::vector<int>{0, 0, 1, 1, 0}));
}

TEST(CliBuild, GoldenHeisenbergDepth4)
{
    RunResult r = run("build heisenberg_leibniz --max-degree 4");
    ASSERT_EQ(r.exit_code, 0);
    std::string golden_path = std::string(THX_GOLDEN_DIR) + "/heisenberg_leibniz_n4.json";
    EXPECT_EQ(r.output, read_file(golden_path));
}

TEST(CliVerify, CatalogPassesAtDepth4)
{
    for (const auto& e : catalog()) {
        RunResult r = run("verify " + e.name + " --max-degree 4");
        EXPECT_EQ(r.exit_code, 0) << e.name << "\n" << r.output;
        EXPECT_EQ(r.output.find("FAIL"), std::string::npos) << e.name;
    }
}

TEST(CliVerify, HomologyStatusLine)
{
    RunResult r = run("verify heisenberg_leibniz --max-degree 4 --homology");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("H_{-2} = 0: yes"), std::string::npos);
    EXPECT_NE(r.output.find("partial_{-1} injective: yes"), std::string::npos);
}

TEST(CliVerify, FaultInjectedFileExitsFive)
{
    // rho(t) f = e breaks the quadratic constraint; verify reports the
    // failed check with its witness and exits 5
    fs::path file = tmpdir() / "fault.json";
    json j = json::parse(run("catalog show heisenberg_leibniz").output);
    j["rho"][0][0][1] = "1";
    std::ofstream(file) << j.dump(1) << "\n";
    RunResult r = run("verify " + file.string() + " --max-degree 3");
    EXPECT_EQ(r.exit_code, 5);
    EXPECT_NE(r.output.find("FAIL"), std::string::npos);
    EXPECT_NE(r.output.find("witness"), std::string::npos);
}

TEST(CliMorphism, ScalingFamilyPasses)
{
    fs::path mfile = tmpdir() / "scale2.json";
    std::ofstream(mfile) << R"({"phi": [["2"]], "chi": [["2", "0"], ["0", "4"]]})" << "\n";
    RunResult r = run("morphism heisenberg_leibniz heisenberg_leibniz " + mfile.string()
                      + " --max-degree 3");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
}

TEST(CliMorphism, IdentityIntoNonstringentExitsSix)
{
    fs::path mfile = tmpdir() / "id3.json";
    std::ofstream(mfile)
        << R"({"phi": [["1","0"],["0","1"]], "chi": [["1","0","0"],["0","1","0"],["0","0","1"]]})"
        << "\n";
    RunResult r = run("morphism nonstringent_swap nonstringent_swap " + mfile.string()
                      + " --max-degree 3");
    EXPECT_EQ(r.exit_code, 6);
    EXPECT_NE(r.output.find("KernelNotPreserved"), std::string::npos);
}

TEST(CliMorphism, EmitsInducedMorphism)
{
    fs::path mfile = tmpdir() / "scale3.json";
    fs::path ofile = tmpdir() / "induced.json";
    std::ofstream(mfile) << R"({"phi": [["3"]], "chi": [["3", "0"], ["0", "9"]]})" << "\n";
    RunResult r = run("morphism heisenberg_leibniz heisenberg_leibniz " + mfile.string()
                      + " --max-degree 3 --out " + ofile.string());
    EXPECT_EQ(r.exit_code, 0) << r.output;
    json j = json::parse(read_file(ofile.string()));
    EXPECT_EQ(j["format"], "thx-dgla-morphism");
    // degree -2 component is multiplication by 9
    for (const auto& comp : j["components"])
        if (comp["degree"] == -2)
            EXPECT_EQ(comp["matrix"][0][0], "9");
}
