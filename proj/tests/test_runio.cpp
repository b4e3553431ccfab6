#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "grcim/runio.hpp"
#include "json.hpp"

using namespace grcim;

TEST_CASE("numeric formatting is stable") {
    CHECK(format_num(0.5) == "0.5");
    CHECK(format_num(16.3842) == "16.3842");
    CHECK(format_num(1659.35) == "1659.35");
    CHECK(format_num(0.0) == "0");
    CHECK(format_num(-2.25) == "-2.25");
    CHECK(format_num(1e-9) == "1e-09");
    CHECK(format_num(3.0) == "3");
}

TEST_CASE("csv writer emits commented metadata then the table") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({"1", "2.5"});
    t.add_row({"3", "x"});
    RunMeta m;
    m.tool = "demo";
    m.seed = 7;
    m.config = {{"dist", "uniform"}, {"rows", "32"}};

    std::ostringstream os;
    write_csv(os, t, m);
    CHECK(os.str() ==
          "# tool=demo\n"
          "# version=1.0.0\n"
          "# seed=7\n"
          "# dist=uniform\n"
          "# rows=32\n"
          "a,b\n"
          "1,2.5\n"
          "3,x\n");
}

TEST_CASE("csv output is byte identical across writes") {
    Table t;
    t.columns = {"v"};
    t.add_row({format_num(1.0 / 3.0)});
    RunMeta m;
    m.tool = "demo";
    std::ostringstream a, b;
    write_csv(a, t, m);
    write_csv(b, t, m);
    CHECK(a.str() == b.str());
}

TEST_CASE("json writer round trips through a parser") {
    Table t;
    t.columns = {"k", "v"};
    t.add_row({"alpha", "1.5"});
    RunMeta m;
    m.tool = "demo";
    m.seed = 11;
    m.config = {{"trials", "100"}};

    std::ostringstream os;
    write_json(os, t, m);
    auto j = nlohmann::json::parse(os.str());
    CHECK(j["meta"]["tool"] == "demo");
    CHECK(j["meta"]["version"] == kToolVersion);
    CHECK(j["meta"]["seed"] == 11);
    CHECK(j["meta"]["config"]["trials"] == "100");
    REQUIRE(j["columns"].size() == 2);
    CHECK(j["rows"][0][0] == "alpha");
    CHECK(j["rows"][0][1] == "1.5");
}

TEST_CASE("config files parse as trimmed key value pairs") {
    const char* path = "runio_test_tmp.cfg";
    {
        std::ofstream f(path);
        f << "# comment line\n"
          << "seed=42\n"
          << "trials = 1000\n"
          << "\n"
          << "dist=gauss-outliers   # trailing comment\n";
    }
    auto m = parse_config_file(path);
    std::remove(path);
    REQUIRE(m.size() == 3);
    CHECK(m.at("seed") == "42");
    CHECK(m.at("trials") == "1000");
    CHECK(m.at("dist") == "gauss-outliers");
}

TEST_CASE("missing config file throws") {
    CHECK_THROWS((void)parse_config_file("no_such_file_grcim.cfg"));
}
