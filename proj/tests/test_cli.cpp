#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <sys/wait.h>

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(HLIFT_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    auto d = fs::temp_directory_path() / ("hlift_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d / name;
}

fs::path exported(const std::string& ideal) {
    auto f = scratch("d12_" + ideal + ".json");
    if (!fs::exists(f)) REQUIRE(run("field export --disc 12 --prime 13 --ideal " + ideal + " -o " + f.string()).code == 0);
    return f;
}

}  // namespace

TEST_CASE("field export and validate") {
    auto f = exported("4+sqrt3");
    Json d = Json::parse(std::ifstream(f));
    CHECK(d["N"] == 2);
    CHECK(d["class_count"] == 2);
    CHECK(d["chi_c"] == 1);
    CHECK(d["chi_d"] == -1);
    auto v = run("field validate --field-data " + f.string());
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["violations"].empty());

    d["char_values"][1] = 1;
    auto bad = scratch("tampered.json");
    std::ofstream(bad) << d.dump();
    auto w = run("field validate --field-data " + bad.string());
    CHECK(w.code == 2);
    CHECK(w.out.find("CHARACTER") != std::string::npos);
    d["char_values"][1] = -1;
    d["chi_c"] = 0;
    std::ofstream(bad) << d.dump();
    CHECK(run("field validate --field-data " + bad.string()).code == 2);
}

TEST_CASE("evaluations") {
    auto f = exported("4+sqrt3").string();
    Json e = Json::parse(run("eisenstein eval --field-data " + f + " --tau i --s 0").out);
    CHECK(e["vanishing"] == true);
    CHECK(e["provenance"]["module"] == "eisenstein");
    Json e1 = Json::parse(run("eisenstein eval --field-data " + f + " --tau 0.5+1i --s 1").out);
    CHECK(std::fabs(e1["value"]["re"].get<double>()) > 1e-3);

    Json l = Json::parse(run("lfunc --disc 12 --s 0").out);
    CHECK(std::fabs(l["L"]["value"].get<double>() - 1.0 / 6) < 1e-12);

    Json a = Json::parse(run("lift alpha --field-data " + f + " --p 13").out);
    CHECK(std::fabs(a["kappa"]["rhs"].get<double>() - 1.8891648715) < 1e-9);
    CHECK(a["named_factors"].size() == 2);
    CHECK(a["kappa"]["zero"]["factor"] == "1/13");
}

TEST_CASE("csv output") {
    auto r = run("--format csv lfunc --disc 12 --s 0");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("key,value\n", 0) == 0);
    CHECK(r.out.find("provenance.module,lfunc") != std::string::npos);
}

TEST_CASE("report file") {
    auto out = scratch("report.json");
    CHECK(run("--out " + out.string() + " lfunc --disc 12 --s 2").code == 0);
    Json l = Json::parse(std::ifstream(out));
    CHECK(std::fabs(l["L"]["value"].get<double>() - 0.78130241289648629686 * 0.91596559417721901505) < 1e-10);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 64);
    CHECK(run("no-such-command").code == 64);
    CHECK(run("lfunc --disc").code == 64);
    CHECK(run("--format xml lfunc --disc 12").code == 64);
    CHECK(run("eisenstein eval --field-data /nonexistent/file.json --tau i --s 0").code == 2);
}

TEST_CASE("thread count does not change output") {
    auto f = exported("1").string();
    std::string cmd = " eisenstein eval --field-data " + f + " --tau 0.3+0.8i --s 0.7";
    auto a = run("--threads 1" + cmd), b = run("--threads 4" + cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
