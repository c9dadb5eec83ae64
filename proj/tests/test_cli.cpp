#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mkt/cli.hpp"

#include <json.hpp>

#include <regex>
#include <sstream>

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = mkt::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string normalize_elapsed(const std::string& s) {
    static const std::regex elapsed(R"("elapsed_ms":\d+)");
    return std::regex_replace(s, elapsed, R"("elapsed_ms":0)");
}

} // namespace

TEST_CASE("envelope shape and key order") {
    RunResult r = run_cli({"mobius", "--limit", "6"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "mobius");
    CHECK(j["status"] == "ok");
    CHECK(j["parameters"]["limit"] == 6);
    CHECK(j["results"]["mu"] == json::array({1, -1, -1, 0, -1, 1}));
    CHECK(j["results"]["mertens_prefix"][5] == -1);
    CHECK(j.contains("elapsed_ms"));

    // fixed key order in the serialized envelope
    auto cmd_pos = r.out.find("\"command\"");
    auto par_pos = r.out.find("\"parameters\"");
    auto res_pos = r.out.find("\"results\"");
    auto sta_pos = r.out.find("\"status\"");
    auto ela_pos = r.out.find("\"elapsed_ms\"");
    CHECK(cmd_pos < par_pos);
    CHECK(par_pos < res_pos);
    CHECK(res_pos < sta_pos);
    CHECK(sta_pos < ela_pos);
}

TEST_CASE("identical invocations are byte-identical modulo elapsed time") {
    RunResult a = run_cli({"spectrum", "--grid", "12"});
    RunResult b = run_cli({"spectrum", "--grid", "12"});
    CHECK(a.code == 0);
    CHECK(normalize_elapsed(a.out) == normalize_elapsed(b.out));

    RunResult c = run_cli({"witness", "--u", "-1", "--extra", "1"});
    RunResult d = run_cli({"witness", "--u", "-1", "--extra", "1"});
    CHECK(normalize_elapsed(c.out) == normalize_elapsed(d.out));
}

TEST_CASE("identity subcommand") {
    RunResult r = run_cli({"identity", "--check", "eq12", "--range", "1..8"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "ok");
    CHECK(j["results"]["all_zero"] == true);
    auto& reports = j["results"]["reports"];
    CHECK(reports.size() == 8);
    CHECK(reports[0]["parameter"] == 1);
    CHECK(reports[0]["lhs"]["num"] == "3");
    CHECK(reports[0]["lhs"]["den"] == "2");
    for (const auto& rep : reports) {
        CHECK(rep["residual"]["num"] == "0");
        CHECK(rep["residual"]["den"] == "1");
    }

    RunResult m = run_cli({"identity", "--check", "mertens1897", "--range", "1..50"});
    CHECK(m.code == 0);
    CHECK(json::parse(m.out)["results"]["all_zero"] == true);

    RunResult bad = run_cli({"identity", "--check", "nope", "--range", "1..8"});
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.out)["status"] == "error");
    CHECK(!bad.err.empty());
}

TEST_CASE("identity csv format") {
    RunResult r = run_cli({"--format", "csv", "identity", "--check", "eq12", "--range", "1..3"});
    CHECK(r.code == 0);
    // --format may also follow the subcommand
    RunResult tail_flag = run_cli({"identity", "--check", "eq12", "--range", "1..3", "--format", "csv"});
    CHECK(tail_flag.code == 0);
    CHECK(tail_flag.out == r.out);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "parameter,lhs_num,lhs_den,rhs_num,rhs_den,residual_num,residual_den");
    std::string row1;
    std::getline(lines, row1);
    CHECK(row1 == "1,3,2,3,2,0,1");
    int rows = 1;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("spectrum subcommand and csv") {
    RunResult r = run_cli({"spectrum", "--grid", "2"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["positive_count"] == 1);
    CHECK(j["results"]["negative_count"] == 0);
    CHECK(j["results"]["eigenvalues"].size() == 2);
    CHECK(j["results"]["kernel_eigenvalue_estimates"].size() == 1);
    double top = j["results"]["eigenvalues"][0].get<double>();
    CHECK(top == doctest::Approx(0.5).epsilon(1e-13));

    CHECK(j["results"]["estimate_quality"] == "indicative");

    RunResult csv = run_cli({"--format", "csv", "spectrum", "--grid", "2"});
    std::istringstream lines(csv.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "index,eigenvalue,kernel_estimate");
    std::string row;
    std::getline(lines, row);
    CHECK(row.substr(0, 2) == "1,");
    CHECK(row.find(",,") == std::string::npos); // first row has an estimate
    std::getline(lines, row);
    CHECK(row.back() == ','); // near-zero eigenvalue: estimate column empty

    RunResult zero = run_cli({"spectrum", "--grid", "0"});
    CHECK(zero.code == 2);
    CHECK(json::parse(zero.out)["status"] == "error");
}

TEST_CASE("witness subcommand") {
    RunResult r = run_cli({"witness", "--u", "-1", "--extra", "0"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "ok");
    CHECK(j["results"]["instance"]["primes"] == json::array({"7"}));
    CHECK(j["results"]["instance"]["m"] == json::array({"5"}));
    CHECK(j["results"]["instance"]["n"] == "68");
    CHECK(j["results"]["passes"] == true);
    CHECK(j["results"]["verification"]["ok"] == true);
    CHECK(j["results"]["kernel_matrix"][0][0]["num"] == "13");
    CHECK(j["results"]["kernel_matrix"][0][0]["den"] == "98");
    CHECK(j["results"]["overlap_box_rel_error"].get<double>() <= 1e-10);

    RunResult q = run_cli({"witness", "--u", "1", "--extra", "2", "--q", "5"});
    CHECK(q.code == 2); // constructible, but fails the definiteness precondition
    CHECK(json::parse(q.out)["status"] == "error");

    RunResult bad_u = run_cli({"witness", "--u", "2", "--extra", "0"});
    CHECK(bad_u.code == 2);
}

TEST_CASE("kernel, l2 and mertens subcommands") {
    RunResult k = run_cli({"kernel", "--x", "7/10", "--y", "7/10", "--float"});
    CHECK(k.code == 0);
    json jk = json::parse(k.out);
    CHECK(jk["results"]["exact"]["num"] == "45");
    CHECK(jk["results"]["exact"]["den"] == "98");
    CHECK(jk["results"]["float"].get<double>() == doctest::Approx(45.0 / 98.0));

    RunResult k2 = run_cli({"kernel", "--x", "1", "--y", "1"});
    json jk2 = json::parse(k2.out);
    CHECK(jk2["results"]["exact"]["num"] == "1");
    CHECK(jk2["results"]["exact"]["den"] == "2");
    CHECK(!jk2["results"].contains("float"));

    RunResult oob = run_cli({"kernel", "--x", "3/2", "--y", "1/2"});
    CHECK(oob.code == 2);

    RunResult l2 = run_cli({"l2", "--grid", "3"});
    json jl = json::parse(l2.out);
    CHECK(jl["results"]["value"]["num"] == "17");
    CHECK(jl["results"]["value"]["den"] == "144");
    CHECK(jl["results"]["below_quarter"] == true);

    RunResult mert = run_cli({"mertens", "--at", "100"});
    json jm = json::parse(mert.out);
    CHECK(jm["results"]["mertens"] == 1);

    RunResult up = run_cli({"--format", "csv", "mertens", "--upto", "4"});
    CHECK(up.code == 0);
    CHECK(up.out == "k,mertens\n1,1\n2,0\n3,-1\n4,-1\n");

    RunResult mob = run_cli({"--format", "csv", "mobius", "--limit", "4"});
    CHECK(mob.out == "k,mu,mertens\n1,1,1\n2,-1,0\n3,-1,-1\n4,0,-1\n");

    RunResult neither = run_cli({"mertens"});
    CHECK(neither.code == 2);
}

TEST_CASE("invalid invocations exit with code 2") {
    RunResult unknown = run_cli({"frobnicate"});
    CHECK(unknown.code == 2);
    CHECK(!unknown.err.empty());

    RunResult badflag = run_cli({"mobius", "--limit", "6", "--frob"});
    CHECK(badflag.code == 2);

    RunResult nocmd = run_cli({});
    CHECK(nocmd.code == 2);

    RunResult badlimit = run_cli({"mobius", "--limit", "0"});
    CHECK(badlimit.code == 2);
    CHECK(json::parse(badlimit.out)["status"] == "error");

    RunResult nocsv = run_cli({"--format", "csv", "l2", "--grid", "3"});
    CHECK(nocsv.code == 2);

    RunResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("Usage") != std::string::npos);
}

TEST_CASE("exit code mapping") {
    CHECK(mkt::cli::exit_code_for_status("ok") == 0);
    CHECK(mkt::cli::exit_code_for_status("fail") == 1);
    CHECK(mkt::cli::exit_code_for_status("error") == 2);
}

TEST_CASE("floats serialize with 17 significant digits") {
    RunResult r = run_cli({"l2", "--grid", "3"});
    // 17/144 = 0.11805555555555555...
    CHECK(r.out.find("\"value_float\":0.11805555555555555") != std::string::npos);
}
