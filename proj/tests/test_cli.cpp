#include "support.hpp"

#include "logmoduli/cli.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

RunResult run_fixture(const std::string& command, const std::string& name, CliOptions opts = {}) {
    return run(command, {fixture(name)}, opts);
}

Json parsed(const RunResult& r) { return Json::parse(r.output); }

}  // namespace

TEST_CASE("every graph command runs on a valid fixture") {
    for (const auto& command : cli_commands()) {
        if (command == "positivity") continue;
        CAPTURE(command);
        const RunResult r = run_fixture(command, "bad_ex1.json");
        CHECK(r.exit_code == kExitOk);
        const Json j = parsed(r);
        CHECK(j.at("command") == command);
        CHECK_FALSE(j.at("result").contains("error"));
    }
}

TEST_CASE("group report for the two-line ghost") {
    const Json j = parsed(run_fixture("group", "two_line_ghost.json")).at("result");
    CHECK(j.at("kernel_rank") == 1);
    CHECK(j.at("cokernel_rank") == 2);
    CHECK(j.at("dim_G") == 2);
}

TEST_CASE("ob report carries the character values") {
    CliOptions opts;
    opts.characters_path = fixture("good_ex2_characters.json");
    const Json j = parsed(run_fixture("ob", "good_ex2.json", opts)).at("result");
    CHECK(j.at("ob").at("characters").at(0).at("value") == "-154/195");
    CHECK(j.at("ob").at("trivial") == false);
}

TEST_CASE("relation report names both conventions") {
    const Json j = parsed(run_fixture("ob", "bad_ex1.json")).at("result");
    REQUIRE(j.contains("relation"));
    CHECK(j.at("relation").at("o_v0").at("characters").at(0).at("value") == "3/2");
    CHECK(j.at("relation").at("o_v0_inverse").at("characters").at(0).at("value") == "2/3");
}

TEST_CASE("expect-trivial turns a nontrivial class into a violation") {
    CliOptions opts;
    opts.expect_trivial = true;
    CHECK(run_fixture("ob", "good_ex1_degenerate.json", opts).exit_code == kExitOk);
    CHECK(run_fixture("ob", "good_ex1.json", opts).exit_code == kExitViolation);
}

TEST_CASE("invalid graphs exit with a violation") {
    GraphDocument doc = load_fixture("two_line_ghost.json");
    doc.graph.vertex("v0").c1_log = 1;
    int code = -1;
    const Json j = run_document("validate", doc, {}, code);
    CHECK(code == kExitViolation);
    CHECK(j.at("result").dump().find("ghost_degree") != std::string::npos);
}

TEST_CASE("input problems exit 2") {
    CHECK(run_fixture("validate", "empty_graph.json").exit_code == kExitInput);
    CHECK(run("group", {"no_such_file.json"}, {}).exit_code == kExitInput);
    CHECK(run("frobnicate", {fixture("bad_ex1.json")}, {}).exit_code == kExitInput);
    CliOptions opts;
    opts.format = "xml";
    CHECK(run_fixture("group", "bad_ex1.json", opts).exit_code == kExitInput);
}

TEST_CASE("input errors carry a kind and a message") {
    const Json j = parsed(run_fixture("validate", "empty_graph.json"));
    const Json& err = j.at("result").at("error");
    CHECK(err.at("kind") == "structural");
    CHECK(err.at("path") == "vertices");
}

TEST_CASE("positivity needs a geometry profile") {
    CHECK(run_fixture("positivity", "bad_ex1.json").exit_code == kExitInput);
    CHECK(run_fixture("positivity", "mc_issue.json").exit_code == kExitOk);
}

TEST_CASE("profile-only documents report positivity") {
    const RunResult r = run_fixture("report", "hyperplane_profile.json");
    CHECK(r.exit_code == kExitOk);
    CHECK(parsed(r).at("result").contains("positivity"));
    CHECK(run_fixture("positivity", "hyperplane_profile.json").exit_code == kExitOk);
    const RunResult g = run_fixture("group", "hyperplane_profile.json");
    CHECK(g.exit_code == kExitInput);
    CHECK(parsed(g).at("result").at("error").at("kind") == "structural");
}

TEST_CASE("reports are deterministic and independent of the job count") {
    const std::vector<std::string> inputs = {fixture("two_line_ghost.json"), fixture("good_ex2.json"), fixture("mc_dep.json")};
    CliOptions one, many;
    many.jobs = 3;
    const RunResult a = run("report", inputs, one), b = run("report", inputs, many), c = run("report", inputs, one);
    CHECK(a.output == b.output);
    CHECK(a.output == c.output);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("documents round-trip through JSON") {
    for (const char* name : {"two_line_ghost.json", "good_ex2.json", "bad_ex1.json", "mc_dep.json", "mc_issue.json",
                             "p2_quartic.json", "hyperplane_profile.json"}) {
        CAPTURE(name);
        const Json once = to_json(load_fixture(name));
        const Json twice = to_json(parse_document(once));
        CHECK(once == twice);
        CHECK(parse_document(once).graph == load_fixture(name).graph);
    }
}

TEST_CASE("table rendering aligns one key per line") {
    const Json report = {{"command", "dims"}, {"result", {{"Q", 6}, {"ledger", {{"nodes", 3}}}}}};
    const std::string table = render_table(report);
    CHECK(table == "command" + std::string(14, ' ') + "dims\n" + "result.Q" + std::string(13, ' ') + "6\n" +
                       "result.ledger.nodes  3\n");
    std::istringstream in(table);
    std::string line;
    std::size_t column = std::string::npos;
    while (std::getline(in, line)) {
        const std::size_t pos = line.find_first_not_of(' ', line.find(' '));
        if (column == std::string::npos) column = pos;
        CHECK(pos == column);
    }
}
