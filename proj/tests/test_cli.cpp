#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "e2pi/decimal.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(E2PI_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("pi with a single term") {
    RunResult r = run_cli("pi --terms 1 --digits 10 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "pi");
    CHECK(j["results"]["estimate"].get<std::string>().substr(0, 6) == "2.6666");
    // error ~ 0.4749
    double err = std::stod(j["results"]["abs_error"].get<std::string>());
    CHECK(err == Catch::Approx(0.4749).margin(0.001));
}

TEST_CASE("json envelope is canonical and round-trips byte-identically") {
    for (const char* cmd : {"pi --terms 100 --format json", "e --n 10 --format json",
                            "verify --steps S5 --format json",
                            "convergence --target e --start 16 --count 3 --format json",
                            "bench --spec wallis --n 10 --strategies binsplit-rational --repeats 1 "
                            "--format json"}) {
        RunResult r = run_cli(cmd);
        REQUIRE(r.exit_code == 0);
        json j = json::parse(r.out);
        // exactly the five envelope keys
        REQUIRE(j.size() == 5);
        for (const char* key : {"command", "parameters", "results", "timing", "tool_version"})
            REQUIRE(j.contains(key));
        std::string again = j.dump() + "\n";
        REQUIRE(again == r.out);
    }
}

TEST_CASE("text and json carry identical numeric content") {
    RunResult j = run_cli("e --n 100 --digits 12 --format json");
    RunResult t = run_cli("e --n 100 --digits 12 --format text");
    REQUIRE(j.exit_code == 0);
    REQUIRE(t.exit_code == 0);
    json parsed = json::parse(j.out);
    std::string value = parsed["results"]["value"].get<std::string>();
    std::string err = parsed["results"]["abs_error"].get<std::string>();
    CHECK(t.out.find(value) != std::string::npos);
    CHECK(t.out.find(err) != std::string::npos);
}

TEST_CASE("e command values") {
    RunResult r = run_cli("e --n 1 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["value"].get<std::string>().substr(0, 3) == "2.0");
    double err = std::stod(j["results"]["abs_error"].get<std::string>());
    CHECK(err == Catch::Approx(0.71828).margin(0.001));

    r = run_cli("e --n 2 --format json");
    json j2 = json::parse(r.out);
    CHECK(j2["results"]["value"].get<std::string>().substr(0, 4) == "2.25");
}

TEST_CASE("verify exit codes") {
    RunResult ok = run_cli("verify --steps S5 --format json");
    CHECK(ok.exit_code == 0);

    RunResult unknown = run_cli("verify --steps S9");
    CHECK(unknown.exit_code == 2);

    RunResult mutated = run_cli(
        "verify --steps S5 --mutate even-over-odd-minus:1 --format json");
    CHECK(mutated.exit_code == 1);
}

TEST_CASE("verify csv has residual rows") {
    RunResult r = run_cli("verify --steps S5 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK((r.out.find("step,") != std::string::npos || r.out.find("n,") != std::string::npos));
    CHECK(r.out.find("S5") != std::string::npos);
    CHECK(r.out.find(",0,") != std::string::npos);  // exact residual column
}

TEST_CASE("convergence table shape") {
    RunResult r = run_cli("convergence --target pi --start 128 --count 4 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["results"]["rows"].size() == 4);
    CHECK(j["results"]["rows"][0]["n"] == "128");
    double order = std::stod(j["results"]["fitted_order"].get<std::string>());
    CHECK(order == Catch::Approx(1.0).margin(0.1));

    RunResult single = run_cli("convergence --target e --start 1 --count 1 --format json");
    REQUIRE(single.exit_code == 0);
    json js = json::parse(single.out);
    REQUIRE(js["results"]["rows"].size() == 1);
    CHECK(js["results"]["rows"][0]["local_order"] == "");

    RunResult bad = run_cli("convergence --target nonsense");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("bench validates and reports digests") {
    RunResult r = run_cli(
        "bench --spec wallis --n 1 --strategies naive-rational,binsplit-rational --repeats 1 "
        "--format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["digests_equal"] == "true");
    REQUIRE(j["results"]["rows"].size() == 2);
    CHECK(j["results"]["rows"][0]["digest"] == j["results"]["rows"][1]["digest"]);

    RunResult bad = run_cli("bench --spec wallis --n 10 --strategies warp-drive");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("pi --terms 0").exit_code == 2);
    CHECK(run_cli("pi --format yaml").exit_code == 2);
    CHECK(run_cli("convergence --ratio 3").exit_code == 2);
}

TEST_CASE("config file supplies defaults, flags override") {
    std::string conf = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                       "/e2pi_test.conf";
    {
        std::ofstream f(conf);
        f << "format=json\n" << "digits=8\n";
    }
    RunResult r = run_cli("--config " + conf + " e --n 4");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.front() == '{');  // config made json the default format
    json j = json::parse(r.out);
    CHECK(j["parameters"]["digits"] == "8");

    RunResult over = run_cli("--config " + conf + " e --n 4 --format text");
    REQUIRE(over.exit_code == 0);
    CHECK(over.out.front() != '{');  // flag overrides config
    std::remove(conf.c_str());
}

TEST_CASE("pi auto terms refuses infeasible digit targets") {
    RunResult r = run_cli("pi --digits 12 --terms auto");
    CHECK(r.exit_code == 1);
}

TEST_CASE("accelerated pi reaches 1e-10") {
    RunResult r = run_cli("pi --accelerate --levels 3 --terms 4096 --digits 15 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    double err = std::stod(j["results"]["abs_error"].get<std::string>());
    CHECK(err <= 1e-10);
}
