#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "qhc/cli.hpp"
#include "qhc/io.hpp"

using namespace qhc;
using qhc::io::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run_binary(const std::string& args) {
    const std::string cmd = std::string(QHC_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("qhc_cli_" + name)).string();
}

} // namespace

TEST_CASE("verify exit codes") {
    CHECK(run_binary("verify --gate half_adder5").code == cli::kOk);
    CHECK(run_binary("verify --gate full_adder8_typ --tol 0.05").code == cli::kOk);
    CHECK(run_binary("verify --gate me_half_adder3").code == cli::kOk);
    // wrong reading energy for the sum output
    CHECK(run_binary("verify --gate me_half_adder3 --reading 0:1:0.5 --reading 1:1:1.4142135623730951").code ==
          cli::kVerifyFailed);
    // three-fold kernel at E = 0 for input 111
    CHECK(run_binary("verify --gate me_full_adder5").code == cli::kVerifyFailed);
    CHECK(run_binary("verify --gate me_full_adder5 --lenient").code == cli::kOk);
}

TEST_CASE("usage errors") {
    CHECK(run_binary("frobnicate").code == cli::kUsage);
    CHECK(run_binary("verify").code == cli::kUsage);
    CHECK(run_binary("verify --gate no_such_family").code == cli::kUsage);
    CHECK(run_binary("count --n 0").code == cli::kUsage);
    CHECK(run_binary("--help").code == cli::kOk);
}

TEST_CASE("JSON outputs") {
    const Run c = run_binary("count --n 2");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out) == json::parse(R"({"equations":87,"variables":80})"));

    const Run g = run_binary("gaps --gate me_half_adder3");
    REQUIRE(g.code == 0);
    CHECK(json::parse(g.out).at("delta1").get<double>() == doctest::Approx(std::sqrt(2.0) - 1.0));

    const Run k = run_binary("classify --gate half_adder5");
    REQUIRE(k.code == 0);
    CHECK(json::parse(k.out).at("pass") == true);

    const Run o = run_binary("optimize-ha");
    REQUIRE(o.code == 0);
    CHECK(std::abs(json::parse(o.out).at("best_e").get<double>()) < 1e-12);
}

TEST_CASE("seeded solver output is deterministic") {
    const Run a = run_binary("solve-fa --seeds 4 --seed 7");
    const Run b = run_binary("solve-fa --seeds 4 --seed 7");
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    int records = 0;
    for (char ch : a.out) records += ch == '\n';
    CHECK(records == 4 * 8);
}

TEST_CASE("in-process run writes CSV files") {
    const std::string out = temp_path("fig11");
    const int code = cli::run(std::vector<std::string>{"transmission", "--gate", "me_half_adder3", "--format",
                                                       "csv", "-o", out});
    REQUIRE(code == cli::kOk);
    for (const char* bits : {"00", "01", "10", "11"}) {
        const std::string path = out + "_" + bits + ".csv";
        REQUIRE(std::filesystem::exists(path));
        const std::string text = io::read_file(path);
        CHECK(text.rfind("# h=4 epsilon=0.1 attach_state=1", 0) == 0);
        CHECK(text.find("energy_eV,T\n") != std::string::npos);
        std::filesystem::remove(path);
    }

    const std::string series = temp_path("fig6.csv");
    REQUIRE(cli::run(std::vector<std::string>{"evolve", "--gate", "half_adder5", "--input", "11", "--pair",
                                              "1", "--samples", "11", "--format", "csv", "-o", series}) == cli::kOk);
    const std::string text = io::read_file(series);
    CHECK(text.rfind("time_ps,pop_state_0", 0) == 0);
    CHECK(std::filesystem::exists(series + ".json"));
    std::filesystem::remove(series);
    std::filesystem::remove(series + ".json");
}
