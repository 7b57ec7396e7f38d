#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = TRACELAB_CLI_PATH;

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "tracelab_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, const fs::path& capture = {}) {
    std::string cmd = kCli + " " + args;
    if (!capture.empty()) cmd += " > " + capture.string() + " 2>&1";
    else cmd += " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

} // namespace

TEST_CASE("cli usage errors exit with 2", "[cli]") {
    CHECK(run("") == 2);
    CHECK(run("construct --mode sparse-kk --r 1") == 2);       // missing --n
    CHECK(run("frobnicate") == 2);                             // unknown subcommand
    CHECK(run("verify --suite no-such-suite") == 2);
    CHECK(run("analyze --input " + (scratch() / "absent.txt").string()) == 2);
}

TEST_CASE("cli bounds table", "[cli]") {
    auto out = scratch() / "bounds.csv";
    REQUIRE(run("bounds --n 1024 --r 2 --r 1 --alpha 0.5 --alpha 1", out) == 0);
    auto text = slurp(out);
    CHECK(text.rfind("n,r,alpha,mu,lambda,lower_exponent,upper_exponent\n", 0) == 0);
    CHECK(text.find("1.70669") != std::string::npos);   // mu(2, 0.5)
    CHECK(text.find("1.169925") != std::string::npos);  // 2 lambda(0.5)
    CHECK(text.find("1024,1,1,1,1,1,1") != std::string::npos);  // everything is 1 at r=alpha=1

    auto filed = scratch() / "bounds_file.csv";
    REQUIRE(run("bounds --out " + filed.string()) == 0);
    CHECK(slurp(filed).find("1.70669") != std::string::npos);  // default r=2 alpha=0.5
}

TEST_CASE("cli construct writes family and report", "[cli]") {
    auto dir = scratch();
    auto fam = dir / "ub_family.txt";
    auto rep = dir / "ub_report.json";
    std::string base = "construct --mode trace-ub --n 256 --r 2 --sample-trials 200 "
                       "--exact-trace-trials 8 --seed 24301";
    REQUIRE(run(base + " --out " + fam.string() + " --report " + rep.string()) == 0);

    auto j = load_json(rep);
    CHECK(j["mode"] == "trace-ub");
    CHECK(j["x"] == 5);       // floor((mu-1) log2 256)
    CHECK(j["ell"] == 4096);  // ceil(2 * 256^2 / 2^5)
    CHECK(j["e1_holds"] == true);
    CHECK(j["family_size"].get<std::uint64_t>() >= 65536);
    CHECK(j["family_path"] == fam.string());
    CHECK(j.contains("x_estimate"));
    CHECK(j.contains("trace_estimate"));

    auto header = slurp(fam).substr(0, 32);
    CHECK(header.rfind("256 ", 0) == 0);

    SECTION("same seed, same bytes") {
        auto fam2 = dir / "ub_family_2.txt";
        auto rep2 = dir / "ub_report_2.json";
        REQUIRE(run(base + " --out " + fam2.string() + " --report " + rep2.string()) == 0);
        CHECK(slurp(fam2) == slurp(fam));
        auto a = load_json(rep);
        auto b = load_json(rep2);
        a.erase("family_path");
        b.erase("family_path");
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("cli construct defaults ell to the smallest admissible count", "[cli]") {
    auto dir = scratch();
    auto fam = dir / "kk_family.txt";
    auto rep = dir / "kk_report.json";
    REQUIRE(run("construct --mode sparse-kk --n 12 --r 0.8 --alpha 0.5 --k 3 --x 4 "
                "--relaxed --sample-trials 100 --out " +
                    fam.string() + " --report " + rep.string()) == 0);
    auto j = load_json(rep);
    CHECK(j["mode"] == "sparse-kk");
    CHECK(j["ell"] == 2);  // ceil(12^0.8 / C(4,3))
    CHECK(j["k"] == 3);
    CHECK(j["family_size"] == 8);
    CHECK(j["e1_holds"] == true);
    CHECK(j.contains("wp_estimate"));
}

TEST_CASE("cli construct failure modes", "[cli]") {
    // Strict regime refuses x > n^{1/6} with exit 2.
    CHECK(run("construct --mode sparse-kk --n 12 --r 0.8 --alpha 0.5 --k 3 --x 4") == 2);
    // Pigeonhole-impossible success event exhausts retries with exit 3.
    CHECK(run("construct --mode sparse-kk --n 4 --r 0.66 --alpha 0.5 --k 2 --x 2 "
              "--ell 12 --retries 1 --relaxed") == 3);
}

TEST_CASE("cli analyze", "[cli]") {
    auto dir = scratch();
    auto input = dir / "powerset3.txt";
    {
        std::ofstream out(input, std::ios::binary);
        out << "3 8\n\n0\n1\n2\n0 1\n0 2\n1 2\n0 1 2\n";
    }
    auto rep = dir / "analyze.json";
    REQUIRE(run("analyze --input " + input.string() + " --trace-value 2 --shadow 1 --wp 2 "
                "--sample-trace 50 --window 2 --report " + rep.string()) == 0);
    auto j = load_json(rep);
    CHECK(j["n"] == 3);
    CHECK(j["edges"] == 8);
    CHECK(j["uniform"].is_null());
    CHECK(j["min_edge_size"] == 0);
    CHECK(j["max_edge_size"] == 3);
    CHECK(j["vc"] == 3);  // small n: computed without asking
    CHECK(j["trace_value"] == 4);
    CHECK(j["shadow"] == 3);
    CHECK(j["wp"] == 4);
    CHECK(j["sampled_trace"]["window"] == 2);
    CHECK(j["sampled_trace"]["max"].get<std::uint64_t>() <= 4);

    auto broken = dir / "broken.txt";
    {
        std::ofstream out(broken, std::ios::binary);
        out << "nonsense\n";
    }
    CHECK(run("analyze --input " + broken.string()) == 2);
}

TEST_CASE("cli verify", "[cli]") {
    auto dir = scratch();
    auto rep = dir / "verify.json";
    auto log = dir / "verify.log";
    REQUIRE(run("verify --suite exponents --report " + rep.string() + " --witness-dir " +
                    dir.string(),
                log) == 0);
    auto j = load_json(rep);
    CHECK(j["pass"] == true);
    CHECK(j["failed"] == 0);
    CHECK(j["total"].get<int>() > 0);
    auto text = slurp(log);
    CHECK(text.find("[ok]") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);

    // A truncated run still exits 0 and marks the truncation in the report.
    auto rep2 = dir / "verify_trunc.json";
    REQUIRE(run("verify --suite kruskal-katona --max-families 2 --report " + rep2.string()) ==
            0);
    auto k = load_json(rep2);
    CHECK(k["pass"] == true);
    CHECK(slurp(rep2).find("truncation") != std::string::npos);
}
