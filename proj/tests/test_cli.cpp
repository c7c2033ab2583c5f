#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = LOCALMAP_CLI_PATH;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "localmap_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " > " + path_of("stdout.txt") + " 2> " +
                            path_of("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n' ? 1 : 0;
    return n;
}

std::size_t count_columns(const std::string& line) {
    std::size_t n = 1;
    for (char c : line) n += c == ',' ? 1 : 0;
    return n;
}

const std::string kSmallFit =
    " --phase1-iters 30 --phase2-iters 30 --phase3-iters 40 --threads 1";

}  // namespace

TEST_CASE("gen-blobs then embed produces the shape contract") {
    REQUIRE(run("gen-blobs --clusters 3 --points-per-cluster 30 --dim 6 --spread 20 --std 1"
                " --bridge-fraction 0 --seed 7 --out " + path_of("blobs.csv")) == 0);
    const std::string blob_text = slurp(path_of("blobs.csv"));
    CHECK(count_lines(blob_text) == 90);

    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 7 --out " +
                path_of("emb.csv") + kSmallFit) == 0);
    const std::string emb = slurp(path_of("emb.csv"));
    CHECK(count_lines(emb) == 90);
    CHECK(count_columns(emb.substr(0, emb.find('\n'))) == 3);
    CHECK(fs::exists(path_of("emb.csv.log.jsonl")));
    CHECK(fs::exists(path_of("emb.csv.report.json")));
}

TEST_CASE("embed modes differ but ablation flags reproduce pacmap bitwise") {
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 7 --mode pacmap"
                " --out " + path_of("emb_pac.csv") + kSmallFit) == 0);
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 7 --mode localmap"
                " --out " + path_of("emb_loc.csv") + kSmallFit) == 0);
    CHECK(slurp(path_of("emb_pac.csv")) != slurp(path_of("emb_loc.csv")));

    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 7 --mode localmap"
                " --no-nn-weighting --no-local-fp --out " + path_of("emb_ablated.csv") +
                kSmallFit) == 0);
    CHECK(slurp(path_of("emb_ablated.csv")) == slurp(path_of("emb_pac.csv")));
    CHECK(slurp(path_of("emb_ablated.csv.log.jsonl")) == slurp(path_of("emb_pac.csv.log.jsonl")));
    CHECK(slurp(path_of("emb_ablated.csv.report.json")) ==
          slurp(path_of("emb_pac.csv.report.json")));
}

TEST_CASE("embed is byte-identical across runs in deterministic mode") {
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 11 --out " +
                path_of("det1.csv") + kSmallFit) == 0);
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 11 --out " +
                path_of("det2.csv") + kSmallFit) == 0);
    CHECK(slurp(path_of("det1.csv")) == slurp(path_of("det2.csv")));
    CHECK(slurp(path_of("det1.csv.log.jsonl")) == slurp(path_of("det2.csv.log.jsonl")));
    CHECK(slurp(path_of("det1.csv.report.json")) == slurp(path_of("det2.csv.report.json")));
}

TEST_CASE("metrics reproduces the silhouette hand value and echoes provenance") {
    spit(path_of("hand.csv"), "0,0,0\n0,1,0\n10,0,1\n10,1,1\n");
    REQUIRE(run("metrics --input " + path_of("hand.csv") + " --out " + path_of("hand.report.json") +
                " --metrics-seed 42 --seed 99") == 0);
    const auto j = nlohmann::json::parse(slurp(path_of("hand.report.json")));
    CHECK(std::abs(j["silhouette"].get<double>() - 0.900249) < 1e-6);
    CHECK(j["seed_echo"].get<long long>() == 42);
    CHECK(j["config_echo"]["seed"].get<long long>() == 99);
    CHECK(j["config_echo"]["n_NN"].get<int>() == 10);
}

TEST_CASE("metrics rejects a single-class embedding") {
    spit(path_of("single.csv"), "0,0,1\n1,0,1\n2,0,1\n");
    CHECK(run("metrics --input " + path_of("single.csv")) != 0);
    const std::string err = slurp(path_of("stderr.txt"));
    CHECK(err.find("single class") != std::string::npos);
}

TEST_CASE("metrics with posthoc adds the accuracy field") {
    spit(path_of("posthoc.csv"),
         "0,0,0\n0.5,0,0\n1,0.5,0\n0.5,1,0\n0,1,0\n10,0,1\n10.5,0,1\n11,0.5,1\n10.5,1,1\n10,1,1\n");
    REQUIRE(run("metrics --input " + path_of("posthoc.csv") + " --posthoc --out " +
                path_of("posthoc.report.json")) == 0);
    const auto j = nlohmann::json::parse(slurp(path_of("posthoc.report.json")));
    CHECK(j["posthoc_accuracy"].get<double>() == 1.0);
}

TEST_CASE("simulate with zero NN probability prints zero ratios") {
    REQUIRE(run("simulate --n 500 1000 --p-nn 0 --seeds 5") == 0);
    const std::string table = slurp(path_of("stdout.txt"));
    std::istringstream lines(table);
    std::string header, row;
    std::getline(lines, header);
    int rows = 0;
    while (std::getline(lines, row)) {
        std::istringstream cells(row);
        double n, empirical, predicted;
        cells >> n >> empirical >> predicted;
        CHECK(empirical == 0.0);
        CHECK(predicted == 0.0);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("default simulate sweep tracks the prediction within 20 percent") {
    REQUIRE(run("simulate") == 0);
    std::istringstream lines(slurp(path_of("stdout.txt")));
    std::string header, row;
    std::getline(lines, header);
    int rows = 0;
    while (std::getline(lines, row)) {
        std::istringstream cells(row);
        double n, empirical, predicted;
        cells >> n >> empirical >> predicted;
        CHECK(std::abs(empirical - predicted) <= 0.2 * predicted);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("simulate is deterministic for a fixed seed") {
    REQUIRE(run("simulate --n 500 --seeds 5 --seed 3") == 0);
    const std::string first = slurp(path_of("stdout.txt"));
    REQUIRE(run("simulate --n 500 --seeds 5 --seed 3") == 0);
    CHECK(first == slurp(path_of("stdout.txt")));
    REQUIRE(run("simulate --n 500 --seeds 5 --seed 4") == 0);
    CHECK(first != slurp(path_of("stdout.txt")));
}

TEST_CASE("plot emits one circle per point with 5 percent margins") {
    spit(path_of("tri.csv"), "0,0,0\n1,0,1\n0,1,2\n");
    REQUIRE(run("plot --input " + path_of("tri.csv") + " --labels --out " + path_of("tri.svg")) ==
            0);
    const std::string svg = slurp(path_of("tri.svg"));
    std::size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        ++circles;
        pos += 7;
    }
    CHECK(circles == 3);
    CHECK(svg.find("viewBox=\"-0.05 -0.05 1.1 1.1\"") != std::string::npos);

    REQUIRE(run("plot --input " + path_of("tri.csv") + " --labels --out " + path_of("tri2.svg")) ==
            0);
    CHECK(svg == slurp(path_of("tri2.svg")));
}

TEST_CASE("plot without labels colors points gray") {
    spit(path_of("gray.csv"), "0,0\n1,1\n");
    REQUIRE(run("plot --input " + path_of("gray.csv") + " --out " + path_of("gray.svg")) == 0);
    CHECK(slurp(path_of("gray.svg")).find("#808080") != std::string::npos);
}

TEST_CASE("errors exit nonzero with a message") {
    CHECK(run("embed --input " + path_of("missing.csv") + " --out " + path_of("x.csv")) != 0);
    CHECK_FALSE(slurp(path_of("stderr.txt")).empty());

    spit(path_of("ragged.csv"), "1,2\n3\n");
    CHECK(run("embed --input " + path_of("ragged.csv") + " --out " + path_of("x.csv")) != 0);
    CHECK(slurp(path_of("stderr.txt")).find("row 2") != std::string::npos);
}

TEST_CASE("config file is the base and explicit flags override it") {
    spit(path_of("cfg.json"), R"({"n_NN": 5, "seed": 123, "phase3_iters": 40})");
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --config " +
                path_of("cfg.json") + " --seed 7 --out " + path_of("cfgtest.csv") +
                " --phase1-iters 30 --phase2-iters 30 --threads 1") == 0);
    const auto j = nlohmann::json::parse(slurp(path_of("cfgtest.csv.report.json")));
    CHECK(j["config_echo"]["n_NN"].get<int>() == 5);       // from file
    CHECK(j["config_echo"]["seed"].get<long long>() == 7);  // flag overrides file
    CHECK(j["config_echo"]["phase3_iters"].get<int>() == 40);

    spit(path_of("bad_cfg.json"), R"({"n_NN": 5, "unknown_knob": 1})");
    CHECK(run("embed --input " + path_of("blobs.csv") + " --labels --config " +
              path_of("bad_cfg.json") + " --out " + path_of("y.csv")) != 0);
    CHECK(slurp(path_of("stderr.txt")).find("unknown") != std::string::npos);
}

TEST_CASE("a run is replayed bit-identically from its report's config echo") {
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --seed 31 --n-nn 6"
                " --mn-ratio 0.4 --out " + path_of("orig.csv") + kSmallFit) == 0);
    const auto report = nlohmann::json::parse(slurp(path_of("orig.csv.report.json")));
    spit(path_of("echo.json"), report["config_echo"].dump());
    REQUIRE(run("embed --input " + path_of("blobs.csv") + " --labels --config " +
                path_of("echo.json") + " --threads 1 --out " + path_of("replay.csv")) == 0);
    CHECK(slurp(path_of("replay.csv")) == slurp(path_of("orig.csv")));
    CHECK(slurp(path_of("replay.csv.log.jsonl")) == slurp(path_of("orig.csv.log.jsonl")));
    CHECK(slurp(path_of("replay.csv.report.json")) == slurp(path_of("orig.csv.report.json")));
}

TEST_CASE("binary input is auto-detected") {
    REQUIRE(run("gen-blobs --clusters 3 --points-per-cluster 30 --dim 6 --spread 20 --std 1"
                " --bridge-fraction 0 --seed 7 --binary --out " + path_of("blobs.lmap")) == 0);
    REQUIRE(run("embed --input " + path_of("blobs.lmap") + " --seed 7 --out " +
                path_of("embbin.csv") + kSmallFit) == 0);
    CHECK(count_lines(slurp(path_of("embbin.csv"))) == 90);
}
