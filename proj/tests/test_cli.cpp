#include "cli.hpp"

#include "tsboot/csv.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = tsboot::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> records(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
    return out;
}

class Workdir {
public:
    Workdir() {
        dir_ = fs::temp_directory_path() / ("tsboot_cli_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(dir_);
    }
    ~Workdir() { fs::remove_all(dir_); }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

std::string arange_csv(int n) {
    std::string s = "x\n";
    for (int i = 0; i < n; ++i) s += std::to_string(i) + "\n";
    return s;
}

}  // namespace

TEST_CASE("bootstrap emits metadata then one record per replicate") {
    Workdir w;
    const std::string in = w.write("x.csv", arange_csv(10));
    const Result r = invoke({"bootstrap", "--input", in, "--method", "MovingBlock", "--block-length",
                             "3", "--n-bootstraps", "3", "--seed", "42", "--return-indices"});
    REQUIRE(r.code == 0);
    const auto recs = records(r.out);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0]["type"] == "metadata");
    CHECK(recs[0]["format_version"] == 1);
    CHECK(recs[0]["n"] == 10);
    CHECK(recs[0]["d"] == 1);
    CHECK(recs[0]["seed"] == 42);
    CHECK(recs[0]["n_bootstraps"] == 3);
    CHECK(recs[0]["spec"]["method"] == "MovingBlock");
    CHECK(recs[0]["spec"]["block_length"] == 3);
    for (int k = 1; k <= 3; ++k) {
        CHECK(recs[k]["type"] == "replicate");
        CHECK(recs[k]["ordinal"] == k - 1);
        CHECK(recs[k]["values"].size() == 10);
        CHECK(recs[k]["indices"].size() == 10);
    }
}

TEST_CASE("bootstrap output is byte-identical across runs and thread counts") {
    Workdir w;
    const std::string in = w.write("x.csv", arange_csv(50));
    const std::vector<std::string> base = {"bootstrap", "--input", in, "--method", "StationaryBlock",
                                           "--n-bootstraps", "20", "--seed", "9"};
    const Result a = invoke(base);
    const Result b = invoke(base);
    std::vector<std::string> threaded = base;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const Result c = invoke(threaded);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("seed falls back to the environment") {
    Workdir w;
    const std::string in = w.write("x.csv", arange_csv(20));
    ::setenv("TSBOOT_SEED", "1234", 1);
    const Result env = invoke({"bootstrap", "--input", in, "--n-bootstraps", "2", "--block-length", "4"});
    const Result flag = invoke(
        {"bootstrap", "--input", in, "--n-bootstraps", "2", "--block-length", "4", "--seed", "1234"});
    const Result over = invoke(
        {"bootstrap", "--input", in, "--n-bootstraps", "2", "--block-length", "4", "--seed", "1"});
    ::unsetenv("TSBOOT_SEED");
    CHECK(records(env.out)[0]["seed"] == 1234);
    CHECK(env.out == flag.out);
    CHECK(records(over.out)[0]["seed"] == 1);
}

TEST_CASE("config file with inline overrides") {
    Workdir w;
    const std::string in = w.write("x.csv", arange_csv(60));
    const std::string cfg = w.write("spec.toml",
                                    "method = \"BlockResidual\"\nblock_length = 20\nar_order = 1\n\n"
                                    "[inner]\nmethod = \"CircularBlock\"\nblock_length = 9\n");
    const Result r = invoke({"bootstrap", "--input", in, "--config", cfg, "--inner-block-length",
                             "12", "--n-bootstraps", "1"});
    REQUIRE(r.code == 0);
    const auto meta = records(r.out)[0];
    CHECK(meta["spec"]["method"] == "BlockResidual");
    CHECK(meta["spec"]["ar_order"] == 1);
    CHECK(meta["spec"]["inner"]["method"] == "CircularBlock");
    CHECK(meta["spec"]["inner"]["block_length"] == 12);

    const Result swapped = invoke({"bootstrap", "--input", in, "--config", cfg, "--method",
                                   "MovingBlock", "--block-length", "5", "--n-bootstraps", "1"});
    CHECK(swapped.code == 3);
}

TEST_CASE("exit codes and single-line diagnostics") {
    Workdir w;
    const std::string in = w.write("x.csv", arange_csv(10));

    const Result missing = invoke({"bootstrap", "--input", w.path("absent.csv")});
    CHECK(missing.code == 2);
    CHECK(std::count(missing.err.begin(), missing.err.end(), '\n') == 1);

    const Result bad_csv = invoke({"bootstrap", "--input", w.write("bad.csv", "x\n1\nfoo\n")});
    CHECK(bad_csv.code == 2);

    const Result nan_csv = invoke({"bootstrap", "--input", w.write("nan.csv", "1\nnan\n3\n")});
    CHECK(nan_csv.code == 2);

    const Result too_long = invoke({"bootstrap", "--input", in, "--block-length", "50"});
    CHECK(too_long.code == 3);
    CHECK(too_long.err.find("block length exceeds series length") != std::string::npos);
    CHECK(std::count(too_long.err.begin(), too_long.err.end(), '\n') == 1);

    CHECK(invoke({"bootstrap", "--input", in, "--method", "Bogus"}).code == 3);
    CHECK(invoke({"bootstrap", "--input", in, "--config", w.path("absent.toml")}).code == 3);
    CHECK(invoke({"bootstrap", "--input", in, "--config", w.write("bad.toml", "block_length = 0\n")}).code == 3);
    CHECK(invoke({"frobnicate"}).code == 2);

    const Result std_const = invoke({"bootstrap", "--input", w.write("c.csv", "2\n2\n2\n2\n2\n2\n"),
                                     "--method", "WholeStatisticPreserving", "--statistic", "Std"});
    CHECK(std_const.code == 4);
}

TEST_CASE("check subcommand") {
    const Result ok = invoke({"check", "--method", "MovingBlock", "--block-length", "3"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("all checks passed") != std::string::npos);
    CHECK(ok.out.find("length: pass") != std::string::npos);

    const Result header = invoke({"check", "--method", "MovingBlock", "--n-bootstraps", "7"});
    CHECK(header.out.find("n_bootstraps=7") != std::string::npos);

    CHECK(invoke({"check", "--method", "StationaryBlock", "--geometric-p", "1.5"}).code == 3);
}

TEST_CASE("summarize and forecast records") {
    Workdir w;
    std::string csv = "a,b\n";
    for (int i = 0; i < 80; ++i) csv += std::to_string(i % 7) + "," + std::to_string((i * 3) % 11) + "\n";
    const std::string in = w.write("x.csv", csv);

    const Result s = invoke({"summarize", "--input", in, "--n-bootstraps", "50", "--coverage", "0.5",
                             "--coverage", "0.9", "--block-length", "5"});
    REQUIRE(s.code == 0);
    const auto srecs = records(s.out);
    REQUIRE(srecs.size() == 2);
    CHECK(srecs[1]["type"] == "summary");
    CHECK(srecs[1]["statistics"]["mean"].size() == 2);
    CHECK(srecs[1]["statistics"]["mean"][0]["intervals"].size() == 2);

    const Result f = invoke({"forecast", "--input", in, "--n-bootstraps", "30", "--horizon", "4",
                             "--method", "BlockResidual", "--inner-block-length", "10"});
    REQUIRE(f.code == 0);
    const auto frecs = records(f.out);
    REQUIRE(frecs.size() == 2);
    CHECK(frecs[1]["type"] == "forecast");
    CHECK(frecs[1]["horizon"] == 4);
    CHECK(frecs[1]["channels"][0]["point"].size() == 4);
    CHECK(frecs[1]["channels"][0]["bands"].size() == 2);
}

TEST_CASE("output file and CSV export round-trip") {
    Workdir w;
    const std::string in = w.write("x.csv", "v\n0.1\n0.2\n0.30000000000000004\n1e-300\n-7.25\n");
    const std::string out = w.path("reps.ndjson");
    const std::string prefix = w.path("rep_");
    const Result r = invoke({"bootstrap", "--input", in, "--output", out, "--n-bootstraps", "2",
                             "--block-length", "2", "--csv-prefix", prefix});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream file(out);
    std::stringstream text;
    text << file.rdbuf();
    const auto recs = records(text.str());
    REQUIRE(recs.size() == 3);

    for (int k = 0; k < 2; ++k) {
        const tsboot::TimeSeries back = tsboot::read_csv(prefix + std::to_string(k) + ".csv");
        REQUIRE(back.length() == 5);
        for (std::size_t t = 0; t < 5; ++t) {
            CHECK(back(t, 0) == recs[static_cast<std::size_t>(k) + 1]["values"][t][0].get<double>());
        }
        // The exported file is itself a valid CLI input.
        CHECK(invoke({"bootstrap", "--input", prefix + std::to_string(k) + ".csv", "--n-bootstraps",
                      "1", "--block-length", "2"})
                  .code == 0);
    }
}
