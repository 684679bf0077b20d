// Drives the fic executable end to end and checks outputs and exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(FIC_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("fic_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
        ASSERT_EQ(run("synth --k 3 --n 300 --d1 2 --d2 2 --seed 4 --out " + q("data.csv")).code, 0);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string q(const std::string& name) const { return "'" + (dir_ / name).string() + "'"; }
    fs::path path(const std::string& name) const { return dir_ / name; }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, SynthWritesHeaderAndRows) {
    const auto text = slurp(path("data.csv"));
    EXPECT_EQ(text.substr(0, text.find('\n')), "x0,x1,x2,x3,label");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 301);
}

TEST_F(Cli, FitPrintsReportAndSavesModel) {
    for (const char* alg : {"KM-P1", "KM-C1", "FIC-FT", "FIC-DR", "FIC-DA", "FIC-MR"}) {
        const auto r = run(std::string("fit --algorithm ") + alg + " --data " + q("data.csv") +
                           " --d1 2 --d2 2 --label label --k 3 --ra 0.4 --seed 3 --model-out " + q("m.json"));
        ASSERT_EQ(r.code, 0) << alg;
        const auto doc = nlohmann::json::parse(r.out);
        EXPECT_EQ(doc["algorithm"], alg);
        EXPECT_TRUE(doc.contains("test"));
        EXPECT_TRUE(fs::exists(path("m.json")));
    }
    const auto mr = nlohmann::json::parse(run("fit --algorithm FIC-MR --data " + q("data.csv") +
                                              " --d1 2 --d2 2 --label label --k 3 --theta 10")
                                              .out);
    EXPECT_TRUE(mr.contains("adaptation_risk"));
    EXPECT_GE(mr["risk"].get<double>(), mr["data_risk"].get<double>());
}

TEST_F(Cli, EvaluateSavedModel) {
    ASSERT_EQ(run("fit --algorithm FIC-DA --data " + q("data.csv") +
                  " --d1 2 --d2 2 --label label --k 3 --ra 1 --model-out " + q("m.json"))
                  .code,
              0);
    const auto r = run("evaluate --model " + q("m.json") + " --test " + q("data.csv") + " --d1 2 --d2 2 --label label");
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_GT(doc["acc"].get<double>(), 0.5);
    EXPECT_LE(doc["nmi"].get<double>(), 1.0);
}

TEST_F(Cli, ReconstructWritesCompletedPreviousStage) {
    write("prev.csv", "a,label\n0.1,0\n10.1,1\n");
    write("curr.csv", "a,b,label\n0,5,0\n0.2,5.2,0\n10,-3,1\n10.2,-3.2,1\n");
    const auto r = run("reconstruct --prev " + q("prev.csv") + " --curr " + q("curr.csv") +
                       " --d1 1 --d2 1 --label label --k 2 --rel-tol 0 --out " + q("rec.csv"));
    ASSERT_EQ(r.code, 0);
    std::istringstream in(slurp(path("rec.csv")));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x0,x1,label");
    const double expected[2][3] = {{0.1, 5.1, 0}, {10.1, -3.1, 1}};
    for (const auto& row : expected) {
        ASSERT_TRUE(std::getline(in, line));
        std::istringstream cells(line);
        std::string cell;
        for (double want : row) {
            ASSERT_TRUE(std::getline(cells, cell, ','));
            EXPECT_NEAR(std::stod(cell), want, 1e-12) << line;
        }
    }
    EXPECT_FALSE(std::getline(in, line));
}

TEST_F(Cli, ExperimentIsByteDeterministic) {
    write("cfg.json", R"({"dataset": {"csv": {"path": "data.csv", "d1": 2, "d2": 2, "label": "label"}},
        "k": 3, "runs": 2, "ra_grid": [0.2], "theta_grid": [1, 100], "kmeans": {"restarts": 2},
        "discrepancy_candidates": 2, "output": {"structured": "a.json", "table": "a.csv"}})");
    ASSERT_EQ(run("experiment --config " + q("cfg.json")).code, 0);
    ASSERT_EQ(run("experiment --config " + q("cfg.json") + " --structured " + q("b.json")).code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    const auto table = slurp(path("a.csv"));
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1 + 6 * 3);
}

TEST_F(Cli, ExperimentPrintsTableWithoutOutputs) {
    write("cfg.json", R"({"dataset": {"synthetic": {"k": 2, "n": 100, "d1": 1, "d2": 1, "seed": 3}},
        "runs": 1, "ra_grid": [0.5], "algorithms": ["FIC-DA"], "kmeans": {"restarts": 1}})");
    const auto r = run("experiment --config " + q("cfg.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "algorithm,ra,metric,mean,std,value");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST_F(Cli, DiscrepancyOfIdenticalSamplesIsZero) {
    write("p.csv", "a,b\n0,1\n2,3\n5,5\n");
    const auto r = run("discrepancy --reconstructed " + q("p.csv") + " --current " + q("p.csv") +
                       " --dim 2 --random-candidates 3 --k 2 --seed 1");
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["value"].get<double>(), 0.0);
    EXPECT_EQ(doc["candidate_count"].get<int>(), 6);

    write("c.csv", "a,b\n10,10\n");
    write("w.csv", "w\n1\n1\n2\n");
    const auto weighted = run("discrepancy --reconstructed " + q("p.csv") + " --current " + q("c.csv") +
                              " --dim 2 --weights " + q("w.csv") + " --random-candidates 1 --k 1");
    EXPECT_EQ(weighted.code, 0);
}

TEST_F(Cli, ExitCodes) {
    // Usage problems and configuration errors.
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("fit --algorithm FIC-DA --data " + q("data.csv") + " --d1 2").code, 2);
    EXPECT_EQ(run("fit --algorithm FIC-XX --data " + q("data.csv") + " --d1 2 --d2 2 --k 3").code, 2);
    write("bad.json", R"({"dataset": {"synthetic": {}}, "unknown_key": 1})");
    EXPECT_EQ(run("experiment --config " + q("bad.json")).code, 2);
    EXPECT_EQ(run("experiment --config " + q("missing.json")).code, 2);

    // Data errors.
    EXPECT_EQ(run("fit --algorithm FIC-DA --data " + q("nope.csv") + " --d1 2 --d2 2 --k 3").code, 3);
    write("nan.csv", "a,b\n0,NaN\n1,2\n");
    EXPECT_EQ(run("fit --algorithm FIC-DA --data " + q("nan.csv") + " --d1 1 --d2 1 --k 1").code, 3);
    EXPECT_EQ(run("fit --algorithm FIC-DA --data " + q("data.csv") + " --d1 2 --d2 1 --label label --k 3").code, 3);
    write("model.json", "{not json");
    EXPECT_EQ(run("evaluate --model " + q("model.json") + " --test " + q("data.csv") + " --d1 2 --d2 2 --label label")
                  .code,
              3);

    // Numeric errors: more clusters than current rows.
    EXPECT_EQ(run("fit --algorithm FIC-DA --data " + q("data.csv") + " --d1 2 --d2 2 --label label --k 50").code, 4);

    EXPECT_EQ(run("--help").code, 0);
}
