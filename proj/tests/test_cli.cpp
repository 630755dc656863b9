#include "gsvm/cli.hpp"

#include "gsvm/csv_io.hpp"
#include "gsvm/fixtures.hpp"
#include "testutil.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace gsvm;
using json = nlohmann::ordered_json;
using testutil::vec;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string(::testing::TempDir()) + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST(CsvParse, FourPointDataset) {
    std::istringstream in("1,0,1\n0,1,1\n-1,0,-1\n0,-1,-1\n");
    const DataSet ds = parse_dataset_csv(in);
    ASSERT_EQ(ds.size(), 4u);
    EXPECT_EQ(ds.dim, 2);
    EXPECT_EQ(ds.points[0].y, 1);
    EXPECT_EQ(ds.points[2].y, -1);
    EXPECT_DOUBLE_EQ(ds.points[2].x[0], -1.0);
}

TEST(CsvParse, HeaderBlankLinesAndCrlf) {
    std::istringstream in("x1,x2,label\r\n\r\n1,0,1\r\n\n0,1,-1\r\n");
    const DataSet ds = parse_dataset_csv(in);
    ASSERT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds.points[1].y, -1);
}

TEST(CsvParse, HeaderOnlyIsAnError) {
    std::istringstream in("x1,x2,label\n");
    try {
        parse_dataset_csv(in);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "csv_parse");
    }
}

TEST(CsvParse, RowNumbersInDiagnostics) {
    std::istringstream bad_label("1,0,1\n1,0,2\n");
    try {
        parse_dataset_csv(bad_label);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("label"), std::string::npos);
    }

    std::istringstream ragged("1,0,1\n1,0,0,1\n");
    try {
        parse_dataset_csv(ragged);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("ragged"), std::string::npos);
    }

    std::istringstream non_numeric("1,zzz,1\n");
    EXPECT_THROW(parse_dataset_csv(non_numeric), Error);
}

TEST(CsvRoundTrip, ValueExact) {
    SplitMix64 rng(59);
    std::vector<LabeledPoint> pts;
    for (int i = 0; i < 12; ++i) {
        Vector x(3);
        x << rng.uniform(-100.0, 100.0), 0.1 + rng.uniform(0.0, 1.0) * 1e-14,
            rng.uniform(-1e6, 1e6);
        pts.emplace_back(x, i % 2 ? 1 : -1);
    }
    const DataSet ds(std::move(pts));
    std::istringstream back(dataset_to_csv(ds));
    const DataSet again = parse_dataset_csv(back);
    ASSERT_EQ(again.size(), ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        EXPECT_EQ(ds.points[i].y, again.points[i].y);
        EXPECT_EQ(ds.points[i].x, again.points[i].x);  // bit-exact
    }
}

TEST(Cli, ReproduceSingleExample) {
    const RunResult r = run_cli({"reproduce", "--example", "ex2_2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_EQ(report["command"], "reproduce");
    EXPECT_EQ(report["status"], "ok");
    EXPECT_TRUE(report["paper_match"].get<bool>());
    const auto& ex = report["result"]["examples"][0];
    EXPECT_EQ(ex["example"], "ex2_2");
    EXPECT_NEAR(ex["svm"]["w"][0].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(ex["svm"]["norm"].get<double>(), std::sqrt(2.0), 1e-9);
    EXPECT_TRUE(ex["matches_paper"].get<bool>());
}

TEST(Cli, ReproduceAllMatchesEverything) {
    const RunResult r = run_cli({"reproduce", "--example", "all"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_TRUE(report["paper_match"].get<bool>());
    EXPECT_EQ(report["result"]["examples"].size(), 8u);
}

TEST(Cli, SolveViAffine) {
    const RunResult r = run_cli({"solve-vi", "--op", "affine", "--a", "2", "--c=-4,-4",
                                 "--rho", "0.25", "--start", "10,10", "--tol", "1e-12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_NEAR(report["result"]["solution"][0].get<double>(), 2.0, 1e-9);
    EXPECT_NEAR(report["result"]["solution"][1].get<double>(), 2.0, 1e-9);
    EXPECT_DOUBLE_EQ(report["result"]["theta"].get<double>(), 0.5);
    EXPECT_TRUE(report["result"]["converged"].get<bool>());
}

TEST(Cli, TrainSvmFromCsv) {
    const std::string path = write_temp("ex2_2.csv", "1,0,1\n0,1,1\n-1,0,-1\n0,-1,-1\n");
    const RunResult r = run_cli({"train-svm", "--input", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_NEAR(report["result"]["w"][0].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(report["result"]["b"].get<double>(), 0.0, 1e-9);
    std::remove(path.c_str());
}

TEST(Cli, TrainGsvmWithActiveSet) {
    const GoldenCase g = fixture(WorkedExample::ex2_3_s3);
    const std::string path = write_temp("s3.csv", dataset_to_csv(g.dataset));
    const RunResult r = run_cli({"train-gsvm", "--input", path, "--active", "0,1,4,5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_NEAR(report["result"]["row_solution"]["w"][0].get<double>(), 2.0, 1e-9);
    EXPECT_NEAR(report["result"]["row_solution"]["b"].get<double>(), 0.0, 1e-9);
    std::remove(path.c_str());
}

TEST(Cli, ClassifyReportsMargins) {
    const std::string path = write_temp("cls.csv", "1,0,1\n0,-1,-1\n");
    const RunResult r =
        run_cli({"classify", "--input", path, "--w", "1,1", "--b", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_EQ(report["result"]["predicted"][0].get<int>(), 1);
    EXPECT_EQ(report["result"]["predicted"][1].get<int>(), -1);
    EXPECT_NEAR(report["result"]["min_geometric"].get<double>(), 1.0 / std::sqrt(2.0), 1e-12);
    std::remove(path.c_str());
}

TEST(Cli, EmptyInputIsUsageError) {
    const std::string path = write_temp("empty.csv", "");
    const RunResult r = run_cli({"train-svm", "--input", path});
    EXPECT_EQ(r.code, 2);
    const json report = json::parse(r.out);
    EXPECT_EQ(report["status"], "error");
    EXPECT_EQ(report["error"]["code"], "csv_parse");
    std::remove(path.c_str());
}

TEST(Cli, InfeasibleDataIsDomainError) {
    const std::string path =
        write_temp("xor.csv", "0,0,1\n1,1,1\n1,0,-1\n0,1,-1\n");
    const RunResult r = run_cli({"train-svm", "--input", path});
    EXPECT_EQ(r.code, 1);
    const json report = json::parse(r.out);
    EXPECT_EQ(report["error"]["code"], "infeasible");
    std::remove(path.c_str());
}

TEST(Cli, UnknownFlagIsUsageError) {
    const RunResult r = run_cli({"train-svm", "--bogus", "x"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, MissingInputFileIsUsageError) {
    const RunResult r = run_cli({"train-svm", "--input", "/nonexistent/nope.csv"});
    EXPECT_EQ(r.code, 2);
    const json report = json::parse(r.out);
    EXPECT_EQ(report["error"]["code"], "io");
}

TEST(Cli, StepOutsideWindowIsDomainError) {
    const RunResult r = run_cli({"solve-vi", "--op", "affine", "--a", "2", "--c=-4,-4",
                                 "--rho", "1.0", "--start", "1,1"});
    EXPECT_EQ(r.code, 1);
    const json report = json::parse(r.out);
    EXPECT_EQ(report["error"]["code"], "step_size");
}

TEST(Cli, CheckOpReportsProperties) {
    const RunResult r = run_cli({"check-op", "--op", "affine", "--a", "2", "--c", "1,1",
                                 "--lipschitz", "2", "--alpha", "2", "--samples", "100",
                                 "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    const auto& reports = report["result"]["reports"];
    ASSERT_EQ(reports.size(), 4u);
    EXPECT_EQ(reports[0]["property"], "lipschitz");
    EXPECT_TRUE(reports[0]["holds"].get<bool>());
    EXPECT_NEAR(reports[0]["estimate"].get<double>(), 2.0, 1e-12);
    EXPECT_TRUE(report["result"]["hierarchy"].get<bool>());
}

TEST(Cli, GenRoundTripsThroughTraining) {
    const std::string path = std::string(::testing::TempDir()) + "famA.csv";
    const RunResult gen = run_cli({"gen", "--family", "A", "--n", "3", "--alphas", "1,2,4",
                                   "--k", "3", "--output", path});
    ASSERT_EQ(gen.code, 0) << gen.err;
    const json report = json::parse(gen.out);
    EXPECT_NEAR(report["result"]["expected_w"][0].get<double>(), -0.5, 1e-12);

    const RunResult train = run_cli({"train-gsvm", "--input", path});
    ASSERT_EQ(train.code, 0) << train.err;
    const json trained = json::parse(train.out);
    EXPECT_NEAR(trained["result"]["row_solution"]["w"][0].get<double>(), -0.5, 1e-9);
    std::remove(path.c_str());
}

TEST(Cli, DeterministicOutput) {
    const RunResult a = run_cli({"reproduce", "--example", "ex2_14"});
    const RunResult b = run_cli({"reproduce", "--example", "ex2_14"});
    EXPECT_EQ(a.out, b.out);

    const std::vector<std::string> check = {"check-op", "--op",      "norm-gradient",
                                            "--dim",    "3",         "--alpha",
                                            "0.1",      "--samples", "50",
                                            "--seed",   "99"};
    EXPECT_EQ(run_cli(check).out, run_cli(check).out);
}

TEST(Cli, OutputFileReceivesReport) {
    const std::string path = std::string(::testing::TempDir()) + "report.json";
    const RunResult r = run_cli({"reproduce", "--example", "ex2_2", "--output", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    ASSERT_TRUE(f.good());
    const json report = json::parse(f);
    EXPECT_TRUE(report["paper_match"].get<bool>());
    std::remove(path.c_str());
}
