#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "quadpair/config.hpp"
#include "quadpair/constants.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/harness.hpp"
#include "quadpair/report.hpp"

using namespace quadpair;

TEST(Config, ParsesAllSections) {
    auto cfg = parse_config(R"(
[pair]
a = [1, -2, -2, -1]
b = [1, 1, -1, 1]

[experiment]
name = tq-bound
seed = 42
output = out.csv

[grid]
B = [50, 100]
q = [11, 13]
P_policy = fixed
P = 4
w = [[0,0,0,0],[1,2,3,0]]

[tolerances]
C_T = 7.5
)");
    EXPECT_EQ(cfg.pair.a(), (Coeffs4{1, -2, -2, -1}));
    EXPECT_EQ(cfg.experiment, Experiment::tq_bound);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.output_path, "out.csv");
    EXPECT_EQ(cfg.B_grid, (std::vector<std::int64_t>{50, 100}));
    EXPECT_EQ(cfg.q_list, (std::vector<std::int64_t>{11, 13}));
    EXPECT_EQ(cfg.p_policy, PPolicy::fixed);
    EXPECT_EQ(cfg.P, 4);
    ASSERT_EQ(cfg.w_list.size(), 2u);
    EXPECT_EQ(cfg.w_list[1], (Vec4{1, 2, 3, 0}));
    EXPECT_DOUBLE_EQ(cfg.tolerance("C_T", 10.0), 7.5);
    EXPECT_DOUBLE_EQ(cfg.tolerance("missing", 3.0), 3.0);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_config("[grid]\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[nonsense]\nx = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[experiment]\nname = fly\n"), ConfigError);
    EXPECT_THROW(parse_config("[grid]\nB = [1, x]\n"), ConfigError);
    EXPECT_THROW(parse_config("[pair]\na = [1, 2, 3]\nb = [1, 1, 1, 1]\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/file.ini"), ConfigError);
}

TEST(Config, ArrayParsers) {
    EXPECT_EQ(parse_int_array("[1, -2, 3]"), (std::vector<std::int64_t>{1, -2, 3}));
    EXPECT_EQ(parse_int_array("[]"), std::vector<std::int64_t>{});
    EXPECT_EQ(parse_real_array("[0.5, 2]"), (std::vector<double>{0.5, 2.0}));
    auto rows = parse_int_rows("[[1,2],[3,4,5]]");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1], (std::vector<std::int64_t>{3, 4, 5}));
}

TEST(Config, Admissibility) {
    auto pair = FormPair::canonical();
    for (std::int64_t q : {1, 11, 13, 143, 187, 221}) EXPECT_TRUE(is_admissible(pair, q)) << q;
    for (std::int64_t q : {2, 7, 9, 15, 33, 77, 91, 121}) EXPECT_FALSE(is_admissible(pair, q)) << q;
    EXPECT_THROW(require_admissible_list(pair, {11, 15}), PreconditionError);
    EXPECT_NO_THROW(require_admissible_list(pair, {11, 13}));
}

TEST(Report, CsvSchemaAndFailureRecord) {
    Report r;
    r.experiment = "demo";
    Record a;
    a.experiment = "demo";
    a.B = 10;
    a.q_or_P = 11;
    a.w = Vec4{1, 2, 3, 4};
    a.value_re = 0.1;
    a.seconds = 2.0;
    r.records.push_back(a);
    r.check(false, "ratio", 3.0, 2.0);
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(exit_code(r), 1);
    std::ostringstream csv;
    write_csv(csv, r, false);
    EXPECT_EQ(csv.str(),
              "experiment,B,q_or_P,w1,w2,w3,w4,value_re,value_im,bound,ratio,seconds\n"
              "demo,10,11,1,2,3,4,0.1,,,,\n"
              "demo:fail:ratio,,,,,,,3,,2,1.5,\n");
    std::ostringstream timed;
    write_csv(timed, r, true);
    EXPECT_NE(timed.str().find(",0.1,,,,2\n"), std::string::npos);
    std::ostringstream json;
    write_json(json, r, false);
    EXPECT_NE(json.str().find("\"pass\": false"), std::string::npos);
}

TEST(Report, ExitCodesAndSorting) {
    Report ok;
    EXPECT_EQ(exit_code(ok), 0);
    Report unsure;
    unsure.inconclusive = true;
    EXPECT_EQ(exit_code(unsure), 3);
    std::vector<Record> rows(3);
    rows[0].experiment = "b";
    rows[1].experiment = "a";
    rows[1].B = 20;
    rows[2].experiment = "a";
    rows[2].B = 10;
    sort_records(rows);
    EXPECT_EQ(rows[0].B, 10);
    EXPECT_EQ(rows[1].B, 20);
    EXPECT_EQ(rows[2].experiment, "b");
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
}

TEST(Constants, SaveLoadRoundTrip) {
    ConstantsTable t;
    t.set("C0", 1.25, "test run");
    t.set("C_T", 0.5, "another");
    auto path = std::filesystem::temp_directory_path() / "quadpair_constants_test.ini";
    t.save(path.string());
    auto back = ConstantsTable::load(path.string());
    EXPECT_DOUBLE_EQ(back.value("C0"), 1.25);
    EXPECT_EQ(back.get("C_T").run, "another");
    EXPECT_TRUE(back.admits("C0", 1.25 * 1.1 - 1e-12));
    EXPECT_FALSE(back.admits("C0", 1.25 * 1.1 + 1e-9));
    EXPECT_THROW(back.value("C9"), ConfigError);
    std::filesystem::remove(path);
}

TEST(Constants, ShippedTableHasEveryConstant) {
    auto t = ConstantsTable::load(std::string(QUADPAIR_TEST_DATA_DIR) + "/constants.ini");
    for (const char* name : {"C0", "C1", "C2", "C_T", "C_sieve", "C_h", "C_I", "C_scan_q", "C_scan_iso", "C_iso"})
        EXPECT_TRUE(t.has(name)) << name;
}

TEST(Harness, DeltaCheckPassesAndZeroToleranceFails) {
    ExperimentConfig cfg;
    cfg.experiment = Experiment::delta_check;
    cfg.Q_list = {5, 10};
    auto r = run_delta_check(cfg);
    EXPECT_TRUE(r.pass());
    ASSERT_EQ(r.records.size(), 2u);
    cfg.tolerances["delta_abs"] = 0.0;
    auto strict = run_delta_check(cfg);
    EXPECT_FALSE(strict.pass());
    bool named = false;
    for (const auto& rec : strict.records) named = named || rec.experiment.find(":fail:") != std::string::npos;
    EXPECT_TRUE(named);
}

TEST(Harness, TqBoundSkipsInadmissibleAndEmptyGridPasses) {
    ExperimentConfig cfg;
    cfg.experiment = Experiment::tq_bound;
    auto empty = run_tq_bound(cfg);
    EXPECT_TRUE(empty.pass());
    EXPECT_FALSE(empty.warnings.empty());
    cfg.B_grid = {20};
    cfg.q_list = {15, 11};
    auto r = run_tq_bound(cfg);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Harness, VerifyRejectsInadmissibleQ) {
    ExperimentConfig cfg;
    cfg.q_list = {15};
    ConstantsTable t;
    EXPECT_THROW(run_verify(cfg, t), PreconditionError);
}

TEST(Harness, CountRecordsPerLabel) {
    ExperimentConfig cfg;
    cfg.experiment = Experiment::count;
    cfg.B_grid = {6, 8, 10};
    cfg.labels = {"M", "Tq"};
    cfg.q_list = {11};
    auto r = run_experiment(cfg, ConstantsTable{});
    EXPECT_EQ(r.records.size(), 6u);
    EXPECT_EQ(r.records.front().experiment, "count:M");
    cfg.labels = {"bogus"};
    EXPECT_THROW(run_count(cfg), ConfigError);
}

TEST(Harness, CharsumRowsAndCsv) {
    ExperimentConfig cfg;
    cfg.experiment = Experiment::charsum;
    cfg.q_list = {1};
    cfg.c_list = {11};
    cfg.w_list = {{0, 0, 0, 0}, {1, 2, 3, 0}};
    cfg.method = "closed";
    auto closed = run_charsum(cfg);
    cfg.method = "brute";
    auto brute = run_charsum(cfg);
    ASSERT_EQ(closed.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(closed[i].re, brute[i].re, 1e-6);
    std::ostringstream out;
    write_charsum_csv(out, brute, false);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "q,c,w1,w2,w3,w4,re,im,method,seconds");
    cfg.q_list = {11};
    cfg.c_list = {6};
    cfg.method = "crt";
    auto crt = run_charsum(cfg);
    cfg.method = "brute";
    auto direct = run_charsum(cfg);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(crt[i].re, direct[i].re, 1e-6 * std::max(1.0, std::fabs(direct[i].re)));
}
