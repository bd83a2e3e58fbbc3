#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "strl/io/config.hpp"
#include "strl/io/qtable_io.hpp"
#include "strl/io/report_json.hpp"
#include "strl/io/signal_csv.hpp"
#include "strl/learn/q_learning.hpp"
#include "support/problems.hpp"

using namespace strl;
using nlohmann::json;

namespace {

json tiny_json() { return io::to_json(fuzz::tiny_config()); }

}  // namespace

// Configs

TEST(Config, ShippedConfigsLoad) {
  for (const auto& entry : std::filesystem::directory_iterator(STRL_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    auto p = io::make_problem(io::load_config(entry.path().string()));
    EXPECT_GE(p.task.tau, 1) << entry.path();
  }
}

TEST(Config, RoundTripThroughJson) {
  auto cfg = io::load_config(std::string(STRL_CONFIG_DIR) + "/phi2_strob.cfg");
  auto again = io::parse_config(io::to_json(cfg));
  EXPECT_EQ(io::to_json(again), io::to_json(cfg));
  EXPECT_EQ(again.task.variant, learn::Variant::strob);
  EXPECT_EQ(again.workspace.regions.size(), 2u);
}

TEST(Config, RunSectionIsAccepted) {
  auto j = tiny_json();
  j["run"] = {{"tau", 6}, {"q_entries", 10}};
  EXPECT_NO_THROW(io::parse_config(j));
}

TEST(Config, UnknownKeysFailClosed) {
  for (auto mutate : std::vector<std::function<void(json&)>>{
           [](json& j) { j["extra"] = 1; },
           [](json& j) { j["workspace"]["walls"] = json::array(); },
           [](json& j) { j["task"]["horizon"] = 3; },
           [](json& j) { j["train"]["lr"] = 0.1; },
           [](json& j) { j["train"]["alpha"]["start"] = 0.5; },
           [](json& j) { j["workspace"]["regions"]["Goal"]["z"] = 1; },
       }) {
    auto j = tiny_json();
    mutate(j);
    EXPECT_THROW(io::parse_config(j), ConfigError) << j.dump();
  }
}

TEST(Config, BadValuesFail) {
  for (auto mutate : std::vector<std::function<void(json&)>>{
           [](json& j) { j.erase("workspace"); },
           [](json& j) { j["task"].erase("formula"); },
           [](json& j) { j["task"]["delta"] = -1; },
           [](json& j) { j["task"]["variant"] = "greedy"; },
           [](json& j) { j["workspace"]["n"] = "six"; },
           [](json& j) { j["workspace"]["start"] = {1}; },
           [](json& j) { j["train"]["gamma"] = 0; },
           [](json& j) { j["train"]["rho_scale"] = -1; },
       }) {
    auto j = tiny_json();
    mutate(j);
    EXPECT_THROW(io::parse_config(j), ConfigError) << j.dump();
  }
}

TEST(Config, ProblemsRejectBadGeometry) {
  auto j = tiny_json();
  j["workspace"]["start"] = {5, 0};
  EXPECT_THROW(io::make_problem(io::parse_config(j)), ConfigError);
  j = tiny_json();
  j["task"]["formula"] = "F[0,5) in(Nowhere)";
  EXPECT_THROW(io::make_problem(io::parse_config(j)), FormulaError);
  j = tiny_json();
  j["task"]["formula"] = "F[0,5) in(Goal";
  EXPECT_THROW(io::make_problem(io::parse_config(j)), ParseError);
}

TEST(Config, MissingOrMalformedFile) {
  EXPECT_THROW(io::load_config("/nonexistent/run.cfg"), ConfigError);
  auto path = std::filesystem::temp_directory_path() / "strl_bad.cfg";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(io::load_config(path.string()), ConfigError);
  std::filesystem::remove(path);
}

// Q-table persistence

TEST(QTableIo, RoundTrip) {
  auto p = fuzz::tiny_problem(0.1, "strob", 300);
  auto q = learn::train(p.grid, p.task, p.reward, p.hyper, 2).q;
  std::stringstream buf;
  io::write_qtable(buf, q, p.task.tau, "F[0,5) in(Goal)", p.grid);
  io::QTableHeader header;
  auto back = io::read_qtable(buf, p.grid, &header);
  EXPECT_EQ(header.tau, p.task.tau);
  EXPECT_EQ(header.formula, "F[0,5) in(Goal)");
  EXPECT_EQ(header.entries, q.entry_count());
  EXPECT_EQ(back.sorted_entries(), q.sorted_entries());
}

TEST(QTableIo, Format) {
  auto g = fuzz::tiny_problem().grid;
  learn::QTable q;
  q.set(env::TauState({{0, 0}, {1, 0}}), env::Action::right, 0.1);
  std::stringstream buf;
  io::write_qtable(buf, q, 2, "true", g);
  EXPECT_EQ(buf.str(), "#tau=2\n#formula=true\n#entries=1\n0,1|right|0.10000000000000001\n");
}

TEST(QTableIo, MalformedInputs) {
  auto g = fuzz::tiny_problem().grid;
  for (const char* text : {"", "#tau=2\n", "#tau=x\n#formula=true\n#entries=0\n",
                           "#tau=2\n#formula=true\n#entries=1\n0,1|right\n",
                           "#tau=2\n#formula=true\n#entries=1\n0,99|right|1\n",
                           "#tau=2\n#formula=true\n#entries=1\n0|right|1\n",
                           "#tau=2\n#formula=true\n#entries=1\n0,1|jump|1\n",
                           "#tau=2\n#formula=true\n#entries=1\n0,1|up|abc\n",
                           "#tau=2\n#formula=true\n#entries=2\n0,1|up|1\n"}) {
    std::stringstream in(text);
    EXPECT_THROW(io::read_qtable(in, g), ConfigError) << text;
  }
}

// Signals

TEST(SignalCsv, PlainRows) {
  auto s = io::parse_signal_csv("1, 2\n3,4\n\n5 ,6\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.dimension(), 2u);
  EXPECT_EQ(s[2][0], 5.0);
  EXPECT_EQ(s[2][1], 6.0);
}

TEST(SignalCsv, HeaderAndTimeColumn) {
  auto s = io::parse_signal_csv("t,x\n0,5\n1,0\n2,5\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.dimension(), 1u);
  EXPECT_EQ(s[1][0], 0.0);
  auto named = io::parse_signal_csv("x,y\n1,2\n");
  EXPECT_EQ(named.dimension(), 2u);
}

TEST(SignalCsv, Errors) {
  EXPECT_THROW(io::parse_signal_csv(""), EvaluationError);
  EXPECT_THROW(io::parse_signal_csv("x,y\n"), EvaluationError);
  EXPECT_THROW(io::parse_signal_csv("1,2\nfoo,3\n"), EvaluationError);
  EXPECT_THROW(io::parse_signal_csv("1,2\n3\n"), EvaluationError);
  EXPECT_THROW(io::parse_signal_csv("t\n0\n"), EvaluationError);
}

// Reports

TEST(ReportJson, Fields) {
  eval::EvalReport r{1000, 0.968, 0.947, 0.463, 7.987, 4405};
  auto j = io::to_json(r);
  EXPECT_EQ(j.size(), 6u);
  EXPECT_EQ(j["n_traj"], 1000);
  EXPECT_EQ(j["robust_rate"], 0.947);
  EXPECT_EQ(j["q_entries"], 4405);
}

TEST(ReportJson, TrajectoryRecord) {
  eval::TrajectoryRecord rec;
  rec.signal = stl::Signal{{0.5, 0.5}, {1.5, 0.5}};
  rec.sat = true;
  rec.theta = 3;
  auto j = io::to_json(rec);
  EXPECT_EQ(j["signal"], json::parse("[[0.5,0.5],[1.5,0.5]]"));
  EXPECT_EQ(j["theta"], 3);
  EXPECT_TRUE(j.contains("window_robust"));
}
