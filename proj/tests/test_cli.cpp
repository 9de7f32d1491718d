#include "doctest.h"

#include "cdga/job.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace cdga;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run_job(const JobSpec& job) {
  std::ostringstream out, err;
  int status = run(job, out, err);
  return {status, out.str(), err.str()};
}

JobSpec job(const std::string& command, const std::string& space = "P2", int r = 2, const std::string& c = "1") {
  JobSpec j;
  j.command = command;
  j.space = space;
  j.r = r;
  j.c = c;
  return j;
}

std::vector<std::size_t> json_dims(const std::string& text) {
  return nlohmann::json::parse(text).at("result").at("dims").get<std::vector<std::size_t>>();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cohomology as json") {
  JobSpec j = job("cohomology");
  j.format = "json";
  Outcome o = run_job(j);
  REQUIRE(o.status == 0);
  auto doc = nlohmann::json::parse(o.out);
  CHECK(doc.at("schema") == "cdga-output/1");
  CHECK(doc.at("model").at("space") == "P2");
  CHECK(doc.at("model").at("r") == 2);
  CHECK(doc.at("model").contains("weights"));
  CHECK(doc.at("range").at("max_degree") == 10);
  CHECK(json_dims(o.out) == std::vector<std::size_t>{1, 1, 2, 3, 1, 4, 5, 3, 4, 4, 6});
}

TEST_CASE("the c-dependence example") {
  JobSpec j = job("cohomology", "P1xP1", 2, "[1:0]");
  j.format = "json";
  auto d = json_dims(run_job(j).out);
  CHECK(d[9] == 19);
  CHECK(d[10] == 17);
  j.c = "[1:1]";
  d = json_dims(run_job(j).out);
  CHECK(d[9] == 18);
  CHECK(d[10] == 15);
}

TEST_CASE("table1 matches every entry") {
  Outcome o = run_job(job("table1"));
  CHECK(o.status == 0);
  CHECK(o.out.find("all 44 entries match") != std::string::npos);
  std::size_t count = 0;
  for (const auto& col : table1_expected()) count += col.dims.size();
  CHECK(count == 44);
}

TEST_CASE("csv rows") {
  JobSpec j = job("cohomology", "P1", 2);
  j.format = "csv";
  j.max_degree = 3;
  j.by_weight = true;
  Outcome o = run_job(j);
  REQUIRE(o.status == 0);
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "i,weight,dim");
  CHECK(o.out.find("\n0,0,1\n") != std::string::npos);
  j.by_weight = false;
  CHECK(run_job(j).out == "i,weight,dim\n0,*,1\n1,*,2\n2,*,2\n3,*,3\n");
}

TEST_CASE("output is identical across thread counts") {
  for (const char* command : {"cohomology", "invariants", "euler"}) {
    JobSpec j = job(command, "S1", 2);
    j.max_degree = 6;
    j.w_max = 6;
    j.by_weight = true;
    j.format = "json";
    j.threads = 1;
    const std::string one = run_job(j).out;
    j.threads = 3;
    CHECK(run_job(j).out == one);
    CHECK(run_job(j).out == one);
  }
}

TEST_CASE("other commands") {
  JobSpec s = job("series", "P1");
  s.max_degree = 6;
  Outcome o = run_job(s);
  CHECK(o.status == 0);
  CHECK(o.out.find("rho_bracket = 1 + t^3") != std::string::npos);

  JobSpec e = job("euler", "P1");
  e.w_max = 6;
  o = run_job(e);
  CHECK(o.status == 0);
  CHECK(o.out.find("weightwise_euler = 1 - 2w^2 + w^4") != std::string::npos);
  CHECK(o.out.find("closed_form = 1 - 2w^2 + w^4") != std::string::npos);

  JobSpec v = job("verify", "P2");
  v.model = "L";
  v.twist = 2;
  o = run_job(v);
  CHECK(o.status == 0);
  CHECK(o.out.find(": ok") != std::string::npos);

  JobSpec inv = job("invariants", "P1");
  inv.max_degree = 4;
  inv.character = "sign";
  inv.format = "json";
  CHECK(json_dims(run_job(inv).out) == std::vector<std::size_t>{0, 0, 1, 2, 1});
  inv.character = "trivial";
  inv.subgroup = "12;21";
  CHECK(json_dims(run_job(inv).out) == std::vector<std::size_t>{1, 2, 1, 1, 3});
}

TEST_CASE("invalid jobs fail with a one-line diagnostic") {
  auto fails = [](const JobSpec& j) {
    Outcome o = run_job(j);
    CHECK(o.status != 0);
    CHECK(o.out.empty());
    CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
    return o.err;
  };
  fails(job("frobnicate"));
  fails(job("cohomology", "Q7"));
  fails(job("cohomology", "P1xP1", 2, "1"));
  fails(job("cohomology", "P2", 0));
  JobSpec bad_format = job("cohomology");
  bad_format.format = "xml";
  fails(bad_format);
  JobSpec bad_group = job("invariants", "P1", 3);
  bad_group.subgroup = "123;213;132";
  CHECK(fails(bad_group).find("not closed") != std::string::npos);

  write("cli_nonassoc.json", R"({"name": "bad", "n": 3,
    "basis": [{"label": "1", "degree": 0}, {"label": "u", "degree": 2}, {"label": "v", "degree": 2},
              {"label": "p", "degree": 4}, {"label": "q", "degree": 4}, {"label": "t", "degree": 6}],
    "unit": "1", "fundamental": "t",
    "products": [["u","u",[["p","1"]]], ["u","v",[["q","1"]]], ["v","u",[["q","1"]]],
                 ["u","p",[["t","1"]]], ["p","u",[["t","1"]]], ["v","q",[["t","1"]]], ["q","v",[["t","1"]]]]})");
  CHECK(fails(job("cohomology", "custom:cli_nonassoc.json")).find("associativity") != std::string::npos);
  std::remove("cli_nonassoc.json");

  write("cli_degenerate.json", R"({"name": "flat", "n": 2,
    "basis": [{"label": "1", "degree": 0}, {"label": "u", "degree": 2}, {"label": "v", "degree": 2}, {"label": "t", "degree": 4}],
    "unit": "1", "fundamental": "t",
    "products": [["u","u",[["t","1"]]], ["u","v",[["t","1"]]], ["v","u",[["t","1"]]], ["v","v",[["t","1"]]]]})");
  CHECK(fails(job("cohomology", "custom:cli_degenerate.json", 2, "[1:0]")).find("degree block 2") != std::string::npos);
  std::remove("cli_degenerate.json");

  fails(job("cohomology", "custom:does_not_exist.json"));
  JobSpec no_chern = job("cohomology", "custom:cli_line.json");
  write("cli_line.json", R"({"name": "line", "n": 1, "basis": [{"label": "e", "degree": 0}, {"label": "h", "degree": 2}],
    "unit": "e", "fundamental": "h", "products": []})");
  CHECK(run_job(no_chern).status == 0);
  no_chern.model = "L";
  CHECK(fails(no_chern).find("Chern") != std::string::npos);
  std::remove("cli_line.json");
}

TEST_CASE("a custom copy of the line reproduces the built-in answer") {
  write("cli_line2.json", R"({"name": "line", "n": 1, "basis": [{"label": "e", "degree": 0}, {"label": "h", "degree": 2}],
    "unit": "e", "fundamental": "h", "products": []})");
  JobSpec custom = job("cohomology", "custom:cli_line2.json");
  custom.format = "json";
  JobSpec builtin = job("cohomology", "P1");
  builtin.format = "json";
  CHECK(json_dims(run_job(custom).out) == json_dims(run_job(builtin).out));
  std::remove("cli_line2.json");
}

}
