#pragma once

// Command front end shared by the cdga tool and the tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace cdga {

struct JobSpec {
  std::string command;         // cohomology | euler | series | invariants | table1 | verify
  std::string space = "P2";
  std::string model = "A";     // A = A_r(X, c), L = A_r(L^d), C = C_r(X)
  int r = 2;
  std::string c = "1";         // c for A, c_1(L) for L
  int twist = 1;               // d for model L
  int max_degree = 10;
  int w_max = 12;
  bool by_weight = false;
  std::string subgroup = "full";  // full | trivial | comma-free list "12;21"
  std::string character = "trivial";
  std::string format = "table";   // table | json | csv
  int threads = 0;
};

/// Throws cdga::Error on the first invalid field.
void validate(const JobSpec& job);

/// Runs one job. Returns the process exit status; diagnostics go to err.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// The 44 reference values checked by `cdga table1`, one column per model.
struct Table1Column {
  std::string space;
  int r;
  std::string c;
  std::vector<std::size_t> dims;
};
const std::vector<Table1Column>& table1_expected();

}  // namespace cdga
