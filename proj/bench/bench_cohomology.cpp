// Serial reference vs slice-parallel engine.

#include "cdga/engine.hpp"
#include "cdga/models.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace cdga;

namespace {

double seconds(const std::function<void()>& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int max_degree = argc > 1 ? std::atoi(argv[1]) : 10;
  struct Case {
    const char* space;
    const char* c;
    int r;
  };
  const Case cases[] = {{"P2", "1", 2}, {"S1", "1", 2}, {"P1xP1", "[1:1]", 2}, {"P2", "1", 3}};
  std::printf("%-22s %10s %10s %8s  %s\n", "model", "serial[s]", "parallel[s]", "threads", "agree");
  int bad = 0;
  for (const auto& c : cases) {
    Space s = build_space(c.space);
    Presentation p = build_A_r(s.base, parse_degree_two_class(s.base, c.c), c.r);
    CohomologyTable serial, parallel;
    const double ts = seconds([&] { serial = cohomology_serial(p, max_degree, true); });
    ExecutionOptions opts;
    opts.threads = threads_from_environment();
    if (opts.threads <= 0) opts.threads = omp_get_max_threads();
    const double tp = seconds([&] { parallel = cohomology(p, max_degree, true, opts); });
    const bool agree = serial.entries == parallel.entries;
    bad += !agree;
    std::printf("%-22s %10.3f %10.3f %8d  %s\n", p.name.c_str(), ts, tp, opts.threads, agree ? "yes" : "NO");
  }
  return bad == 0 ? 0 : 1;
}
