#include "cdga/job.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology of presented CDGAs and the marked-hypersurface models"};
  app.require_subcommand(1, 1);
  cdga::JobSpec job;

  auto common = [&](CLI::App* sub, bool model_flags) {
    sub->add_option("--space", job.space, "P<n>, S<g>, AxB or custom:<path>")->capture_default_str();
    if (model_flags) {
      sub->add_option("--model", job.model, "A (A_r(X,c)), L (A_r(L^d)) or C (C_r(X))")
          ->check(CLI::IsMember({"A", "L", "C"}))
          ->capture_default_str();
      sub->add_option("--r", job.r, "number of marked points")->check(CLI::PositiveNumber)->capture_default_str();
      sub->add_option("--c", job.c, "degree-2 class: p or [p:q:...]")->capture_default_str();
      sub->add_option("--d", job.twist, "power of L for --model L")->check(CLI::NonNegativeNumber)->capture_default_str();
    }
    sub->add_option("--format", job.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--threads", job.threads, "worker threads (0: CDGA_THREADS or OpenMP default)")
        ->check(CLI::NonNegativeNumber);
  };

  auto* coh = app.add_subcommand("cohomology", "dim H^i of a model");
  common(coh, true);
  coh->add_option("--max-degree", job.max_degree)->check(CLI::NonNegativeNumber)->capture_default_str();
  coh->add_flag("--by-weight", job.by_weight, "split by weight");

  auto* eul = app.add_subcommand("euler", "weightwise Euler characteristic and its closed form");
  common(eul, true);
  eul->add_option("--w-max", job.w_max)->check(CLI::NonNegativeNumber)->capture_default_str();
  eul->add_option("--character", job.character, "also weight by a character: trivial, sign or regular");

  auto* ser = app.add_subcommand("series", "Poincare-type series of a space");
  common(ser, false);
  ser->add_option("--max-degree", job.max_degree, "truncation in t")->check(CLI::NonNegativeNumber)->capture_default_str();
  ser->add_option("--w-max", job.w_max, "truncation in w")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* inv = app.add_subcommand("invariants", "cohomology of the invariant (or isotypic) part");
  common(inv, true);
  inv->add_option("--max-degree", job.max_degree)->check(CLI::NonNegativeNumber)->capture_default_str();
  inv->add_flag("--by-weight", job.by_weight, "split by weight");
  inv->add_option("--subgroup", job.subgroup, "full, trivial or elements like 123;213")->capture_default_str();
  inv->add_option("--character", job.character, "trivial (invariants) or sign")->capture_default_str();

  auto* t1 = app.add_subcommand("table1", "recompute the four reference columns and diff them");
  t1->add_option("--format", job.format)->check(CLI::IsMember({"table", "json", "csv"}))->capture_default_str();
  t1->add_option("--threads", job.threads)->check(CLI::NonNegativeNumber);

  auto* ver = app.add_subcommand("verify", "check d^2 = 0 and d(I) in I");
  common(ver, true);
  ver->add_option("--max-degree", job.max_degree)->check(CLI::NonNegativeNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  job.command = app.get_subcommands().front()->get_name();
  return cdga::run(job, std::cout, std::cerr);
}
