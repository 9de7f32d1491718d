#include "cdga/job.hpp"

#include "cdga/analysis.hpp"

#include "json.hpp"

#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace cdga {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "cdga-output/1";
constexpr const char* kWeights = "base: weight=degree; G_ab, alpha_i: (2n-1, 2n); eta_i: (2n, 2n+2); sb: (|b|+1, |b|+2)";

const std::set<std::string> kCommands{"cohomology", "euler", "series", "invariants", "table1", "verify"};

struct Model {
  Space space;
  Presentation presentation;
};

Model build_model(const JobSpec& job) {
  Model m{build_space(job.space), {}};
  const BaseAlgebra& base = m.space.base;
  if (job.model == "C") {
    m.presentation = build_C_r(base, job.r);
  } else if (job.model == "A") {
    m.presentation = build_A_r(base, parse_degree_two_class(base, job.c), job.r);
  } else {
    if (!m.space.chern) throw Error("space '" + job.space + "' has no Chern data (add a \"chern\" field)");
    m.presentation = build_A_r_L(base, *m.space.chern, parse_degree_two_class(base, job.c), job.twist, job.r);
  }
  return m;
}

void certify(const Presentation& p, int max_degree) {
  DSquaredReport rep = verify_d_squared(p, max_degree);
  if (rep.ok) return;
  std::string where;
  if (rep.failing_slice)
    where = " in degree " + std::to_string(rep.failing_slice->degree) +
            (rep.failing_slice->weight ? ", weight " + std::to_string(*rep.failing_slice->weight) : "");
  throw Error("verification failed for " + p.name + where + ": " + rep.description);
}

int resolved_threads(const JobSpec& job) { return job.threads > 0 ? job.threads : threads_from_environment(); }

ordered_json model_json(const JobSpec& job, const Presentation& p) {
  ordered_json m;
  m["name"] = p.name;
  m["space"] = job.space;
  m["kind"] = job.model;
  m["r"] = job.r;
  if (job.model != "C") m["c"] = job.c;
  if (job.model == "L") m["twist"] = job.twist;
  for (const auto& [k, v] : p.parameters) m["parameters"][k] = v;
  m["weights"] = kWeights;
  return m;
}

std::vector<std::vector<std::string>> table_rows(const CohomologyTable& t, bool by_weight) {
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i <= t.max_degree; ++i) {
    if (!by_weight) {
      rows.push_back({std::to_string(i), "*", std::to_string(t.dim(i))});
      continue;
    }
    bool any = false;
    for (const auto& [key, dim] : t.entries)
      if (key.first == i) {
        rows.push_back({std::to_string(i), std::to_string(key.second), std::to_string(dim)});
        any = true;
      }
    if (!any) rows.push_back({std::to_string(i), "*", "0"});
  }
  return rows;
}

void emit_table(std::ostream& out, const JobSpec& job, const std::string& title, const ordered_json& meta,
                const CohomologyTable& t, const std::string& kind) {
  if (job.format == "json") {
    ordered_json doc;
    doc["schema"] = kSchema;
    doc["command"] = job.command;
    doc["model"] = meta;
    doc["range"] = {{"max_degree", t.max_degree}};
    doc["result"]["kind"] = kind;
    doc["result"]["dims"] = t.totals();
    if (job.by_weight) {
      ordered_json entries = ordered_json::array();
      for (const auto& [key, dim] : t.entries) entries.push_back({{"i", key.first}, {"weight", key.second}, {"dim", dim}});
      doc["result"]["by_weight"] = entries;
    }
    out << doc.dump(2) << "\n";
  } else if (job.format == "csv") {
    out << "i,weight,dim\n";
    for (const auto& row : table_rows(t, job.by_weight)) out << row[0] << "," << row[1] << "," << row[2] << "\n";
  } else {
    out << title << "\n";
    if (job.by_weight) {
      out << std::setw(4) << "i" << std::setw(8) << "weight" << std::setw(8) << "dim" << "\n";
      for (const auto& row : table_rows(t, true)) out << std::setw(4) << row[0] << std::setw(8) << row[1] << std::setw(8) << row[2] << "\n";
    } else {
      out << std::setw(4) << "i" << std::setw(8) << "dim" << "\n";
      for (int i = 0; i <= t.max_degree; ++i) out << std::setw(4) << i << std::setw(8) << t.dim(i) << "\n";
    }
  }
}

void emit_series(std::ostream& out, const JobSpec& job, const ordered_json& meta,
                 const std::vector<std::pair<std::string, BigradedSeries>>& named) {
  if (job.format == "json") {
    ordered_json doc;
    doc["schema"] = kSchema;
    doc["command"] = job.command;
    doc["model"] = meta;
    for (const auto& [name, s] : named) {
      doc["range"][name] = s.truncation();
      doc["result"][name] = {{"variable", std::string(1, s.variable())}, {"coefficients", s.coefficients()}};
    }
    out << doc.dump(2) << "\n";
  } else if (job.format == "csv") {
    out << "series,exponent,coefficient\n";
    for (const auto& [name, s] : named)
      for (int e = 0; e <= s.truncation(); ++e) out << name << "," << e << "," << s[e] << "\n";
  } else {
    for (const auto& [name, s] : named) out << name << " = " << s.to_string() << "\n";
  }
}

ClassFunction parse_character(const std::string& name, int r) {
  if (name == "trivial") return ClassFunction::trivial(r);
  if (name == "sign") return ClassFunction::sign(r);
  if (name == "regular") return ClassFunction::regular(r);
  throw Error("unknown character '" + name + "' (trivial | sign | regular)");
}

std::vector<Permutation> parse_subgroup(const std::string& spec, int r) {
  if (spec == "full") return all_permutations(r);
  if (spec == "trivial") return {identity_permutation(r)};
  std::vector<Permutation> g;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) g.push_back(parse_permutation(part, r));
  check_subgroup(g, r);
  return g;
}

int run_cohomology(const JobSpec& job, std::ostream& out) {
  Model m = build_model(job);
  certify(m.presentation, job.max_degree);
  CohomologyTable t = cohomology(m.presentation, job.max_degree, true, {resolved_threads(job)});
  emit_table(out, job, "H^i(" + m.presentation.name + ")", model_json(job, m.presentation), t, "cohomology");
  return 0;
}

int run_invariants(const JobSpec& job, std::ostream& out) {
  Model m = build_model(job);
  certify(m.presentation, job.max_degree);
  const ExecutionOptions opts{resolved_threads(job)};
  CohomologyTable t;
  std::string title;
  if (job.character != "trivial") {
    ClassFunction chi = parse_character(job.character, job.r);
    if (job.character == "regular") throw Error("isotypic parts need an irreducible character (trivial | sign)");
    t = isotypic_cohomology(m.presentation, chi, job.max_degree, opts);
    title = job.character + "-isotypic part of H^i(" + m.presentation.name + ")";
  } else {
    t = invariant_cohomology(m.presentation, parse_subgroup(job.subgroup, job.r), job.max_degree, opts);
    title = "H^i(" + m.presentation.name + ")^G, G = " + job.subgroup;
  }
  ordered_json meta = model_json(job, m.presentation);
  meta["subgroup"] = job.subgroup;
  meta["character"] = job.character;
  emit_table(out, job, title, meta, t, "invariant cohomology");
  return 0;
}

int run_euler(const JobSpec& job, std::ostream& out) {
  Model m = build_model(job);
  const ExecutionOptions opts{resolved_threads(job)};
  std::vector<std::pair<std::string, BigradedSeries>> named;
  named.emplace_back("weightwise_euler", weightwise_euler(m.presentation, job.w_max, opts));
  if (job.model == "A") named.emplace_back("closed_form", p_r_closed_form(m.space.base, job.r, job.w_max));
  if (m.presentation.symmetry && job.character != "trivial")
    named.emplace_back("character_euler[" + job.character + "]",
                       character_euler(m.presentation, parse_character(job.character, job.r), job.w_max, opts));
  emit_series(out, job, model_json(job, m.presentation), named);
  return 0;
}

int run_series(const JobSpec& job, std::ostream& out) {
  Space s = build_space(job.space);
  std::vector<std::pair<std::string, BigradedSeries>> named{
      {"P_U(w)", poincare_series_U(s.base, job.w_max, 'w')},
      {"P(t)", poincare_series_U(s.base, job.max_degree, 't')},
      {"rho_bracket", rho_bracket(s.base, job.max_degree)},
      {"rho", rho_series(s.base, job.max_degree)},
      {"r1_stable", r1_stable_series(s.base, job.max_degree)},
  };
  ordered_json meta{{"space", job.space}, {"euler_characteristic", s.base.euler_characteristic()}};
  emit_series(out, job, meta, named);
  return 0;
}

int run_verify(const JobSpec& job, std::ostream& out, std::ostream& err) {
  Model m = build_model(job);
  DSquaredReport rep = verify_d_squared(m.presentation, job.max_degree);
  if (job.format == "json") {
    ordered_json doc;
    doc["schema"] = kSchema;
    doc["command"] = job.command;
    doc["model"] = model_json(job, m.presentation);
    doc["range"] = {{"max_degree", job.max_degree}};
    doc["result"] = {{"ok", rep.ok}, {"description", rep.description}};
    if (!rep.ok) doc["result"]["witness"] = m.presentation.ctx().to_string(rep.witness);
    out << doc.dump(2) << "\n";
  } else if (job.format == "csv") {
    out << "model,max_degree,ok\n" << m.presentation.name << "," << job.max_degree << "," << (rep.ok ? 1 : 0) << "\n";
  } else {
    out << m.presentation.name << ": d^2 = 0 and d(I) in I up to degree " << job.max_degree << ": "
        << (rep.ok ? "ok" : "FAILED") << "\n";
  }
  if (!rep.ok) {
    err << "cdga: " << rep.description << " (witness " << m.presentation.ctx().to_string(rep.witness) << ")\n";
    return 1;
  }
  return 0;
}

int run_table1(const JobSpec& job, std::ostream& out) {
  const auto& expected = table1_expected();
  std::vector<std::vector<std::size_t>> computed;
  for (const auto& col : expected) {
    JobSpec j = job;
    j.space = col.space;
    j.r = col.r;
    j.c = col.c;
    j.model = "A";
    Model m = build_model(j);
    certify(m.presentation, 10);
    computed.push_back(cohomology(m.presentation, 10, false, {resolved_threads(job)}).totals());
  }
  std::size_t mismatches = 0;
  for (std::size_t c = 0; c < expected.size(); ++c)
    for (std::size_t i = 0; i < expected[c].dims.size(); ++i)
      if (computed[c][i] != expected[c].dims[i]) ++mismatches;

  if (job.format == "json") {
    ordered_json doc;
    doc["schema"] = kSchema;
    doc["command"] = "table1";
    doc["range"] = {{"max_degree", 10}};
    ordered_json cols = ordered_json::array();
    for (std::size_t c = 0; c < expected.size(); ++c)
      cols.push_back({{"space", expected[c].space}, {"r", expected[c].r}, {"c", expected[c].c},
                      {"computed", computed[c]}, {"expected", expected[c].dims}});
    doc["result"] = {{"columns", cols}, {"mismatches", mismatches}};
    out << doc.dump(2) << "\n";
  } else if (job.format == "csv") {
    out << "space,r,c,i,computed,expected\n";
    for (std::size_t c = 0; c < expected.size(); ++c)
      for (std::size_t i = 0; i < expected[c].dims.size(); ++i)
        out << expected[c].space << "," << expected[c].r << "," << expected[c].c << "," << i << "," << computed[c][i]
            << "," << expected[c].dims[i] << "\n";
  } else {
    out << std::setw(4) << "i";
    for (const auto& col : expected) {
      std::string head = col.space + " r=" + std::to_string(col.r) + (col.c == "1" ? "" : " " + col.c);
      out << std::setw(20) << head;
    }
    out << "\n";
    for (std::size_t i = 0; i < 11; ++i) {
      out << std::setw(4) << i;
      for (std::size_t c = 0; c < expected.size(); ++c) {
        std::string cell = std::to_string(computed[c][i]);
        if (computed[c][i] != expected[c].dims[i]) cell += " (expected " + std::to_string(expected[c].dims[i]) + ")";
        out << std::setw(20) << cell;
      }
      out << "\n";
    }
    out << (mismatches == 0 ? "all 44 entries match" : std::to_string(mismatches) + " entries differ") << "\n";
  }
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

const std::vector<Table1Column>& table1_expected() {
  static const std::vector<Table1Column> cols{
      {"P2", 2, "1", {1, 1, 2, 3, 1, 4, 5, 3, 4, 4, 6}},
      {"S1", 2, "1", {1, 5, 15, 29, 47, 69, 94, 122, 153, 187, 224}},
      {"P1xP1", 2, "[1:1]", {1, 1, 4, 6, 5, 16, 14, 12, 28, 18, 15}},
      {"P2", 3, "1", {1, 1, 3, 4, 1, 9, 12, 7, 15, 21, 22}},
  };
  return cols;
}

void validate(const JobSpec& job) {
  if (!kCommands.count(job.command)) throw Error("unknown command '" + job.command + "'");
  if (job.format != "table" && job.format != "json" && job.format != "csv") throw Error("format must be table, json or csv");
  if (job.model != "A" && job.model != "L" && job.model != "C") throw Error("model must be A, L or C");
  if (job.r < 1) throw Error("r must be >= 1");
  if (job.max_degree < 0) throw Error("max degree must be >= 0");
  if (job.w_max < 0) throw Error("w-max must be >= 0");
  if (job.threads < 0) throw Error("threads must be >= 0");
  if (job.twist < 0) throw Error("twist d must be >= 0");
  if (job.command == "table1") return;
  Space s = build_space(job.space);
  if (job.model != "C" && job.command != "series") parse_degree_two_class(s.base, job.c);
  if (job.command == "invariants") {
    if (job.model == "C" && job.r < 2) throw Error("C_1 has no symmetric action to average");
    if (job.character != "trivial") parse_character(job.character, job.r);
    else parse_subgroup(job.subgroup, job.r);
  }
  if (job.command == "euler" && job.character != "trivial") parse_character(job.character, job.r);
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    validate(job);
    if (job.command == "cohomology") return run_cohomology(job, out);
    if (job.command == "invariants") return run_invariants(job, out);
    if (job.command == "euler") return run_euler(job, out);
    if (job.command == "series") return run_series(job, out);
    if (job.command == "verify") return run_verify(job, out, err);
    return run_table1(job, out);
  } catch (const std::exception& e) {
    err << "cdga: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cdga
