#include "cdga/engine.hpp"
#include "cdga/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <set>

namespace cdga {

namespace {

std::vector<SparseRow> ideal_rows(const Presentation& p, const std::unordered_map<Monomial, std::size_t, MonomialHash>& column, int degree,
                                  std::optional<int> weight) {
  const auto& ctx = p.ctx();
  std::vector<SparseRow> rows;
  for (const auto& rel : p.relations) {
    if (rel.is_zero()) continue;
    const int rd = ctx.degree(rel);
    if (rd > degree) continue;
    std::optional<int> rest_weight;
    if (weight) {
      auto rw = ctx.weight_if_homogeneous(rel);
      if (!rw) throw Error("relation is not weight-homogeneous");
      rest_weight = *weight - *rw;
    }
    for (const auto& m : ctx.monomials_of(degree - rd, rest_weight)) {
      Element prod = ctx.multiply(rel, Element(m));
      if (prod.is_zero()) continue;
      SparseRow r;
      r.reserve(prod.size());
      for (const auto& [mm, c] : prod) {
        auto it = column.find(mm);
        if (it == column.end()) throw Error("ideal product left its slice");
        r.emplace_back(it->second, c);
      }
      normalize_row(r);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::unordered_map<Monomial, std::size_t, MonomialHash> column_map(const std::vector<Monomial>& monomials) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> column;
  column.reserve(monomials.size());
  for (std::size_t i = 0; i < monomials.size(); ++i) column.emplace(monomials[i], i);
  return column;
}

}  // namespace

// ---------------------------------------------------------------------------

SliceBasis::SliceBasis(SliceKey key, std::vector<Monomial> monomials, RowReducer ideal)
    : key_(key), monomials_(std::move(monomials)), column_(column_map(monomials_)), ideal_(std::move(ideal)) {
  quotient_index_.assign(monomials_.size(), -1);
  for (std::size_t c = 0; c < monomials_.size(); ++c) {
    if (ideal_.is_pivot(c)) continue;
    quotient_index_[c] = static_cast<long>(basis_columns_.size());
    basis_columns_.push_back(c);
  }
}

SparseRow SliceBasis::free_coordinates(const Element& e) const {
  SparseRow r;
  r.reserve(e.size());
  for (const auto& [m, c] : e) {
    auto it = column_.find(m);
    if (it == column_.end()) throw Error("element has a term outside the slice");
    r.emplace_back(it->second, c);
  }
  normalize_row(r);
  return r;
}

SparseRow SliceBasis::coordinates(const Element& e) const {
  SparseRow nf = ideal_.reduce(free_coordinates(e));
  for (auto& [c, v] : nf) c = static_cast<std::size_t>(quotient_index_[c]);
  return nf;
}

Element SliceBasis::normal_form(const Element& e) const {
  Element out;
  for (const auto& [c, v] : ideal_.reduce(free_coordinates(e))) out.add(monomials_[c], v);
  return out;
}

SparseMatrix SliceBasis::projector() const {
  SparseMatrix m(monomials_.size(), monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) m.set_row(i, ideal_.reduce(SparseRow{{i, Rational(1)}}));
  return m;
}

SparseMatrix ideal_slice(const Presentation& p, int degree, std::optional<int> weight) {
  auto monomials = p.ctx().monomials_of(degree, weight);
  auto rows = ideal_rows(p, column_map(monomials), degree, weight);
  SparseMatrix m(rows.size(), monomials.size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, std::move(rows[i]));
  return m;
}

SliceBasis quotient_slice(const Presentation& p, int degree, std::optional<int> weight) {
  auto monomials = p.ctx().monomials_of(degree, weight);
  auto rows = ideal_rows(p, column_map(monomials), degree, weight);
  std::stable_sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  RowReducer red(monomials.size());
  for (const auto& r : rows) red.add(r);
  return SliceBasis(SliceKey{degree, weight}, std::move(monomials), std::move(red));
}

SparseMatrix differential_matrix(const Presentation& p, const SliceBasis& src, const SliceBasis& tgt) {
  if (tgt.degree() != src.degree() + 1 || tgt.weight() != src.weight())
    throw Error("differential target slice must be (degree + 1, same weight)");
  SparseMatrix m(src.dimension(), tgt.dimension());
  for (std::size_t i = 0; i < src.dimension(); ++i) {
    Element dm = p.d(Element(src.basis_monomial(i)));
    try {
      m.set_row(i, tgt.coordinates(dm));
    } catch (const Error&) {
      throw Error("d is not weight-homogeneous on " + p.ctx().to_string(src.basis_monomial(i)));
    }
  }
  return m;
}

SparseMatrix differential_matrix(const Presentation& p, int degree, std::optional<int> weight) {
  SliceBasis src = quotient_slice(p, degree, weight);
  SliceBasis tgt = quotient_slice(p, degree + 1, weight);
  return differential_matrix(p, src, tgt);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const SliceBasis> SliceCache::get(const SliceKey& key) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = slices_.find(key);
    if (it != slices_.end()) return it->second;
  }
  auto slice = std::make_shared<const SliceBasis>(quotient_slice(p_, key.degree, key.weight));
  std::lock_guard<std::mutex> lock(mutex_);
  return slices_.emplace(key, std::move(slice)).first->second;
}

std::vector<int> SliceCache::weights_in_degree(int degree) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = weights_.find(degree);
    if (it != weights_.end()) return it->second;
  }
  std::set<int> ws;
  for (const auto& m : p_.ctx().monomials_of(degree)) ws.insert(p_.ctx().weight(m));
  std::vector<int> out(ws.begin(), ws.end());
  std::lock_guard<std::mutex> lock(mutex_);
  weights_[degree] = out;
  return out;
}

void SliceCache::prefetch(const std::vector<SliceKey>& keys, int threads) {
  parallel_for(keys.size(), threads, [&](std::size_t i) { get(keys[i]); });
}

std::size_t CohomologyTable::dim(int degree) const {
  std::size_t total = 0;
  for (auto it = entries.lower_bound({degree, std::numeric_limits<int>::min()});
       it != entries.end() && it->first.first == degree; ++it)
    total += it->second;
  return total;
}

std::size_t CohomologyTable::dim(int degree, int weight) const {
  auto it = entries.find({degree, weight});
  return it == entries.end() ? 0 : it->second;
}

std::vector<std::size_t> CohomologyTable::totals() const {
  std::vector<std::size_t> out;
  for (int i = 0; i <= max_degree; ++i) out.push_back(dim(i));
  return out;
}

namespace {

CohomologyTable compute_cohomology(const Presentation& p, int max_degree, bool by_weight, int threads) {
  if (max_degree < 0) throw Error("max_degree must be nonnegative");
  p.validate();
  SliceCache cache(p);

  std::vector<std::vector<std::optional<int>>> weights(static_cast<std::size_t>(max_degree + 2));
  std::vector<SliceKey> keys;
  for (int i = 0; i <= max_degree + 1; ++i) {
    if (by_weight)
      for (int k : cache.weights_in_degree(i)) weights[static_cast<std::size_t>(i)].push_back(k);
    else
      weights[static_cast<std::size_t>(i)].push_back(std::nullopt);
    for (auto k : weights[static_cast<std::size_t>(i)]) keys.push_back({i, k});
  }
  // Larger degrees first; dynamic scheduling then balances the tail.
  std::vector<SliceKey> order(keys.rbegin(), keys.rend());
  cache.prefetch(order, threads);

  std::map<SliceKey, std::size_t> key_index;
  for (std::size_t j = 0; j < keys.size(); ++j) key_index[keys[j]] = j;

  struct RankJob {
    SliceKey source;
    std::size_t rank = 0;
  };
  std::vector<RankJob> jobs;
  for (int i = 0; i <= max_degree; ++i)
    for (auto k : weights[static_cast<std::size_t>(i)])
      if (key_index.count(SliceKey{i + 1, k})) jobs.push_back({SliceKey{i, k}, 0});
  std::vector<std::size_t> job_order(jobs.size());
  std::iota(job_order.begin(), job_order.end(), 0);
  std::reverse(job_order.begin(), job_order.end());

  parallel_for(job_order.size(), threads, [&](std::size_t j) {
    RankJob& job = jobs[job_order[j]];
    auto src = cache.get(job.source);
    auto tgt = cache.get(SliceKey{job.source.degree + 1, job.source.weight});
    if (src->dimension() == 0 || tgt->dimension() == 0) return;
    job.rank = rank_with_modular_prescreen(differential_matrix(p, *src, *tgt));
  });

  std::map<SliceKey, std::size_t> ranks;
  for (const auto& job : jobs) ranks[job.source] = job.rank;

  CohomologyTable table;
  table.model = p.name;
  table.max_degree = max_degree;
  table.by_weight = by_weight;
  for (int i = 0; i <= max_degree; ++i)
    for (auto k : weights[static_cast<std::size_t>(i)]) {
      const std::size_t dim = cache.get(SliceKey{i, k})->dimension();
      const std::size_t out_rank = ranks.count({i, k}) ? ranks[{i, k}] : 0;
      const std::size_t in_rank = ranks.count({i - 1, k}) ? ranks[{i - 1, k}] : 0;
      const std::size_t h = dim - out_rank - in_rank;
      if (h > 0) table.entries[{i, k ? *k : -1}] = h;
    }
  return table;
}

}  // namespace

CohomologyTable cohomology(const Presentation& p, int max_degree, bool by_weight, ExecutionOptions opts) {
  return compute_cohomology(p, max_degree, by_weight, opts.threads);
}

CohomologyTable cohomology_serial(const Presentation& p, int max_degree, bool by_weight) {
  return compute_cohomology(p, max_degree, by_weight, 1);
}

DSquaredReport verify_d_squared(const Presentation& p, int max_degree) {
  DSquaredReport report;
  try {
    p.validate();
  } catch (const Error& e) {
    report.ok = false;
    report.description = e.what();
    return report;
  }
  const auto& ctx = p.ctx();
  SliceCache cache(p);

  for (const auto& rel : p.relations) {
    if (rel.is_zero()) continue;
    Element image = p.d(rel);
    if (image.is_zero()) continue;
    SliceKey key{ctx.degree(rel) + 1, ctx.weight_if_homogeneous(rel)};
    auto slice = cache.get(key);
    SparseRow nf;
    try {
      nf = slice->coordinates(image);
    } catch (const Error&) {
      nf = {{0, Rational(1)}};
    }
    if (!nf.empty()) {
      report.ok = false;
      report.failing_slice = key;
      report.description = "d(relation) does not lie in the ideal";
      report.witness = rel;
      report.image = image;
      return report;
    }
  }

  for (int i = 0; i <= max_degree; ++i)
    for (int k : cache.weights_in_degree(i)) {
      auto slice = cache.get(SliceKey{i, k});
      for (std::size_t b = 0; b < slice->dimension(); ++b) {
        Element m(slice->basis_monomial(b));
        Element dd = p.d(p.d(m));
        if (dd.is_zero()) continue;
        SparseRow nf;
        try {
          nf = cache.get(SliceKey{i + 2, k})->coordinates(dd);
        } catch (const Error&) {
          nf = {{0, Rational(1)}};
        }
        if (!nf.empty()) {
          report.ok = false;
          report.failing_slice = SliceKey{i, k};
          report.description = "d(d(x)) is nonzero in the quotient";
          report.witness = m;
          report.image = dd;
          return report;
        }
      }
    }
  return report;
}

int threads_from_environment() {
  const char* v = std::getenv("CDGA_THREADS");
  if (!v) return 0;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1 || n > 4096) return 0;
  return static_cast<int>(n);
}

}  // namespace cdga
