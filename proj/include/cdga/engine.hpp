#pragma once

// Slice-by-slice cohomology of presented CDGAs. Each (degree, weight) slice
// of the quotient is computed independently; the parallel driver distributes
// slices over OpenMP threads and the serial driver is the reference.

#include "cdga/presentation.hpp"
#include "cdga/sparse_matrix.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace cdga {

struct SliceKey {
  int degree = 0;
  std::optional<int> weight;
  friend auto operator<=>(const SliceKey&, const SliceKey&) = default;
};

/// One (degree, weight) slice of the quotient algebra. The quotient basis is
/// the set of free monomials that are not pivots of the RREF of the ideal
/// slice; normal forms rewrite pivots through the reduced rows.
class SliceBasis {
 public:
  SliceBasis(SliceKey key, std::vector<Monomial> monomials, RowReducer ideal);

  const SliceKey& key() const { return key_; }
  int degree() const { return key_.degree; }
  std::optional<int> weight() const { return key_.weight; }

  const std::vector<Monomial>& free_monomials() const { return monomials_; }
  std::size_t free_dimension() const { return monomials_.size(); }
  std::size_t ideal_rank() const { return ideal_.rank(); }
  std::size_t dimension() const { return basis_columns_.size(); }
  const Monomial& basis_monomial(std::size_t i) const { return monomials_[basis_columns_[i]]; }
  const std::vector<std::size_t>& basis_columns() const { return basis_columns_; }
  const RowReducer& ideal() const { return ideal_; }

  /// Coordinates in the free monomial basis; throws if e leaves the slice.
  SparseRow free_coordinates(const Element& e) const;
  /// Coordinates of the normal form in the quotient basis.
  SparseRow coordinates(const Element& e) const;
  Element normal_form(const Element& e) const;
  /// Free-dim square matrix (row convention) of the normal-form map.
  SparseMatrix projector() const;

 private:
  SliceKey key_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> column_;
  RowReducer ideal_;
  std::vector<std::size_t> basis_columns_;
  std::vector<long> quotient_index_;
};

/// Rows: every relation times every free monomial of complementary bidegree,
/// in the canonical monomial basis of the slice.
SparseMatrix ideal_slice(const Presentation& p, int degree, std::optional<int> weight = std::nullopt);
SliceBasis quotient_slice(const Presentation& p, int degree, std::optional<int> weight = std::nullopt);

/// Matrix of d from src to tgt in quotient coordinates; row i is d of the
/// i-th basis monomial of src.
SparseMatrix differential_matrix(const Presentation& p, const SliceBasis& src, const SliceBasis& tgt);
SparseMatrix differential_matrix(const Presentation& p, int degree, std::optional<int> weight = std::nullopt);

/// Lazily computed, thread-safe slice store bound to one presentation.
class SliceCache {
 public:
  explicit SliceCache(const Presentation& p) : p_(p) {}
  const Presentation& presentation() const { return p_; }
  std::shared_ptr<const SliceBasis> get(const SliceKey& key);
  /// Distinct weights of free monomials in the given degree, ascending.
  std::vector<int> weights_in_degree(int degree);
  /// Computes the listed slices, in parallel when threads != 1.
  void prefetch(const std::vector<SliceKey>& keys, int threads);

 private:
  const Presentation& p_;
  std::mutex mutex_;
  std::map<SliceKey, std::shared_ptr<const SliceBasis>> slices_;
  std::map<int, std::vector<int>> weights_;
};

struct ExecutionOptions {
  /// 0 selects the OpenMP default (or CDGA_THREADS if set by the caller).
  int threads = 0;
};

struct CohomologyTable {
  std::string model;
  int max_degree = -1;
  bool by_weight = false;
  /// (degree, weight) -> dim; weight is -1 for unsplit computations.
  std::map<std::pair<int, int>, std::size_t> entries;

  std::size_t dim(int degree) const;
  std::size_t dim(int degree, int weight) const;
  std::vector<std::size_t> totals() const;  // degrees 0..max_degree
};

CohomologyTable cohomology(const Presentation& p, int max_degree, bool by_weight, ExecutionOptions opts = {});
/// Single-threaded reference path.
CohomologyTable cohomology_serial(const Presentation& p, int max_degree, bool by_weight);

struct DSquaredReport {
  bool ok = true;
  std::optional<SliceKey> failing_slice;
  std::string description;
  Element witness;
  Element image;
};

/// Checks d∘d = 0 on every quotient slice of degree <= max_degree and that d
/// maps every relation into the ideal. Failures are reported, not thrown.
DSquaredReport verify_d_squared(const Presentation& p, int max_degree);

/// Thread count from CDGA_THREADS, or 0 if unset/invalid.
int threads_from_environment();

}  // namespace cdga
