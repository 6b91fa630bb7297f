#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "tilegraph/integer.hpp"

// Exact integer linear algebra: Smith normal form, lattice kernels and
// cokernels, and quotients of lattices described by basis matrices.
namespace tilegraph::zlin {

using IntegerVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_columns(std::size_t rows, const std::vector<IntegerVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntegerVector column(std::size_t c) const;
  IntegerVector row(std::size_t r) const;
  IntegerMatrix transpose() const;
  bool is_zero() const;
  /// Number of nonzero entries.
  std::size_t nonzeros() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& x);

/// Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k with
/// d_1 | d_2 | ... | d_k and every d_i >= 2. Equality is isomorphism.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_finite() const noexcept { return free_rank == 0; }
  bool is_trivial() const noexcept { return free_rank == 0 && invariant_factors.empty(); }
  bool is_cyclic() const noexcept;
  /// Order of the group, or nullopt when infinite.
  std::optional<Integer> order() const;
  /// Reads like "Z^2 + Z/2 + Z/6"; the trivial group is "0".
  std::string to_string() const;

  /// Builds a group from arbitrary diagonal entries (zeros become free
  /// rank, units are dropped, the rest is brought into divisibility form).
  static AbelianGroup from_diagonal(const std::vector<Integer>& diagonal, std::size_t extra_free = 0);

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

struct SmithForm {
  IntegerMatrix D;
  IntegerMatrix U;  // unimodular, rows x rows
  IntegerMatrix V;  // unimodular, cols x cols
  std::size_t rank = 0;
};

/// U*A*V == D with D diagonal, nonnegative, and d_1 | d_2 | .... All
/// postconditions, including |det U| == |det V| == 1, are re-verified
/// before returning; a failure throws TheoremViolation.
SmithForm smith_normal_form(const IntegerMatrix& a);

std::size_t rank(const IntegerMatrix& a);

/// Columns form a lattice basis of {x in Z^cols : A x = 0}.
IntegerMatrix kernel_basis(const IntegerMatrix& a);

AbelianGroup cokernel_group(const IntegerMatrix& a);

/// Cokernel Z^rows / img(A) together with the classes of some vectors.
struct CokernelClasses {
  AbelianGroup group;
  /// For each input vector: coordinates against the cyclic decomposition,
  /// torsion coordinates first (reduced mod the matching invariant factor)
  /// followed by free coordinates.
  std::vector<IntegerVector> coordinates;

  /// Order of a class; nullopt when it has infinite order.
  std::optional<Integer> order_of(std::size_t which) const;
};
CokernelClasses cokernel_classes(const IntegerMatrix& a, const std::vector<IntegerVector>& vectors);

/// Everything one elimination of A yields: cokernel with vector classes,
/// rank, and a kernel lattice basis. Used when several of these are needed
/// from the same (large) matrix.
struct LatticeData {
  CokernelClasses cokernel;
  std::size_t rank = 0;
  IntegerMatrix kernel;
};
LatticeData analyze(const IntegerMatrix& a, const std::vector<IntegerVector>& vectors);

/// w with H*w == z. Throws ColumnsDependent, NoSolution.
IntegerVector solve_in_lattice(const IntegerMatrix& h, const IntegerVector& z);

/// (column lattice of H) / (column lattice of Z), where the columns of H are
/// independent and every column of Z lies in the lattice spanned by H.
/// Throws ColumnsDependent, SublatticeNotContained, DimensionMismatch.
AbelianGroup quotient_group(const IntegerMatrix& h, const IntegerMatrix& z);

/// Coordinates W with H*W == Z (the matrix whose |det| is the index).
IntegerMatrix lattice_coordinates(const IntegerMatrix& h, const IntegerMatrix& z);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntegerMatrix& a);

/// det(1 - K^t) for K the n x n all-ones matrix. Asserts that it equals
/// -(n-1) and that the circulant K^t - 1 = Circ(0, 1, ..., 1) has
/// determinant (-1)^(n-1) (n-1); returns det(1 - K^t).
Integer circulant_det_check(std::size_t n);

}  // namespace tilegraph::zlin
