#include "tilegraph/zlin.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "tilegraph/error.hpp"

namespace tilegraph::zlin {

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(std::size_t rows, const std::vector<IntegerVector>& columns) {
  IntegerMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntegerVector IntegerMatrix::column(std::size_t c) const {
  IntegerVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntegerVector IntegerMatrix::row(std::size_t r) const {
  return IntegerVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

std::size_t IntegerMatrix::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Integer& v) { return !v.is_zero(); }));
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j).submul(-x, b(k, j));
    }
  return out;
}

IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  IntegerVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!x[k].is_zero() && !a(i, k).is_zero()) out[i].submul(-a(i, k), x[k]);
  return out;
}

// ---------------------------------------------------------------------------
// AbelianGroup

bool AbelianGroup::is_cyclic() const noexcept {
  return free_rank + invariant_factors.size() <= 1;
}

std::optional<Integer> AbelianGroup::order() const {
  if (free_rank != 0) return std::nullopt;
  Integer n(1);
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank == 1) out = "Z";
  if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
  for (const auto& d : invariant_factors) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.to_string();
  }
  return out;
}

namespace {

// Rewrites positive entries so that each divides the next, keeping the
// product; entries equal to one are dropped.
std::vector<Integer> divisibility_chain(std::vector<Integer> d) {
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (divides(d[i], d[j])) continue;
      Integer g = gcd(d[i], d[j]);
      Integer l = exact_div(d[i], g) * d[j];
      d[i] = std::move(g);
      d[j] = std::move(l);
    }
  std::erase_if(d, [](const Integer& v) { return v.is_unit(); });
  return d;
}

}  // namespace

AbelianGroup AbelianGroup::from_diagonal(const std::vector<Integer>& diagonal, std::size_t extra_free) {
  AbelianGroup g;
  g.free_rank = extra_free;
  std::vector<Integer> nonzero;
  for (const auto& d : diagonal) {
    if (d.is_zero()) {
      ++g.free_rank;
    } else {
      nonzero.push_back(abs(d));
    }
  }
  g.invariant_factors = divisibility_chain(std::move(nonzero));
  return g;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Integer> d = a.invariant_factors;
  d.insert(d.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  return AbelianGroup::from_diagonal(d, a.free_rank + b.free_rank);
}

// ---------------------------------------------------------------------------
// Sparse elimination engine
//
// Rows are sorted (column, value) lists. Companion vectors are stored as
// extra columns past the real ones so that every row operation carries them
// along; they end up as U*x. Column operations are mirrored on a sparse copy
// of the identity when the caller needs V.

namespace {

struct Entry {
  std::size_t index;
  Integer value;
};
using SparseVec = std::vector<Entry>;

SparseVec::const_iterator lower(const SparseVec& v, std::size_t index) {
  return std::lower_bound(v.begin(), v.end(), index,
                          [](const Entry& e, std::size_t i) { return e.index < i; });
}

const Integer* lookup(const SparseVec& v, std::size_t index) {
  auto it = lower(v, index);
  return (it != v.end() && it->index == index) ? &it->value : nullptr;
}

struct NoOp {
  void operator()(std::size_t) const {}
};

// target -= factor * source; appear/vanish report entries that change between
// zero and nonzero.
template <class Appear = NoOp, class Vanish = NoOp>
void axpy(SparseVec& target, const Integer& factor, const SparseVec& source, Appear appear = {},
          Vanish vanish = {}) {
  SparseVec out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].index < source[j].index)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || source[j].index < target[i].index) {
      Integer v;
      v.submul(factor, source[j].value);
      if (!v.is_zero()) {
        appear(source[j].index);
        out.push_back({source[j].index, std::move(v)});
      }
      ++j;
    } else {
      target[i].value.submul(factor, source[j].value);
      if (target[i].value.is_zero()) {
        vanish(target[i].index);
      } else {
        out.push_back(std::move(target[i]));
      }
      ++i;
      ++j;
    }
  }
  target.swap(out);
}

// alpha * x + beta * y
SparseVec combine(const Integer& alpha, const SparseVec& x, const Integer& beta, const SparseVec& y) {
  SparseVec out;
  for (const auto& e : x) {
    Integer v = alpha * e.value;
    if (!v.is_zero()) out.push_back({e.index, std::move(v)});
  }
  axpy(out, -beta, y);
  return out;
}

struct Pivot {
  std::size_t row;
  std::size_t col;
  Integer d;
};

class Eliminator {
 public:
  Eliminator(const IntegerMatrix& a, const std::vector<IntegerVector>& companions, bool track_columns)
      : m_(a.rows()), n_(a.cols()), k_(companions.size()), rows_(m_), col_count_(n_), col_rows_(n_),
        row_done_(m_, false), col_done_(n_, false), track_(track_columns) {
    for (const auto& x : companions)
      if (x.size() != m_) throw Error(ErrorCode::DimensionMismatch, "companion vector length");
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (a(r, c).is_zero()) continue;
        rows_[r].push_back({c, a(r, c)});
        ++col_count_[c];
        col_rows_[c].push_back(r);
      }
      for (std::size_t j = 0; j < k_; ++j)
        if (!companions[j][r].is_zero()) rows_[r].push_back({n_ + j, companions[j][r]});
    }
    if (track_) {
      vcols_.resize(n_);
      for (std::size_t c = 0; c < n_; ++c) vcols_[c].push_back({c, Integer(1)});
    }
  }

  void run() {
    while (auto start = choose_pivot()) {
      auto [r, c] = *start;
      reduce_at(r, c);
      if (lookup(rows_[r], c)->sign() < 0)
        for (auto& e : rows_[r]) e.value = -e.value;
      pivots_.push_back({r, c, *lookup(rows_[r], c)});
      row_done_[r] = true;
      col_done_[c] = true;
    }
    fix_divisibility();
  }

  const std::vector<Pivot>& pivots() const { return pivots_; }
  std::size_t rank() const { return pivots_.size(); }

  std::vector<std::size_t> free_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < m_; ++r)
      if (!row_done_[r]) out.push_back(r);
    return out;
  }

  std::vector<std::size_t> free_cols() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n_; ++c)
      if (!col_done_[c]) out.push_back(c);
    return out;
  }

  /// Entry j of U*x for companion x, at row r.
  Integer companion(std::size_t r, std::size_t j) const {
    const Integer* v = lookup(rows_[r], n_ + j);
    return v ? *v : Integer(0);
  }

  const SparseVec& vcol(std::size_t c) const { return vcols_[c]; }

 private:
  std::size_t real_size(const SparseVec& row) const {
    return static_cast<std::size_t>(lower(row, n_) - row.begin());
  }

  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    std::size_t unit_cost = std::numeric_limits<std::size_t>::max();
    std::optional<std::pair<std::size_t, std::size_t>> other;
    const Integer* other_value = nullptr;
    std::size_t other_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < m_; ++r) {
      if (row_done_[r]) continue;
      const auto& row = rows_[r];
      const std::size_t len = real_size(row);
      if (len == 0) continue;
      for (std::size_t i = 0; i < len; ++i) {
        const auto& e = row[i];
        const std::size_t cost = (len - 1) * (col_count_[e.index] - 1);
        if (e.value.is_unit()) {
          if (cost < unit_cost) {
            unit_cost = cost;
            unit = {r, e.index};
            if (cost == 0) return unit;
          }
        } else if (!unit) {
          const int cmp = other_value ? compare_abs(e.value, *other_value) : -1;
          if (cmp < 0 || (cmp == 0 && cost < other_cost)) {
            other = {r, e.index};
            other_value = &e.value;
            other_cost = cost;
          }
        }
      }
    }
    return unit ? unit : other;
  }

  std::vector<std::size_t> rows_in_column(std::size_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::size_t r) { return lookup(rows_[r], c) == nullptr; });
    return list;
  }

  void row_axpy(std::size_t target, const Integer& factor, std::size_t source) {
    axpy(
        rows_[target], factor, rows_[source],
        [&](std::size_t c) {
          if (c < n_) {
            ++col_count_[c];
            col_rows_[c].push_back(target);
          }
        },
        [&](std::size_t c) {
          if (c < n_) --col_count_[c];
        });
  }

  // Makes (r, c) the only nonzero entry in its row and column, moving the
  // pivot to smaller remainders until the divisions come out exact.
  void reduce_at(std::size_t& r, std::size_t& c) {
    for (;;) {
      const Integer p = *lookup(rows_[r], c);
      std::optional<std::size_t> next_row;
      for (std::size_t i : rows_in_column(c)) {
        if (i == r) continue;
        const Integer qt = round_div(*lookup(rows_[i], c), p);
        if (!qt.is_zero()) row_axpy(i, qt, r);
        if (const Integer* rest = lookup(rows_[i], c)) {
          if (!next_row || compare_abs(*rest, *lookup(rows_[*next_row], c)) < 0) next_row = i;
        }
      }
      if (next_row) {
        r = *next_row;
        continue;
      }
      std::optional<std::size_t> next_col;
      const Integer* smallest = nullptr;
      SparseVec& row = rows_[r];
      const std::size_t len = real_size(row);
      for (std::size_t i = 0; i < len; ++i) {
        Entry& e = row[i];
        if (e.index == c) continue;
        const Integer qt = round_div(e.value, p);
        if (qt.is_zero()) continue;
        e.value.submul(qt, p);
        if (track_) axpy(vcols_[e.index], qt, vcols_[c]);
      }
      std::erase_if(row, [&](const Entry& e) {
        if (!e.value.is_zero()) return false;
        --col_count_[e.index];
        return true;
      });
      for (std::size_t i = 0; i < real_size(row); ++i) {
        if (row[i].index == c) continue;
        if (!smallest || compare_abs(row[i].value, *smallest) < 0) {
          smallest = &row[i].value;
          next_col = row[i].index;
        }
      }
      if (next_col) {
        c = *next_col;
        continue;
      }
      return;
    }
  }

  // Replaces pairs (a, b) on the diagonal by (gcd, lcm) until each divides
  // the next; rows act on companions and columns on V.
  void fix_divisibility() {
    std::stable_sort(pivots_.begin(), pivots_.end(),
                     [](const Pivot& x, const Pivot& y) { return x.d < y.d; });
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      if (pivots_[i].d.is_unit()) continue;
      for (std::size_t j = i + 1; j < pivots_.size(); ++j) {
        const Integer& a = pivots_[i].d;
        const Integer& b = pivots_[j].d;
        if (divides(a, b)) continue;
        const ExtendedGcd eg = extended_gcd(a, b);
        const Integer bg = exact_div(b, eg.g);
        const Integer ag = exact_div(a, eg.g);
        SparseVec& ra = rows_[pivots_[i].row];
        SparseVec& rb = rows_[pivots_[j].row];
        SparseVec ca = tail(ra);
        SparseVec cb = tail(rb);
        SparseVec na = combine(eg.s, ca, eg.t, cb);
        SparseVec nb = combine(-bg, ca, ag, cb);
        set_tail(ra, std::move(na));
        set_tail(rb, std::move(nb));
        if (track_) {
          SparseVec& va = vcols_[pivots_[i].col];
          SparseVec& vb = vcols_[pivots_[j].col];
          SparseVec nva = combine(Integer(1), va, Integer(1), vb);
          SparseVec nvb = combine(-(eg.t * bg), va, eg.s * ag, vb);
          va = std::move(nva);
          vb = std::move(nvb);
        }
        Integer l = ag * b;
        pivots_[i].d = eg.g;
        pivots_[j].d = std::move(l);
        *find_mut(ra, pivots_[i].col) = pivots_[i].d;
        *find_mut(rb, pivots_[j].col) = pivots_[j].d;
      }
    }
  }

  SparseVec tail(const SparseVec& row) const {
    auto it = lower(row, n_);
    return SparseVec(it, row.end());
  }

  void set_tail(SparseVec& row, SparseVec tail) const {
    row.erase(row.begin() + (lower(row, n_) - row.begin()), row.end());
    for (auto& e : tail) row.push_back(std::move(e));
  }

  static Integer* find_mut(SparseVec& v, std::size_t index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const Entry& e, std::size_t i) { return e.index < i; });
    return &it->value;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t k_;
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> col_count_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::vector<bool> row_done_;
  std::vector<bool> col_done_;
  bool track_;
  std::vector<SparseVec> vcols_;
  std::vector<Pivot> pivots_;
};

AbelianGroup group_of(const Eliminator& e, std::size_t rows) {
  AbelianGroup g;
  g.free_rank = rows - e.rank();
  for (const auto& p : e.pivots())
    if (!p.d.is_unit()) g.invariant_factors.push_back(p.d);
  return g;
}

CokernelClasses classes_of(const Eliminator& e, std::size_t rows, std::size_t count) {
  CokernelClasses out;
  out.group = group_of(e, rows);
  const auto free = e.free_rows();
  for (std::size_t j = 0; j < count; ++j) {
    IntegerVector coords;
    for (const auto& p : e.pivots())
      if (!p.d.is_unit()) coords.push_back(mod(e.companion(p.row, j), p.d));
    for (std::size_t r : free) coords.push_back(e.companion(r, j));
    out.coordinates.push_back(std::move(coords));
  }
  return out;
}

// Columns of V belonging to non-pivot columns, after checking A*h == 0 for
// each of them through the sparse columns of A.
IntegerMatrix kernel_of(const Eliminator& e, const IntegerMatrix& a) {
  const auto free = e.free_cols();
  std::vector<SparseVec> acols(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero()) acols[c].push_back({r, a(r, c)});
  IntegerMatrix h(a.cols(), free.size());
  IntegerVector acc(a.rows());
  for (std::size_t k = 0; k < free.size(); ++k) {
    const SparseVec& v = e.vcol(free[k]);
    std::vector<std::size_t> touched;
    for (const auto& entry : v) {
      h(entry.index, k) = entry.value;
      for (const auto& ae : acols[entry.index]) {
        acc[ae.index].submul(-entry.value, ae.value);
        touched.push_back(ae.index);
      }
    }
    for (std::size_t r : touched) {
      if (!acc[r].is_zero()) throw Error(ErrorCode::TheoremViolation, "kernel vector not annihilated");
    }
    for (std::size_t r : touched) acc[r] = 0;
  }
  return h;
}

std::vector<IntegerVector> columns_of(const IntegerMatrix& m) {
  std::vector<IntegerVector> out;
  out.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

}  // namespace

std::optional<Integer> CokernelClasses::order_of(std::size_t which) const {
  const IntegerVector& x = coordinates.at(which);
  const std::size_t torsion = group.invariant_factors.size();
  for (std::size_t i = torsion; i < x.size(); ++i)
    if (!x[i].is_zero()) return std::nullopt;
  Integer order(1);
  for (std::size_t i = 0; i < torsion; ++i) {
    const Integer& d = group.invariant_factors[i];
    order = lcm(order, exact_div(d, gcd(d, x[i])));
  }
  return order;
}

SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<IntegerVector> unit_vectors(m, IntegerVector(m));
  for (std::size_t i = 0; i < m; ++i) unit_vectors[i][i] = 1;
  Eliminator e(a, unit_vectors, true);
  e.run();

  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
  for (const auto& p : e.pivots()) {
    row_order.push_back(p.row);
    col_order.push_back(p.col);
  }
  for (std::size_t r : e.free_rows()) row_order.push_back(r);
  for (std::size_t c : e.free_cols()) col_order.push_back(c);

  SmithForm out;
  out.rank = e.rank();
  out.D = IntegerMatrix(m, n);
  out.U = IntegerMatrix(m, m);
  out.V = IntegerMatrix(n, n);
  for (std::size_t k = 0; k < e.rank(); ++k) out.D(k, k) = e.pivots()[k].d;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.U(i, j) = e.companion(row_order[i], j);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& entry : e.vcol(col_order[k])) out.V(entry.index, k) = entry.value;

  if (out.U * a * out.V != out.D) throw Error(ErrorCode::TheoremViolation, "U*A*V differs from D");
  for (std::size_t k = 0; k + 1 < out.rank; ++k)
    if (!divides(out.D(k, k), out.D(k + 1, k + 1)))
      throw Error(ErrorCode::TheoremViolation, "diagonal is not a divisibility chain");
  if (!abs(determinant(out.U)).is_unit() || !abs(determinant(out.V)).is_unit())
    throw Error(ErrorCode::TheoremViolation, "transform is not unimodular");
  return out;
}

std::size_t rank(const IntegerMatrix& a) {
  Eliminator e(a, {}, false);
  e.run();
  return e.rank();
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
  Eliminator e(a, {}, true);
  e.run();
  return kernel_of(e, a);
}

AbelianGroup cokernel_group(const IntegerMatrix& a) {
  Eliminator e(a, {}, false);
  e.run();
  return group_of(e, a.rows());
}

CokernelClasses cokernel_classes(const IntegerMatrix& a, const std::vector<IntegerVector>& vectors) {
  Eliminator e(a, vectors, false);
  e.run();
  return classes_of(e, a.rows(), vectors.size());
}

LatticeData analyze(const IntegerMatrix& a, const std::vector<IntegerVector>& vectors) {
  Eliminator e(a, vectors, true);
  e.run();
  LatticeData out;
  out.cokernel = classes_of(e, a.rows(), vectors.size());
  out.rank = e.rank();
  out.kernel = kernel_of(e, a);
  return out;
}

namespace {

// Y with D*Y == (U*Z) restricted to pivot rows, where U*H*V == D. Returns
// nullopt when some column of Z is not in the column lattice of H.
std::optional<std::vector<IntegerVector>> reduced_coordinates(const Eliminator& e, std::size_t count) {
  for (std::size_t r : e.free_rows())
    for (std::size_t j = 0; j < count; ++j)
      if (!e.companion(r, j).is_zero()) return std::nullopt;
  std::vector<IntegerVector> y(count, IntegerVector(e.rank()));
  for (std::size_t k = 0; k < e.rank(); ++k) {
    const Pivot& p = e.pivots()[k];
    for (std::size_t j = 0; j < count; ++j) {
      Integer v = e.companion(p.row, j);
      if (!divides(p.d, v)) return std::nullopt;
      y[j][k] = tdiv(v, p.d);
    }
  }
  return y;
}

}  // namespace

IntegerMatrix lattice_coordinates(const IntegerMatrix& h, const IntegerMatrix& z) {
  if (h.rows() != z.rows()) throw Error(ErrorCode::DimensionMismatch, "H and Z have different row counts");
  Eliminator e(h, columns_of(z), true);
  e.run();
  if (e.rank() != h.cols()) throw Error(ErrorCode::ColumnsDependent, "columns of H are dependent");
  auto y = reduced_coordinates(e, z.cols());
  if (!y) throw Error(ErrorCode::SublatticeNotContained, "a column of Z is outside the lattice of H");
  IntegerMatrix w(h.cols(), z.cols());
  for (std::size_t j = 0; j < z.cols(); ++j)
    for (std::size_t k = 0; k < e.rank(); ++k) {
      const Integer& yk = (*y)[j][k];
      if (yk.is_zero()) continue;
      for (const auto& entry : e.vcol(e.pivots()[k].col)) w(entry.index, j).submul(-yk, entry.value);
    }
  if (h * w != z) throw Error(ErrorCode::TheoremViolation, "H*W differs from Z");
  return w;
}

IntegerVector solve_in_lattice(const IntegerMatrix& h, const IntegerVector& z) {
  IntegerMatrix zm(z.size(), 1);
  for (std::size_t i = 0; i < z.size(); ++i) zm(i, 0) = z[i];
  try {
    return lattice_coordinates(h, zm).column(0);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::SublatticeNotContained)
      throw Error(ErrorCode::NoSolution, "vector is outside the lattice of H");
    throw;
  }
}

AbelianGroup quotient_group(const IntegerMatrix& h, const IntegerMatrix& z) {
  if (h.rows() != z.rows()) throw Error(ErrorCode::DimensionMismatch, "H and Z have different row counts");
  // With U*H*V == D and H*W == Z, D*(V^-1 W) == U*Z, so V^-1 W is the matrix Y
  // below; V is unimodular, so coker W and coker Y agree.
  Eliminator e(h, columns_of(z), false);
  e.run();
  if (e.rank() != h.cols()) throw Error(ErrorCode::ColumnsDependent, "columns of H are dependent");
  auto y = reduced_coordinates(e, z.cols());
  if (!y) throw Error(ErrorCode::SublatticeNotContained, "a column of Z is outside the lattice of H");
  IntegerMatrix ym(h.cols(), z.cols());
  for (std::size_t j = 0; j < z.cols(); ++j)
    for (std::size_t k = 0; k < h.cols(); ++k) ym(k, j) = std::move((*y)[j][k]);
  return cokernel_group(ym);
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  IntegerMatrix m = a;
  Integer prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t s = k + 1;
      while (s < n && m(s, k).is_zero()) ++s;
      if (s == n) return Integer(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(s, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k);
        v.submul(m(i, k), m(k, j));
        m(i, j) = exact_div(v, prev);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Integer d = m(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

Integer circulant_det_check(std::size_t n) {
  IntegerMatrix m(n, n);
  IntegerMatrix circ(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = (i == j) ? 0 : -1;
      circ(i, j) = (i == j) ? 0 : 1;
    }
  const Integer det = determinant(m);
  const Integer circ_det = determinant(circ);
  const Integer size(static_cast<long long>(n) - 1);
  const Integer circ_expected = (n - 1) % 2 == 1 ? -size : size;
  if (det != -size || circ_det != circ_expected)
    throw Error(ErrorCode::TheoremViolation, "det(1 - K^t) = " + det.to_string() + ", det(K^t - 1) = " +
                                                 circ_det.to_string() + " for n = " + std::to_string(n));
  return det;
}

}  // namespace tilegraph::zlin
