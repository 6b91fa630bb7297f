#include <doctest.h>

#include <random>
#include <vector>

#include "tilegraph/error.hpp"
#include "tilegraph/zlin.hpp"

using namespace tilegraph;
using namespace tilegraph::zlin;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

// Oracle: determinant by cofactor expansion along the first row.
mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    mpz_class term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

std::vector<std::vector<mpz_class>> to_mpz(const IntegerMatrix& a) {
  std::vector<std::vector<mpz_class>> out(a.rows(), std::vector<mpz_class>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = a(r, c).to_mpz();
  return out;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Oracle: gcd of all k x k minors (determinantal divisors).
std::vector<mpz_class> determinantal_divisors(const IntegerMatrix& a) {
  auto m = to_mpz(a);
  std::vector<mpz_class> out;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs;
    std::vector<std::vector<std::size_t>> cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cofactor_det(sub).get_mpz_t());
      }
    out.push_back(g);
  }
  return out;
}

// Oracle: rank over the rationals.
std::size_t rational_rank(const IntegerMatrix& a) {
  std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = mpq_class(a(r, c).to_mpz());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && m[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t j = 0; j < a.cols(); ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("Integer arithmetic agrees with GMP across the int64 boundary") {
  std::mt19937_64 rng(7);
  const std::vector<long long> edges = {0, 1, -1, INT64_MAX, INT64_MIN + 1, INT64_MAX / 2, -(INT64_MAX / 2),
                                        3037000499LL, -3037000500LL};
  std::vector<Integer> values;
  for (long long e : edges) values.emplace_back(e);
  for (int i = 0; i < 40; ++i) values.emplace_back(static_cast<long long>(rng()));
  values.push_back(Integer::from_string("-170141183460469231731687303715884105728"));
  values.push_back(Integer::from_string("99999999999999999999999"));
  for (const auto& a : values)
    for (const auto& b : values) {
      const mpz_class x = a.to_mpz();
      const mpz_class y = b.to_mpz();
      CHECK((a + b).to_mpz() == x + y);
      CHECK((a - b).to_mpz() == x - y);
      CHECK((a * b).to_mpz() == x * y);
      CHECK((a < b) == (x < y));
      CHECK((a == b) == (x == y));
      Integer c = a;
      c.submul(b, a);
      CHECK(c.to_mpz() == x - y * x);
      if (!b.is_zero()) {
        const Integer r = mod(a, b);
        CHECK(r.sign() >= 0);
        CHECK(compare_abs(r, b) < 0);
        CHECK(divides(b, a - r));
        const Integer q = round_div(a, b);
        const mpz_class rest = x - q.to_mpz() * y;
        CHECK(2 * abs(rest) <= abs(y));
      }
      const ExtendedGcd eg = extended_gcd(a, b);
      CHECK(eg.g == gcd(a, b));
      CHECK(eg.s * a + eg.t * b == eg.g);
    }
}

TEST_CASE("Integer normalizes results that shrink back into int64") {
  Integer big = Integer(INT64_MAX) + Integer(1);
  CHECK_FALSE(big.is_small());
  Integer back = big - Integer(1);
  CHECK(back.is_small());
  CHECK(back == Integer(INT64_MAX));
  CHECK(Integer(INT64_MIN).to_string() == "-9223372036854775808");
  CHECK_FALSE(Integer(INT64_MIN).is_small());
}

TEST_CASE("abelian group normal form") {
  CHECK(AbelianGroup::from_diagonal({2, 3}).invariant_factors == std::vector<Integer>{6});
  CHECK(AbelianGroup::from_diagonal({4, 6, 0, 1}).to_string() == "Z + Z/2 + Z/12");
  CHECK(AbelianGroup::from_diagonal({1, -1}).is_trivial());
  CHECK(AbelianGroup::from_diagonal({5}).is_cyclic());
  CHECK(*AbelianGroup::from_diagonal({2, 4}).order() == 8);
  CHECK_FALSE(AbelianGroup::from_diagonal({0}).order().has_value());
  CHECK(direct_sum(AbelianGroup::from_diagonal({2}), AbelianGroup::from_diagonal({3})) ==
        AbelianGroup::from_diagonal({6}));
}

TEST_CASE("smith normal form of small fixed matrices") {
  auto s = smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}});
  CHECK(s.D == IntegerMatrix{{1, 0}, {0, 6}});
  auto t = smith_normal_form(IntegerMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(t.D == IntegerMatrix{{2, 0, 0}, {0, 6, 0}, {0, 0, 12}});
  auto z = smith_normal_form(IntegerMatrix(2, 3));
  CHECK(z.rank == 0);
  auto e = smith_normal_form(IntegerMatrix(0, 3));
  CHECK(e.V.rows() == 3);
}

TEST_CASE("smith normal form matches determinantal divisors on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng() % 4;
    const std::size_t cols = 1 + rng() % 4;
    const IntegerMatrix a = random_matrix(rng, rows, cols, trial % 3 == 0 ? 1 : 9);
    const SmithForm s = smith_normal_form(a);
    const auto dk = determinantal_divisors(a);
    mpz_class prefix = 1;
    for (std::size_t k = 0; k < dk.size(); ++k) {
      prefix *= s.D(k, k).to_mpz();
      CHECK(prefix == dk[k]);
    }
    CHECK(s.rank == rational_rank(a));
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const IntegerMatrix a = random_matrix(rng, n, n, trial % 2 ? 2 : 50);
    CHECK(determinant(a).to_mpz() == cofactor_det(to_mpz(a)));
  }
}

TEST_CASE("all-ones circulant determinant") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const Integer d = circulant_det_check(n);
    CHECK(d == -Integer(static_cast<long long>(n) - 1));
  }
  CHECK(circulant_det_check(3) == -2);
  CHECK(circulant_det_check(4) == -3);
}

TEST_CASE("kernel basis is annihilated and spans every small integer solution") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 3;
    const std::size_t cols = rows + 1 + rng() % 2;
    const IntegerMatrix a = random_matrix(rng, rows, cols, 3);
    const IntegerMatrix h = kernel_basis(a);
    CHECK((a * h).is_zero());
    CHECK(h.cols() == cols - rational_rank(a));
    // Every solution in a small box lies in the lattice spanned by h.
    std::vector<int> x(cols, -2);
    for (;;) {
      IntegerVector v(x.begin(), x.end());
      bool in_kernel = true;
      for (const auto& e : a * v) in_kernel = in_kernel && e.is_zero();
      if (in_kernel && h.cols() > 0) {
        const IntegerVector w = solve_in_lattice(h, v);
        CHECK(h * w == v);
      }
      std::size_t i = 0;
      while (i < cols && x[i] == 2) x[i++] = -2;
      if (i == cols) break;
      ++x[i];
    }
  }
}

TEST_CASE("cokernel order and class orders against the adjugate") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const IntegerMatrix a = random_matrix(rng, n, n, 6);
    const mpz_class det = cofactor_det(to_mpz(a));
    IntegerVector x(n);
    for (auto& v : x) v = static_cast<int>(rng() % 7) - 3;
    const CokernelClasses c = cokernel_classes(a, {x});
    if (det == 0) {
      CHECK_FALSE(c.group.is_finite());
      continue;
    }
    CHECK(c.group.order()->to_mpz() == abs(det));
    // k x lies in img A iff adj(A) (k x) == 0 mod det.
    auto m = to_mpz(a);
    mpz_class g = det;
    for (std::size_t i = 0; i < n; ++i) {
      mpz_class entry = 0;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == j) continue;
          std::vector<mpz_class> row;
          for (std::size_t cc = 0; cc < n; ++cc)
            if (cc != i) row.push_back(m[r][cc]);
          minor.push_back(row);
        }
        mpz_class cof = cofactor_det(minor);
        if ((i + j) % 2) cof = -cof;
        entry += cof * x[j].to_mpz();
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), entry.get_mpz_t());
    }
    const mpz_class expected = abs(det) / abs(g);
    CHECK(c.order_of(0)->to_mpz() == expected);
  }
}

TEST_CASE("quotient of lattices") {
  CHECK(quotient_group(IntegerMatrix::identity(2), IntegerMatrix{{2, 0}, {0, 3}}) ==
        AbelianGroup::from_diagonal({6}));
  const IntegerMatrix h{{1, 0}, {1, 1}, {0, 1}};
  const IntegerMatrix z{{2, 0}, {2, 2}, {0, 2}};
  CHECK(quotient_group(h, z).to_string() == "Z/2 + Z/2");
  CHECK(lattice_coordinates(h, z) == IntegerMatrix{{2, 0}, {0, 2}});
  CHECK(quotient_group(h, IntegerMatrix{{1}, {1}, {0}}).to_string() == "Z");

  CHECK_THROWS_AS(quotient_group(IntegerMatrix{{1, 2}, {2, 4}}, IntegerMatrix{{1}, {2}}), Error);
  try {
    quotient_group(IntegerMatrix{{2}, {0}}, IntegerMatrix{{1}, {0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SublatticeNotContained);
  }
  try {
    quotient_group(IntegerMatrix{{1}, {0}}, IntegerMatrix{{1}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  try {
    solve_in_lattice(IntegerMatrix{{2}, {0}}, {1, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSolution);
  }
}

TEST_CASE("quotient group agrees with index for random full-rank sublattices") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    IntegerMatrix h = random_matrix(rng, n + 1, n, 3);
    if (rational_rank(h) != n) continue;
    const IntegerMatrix w = random_matrix(rng, n, n, 4);
    const IntegerMatrix z = h * w;
    const mpz_class det = cofactor_det(to_mpz(w));
    const AbelianGroup g = quotient_group(h, z);
    if (det == 0) {
      CHECK_FALSE(g.is_finite());
    } else {
      CHECK(g.order()->to_mpz() == abs(det));
      CHECK(g == cokernel_group(w));
    }
  }
}
