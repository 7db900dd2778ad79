// Copyright 2026 the fqgenus authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fqgenus/abelian.hpp"

#include <algorithm>

namespace fqgenus {

Mat Mat::identity(size_t n) {
  Mat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  check_invariant(A.cols == B.rows, "mat_mul: shape mismatch");
  Mat C(A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      const mpz_class& aik = A.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

mpz_class mat_det(Mat m) {
  check_invariant(m.rows == m.cols, "det of a nonsquare matrix");
  size_t n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      size_t piv = k + 1;
      while (piv < n && m.at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SnfWork {
  Mat M, U, Uinv, V, Vinv;

  void row_sub(size_t i, size_t j, const mpz_class& q) {
    // row i -= q * row j
    for (size_t c = 0; c < M.cols; ++c) M.at(i, c) -= q * M.at(j, c);
    for (size_t c = 0; c < U.cols; ++c) U.at(i, c) -= q * U.at(j, c);
    for (size_t r = 0; r < Uinv.rows; ++r) Uinv.at(r, j) += q * Uinv.at(r, i);
  }
  void col_sub(size_t i, size_t j, const mpz_class& q) {
    // col i -= q * col j
    for (size_t r = 0; r < M.rows; ++r) M.at(r, i) -= q * M.at(r, j);
    for (size_t r = 0; r < V.rows; ++r) V.at(r, i) -= q * V.at(r, j);
    for (size_t c = 0; c < Vinv.cols; ++c) Vinv.at(j, c) += q * Vinv.at(i, c);
  }
  void row_swap(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
    for (size_t c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    for (size_t r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
  }
  void col_swap(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
    for (size_t r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
    for (size_t c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
  }
  void row_negate(size_t i) {
    for (size_t c = 0; c < M.cols; ++c) M.at(i, c) = -M.at(i, c);
    for (size_t c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
    for (size_t r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
  }
};

}  // namespace

SnfResult smith_normal_form(const Mat& M0) {
  SnfWork w;
  w.M = M0;
  w.U = Mat::identity(M0.rows);
  w.Uinv = Mat::identity(M0.rows);
  w.V = Mat::identity(M0.cols);
  w.Vinv = Mat::identity(M0.cols);

  const size_t n = std::min(M0.rows, M0.cols);
  for (size_t t = 0; t < n; ++t) {
    // Find a nonzero pivot in the remaining submatrix.
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < w.M.rows && !found; ++i)
      for (size_t j = t; j < w.M.cols && !found; ++j)
        if (w.M.at(i, j) != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    // Reduce until row t and column t are clear except the pivot.
    while (true) {
      bool again = false;
      // Clear column t below/above within remaining rows.
      for (size_t i = t + 1; i < w.M.rows; ++i) {
        if (w.M.at(i, t) == 0) continue;
        mpz_class q = w.M.at(i, t) / w.M.at(t, t);  // truncated division is fine here
        if (q != 0) w.row_sub(i, t, q);
        if (w.M.at(i, t) != 0) {
          // remainder smaller than pivot: swap up and restart
          w.row_swap(t, i);
          again = true;
        }
      }
      if (again) continue;
      for (size_t j = t + 1; j < w.M.cols; ++j) {
        if (w.M.at(t, j) == 0) continue;
        mpz_class q = w.M.at(t, j) / w.M.at(t, t);
        if (q != 0) w.col_sub(j, t, q);
        if (w.M.at(t, j) != 0) {
          w.col_swap(t, j);
          again = true;
          break;
        }
      }
      if (!again) break;
    }
    if (w.M.at(t, t) < 0) w.row_negate(t);

    // Pivot must divide everything that remains; otherwise fold the
    // offending row in and redo this position.
    bool redo = false;
    for (size_t i = t + 1; i < w.M.rows && !redo; ++i)
      for (size_t j = t + 1; j < w.M.cols && !redo; ++j)
        if (w.M.at(i, j) % w.M.at(t, t) != 0) {
          w.row_sub(t, i, mpz_class(-1));  // row t += row i
          redo = true;
        }
    if (redo) {
      --t;
      continue;
    }
  }

  SnfResult res;
  res.S = w.M;
  res.U = w.U;
  res.Uinv = w.Uinv;
  res.V = w.V;
  res.Vinv = w.Vinv;

  // U*Uinv = I over the integers forces det U = +-1, so these two checks
  // certify unimodularity as well.
  check_invariant(mat_mul(res.U, res.Uinv) == Mat::identity(M0.rows), "SNF: U not unimodular");
  check_invariant(mat_mul(res.V, res.Vinv) == Mat::identity(M0.cols), "SNF: V not unimodular");
  check_invariant(mat_mul(mat_mul(res.U, M0), res.V) == res.S, "SNF: U M V != S");
  for (size_t t = 0; t + 1 < std::min(res.S.rows, res.S.cols); ++t) {
    const mpz_class& a = res.S.at(t, t);
    const mpz_class& b = res.S.at(t + 1, t + 1);
    check_invariant(!(a == 0 && b != 0), "SNF: zero before nonzero on diagonal");
    if (a != 0) check_invariant(b % a == 0, "SNF: diagonal divisibility failed");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Hermite form

Mat hermite_rows(Mat M) {
  const size_t k = M.cols;
  size_t r = 0;
  for (size_t col = 0; col < k; ++col) {
    // gcd cascade on rows >= r in this column
    while (true) {
      size_t best = M.rows;
      for (size_t i = r; i < M.rows; ++i) {
        if (M.at(i, col) == 0) continue;
        if (best == M.rows ||
            mpz_cmpabs(M.at(i, col).get_mpz_t(), M.at(best, col).get_mpz_t()) < 0)
          best = i;
      }
      check_invariant(best != M.rows, "hermite_rows: lattice not full rank");
      if (best != r)
        for (size_t j = 0; j < k; ++j) std::swap(M.at(r, j), M.at(best, j));
      bool clean = true;
      for (size_t i = r + 1; i < M.rows; ++i) {
        if (M.at(i, col) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), M.at(i, col).get_mpz_t(), M.at(r, col).get_mpz_t());
        for (size_t j = 0; j < k; ++j) M.at(i, j) -= q * M.at(r, j);
        if (M.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (M.at(r, col) < 0)
      for (size_t j = 0; j < k; ++j) M.at(r, j) = -M.at(r, j);
    // reduce entries above the pivot into [0, pivot)
    for (size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), M.at(i, col).get_mpz_t(), M.at(r, col).get_mpz_t());
      if (q != 0)
        for (size_t j = 0; j < k; ++j) M.at(i, j) -= q * M.at(r, j);
    }
    ++r;
  }
  Mat H(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) H.at(i, j) = M.at(i, j);
  return H;
}

std::vector<std::vector<mpz_class>> kernel_basis(const Mat& A) {
  SnfResult snf = smith_normal_form(A);
  std::vector<std::vector<mpz_class>> out;
  size_t n = A.cols;
  size_t m = std::min(A.rows, A.cols);
  for (size_t j = 0; j < n; ++j) {
    bool in_kernel = j >= m || snf.S.at(j, j) == 0;
    if (!in_kernel) continue;
    std::vector<mpz_class> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = snf.V.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<mpz_class>> solve_linear(const Mat& A, const std::vector<mpz_class>& b) {
  check_invariant(b.size() == A.rows, "solve_linear: bad rhs size");
  SnfResult snf = smith_normal_form(A);
  // S y = U b, x = V y
  std::vector<mpz_class> ub(A.rows, 0);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.rows; ++j) ub[i] += snf.U.at(i, j) * b[j];
  std::vector<mpz_class> y(A.cols, 0);
  for (size_t i = 0; i < A.rows; ++i) {
    const mpz_class s = (i < std::min(A.rows, A.cols)) ? snf.S.at(i, i) : mpz_class(0);
    if (s == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % s != 0) return std::nullopt;
      if (i < A.cols) y[i] = ub[i] / s;
    }
  }
  std::vector<mpz_class> x(A.cols, 0);
  for (size_t i = 0; i < A.cols; ++i)
    for (size_t j = 0; j < A.cols; ++j) x[i] += snf.V.at(i, j) * y[j];
  return x;
}

// ---------------------------------------------------------------------------
// AbGroup

AbGroup::AbGroup(std::vector<mpz_class> mods) : mods_(std::move(mods)) {
  for (const auto& d : mods_)
    if (d < 1) throw value_error("group moduli must be positive");
}

mpz_class AbGroup::order() const {
  mpz_class o = 1;
  for (const auto& d : mods_) o *= d;
  return o;
}

mpz_class AbGroup::exponent() const {
  mpz_class e = 1;
  for (const auto& d : mods_) e = lcm(e, d);
  return e;
}

bool AbGroup::is_invariant_chain() const {
  for (size_t i = 0; i + 1 < mods_.size(); ++i)
    if (mods_[i + 1] % mods_[i] != 0) return false;
  for (const auto& d : mods_)
    if (d < 2) return false;
  return true;
}

std::vector<mpz_class> AbGroup::reduce(std::vector<mpz_class> e) const {
  check_invariant(e.size() == rank(), "element rank mismatch");
  for (size_t i = 0; i < e.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), e[i].get_mpz_t(), mods_[i].get_mpz_t());
    e[i] = r;
  }
  return e;
}

std::vector<mpz_class> AbGroup::add(const std::vector<mpz_class>& a,
                                    const std::vector<mpz_class>& b) const {
  std::vector<mpz_class> c(rank());
  for (size_t i = 0; i < rank(); ++i) c[i] = a[i] + b[i];
  return reduce(std::move(c));
}

std::vector<mpz_class> AbGroup::neg(const std::vector<mpz_class>& a) const {
  std::vector<mpz_class> c(rank());
  for (size_t i = 0; i < rank(); ++i) c[i] = -a[i];
  return reduce(std::move(c));
}

std::vector<mpz_class> AbGroup::smul(const mpz_class& n, const std::vector<mpz_class>& a) const {
  std::vector<mpz_class> c(rank());
  for (size_t i = 0; i < rank(); ++i) c[i] = n * a[i];
  return reduce(std::move(c));
}

bool AbGroup::is_zero(const std::vector<mpz_class>& a) const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

mpz_class AbGroup::element_order(const std::vector<mpz_class>& e) const {
  mpz_class o = 1;
  for (size_t i = 0; i < rank(); ++i) {
    mpz_class g = gcd(e[i], mods_[i]);
    o = lcm(o, mods_[i] / g);
  }
  return o;
}

std::vector<std::vector<mpz_class>> AbGroup::all_elements(unsigned long limit) const {
  check_invariant(order() <= limit, "group too large to enumerate");
  std::vector<std::vector<mpz_class>> out;
  std::vector<mpz_class> cur(rank(), 0);
  while (true) {
    out.push_back(cur);
    size_t i = 0;
    while (i < rank()) {
      cur[i] += 1;
      if (cur[i] < mods_[i]) break;
      cur[i] = 0;
      ++i;
    }
    if (i == rank()) break;
    if (rank() == 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::from_lattice_rows(const AbGroup& G, const Mat& rows) {
  const size_t k = G.rank();
  check_invariant(rows.cols == k, "subgroup lattice rank mismatch");
  Mat M(rows.rows + k, k);
  for (size_t i = 0; i < rows.rows; ++i)
    for (size_t j = 0; j < k; ++j) M.at(i, j) = rows.at(i, j);
  for (size_t i = 0; i < k; ++i) M.at(rows.rows + i, i) = G.mods()[i];
  Subgroup s;
  s.G_ = G;
  s.H_ = hermite_rows(std::move(M));
  return s;
}

Subgroup Subgroup::from_generators(const AbGroup& G, const std::vector<GroupElem>& gens) {
  Mat rows(gens.size(), G.rank());
  for (size_t i = 0; i < gens.size(); ++i) {
    check_invariant(gens[i].size() == G.rank(), "generator rank mismatch");
    for (size_t j = 0; j < G.rank(); ++j) rows.at(i, j) = gens[i][j];
  }
  return from_lattice_rows(G, rows);
}

Subgroup Subgroup::trivial(const AbGroup& G) { return from_lattice_rows(G, Mat(0, G.rank())); }

Subgroup Subgroup::full(const AbGroup& G) {
  return from_lattice_rows(G, Mat::identity(G.rank()));
}

mpz_class Subgroup::order() const {
  mpz_class det = 1;
  for (size_t i = 0; i < H_.rows; ++i) det *= H_.at(i, i);
  mpz_class o = G_.order() / det;
  return o;
}

bool Subgroup::contains(const GroupElem& g) const {
  // Forward substitution against the triangular basis.
  std::vector<mpz_class> v = g;
  for (size_t i = 0; i < H_.rows; ++i) {
    if (v[i] % H_.at(i, i) != 0) return false;
    mpz_class c = v[i] / H_.at(i, i);
    if (c != 0)
      for (size_t j = i; j < H_.cols; ++j) v[j] -= c * H_.at(i, j);
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool Subgroup::contains_subgroup(const Subgroup& o) const {
  check_invariant(G_ == o.G_, "subgroup ambient mismatch");
  for (size_t i = 0; i < o.H_.rows; ++i) {
    GroupElem row(G_.rank());
    for (size_t j = 0; j < G_.rank(); ++j) row[j] = o.H_.at(i, j);
    if (!contains(row)) return false;
  }
  return true;
}

Subgroup Subgroup::sum(const Subgroup& o) const {
  check_invariant(G_ == o.G_, "subgroup ambient mismatch");
  Mat rows(H_.rows + o.H_.rows, G_.rank());
  for (size_t i = 0; i < H_.rows; ++i)
    for (size_t j = 0; j < G_.rank(); ++j) rows.at(i, j) = H_.at(i, j);
  for (size_t i = 0; i < o.H_.rows; ++i)
    for (size_t j = 0; j < G_.rank(); ++j) rows.at(H_.rows + i, j) = o.H_.at(i, j);
  return from_lattice_rows(G_, rows);
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
  check_invariant(G_ == o.G_, "subgroup ambient mismatch");
  // x in L1 cap L2: x = a B1 = b B2.  Solve [B1^T | -B2^T] (a;b) = 0 and
  // read off x = B1^T a.
  const size_t k = G_.rank();
  Mat A(k, 2 * k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      A.at(i, j) = H_.at(j, i);
      A.at(i, k + j) = -o.H_.at(j, i);
    }
  auto ker = kernel_basis(A);
  Mat rows(ker.size(), k);
  for (size_t r = 0; r < ker.size(); ++r)
    for (size_t i = 0; i < k; ++i) {
      mpz_class x = 0;
      for (size_t j = 0; j < k; ++j) x += H_.at(j, i) * ker[r][j];
      rows.at(r, i) = x;
    }
  return from_lattice_rows(G_, rows);
}

std::vector<GroupElem> Subgroup::generators() const {
  std::vector<GroupElem> out;
  for (size_t i = 0; i < H_.rows; ++i) {
    GroupElem row(G_.rank());
    for (size_t j = 0; j < G_.rank(); ++j) row[j] = H_.at(i, j);
    row = G_.reduce(std::move(row));
    if (!G_.is_zero(row)) out.push_back(std::move(row));
  }
  return out;
}

std::vector<GroupElem> Subgroup::elements(unsigned long limit) const {
  check_invariant(G_.order() <= limit, "ambient group too large to enumerate");
  std::vector<GroupElem> out;
  for (auto& e : G_.all_elements(limit))
    if (contains(e)) out.push_back(std::move(e));
  return out;
}

// ---------------------------------------------------------------------------

Subgroup annihilator(const Subgroup& S) {
  const AbGroup& G = S.ambient();
  const size_t k = G.rank();
  const mpz_class m = G.exponent();
  const Mat& B = S.basis();
  // Conditions: for each basis row h, sum_i c_i (m/d_i) h_i = 0 mod m.
  Mat A(B.rows, k + B.rows);
  for (size_t r = 0; r < B.rows; ++r) {
    for (size_t i = 0; i < k; ++i) A.at(r, i) = (m / G.mods()[i]) * B.at(r, i);
    A.at(r, k + r) = m;
  }
  auto ker = kernel_basis(A);
  Mat rows(ker.size(), k);
  for (size_t r = 0; r < ker.size(); ++r)
    for (size_t i = 0; i < k; ++i) rows.at(r, i) = ker[r][i];
  return Subgroup::from_lattice_rows(G, rows);
}

QuotientStructure quotient_structure(const AbGroup& G, const Subgroup& S) {
  auto pres = group_from_relations(G.rank(), S.basis());
  QuotientStructure q;
  q.group = pres.group;
  q.projection = pres.to_invariant;
  q.lift = pres.from_invariant;
  return q;
}

GroupPresentation group_from_relations(size_t n_gens, const Mat& relation_rows) {
  check_invariant(relation_rows.cols == n_gens, "relation width mismatch");
  // Quotient Z^n by the column span of R^T.
  SnfResult snf = smith_normal_form(relation_rows.transpose());
  const size_t n = n_gens;
  std::vector<size_t> kept;
  std::vector<mpz_class> mods;
  for (size_t i = 0; i < n; ++i) {
    mpz_class s = (i < std::min(snf.S.rows, snf.S.cols)) ? snf.S.at(i, i) : mpz_class(0);
    if (s == 0) throw value_error("relations do not present a finite group");
    if (s > 1) {
      kept.push_back(i);
      mods.push_back(s);
    }
  }
  GroupPresentation out;
  out.group = AbGroup(std::move(mods));
  out.to_invariant = Mat(kept.size(), n);
  for (size_t r = 0; r < kept.size(); ++r)
    for (size_t j = 0; j < n; ++j) out.to_invariant.at(r, j) = snf.U.at(kept[r], j);
  out.from_invariant = Mat(n, kept.size());
  for (size_t i = 0; i < n; ++i)
    for (size_t c = 0; c < kept.size(); ++c) out.from_invariant.at(i, c) = snf.Uinv.at(i, kept[c]);
  return out;
}

Subgroup hom_image(const Mat& M, const AbGroup& H, const Subgroup& S) {
  const Mat& B = S.basis();
  Mat rows(B.rows, H.rank());
  for (size_t r = 0; r < B.rows; ++r)
    for (size_t i = 0; i < H.rank(); ++i) {
      mpz_class x = 0;
      for (size_t j = 0; j < B.cols; ++j) x += M.at(i, j) * B.at(r, j);
      rows.at(r, i) = x;
    }
  return Subgroup::from_lattice_rows(H, rows);
}

Subgroup hom_preimage(const Mat& M, const AbGroup& G, const Subgroup& T) {
  const AbGroup& H = T.ambient();
  const size_t kg = G.rank(), kh = H.rank();
  check_invariant(M.rows == kh && M.cols == kg, "hom matrix shape mismatch");
  // M x = B_T^T a  =>  [M | -B_T^T] (x; a) = 0
  Mat A(kh, kg + kh);
  for (size_t i = 0; i < kh; ++i) {
    for (size_t j = 0; j < kg; ++j) A.at(i, j) = M.at(i, j);
    for (size_t j = 0; j < kh; ++j) A.at(i, kg + j) = -T.basis().at(j, i);
  }
  auto ker = kernel_basis(A);
  Mat rows(ker.size(), kg);
  for (size_t r = 0; r < ker.size(); ++r)
    for (size_t j = 0; j < kg; ++j) rows.at(r, j) = ker[r][j];
  return Subgroup::from_lattice_rows(G, rows);
}

GroupElem hom_apply(const Mat& M, const AbGroup& H, const GroupElem& x) {
  check_invariant(M.cols == x.size(), "hom apply: shape mismatch");
  GroupElem y(M.rows, 0);
  for (size_t i = 0; i < M.rows; ++i)
    for (size_t j = 0; j < M.cols; ++j) y[i] += M.at(i, j) * x[j];
  return H.reduce(std::move(y));
}

}  // namespace fqgenus
