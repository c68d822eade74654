#include "higman/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "higman/affine.hpp"

namespace higman {

bool Mat::row_zero(size_t r) const {
  for (size_t c = 0; c < cols; ++c)
    if ((*this)(r, c) != 0) return false;
  return true;
}

Mat Mat::identity(size_t n) {
  Mat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::select_rows(const std::vector<size_t>& rs) const {
  Mat m(rs.size(), cols);
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t c = 0; c < cols; ++c) m(i, c) = (*this)(rs[i], c);
  return m;
}

Mat Mat::mul(const Mat& o) const {
  Mat m(rows, o.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < o.cols; ++j)
        if (o(k, j) != 0) m(i, j) = checked_add(m(i, j), checked_mul(a, o(k, j)));
    }
  return m;
}

Vec Mat::mul(const Vec& v) const {
  Vec out(rows, 0);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k)
      if ((*this)(i, k) != 0 && v[k] != 0) out[i] = checked_add(out[i], checked_mul((*this)(i, k), v[k]));
  return out;
}

Mat Mat::hcat(const Mat& o) const {
  Mat m(rows, cols + o.cols);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t c = 0; c < cols; ++c) m(i, c) = (*this)(i, c);
    for (size_t c = 0; c < o.cols; ++c) m(i, cols + c) = o(i, c);
  }
  return m;
}

Mat Mat::vcat(const Mat& o) const {
  Mat m(rows + o.rows, cols);
  std::copy(d.begin(), d.end(), m.d.begin());
  std::copy(o.d.begin(), o.d.end(), m.d.begin() + static_cast<long>(d.size()));
  return m;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

namespace {

// col_dst -= q * col_src
void col_axpy(Mat& C, size_t dst, size_t src, int64_t q) {
  if (q == 0) return;
  for (size_t r = 0; r < C.rows; ++r)
    if (C(r, src) != 0) C(r, dst) = checked_add(C(r, dst), -checked_mul(q, C(r, src)));
}

void col_swap(Mat& C, size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < C.rows; ++r) std::swap(C(r, a), C(r, b));
}

void col_neg(Mat& C, size_t a) {
  for (size_t r = 0; r < C.rows; ++r) C(r, a) = -C(r, a);
}

}  // namespace

size_t column_hnf(Mat& C, Mat* U, std::vector<size_t>* pivot_rows) {
  size_t r = 0;
  if (pivot_rows) pivot_rows->clear();
  for (size_t i = 0; i < C.rows && r < C.cols; ++i) {
    while (true) {
      size_t best = C.cols;
      for (size_t j = r; j < C.cols; ++j)
        if (C(i, j) != 0 && (best == C.cols || std::llabs(C(i, j)) < std::llabs(C(i, best)))) best = j;
      if (best == C.cols) break;
      col_swap(C, r, best);
      if (U) col_swap(*U, r, best);
      bool done = true;
      for (size_t j = r + 1; j < C.cols; ++j) {
        if (C(i, j) == 0) continue;
        int64_t q = C(i, j) / C(i, r);
        col_axpy(C, j, r, q);
        if (U) col_axpy(*U, j, r, q);
        if (C(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= C.cols || C(i, r) == 0) continue;
    if (C(i, r) < 0) {
      col_neg(C, r);
      if (U) col_neg(*U, r);
    }
    for (size_t j = 0; j < r; ++j) {
      int64_t q = floor_div(C(i, j), C(i, r));
      col_axpy(C, j, r, q);
      if (U) col_axpy(*U, j, r, q);
    }
    if (pivot_rows) pivot_rows->push_back(i);
    ++r;
  }
  return r;
}

Lattice make_lattice(Vec b, Mat C) {
  Lattice L;
  std::vector<size_t> piv;
  size_t rank = column_hnf(C, nullptr, &piv);
  Mat H(C.rows, rank);
  for (size_t i = 0; i < C.rows; ++i)
    for (size_t j = 0; j < rank; ++j) H(i, j) = C(i, j);
  for (size_t j = 0; j < rank; ++j) {
    int64_t q = floor_div(b[piv[j]], H(piv[j], j));
    if (q == 0) continue;
    for (size_t i = 0; i < H.rows; ++i)
      if (H(i, j) != 0) b[i] = checked_add(b[i], -checked_mul(q, H(i, j)));
  }
  L.b = std::move(b);
  L.H = std::move(H);
  L.piv = std::move(piv);
  return L;
}

bool Lattice::operator<(const Lattice& o) const {
  if (b != o.b) return b < o.b;
  if (H.cols != o.H.cols) return H.cols < o.H.cols;
  return H.d < o.H.d;
}

size_t Lattice::hash() const {
  size_t h = 1469598103934665603ull ^ H.cols;
  auto mix = [&](int64_t v) {
    h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (auto v : b) mix(v);
  for (auto v : H.d) mix(v);
  return h;
}

bool Lattice::contains(const Vec& x) const {
  if (x.size() != b.size()) return false;
  Vec r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = checked_add(x[i], -b[i]);
  for (size_t j = 0; j < rank(); ++j) {
    int64_t p = H(piv[j], j);
    if (r[piv[j]] % p != 0) return false;
    int64_t q = r[piv[j]] / p;
    for (size_t i = 0; i < r.size(); ++i)
      if (H(i, j) != 0) r[i] = checked_add(r[i], -checked_mul(q, H(i, j)));
  }
  for (auto v : r)
    if (v != 0) return false;
  return true;
}

Lattice Lattice::select_rows(const std::vector<size_t>& rs) const {
  Vec nb;
  for (auto r : rs) nb.push_back(b[r]);
  return make_lattice(nb, H.select_rows(rs));
}

std::string param_name(size_t i) {
  static const char* base[] = {"t", "u", "v", "w", "x", "y"};
  if (i < 6) return base[i];
  return "t" + std::to_string(i);
}

std::string Lattice::str(const std::vector<std::string>& names) const {
  std::string s = "(";
  for (size_t i = 0; i < b.size(); ++i) {
    Affine a(b[i]);
    for (size_t j = 0; j < rank(); ++j)
      if (H(i, j) != 0) a += Affine::param(j < names.size() ? names[j] : param_name(j), H(i, j));
    s += (i ? ", " : "") + a.str();
  }
  return s + ")";
}

std::optional<Solution> solve_integer(const Mat& A, const Vec& c) {
  size_t n = A.cols;
  Mat H = A;
  Mat U = Mat::identity(n);
  std::vector<size_t> piv;
  size_t rank = column_hnf(H, &U, &piv);
  Vec y(n, 0);
  size_t next = 0;
  for (size_t i = 0; i < A.rows; ++i) {
    int64_t s = 0;
    for (size_t j = 0; j < next; ++j)
      if (H(i, j) != 0) s = checked_add(s, checked_mul(H(i, j), y[j]));
    if (next < rank && piv[next] == i) {
      int64_t rem = checked_add(c[i], -s);
      if (rem % H(i, next) != 0) return std::nullopt;
      y[next] = rem / H(i, next);
      ++next;
    } else if (s != c[i]) {
      return std::nullopt;
    }
  }
  Solution sol;
  sol.x0 = U.mul(y);
  sol.K = Mat(n, n - rank);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = rank; j < n; ++j) sol.K(i, j - rank) = U(i, j);
  return sol;
}

}  // namespace higman
