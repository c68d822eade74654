#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace higman {

using Vec = std::vector<int64_t>;

// Dense row-major integer matrix.
struct Mat {
  size_t rows = 0, cols = 0;
  std::vector<int64_t> d;

  Mat() = default;
  Mat(size_t r, size_t c) : rows(r), cols(c), d(r * c, 0) {}
  int64_t& operator()(size_t r, size_t c) { return d[r * cols + c]; }
  int64_t operator()(size_t r, size_t c) const { return d[r * cols + c]; }
  bool row_zero(size_t r) const;
  bool operator==(const Mat& o) const = default;

  static Mat identity(size_t n);
  Mat select_rows(const std::vector<size_t>& rs) const;
  Mat mul(const Mat& o) const;  // checked
  Vec mul(const Vec& v) const;  // checked
  Mat hcat(const Mat& o) const;  // same rows
  Mat vcat(const Mat& o) const;  // same cols
};

int64_t floor_div(int64_t a, int64_t b);

// Column-style Hermite normal form in place: lower echelon, positive pivots,
// entries left of each pivot reduced into [0, pivot). Returns the rank; columns
// at index >= rank become zero. If U is given it accumulates the column
// operations (C_in * U = C_out). pivot_rows receives the pivot row of each column.
size_t column_hnf(Mat& C, Mat* U = nullptr, std::vector<size_t>* pivot_rows = nullptr);

// Affine lattice {b + H w : w in Z^rank} in canonical form (H in HNF, b reduced).
struct Lattice {
  Vec b;
  Mat H;
  std::vector<size_t> piv;  // pivot row per column

  size_t dim() const { return b.size(); }
  size_t rank() const { return H.cols; }
  bool operator==(const Lattice& o) const { return b == o.b && H == o.H; }
  bool operator<(const Lattice& o) const;
  size_t hash() const;
  bool contains(const Vec& x) const;
  Lattice select_rows(const std::vector<size_t>& rs) const;
  std::string str(const std::vector<std::string>& param_names = {}) const;
};

struct LatticeHash {
  size_t operator()(const Lattice& l) const { return l.hash(); }
};

Lattice make_lattice(Vec b, Mat C);  // canonicalizes

// All integer x with A x = c, as x0 + K w; nullopt when there is none.
struct Solution {
  Vec x0;
  Mat K;  // n x (n - rank)
};
std::optional<Solution> solve_integer(const Mat& A, const Vec& c);

// Parameter display names: t, u, v, w, x, y, then t6, t7, ...
std::string param_name(size_t i);

}  // namespace higman
