#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace higman {

// Affine integer form  c + sum coef_i * name_i  over named integer parameters.
struct Affine {
  int64_t c = 0;
  std::map<std::string, int64_t> terms;  // never stores zero coefficients

  Affine() = default;
  Affine(int64_t v) : c(v) {}  // NOLINT: implicit on purpose
  static Affine param(const std::string& name, int64_t coef = 1);

  bool is_constant() const { return terms.empty(); }
  bool is_zero() const { return terms.empty() && c == 0; }

  Affine operator+(const Affine& o) const;
  Affine operator-(const Affine& o) const;
  Affine operator-() const;
  Affine operator*(int64_t k) const;
  Affine& operator+=(const Affine& o) { return *this = *this + o; }

  bool operator==(const Affine& o) const = default;
  // Total order used for canonical keys; constants sort before parametric forms.
  bool operator<(const Affine& o) const;

  // Substitute the parameters present in `vals`; others stay symbolic.
  Affine substitute(const std::map<std::string, int64_t>& vals) const;
  // Full evaluation; throws std::invalid_argument if a parameter is missing.
  int64_t eval(const std::map<std::string, int64_t>& vals) const;

  std::string str() const;
};

// Parses "k-l", "s+1", "-2", "2k", "3*t", "1-s". Throws std::invalid_argument.
Affine parse_affine(std::string_view text);

// Checked arithmetic helpers shared by the evaluators.
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

}  // namespace higman
