#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "higman/expr.hpp"

namespace corpus {

// Core and auxiliary operations over the leaves Z, S, tau S and zeta_1 Z, plus
// every intermediate of the positive sign set construction.
inline const std::vector<std::string>& expressions() {
  static const std::vector<std::string> v = {
      "Z",
      "S",
      "(tau S)",
      "(zeta-at 1 Z)",
      "(omega 2 (ups (zeta-at 1 Z) (tau S)))",
      "(iota (omega 2 (ups (zeta-at 1 Z) (tau S))) (sigma^ -1 (omega 2 (ups (zeta-at 1 Z) (tau S)))))",
      "(pi' (tau S))",
      "(pi-at 1 (pi' (tau S)))",
      "(iota (iota (omega 2 (ups (zeta-at 1 Z) (tau S))) (sigma^ -1 (omega 2 (ups (zeta-at 1 Z) (tau S)))))"
      " (pi-at 1 (pi' (tau S))))",
      "(eps (0) (iota (iota (omega 2 (ups (zeta-at 1 Z) (tau S))) (sigma^ -1 (omega 2 (ups (zeta-at 1 Z) (tau S)))))"
      " (pi-at 1 (pi' (tau S)))))",
      "(iota S (tau S))",
      "(ups S (tau S))",
      "(rho S)",
      "(sigma S)",
      "(theta S)",
      "(zeta S)",
      "(pi (tau S))",
      "(omega 1 (ups Z (zeta-at 1 Z)))",
      "(omega 3 (ups S (tau S)))",
      "(sigma^ -2 (tau S))",
      "(zeta-set (0 1) Z)",
      "(pi'-at 1 S)",
      "(tau-swap 0 2 (sigma^ 1 S))",
      "(perm ((0 1)) S)",
      "(eps (1) S)",
      "(sum S (sigma^ 2 (tau S)))",
      "(iota* S (tau S) (zeta-at 1 Z))",
      "(ups* Z S (tau S))",
      "(rho (sigma (rho S)))",
      "(theta (ups (zeta-at 1 Z) S))",
      "(pi (zeta-at 1 Z))",
      "(zeta (rho (tau S)))",
  };
  return v;
}

// Every auxiliary operation over each leaf with indices in [-3,3]; index
// combinations that a constructor rejects are skipped.
inline std::vector<higman::ExprPtr> auxiliary_cases() {
  using namespace higman;
  using namespace higman::ex;
  std::vector<ExprPtr> leaves = {Z(), S(), tau(S()), zeta_at(1, Z())};
  std::vector<ExprPtr> out;
  auto add = [&](auto make) {
    try {
      out.push_back(make());
    } catch (const std::invalid_argument&) {
    }
  };
  for (const auto& x : leaves) {
    add([&] { return pi_prime(x); });
    for (int64_t i = -3; i <= 3; ++i) {
      add([&] { return sigma_pow(i, x); });
      add([&] { return zeta_at(i, x); });
      add([&] { return pi_at(i, x); });
      add([&] { return pi_prime_at(i, x); });
      add([&] { return zeta_set({i}, x); });
      add([&] { return eps({i}, x); });
      for (int64_t j = i + 1; j <= 3; ++j) {
        add([&] { return tau_swap(i, j, x); });
        add([&] { return zeta_set({i, j}, x); });
        add([&] { return eps({i, j}, x); });
        add([&] { return perm(Permutation::from_cycles({{i, j}}), x); });
      }
    }
    add([&] { return perm(Permutation::from_cycles({{-1, 0, 2}}), x); });
    for (const auto& y : leaves) {
      for (int64_t s = -3; s <= 3; ++s) add([&] { return sum(x, sigma_pow(s, y)); });
      add([&] { return iota_n({x, y}); });
      add([&] { return ups_n({x, y}); });
      add([&] { return iota_n({x, y, tau(S())}); });
      add([&] { return ups_n({x, y, Z()}); });
    }
  }
  return out;
}

}  // namespace corpus
