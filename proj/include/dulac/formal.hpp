#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dulac/series.hpp"

namespace dulac {

enum class Algorithm { level_solver, picard };

struct LinearizationResult {
  ExpPolySeries phi;  // zeta chart, head zeta
  cplx beta{};
  std::vector<Rational> levels_solved;
  // Effective order of the conjugacy residual; nullopt means zero at order N.
  std::optional<Rational> residual_ord;
  double residual_max = 0.0;
  Algorithm algorithm = Algorithm::level_solver;
  // z-chart linearization z + psi; filled by the Picard solver only.
  std::optional<ExpPolySeries> phi_z;
};

// Q(x) - c Q(x + beta) = P(x), deg Q = deg P.
CPoly solve_difference_eq(const CPoly& P, cplx c, cplx beta);

LinearizationResult linearize_level_by_level(const ExpPolySeries& f);

// z-chart operators for f1 = lambda z + g1. beta fixes log(lambda) = -beta;
// nullopt uses the principal determination.
ExpPolySeries S_f(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta = std::nullopt);
ExpPolySeries T_f(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta = std::nullopt);
ExpPolySeries T_f_inv(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta = std::nullopt);
// h(f1(z)) for a z-chart h with ord_z(h) >= 1.
ExpPolySeries z_compose(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta = std::nullopt);

LinearizationResult picard_linearize(const ExpPolySeries& f1, std::optional<cplx> beta = std::nullopt);
// Convenience: zeta-chart input, Picard run in the z chart with the matching branch.
LinearizationResult picard_linearize_zeta(const ExpPolySeries& f);

ExpPolySeries partial_sums(const ExpPolySeries& phi, int n);
// Exponent of the n-th level of phi; 0 for n = 0.
Rational level_exponent(const ExpPolySeries& phi, int n);
ExpPolySeries partial_linearization_residual(const ExpPolySeries& f, int n);

bool check_real_preservation(const ExpPolySeries& f);

std::string linearization_json(const LinearizationResult& r);
const char* algorithm_name(Algorithm a);

}  // namespace dulac
