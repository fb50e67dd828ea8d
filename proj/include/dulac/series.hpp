#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dulac/cpoly.hpp"
#include "dulac/rational.hpp"

namespace dulac {

// Truncated sum of e^{-mu zeta} B_mu(zeta) over rational mu in [0, N].
// The same container holds z-chart series, where mu is read as the
// exponent of z and B_mu as a polynomial in -log z.
class ExpPolySeries {
 public:
  using Terms = std::map<Rational, CPoly>;

  ExpPolySeries() = default;
  ExpPolySeries(Rational trunc, std::vector<Rational> gens);

  // Checked construction from a term list; enforces every invariant.
  static ExpPolySeries make(Rational trunc, std::vector<Rational> gens, const Terms& terms);
  // zeta + beta
  static ExpPolySeries translation(cplx beta, Rational trunc, std::vector<Rational> gens);

  const Rational& trunc() const { return trunc_; }
  const std::vector<Rational>& gens() const { return gens_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  CPoly block(const Rational& mu) const;

  // Checked insert: 0 <= mu <= N, mu in the semigroup, replaces any block.
  void set(const Rational& mu, const CPoly& p);
  // Adds p to the block at mu without a semigroup check; drops mu > N.
  // Callers guarantee mu lies in the semigroup.
  void accumulate(const Rational& mu, const CPoly& p);

  bool operator==(const ExpPolySeries& o) const {
    return trunc_ == o.trunc_ && terms_ == o.terms_;
  }

 private:
  Rational trunc_{0};
  std::vector<Rational> gens_;
  Terms terms_;
};

std::vector<Rational> normalize_gens(std::vector<Rational> gens);  // sorted, minimal
std::vector<Rational> merge_gens(const std::vector<Rational>& a, const std::vector<Rational>& b);
bool in_semigroup(const Rational& mu, const std::vector<Rational>& gens);
// All semigroup elements in (0, n], ascending.
std::vector<Rational> semigroup_elements(const std::vector<Rational>& gens, const Rational& n);

ExpPolySeries add(const ExpPolySeries& a, const ExpPolySeries& b);
ExpPolySeries sub(const ExpPolySeries& a, const ExpPolySeries& b);
ExpPolySeries mul(const ExpPolySeries& a, const ExpPolySeries& b);
ExpPolySeries scale(const ExpPolySeries& a, cplx s);
ExpPolySeries add_constant(const ExpPolySeries& a, cplx c);
ExpPolySeries derivative(const ExpPolySeries& a);
ExpPolySeries translate(const ExpPolySeries& a, cplx c);
ExpPolySeries truncate(const ExpPolySeries& a, const Rational& n);
ExpPolySeries compose(const ExpPolySeries& g, const ExpPolySeries& f);

// nullopt stands for +infinity.
std::optional<Rational> ord(const ExpPolySeries& a);
// Least exponent whose block has a coefficient above tol.
std::optional<Rational> effective_ord(const ExpPolySeries& a, double tol);
double max_abs_coeff(const ExpPolySeries& a);
bool is_real(const ExpPolySeries& a, double tol = 0.0);
// Largest coefficient difference over the union of supports.
double max_abs_diff(const ExpPolySeries& a, const ExpPolySeries& b);

cplx evaluate(const ExpPolySeries& a, cplx zeta);

ExpPolySeries conjugacy_residual(const ExpPolySeries& phi, const ExpPolySeries& f, cplx beta);

enum class DulacKind { hyperbolic, parabolic, general };

struct DulacForm {
  DulacKind kind = DulacKind::general;
  cplx beta{};
  bool unit_slope = false;  // B_0 = zeta + beta for some beta
};

DulacForm classify(const ExpPolySeries& f);
// Splits f = zeta + beta + delta; throws NonUnitSlope otherwise.
cplx head_beta(const ExpPolySeries& f);
ExpPolySeries perturbation(const ExpPolySeries& f);

// zeta chart <-> z chart via z = e^{-zeta}. The z-chart truncation is N+1.
ExpPolySeries to_z_chart(const ExpPolySeries& f);
// beta selects the branch of -log(lambda); default is the principal one.
ExpPolySeries from_z_chart(const ExpPolySeries& F, std::optional<cplx> beta = std::nullopt);

}  // namespace dulac
