#pragma once

// Unit eigenvalue datum of the sigma-linear Frobenius F(gamma).

#include <vector>

#include "defzeta/mw_cohomology.hpp"
#include "defzeta/unramified.hpp"

namespace defzeta {

// Sparse psi(X, Y) = sum c X^i Y^j; Y stands for X^sigma.
struct BivariateTerm {
  int i;
  int j;
  ExtScalar c;
};
using Bivariate = std::vector<BivariateTerm>;

// psi(a, a^sigma) for a over the coefficients' extension.
ExtScalar evaluate(const Bivariate& psi, const ExtScalar& a);

// Lifts x0 to alpha with psi(alpha, alpha^sigma) = 0 mod p^N by precision doubling.
// Needs psi = 0 and dpsi/dX = 0 mod p at x0, dpsi/dY a unit there.
ExtScalar artin_schreier_solve(const Bivariate& psi, const ExtScalar& x0, int N);

enum class Orientation { Standard, Swapped };

struct EigenPair {
  ExtScalar eigen_alpha;
  ExtScalar mu;
  Orientation orientation;
};

// Standard: F (1, alpha)^T = mu (1, alpha^sigma)^T; Swapped: F (alpha, 1)^T = mu (alpha^sigma, 1)^T.
EigenPair eigen_pair(const FrobeniusMatrix& F, int N);
// Both rows of the eigen relation, checked mod p^N.
bool eigen_relation_holds(const FrobeniusMatrix& F, const EigenPair& e, int N);

}  // namespace defzeta
