#pragma once

#include <vector>

#include "sfg/ratmat.h"
#include "sfg/seedcore.h"
#include "sfg/superseed.h"

namespace sfg {

// A point of the double on the mutable block.  theta_pi holds the even products
// theta_a pi_a as plain numbers.
struct DoublePoint {
  std::vector<double> y;
  std::vector<double> A;
  std::vector<double> theta_pi;
};

// mu_i = A_i - 1/2 sum_j (eps_hat^-1)_ij y_j - sum_a (W eps_hat^-1)_ai theta_pi_a
std::vector<double> moment_residual(const SuperSeed& s, const DoublePoint& p);
// The A solving mu = 0.
std::vector<double> solve_moment(const SuperSeed& s, const std::vector<double>& y, const std::vector<double>& theta_pi);

struct DiracReport {
  RatMat Z;             // W eps_hat^-1
  RatMat mixed;         // Z eps_hat, should be W
  RatMat theta_theta;   // coefficient of -theta_a theta_b in {theta_a, theta_b}_D
  bool mixed_ok = false;
  bool theta_theta_zero = false;
  bool agrees_with_isotropy = false;
};
DiracReport dirac_identities(const SuperSeed& s);

// Coordinate maps of the lifted mutation on (y, A).  A' is the cotangent lift
// A' = J^{-T}(A + grad F_even), J = dy'/dy.
std::vector<double> double_map_y(const IntMat& eps_mut, int k, const std::vector<double>& y);
std::vector<std::vector<double>> double_map_jacobian(const IntMat& eps_mut, int k, const std::vector<double>& y);
double generating_even(const IntMat& eps_mut, int k, const std::vector<double>& y);
std::vector<double> generating_even_grad(const IntMat& eps_mut, int k, const std::vector<double>& y);
std::vector<double> double_map_a(const IntMat& eps_mut, int k, const std::vector<double>& y, const std::vector<double>& A);

struct ExactnessReport {
  double lambda_residual = 0;      // max |mu_k^* lambda' - lambda - dF_k|, odd term as in F_k
  double omega_residual = 0;       // max |K^T Omega K - Omega| for the even form
  double odd_residual_consistent = 0;  // the same one-form residual with the consistent theta rescaling
};
ExactnessReport exactness_check(const SuperSeed& s, int k, const DoublePoint& p, double h = 1e-5);

// max |J^T Omega' J - Omega|, Omega_ij = d_i eps_ij, J = d log A'/d log A by central differences.
double omega_a_invariance(const ASeed& s, int k, const std::vector<double>& a, double h = 1e-5);

IntMat mutable_block(const ExchangeData& e);

}  // namespace sfg
