#pragma once

#include <complex>
#include <vector>

#include "curve.hpp"

namespace menger {

struct RhoOptions {
  int levels = 40;          // geometric grading levels toward the origin
  double grading = 0.5;
  int gauss_points = 10;
  double cells_per_wavelength = 2.0;
  double max_change = 1e-2;  // allowed mesh-doubling change
};

struct RhoResult {
  double value = 0;
  double coarse = 0;  // value on the undoubled mesh
  double relative_change = 0;
};

RhoResult rho_k_detailed(double p, int k, const RhoOptions& opt = {});
double rho_k(double p, int k);

struct SymbolTable {
  double p = 0;
  std::vector<int> ks;
  std::vector<double> rho;
  std::vector<double> scaled;  // rho_k / k^(3p-4)
  double plateau = 0;          // scaled value at the largest k
  double deviation = 0;        // max pairwise relative deviation among the top three
  double slope = 0;            // least squares log-log slope
};

SymbolTable rho_asymptotic(double p, const std::vector<int>& ks);

double tilde_rho(double p, double lambda, int k);

// DFT with the (1/N) sum f_j e^{-2 pi i k j/N} convention; column k holds
// the coefficient of frequency k for k = 0..N-1 (k > N/2 are the negative ones)
Eigen::MatrixXcd fourier_coefficients(const Eigen::MatrixXd& samples);

// product-integration weights of the (v,w) lattice, cached per (N,p)
struct QFormWeights {
  Eigen::Index N = 0;
  double p = 0;
  // node offsets (n1, n3) meaning v = -n1/N, w = n3/N, and their weights
  std::vector<int> n1, n3;
  std::vector<double> weight;
};

const QFormWeights& qform_weights(Eigen::Index N, double p);

// f, g: dim x N periodic samples
double q_form_direct(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, double p);
double q_form_fourier(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, double p);

}  // namespace menger
