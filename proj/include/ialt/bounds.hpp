// Closed-form radius and list-size expressions: interpolation cost, the
// one- and two-polynomial radius bounds, the Y-root count bound, and the
// classical comparison radii.

#pragma once

#include <stdexcept>

namespace ialt {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// n*C(m1+2,3) + 3n*C(m2+2,3): the number of linear interpolation constraints.
long long interpolation_cost(int m1, int m2, long n);

/// (n - Delta/m1) / (1 - m2/m1).
double radius_theorem1(long n, double delta, int m1, int m2);

struct SigmaNu {
    double sigma;
    double nu;
};

/// sigma(rho) = (1 - (1 - d/n)(1 + nu)/2) / (1 - rho) with
/// nu = sqrt(4/(3(1-d/n)) - 1/3 + 4 rho^3/(1-d/n)).
SigmaNu sigma_nu(double rho, double d_over_n);

/// ((m1(n-t) + m2 t)/(k-1))^3 + 2 (m1(n-t) + m2 t)/(k-1).
double chi_list_bound(long n, long t, long k_grs, int m1, int m2);

struct ClassicalRadii {
    double gs;          // n (1 - sqrt(1 - d/n))
    double kv_binary;   // (n - n sqrt(1 - 2d/n)) / 2
    double johnson_q2;  // theta n (1 - sqrt(1 - d/(theta n))), theta = 3/2
};

/// Throws DomainError when 2d > n (kv_binary undefined).
ClassicalRadii classical_radii(long n, long d);

}  // namespace ialt
