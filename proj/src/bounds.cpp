#include "ialt/bounds.hpp"

#include <cmath>

namespace ialt {

long long interpolation_cost(int m1, int m2, long n) {
    if (!(0 <= m2 && m2 < m1)) throw DomainError("need 0 <= m2 < m1");
    auto c3 = [](long long m) { return m * (m + 1) * (m + 2) / 6; };
    return n * c3(m1) + 3 * n * c3(m2);
}

double radius_theorem1(long n, double delta, int m1, int m2) {
    if (!(0 <= m2 && m2 < m1) || delta <= 0) throw DomainError("bad radius inputs");
    return (double(n) - delta / m1) / (1.0 - double(m2) / m1);
}

SigmaNu sigma_nu(double rho, double d_over_n) {
    if (!(0.0 <= rho && rho < 1.0) || !(0.0 < d_over_n && d_over_n < 1.0))
        throw DomainError("need 0 <= rho < 1 and 0 < d/n < 1");
    double c = 1.0 - d_over_n;
    double radicand = 4.0 / (3.0 * c) - 1.0 / 3.0 + 4.0 / c * rho * rho * rho;
    if (radicand < 0) throw DomainError("negative radicand");  // cannot occur
    double nu = std::sqrt(radicand);
    double sigma = (1.0 - c * (1.0 + nu) / 2.0) / (1.0 - rho);
    return SigmaNu{sigma, nu};
}

double chi_list_bound(long n, long t, long k_grs, int m1, int m2) {
    if (t > n) throw DomainError("t exceeds n");
    double base = (double(m1) * (n - t) + double(m2) * t) / double(k_grs - 1);
    return base * base * base + 2.0 * base;
}

ClassicalRadii classical_radii(long n, long d) {
    if (d < 0 || d > n) throw DomainError("need 0 <= d <= n");
    ClassicalRadii r{};
    if (d == 0) return ClassicalRadii{0.0, 0.0, 0.0};
    double dn = double(d) / double(n);
    r.gs = n * (1.0 - std::sqrt(1.0 - dn));
    if (2 * d > n) throw DomainError("kv_binary needs 2d <= n");
    r.kv_binary = 0.5 * (n - n * std::sqrt(1.0 - 2.0 * dn));
    const double theta = 1.5;
    r.johnson_q2 = theta * n * (1.0 - std::sqrt(1.0 - dn / theta));
    return r;
}

}  // namespace ialt
