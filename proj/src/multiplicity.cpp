#include "ialt/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ialt/bounds.hpp"

namespace ialt {

ReliabilityMatrix build_reliability(long t, long n, const InterleavedWord& received) {
    if (t < 0 || t > n) throw DomainError("need 0 <= t <= n");
    ReliabilityMatrix pi;
    pi.n = n;
    pi.pi.resize(size_t(n));
    const double hit = 1.0 - double(t) / double(n);
    const double miss = (double(t) / double(n)) / 3.0;
    for (long i = 0; i < n; ++i) {
        int sym = received.row1[size_t(i)] * 2 + received.row2[size_t(i)];
        for (int j = 0; j < 4; ++j) pi.pi[size_t(i)][size_t(j)] = j == sym ? hit : miss;
    }
    return pi;
}

long MultiplicityMatrix::total_assigned() const {
    long s = 0;
    for (const auto& row : m)
        for (long v : row) s += v;
    return s;
}

MultiplicityMatrix assign_multiplicities(const ReliabilityMatrix& pi, long m_total) {
    if (m_total < 1) throw DomainError("need m_total >= 1");
    MultiplicityMatrix mm;
    mm.n = pi.n;
    mm.m_total = m_total;
    mm.m.assign(size_t(pi.n), {0, 0, 0, 0});
    std::vector<std::array<double, 4>> adj = pi.pi;

    for (long s = m_total * pi.n; s > 0; --s) {
        long bi = 0;
        int bj = 0;
        double best = -1.0;
        for (long i = 0; i < pi.n; ++i)
            for (int j = 0; j < 4; ++j)
                if (adj[size_t(i)][size_t(j)] > best) {
                    best = adj[size_t(i)][size_t(j)];
                    bi = i;
                    bj = j;
                }
        long mij = mm.m[size_t(bi)][size_t(bj)];
        adj[size_t(bi)][size_t(bj)] =
            pi.pi[size_t(bi)][size_t(bj)] / (0.5 * (double(mij) * mij + 5.0 * mij + 6.0));
        mm.m[size_t(bi)][size_t(bj)] = mij + 1;
    }
    return mm;
}

std::pair<long, long> dominant_levels(const MultiplicityMatrix& m,
                                      const InterleavedWord& received) {
    std::map<long, long> recv_freq, other_freq;
    for (long i = 0; i < m.n; ++i) {
        int sym = received.row1[size_t(i)] * 2 + received.row2[size_t(i)];
        for (int j = 0; j < 4; ++j) {
            if (j == sym)
                ++recv_freq[m.m[size_t(i)][size_t(j)]];
            else
                ++other_freq[m.m[size_t(i)][size_t(j)]];
        }
    }
    auto mode = [](const std::map<long, long>& freq) {
        long best = 0, cnt = -1;
        for (auto [v, c] : freq)
            if (c > cnt) {
                cnt = c;
                best = v;
            }
        return best;
    };
    return {mode(recv_freq), mode(other_freq)};
}

RatioChoice candidate1_ratio(long n, long d, double grid_step) {
    if (!(0 < d && d < n)) throw DomainError("need 0 < d < n");
    if (!(grid_step > 0.0 && grid_step <= 0.1)) throw DomainError("grid step out of range");
    const double dn = double(d) / double(n);
    RatioChoice best{0.0, sigma_nu(0.0, dn).sigma};
    for (double rho = grid_step; rho < 1.0; rho += grid_step) {
        double s = sigma_nu(rho, dn).sigma;
        if (s > best.sigma) best = RatioChoice{rho, s};
    }
    return best;
}

std::pair<int, int> ratio_to_integers(double rho, int m1_max) {
    if (!(0.0 <= rho && rho < 1.0) || m1_max < 1) throw DomainError("bad ratio inputs");
    int bm1 = 1, bm2 = 0;
    double berr = std::abs(rho);
    for (int m1 = 1; m1 <= m1_max; ++m1) {
        int m2 = std::min(int(rho * m1 + 1e-9), m1 - 1);
        double err = std::abs(double(m2) / m1 - rho);
        if (err < berr - 1e-12) {
            berr = err;
            bm1 = m1;
            bm2 = m2;
        }
    }
    return {bm1, bm2};
}

}  // namespace ialt
