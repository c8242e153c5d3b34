// Multiplicity selection strategies: sigma-maximizing ratio search
// (Candidate 1) and greedy reliability-driven assignment (Candidate 2).

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ialt/codes.hpp"

namespace ialt {

struct ReliabilityMatrix {
    long n = 0;
    // Row i, column j = y_i*2 + z_i over the 4-ary symbol alphabet.
    std::vector<std::array<double, 4>> pi;
};

/// pi_{i,j} = 1 - t/n on the received symbol, (t/n)/3 elsewhere.
ReliabilityMatrix build_reliability(long t, long n, const InterleavedWord& received);

struct MultiplicityMatrix {
    long n = 0;
    long m_total = 0;
    std::vector<std::array<long, 4>> m;

    long total_assigned() const;
};

/// Greedy assignment: s = m_total * n rounds, each raising the entry with the
/// largest adjusted reliability; ties break row-major (smallest i, then j).
MultiplicityMatrix assign_multiplicities(const ReliabilityMatrix& pi, long m_total);

/// The two dominant levels of an assignment built from a symmetric
/// reliability matrix: (level on received symbols, level elsewhere).
std::pair<long, long> dominant_levels(const MultiplicityMatrix& m,
                                      const InterleavedWord& received);

struct RatioChoice {
    double rho;
    double sigma;
};

/// Grid search of sigma over rho in [0, 1); ties toward smaller rho.
RatioChoice candidate1_ratio(long n, long d, double grid_step = 1e-3);

/// Best m2/m1 <= rho with m1 <= m1_max minimizing |m2/m1 - rho|; ties toward
/// smaller m1.
std::pair<int, int> ratio_to_integers(double rho, int m1_max);

}  // namespace ialt
