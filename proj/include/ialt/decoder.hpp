// Three-phase list decoder for 2-interleaved binary alternant codes:
// seed-basis initialization, incremental Koetter-style Groebner interpolation
// with mixed multiplicities (m1 on the received column point, m2 on the other
// three binary patterns), and resultant-based recovery with degree-bounded
// root extraction.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ialt/codes.hpp"
#include "ialt/poly.hpp"

namespace ialt {

struct BadMultiplicities : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Cube root of n(k-1)^2 [m1(m1+1)(m1+2) + 3 m2(m2+1)(m2+2)]; a nonzero
/// interpolation polynomial of weighted degree <= Delta always exists.
double compute_delta(long n, long k_grs, int m1, int m2);

struct DecoderParams {
    long n = 0;
    long k_grs = 0;
    int m1 = 1;
    int m2 = 0;
    double delta = 0.0;
    long mu = 0;   // ceil(Delta / (k_GRS - 1)), computed exactly in integers
    long ell = 0;  // mu (mu + 1) / 2
    WeightVector w;
};

DecoderParams make_decoder_params(long n, long k_grs, int m1, int m2);

struct BasisState {
    const FieldContext* ctx = nullptr;
    WeightVector w;
    std::vector<TriPoly> polys;
    std::vector<Monomial> lead;  // leading monomials, pairwise distinct
    unsigned long long constraints_processed = 0;

    long weighted_deg(size_t j) const { return weighted_degree(lead[j], w); }
};

/// The l = mu(mu+1)/2 seed monomials Y^i Z^j with i + j < mu, in the
/// enumeration order i ascending, then j.
BasisState init_basis(const FieldContext& ctx, const DecoderParams& params);

/// Processes all 4n column points (received point with multiplicity m1 first,
/// then the other three binary patterns with multiplicity m2 in 00,01,10,11
/// order) through the Koetter update.  Returns the basis sorted by ascending
/// weighted degree.
BasisState interpolate(BasisState state, const CodeSpec& spec, const InterleavedWord& received,
                       const DecoderParams& params);

enum class DecodeStatus { Success, Failure };

struct Rational {
    long long num = 0;
    long long den = 1;

    double value() const { return double(num) / double(den); }
};

Rational make_rational(long long num, long long den);

struct ListEntry {
    UniPoly f, g;
    InterleavedWord word;
    long distance = 0;
};

struct DecodeResult {
    DecodeStatus status = DecodeStatus::Failure;
    std::optional<Rational> tau_hat;
    long long delta_hat = 0;
    std::pair<long, long> pair_wdeg{0, 0};  // weighted degrees of the chosen pair
    std::vector<std::pair<UniPoly, UniPoly>> raw_list;
    std::vector<ListEntry> filtered;  // alternant members within tau_hat
    size_t f_root_count = 0;
    size_t g_root_count = 0;
    unsigned long long constraints_processed = 0;
};

/// Recovery pass over the sorted basis: walk i = 2..l keeping Q, branch on
/// whether gcd(Q, G_i) involves Y or Z, extract Y-/Z-roots of the resultants,
/// and report tau_hat = (n - delta_hat/m1) / (1 - m2/m1) on success.
DecodeResult recover(const BasisState& basis, const CodeSpec& spec, const DecoderParams& params);

/// Full pipeline plus the membership post-filter: keep (f, g) only if both
/// rows encode to binary vectors and the column distance to the received
/// word is at most tau_hat.
DecodeResult decode(const InterleavedWord& received, const CodeSpec& spec,
                    const DecoderParams& params);

}  // namespace ialt
