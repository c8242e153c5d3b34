#include "ialt/decoder.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace ialt {

double compute_delta(long n, long k_grs, int m1, int m2) {
    if (n < 1 || k_grs < 2) throw BadMultiplicities("need n >= 1 and k_GRS >= 2");
    if (!(0 <= m2 && m2 < m1)) throw BadMultiplicities("need 0 <= m2 < m1");
    unsigned __int128 rad = (unsigned __int128)(n) * (k_grs - 1) * (k_grs - 1);
    unsigned __int128 mixed = (unsigned __int128)(m1) * (m1 + 1) * (m1 + 2) +
                              3 * (unsigned __int128)(m2) * (m2 + 1) * (m2 + 2);
    rad *= mixed;
    return std::cbrt(double(rad));
}

DecoderParams make_decoder_params(long n, long k_grs, int m1, int m2) {
    DecoderParams p;
    p.n = n;
    p.k_grs = k_grs;
    p.m1 = m1;
    p.m2 = m2;
    p.delta = compute_delta(n, k_grs, m1, m2);
    p.w = WeightVector{1, k_grs - 1, k_grs - 1};

    // mu = ceil(Delta / (k-1)) computed exactly: smallest mu with
    // (mu (k-1))^3 >= radicand.
    unsigned __int128 rad = (unsigned __int128)(n) * (k_grs - 1) * (k_grs - 1) *
                            ((unsigned __int128)(m1) * (m1 + 1) * (m1 + 2) +
                             3 * (unsigned __int128)(m2) * (m2 + 1) * (m2 + 2));
    long mu = std::max(1L, long(p.delta / double(k_grs - 1)) - 1);
    while (true) {
        unsigned __int128 side = (unsigned __int128)(mu) * (k_grs - 1);
        if (side * side * side >= rad) break;
        ++mu;
    }
    p.mu = mu;
    p.ell = mu * (mu + 1) / 2;
    return p;
}

BasisState init_basis(const FieldContext& ctx, const DecoderParams& params) {
    BasisState st;
    st.ctx = &ctx;
    st.w = params.w;
    for (long i = 0; i < params.mu; ++i)
        for (long j = 0; j < params.mu - i; ++j) {
            Monomial m{0, uint32_t(i), uint32_t(j)};
            st.polys.push_back(TriPoly::monomial_term(ctx, m, 1));
            st.lead.push_back(m);
        }
    assert(long(st.polys.size()) == params.ell);
    return st;
}

namespace {

// Discrepancy of one polynomial for Hasse order (a,b,c) at X = x, scanning
// only the (b,c) term run.  The polynomial is already translated so that the
// point's Y and Z coordinates are zero.
uint16_t run_discrepancy(const FieldContext& F, const TriPoly& poly, uint32_t a, uint32_t b,
                         uint32_t c, const std::vector<uint16_t>& xpow) {
    const auto& ts = poly.terms();
    const uint64_t lo = (uint64_t(b) << 48) | (uint64_t(c) << 32);
    const uint64_t hi = lo | 0xFFFFFFFFull;
    auto first = std::lower_bound(ts.begin(), ts.end(), lo,
                                  [](const TriPoly::Term& t, uint64_t k) { return t.key < k; });
    uint16_t acc = 0;
    for (auto it = first; it != ts.end() && it->key <= hi; ++it) {
        uint32_t p = uint32_t(it->key & 0xFFFFFFFFu);
        if (p < a || (p & a) != a) continue;  // binomial C(p,a) mod 2
        acc ^= F.mul(it->coeff, xpow[p - a]);
    }
    return acc;
}

}  // namespace

BasisState interpolate(BasisState state, const CodeSpec& spec, const InterleavedWord& received,
                       const DecoderParams& params) {
    const FieldContext& F = *state.ctx;
    const long n = spec.n();
    const size_t l = state.polys.size();
    std::vector<uint16_t> deltas(l);
    std::vector<uint16_t> xpow;

    for (long s = 0; s < n; ++s) {
        const uint16_t x = spec.locators[size_t(s)];
        const uint16_t invb = F.inv(spec.multipliers[size_t(s)]);
        const uint16_t ys = received.row1[size_t(s)], zs = received.row2[size_t(s)];

        // Received point first, then the other three binary patterns in
        // (0,0),(0,1),(1,0),(1,1) order.
        struct Pt {
            uint16_t y, z;
            int mult;
        };
        std::vector<Pt> pts;
        pts.push_back(Pt{F.mul(invb, ys), F.mul(invb, zs), params.m1});
        for (uint16_t g1 = 0; g1 <= 1; ++g1)
            for (uint16_t g2 = 0; g2 <= 1; ++g2) {
                if (g1 == ys && g2 == zs) continue;
                pts.push_back(Pt{F.mul(invb, g1), F.mul(invb, g2), params.m2});
            }

        for (const Pt& pt : pts) {
            if (pt.mult == 0) continue;
            // Translate so the point's (Y,Z) coordinates become the origin;
            // the translation is self-inverse in characteristic 2.
            if (pt.y || pt.z)
                for (auto& g : state.polys) g = g.shift_yz(pt.y, pt.z);

            long maxdeg = 0;
            for (const auto& g : state.polys) maxdeg = std::max(maxdeg, g.deg_x());
            long budget = maxdeg + pt.mult * (pt.mult + 1) * (pt.mult + 2) / 6 + 2;
            xpow.assign(size_t(budget), 0);
            xpow[0] = 1;
            for (size_t e = 1; e < xpow.size(); ++e) xpow[e] = F.mul(xpow[e - 1], x);

            for (int a = 0; a < pt.mult; ++a)
                for (int b = 0; b < pt.mult - a; ++b)
                    for (int c = 0; c < pt.mult - a - b; ++c) {
                        ++state.constraints_processed;
                        int jprime = -1;
                        for (size_t j = 0; j < l; ++j) {
                            deltas[j] = run_discrepancy(F, state.polys[j], uint32_t(a),
                                                        uint32_t(b), uint32_t(c), xpow);
                            if (deltas[j] &&
                                (jprime < 0 ||
                                 monomial_cmp(state.lead[j], state.lead[size_t(jprime)],
                                              state.w) == Ordering::Less))
                                jprime = int(j);
                        }
                        if (jprime < 0) continue;
                        const uint16_t inv_djp = F.inv(deltas[size_t(jprime)]);
                        for (size_t j = 0; j < l; ++j) {
                            if (int(j) == jprime || deltas[j] == 0) continue;
                            state.polys[j].add_scaled_inplace(state.polys[size_t(jprime)],
                                                              F.mul(deltas[j], inv_djp));
                        }
                        state.polys[size_t(jprime)].mul_x_plus_inplace(x);
                        state.lead[size_t(jprime)].a += 1;
                    }

            if (pt.y || pt.z)
                for (auto& g : state.polys) g = g.shift_yz(pt.y, pt.z);
        }
    }

#ifndef NDEBUG
    for (size_t i = 0; i < l; ++i)
        for (size_t j = i + 1; j < l; ++j)
            assert(!(state.lead[i] == state.lead[j]) && "Koetter invariant violated");
    for (size_t j = 0; j < l; ++j)
        assert(state.lead[j] == state.polys[j].leading_monomial(state.w));
#endif

    std::vector<size_t> order(l);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        return monomial_cmp(state.lead[i], state.lead[j], state.w) == Ordering::Less;
    });
    BasisState sorted;
    sorted.ctx = state.ctx;
    sorted.w = state.w;
    sorted.constraints_processed = state.constraints_processed;
    for (size_t j : order) {
        sorted.polys.push_back(std::move(state.polys[j]));
        sorted.lead.push_back(state.lead[j]);
    }
    return sorted;
}

Rational make_rational(long long num, long long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

namespace {

std::vector<UniPoly> roots_or_empty(const TriPoly& h, long bound) {
    if (h.is_zero()) return {};
    return y_roots(h, bound);
}

}  // namespace

DecodeResult recover(const BasisState& basis, const CodeSpec& spec,
                     const DecoderParams& params) {
    DecodeResult res;
    res.constraints_processed = basis.constraints_processed;
    const long l = long(basis.polys.size());
    const long k = params.k_grs;
    const WeightVector& w = basis.w;

    if (l < 2) return res;  // no pair to try: decoding failure

    TriPoly Q = basis.polys[0];
    for (long i = 2; i <= l; ++i) {
        const TriPoly& P = basis.polys[size_t(i - 1)];

        // Branch condition of the recovery loop: gcd(Q, P) free of Y and Z.
        // Equivalent to both resultants being nonzero, so the gcd itself is
        // only computed on the branch that divides by it.
        const bool both_z_const = Q.deg_z() <= 0 && P.deg_z() <= 0;
        const bool both_y_const = Q.deg_y() <= 0 && P.deg_y() <= 0;
        TriPoly HZ = both_z_const ? TriPoly(*basis.ctx) : resultant_z(Q, P, w);
        const bool no_z_factor = both_z_const || !HZ.is_zero();
        TriPoly HY(*basis.ctx);
        bool no_y_factor = both_y_const;
        if (no_z_factor && !both_y_const) {
            HY = resultant_y(Q, P, w);
            no_y_factor = !HY.is_zero();
        }

        if (no_z_factor && no_y_factor) {
            std::vector<UniPoly> fs = roots_or_empty(HZ, k);
            res.f_root_count = fs.size();
            if (!fs.empty()) {
                // H_Y lives in (X,Z); move the Z-exponents into the Y slot.
                std::vector<UniPoly> gs = roots_or_empty(swap_yz(HY), k);
                res.g_root_count = gs.size();
                for (const UniPoly& f : fs)
                    for (const UniPoly& g : gs) res.raw_list.emplace_back(f, g);
            }
            res.status = DecodeStatus::Success;
            res.delta_hat = basis.polys[size_t(i - 1)].weighted_degree(w);
            res.pair_wdeg = {Q.is_zero() ? 0 : Q.weighted_degree(w), res.delta_hat};
            res.tau_hat = make_rational(params.n * params.m1 - res.delta_hat,
                                        params.m1 - params.m2);
            return res;
        }

        TriPoly Phi = trivariate_gcd(Q, P);
        TriPoly U = Q.exact_div(Phi);
        TriPoly V = P.exact_div(Phi);
        if (U.deg_z() > 0 || V.deg_z() > 0) {
            TriPoly HZc = resultant_z(U, V, w);
            std::vector<UniPoly> fs = roots_or_empty(HZc, k);
            if (!fs.empty() && (U.deg_y() > 0 || V.deg_y() > 0)) {
                TriPoly HYc = resultant_y(U, V, w);
                std::vector<UniPoly> gs = roots_or_empty(swap_yz(HYc), k);
                for (const UniPoly& f : fs)
                    for (const UniPoly& g : gs) res.raw_list.emplace_back(f, g);
            }
        }
        Q = std::move(Phi);
        if (i == l) {
            // Exhausted the basis without a coprime pair.
            DecodeResult fail;
            fail.constraints_processed = basis.constraints_processed;
            return fail;
        }
    }
    return res;  // unreachable for l >= 2
}

DecodeResult decode(const InterleavedWord& received, const CodeSpec& spec,
                    const DecoderParams& params) {
    BasisState st = init_basis(spec.field(), params);
    st = interpolate(std::move(st), spec, received, params);
    DecodeResult res = recover(st, spec, params);
    if (res.status != DecodeStatus::Success) return res;

    for (const auto& [f, g] : res.raw_list) {
        InterleavedWord cand;
        if (!encode_binary_pair(spec, f, g, &cand)) continue;
        long dist = column_distance(cand, received);
        // dist <= tau_hat, compared exactly.
        if (dist * res.tau_hat->den > res.tau_hat->num) continue;
        res.filtered.push_back(ListEntry{f, g, std::move(cand), dist});
    }
    return res;
}

}  // namespace ialt
