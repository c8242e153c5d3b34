#include "ialt/codes.hpp"

#include <algorithm>
#include <set>

namespace ialt {

CodeSpec make_code(std::shared_ptr<const FieldContext> ctx, std::vector<uint16_t> locators,
                   std::vector<uint16_t> multipliers, long k_grs) {
    CodeSpec spec;
    spec.ctx = std::move(ctx);
    spec.locators = std::move(locators);
    spec.multipliers = std::move(multipliers);
    spec.k_grs = k_grs;

    long n = spec.n();
    if (n < 1 || n > long(spec.field().size()))
        throw BadDimension("need 1 <= n <= 2^m");
    if (k_grs < 1 || k_grs > n) throw BadDimension("need 1 <= k_GRS <= n");
    if (spec.multipliers.size() != spec.locators.size())
        throw BadDimension("locator and multiplier counts differ");
    std::set<uint16_t> seen(spec.locators.begin(), spec.locators.end());
    if (long(seen.size()) != n) throw DuplicateLocator("code locators must be distinct");
    for (uint16_t b : spec.multipliers)
        if (b == 0) throw ZeroMultiplier("column multipliers must be nonzero");
    return spec;
}

CodeSpec make_default_code(std::shared_ptr<const FieldContext> ctx, long n, long k_grs) {
    const FieldContext& F = *ctx;
    if (n < 1 || n > long(F.size())) throw BadDimension("need 1 <= n <= 2^m");
    std::vector<uint16_t> S;
    S.push_back(0);
    for (long i = 0; i + 1 < n; ++i) S.push_back(F.exp(uint64_t(i)));
    std::vector<uint16_t> B(size_t(n), 1);
    return make_code(std::move(ctx), std::move(S), std::move(B), k_grs);
}

std::vector<uint16_t> grs_encode(const CodeSpec& spec, const UniPoly& f) {
    if (f.degree() >= spec.k_grs)
        throw DegreeTooHigh("message degree must be below k_GRS");
    const FieldContext& F = spec.field();
    std::vector<uint16_t> out(size_t(spec.n()));
    for (size_t s = 0; s < out.size(); ++s)
        out[s] = F.mul(spec.multipliers[s], f.eval(spec.locators[s]));
    return out;
}

UniPoly recover_message_poly(const CodeSpec& spec, const std::vector<uint16_t>& row) {
    const FieldContext& F = spec.field();
    std::vector<uint16_t> ys(row.size());
    for (size_t s = 0; s < row.size(); ++s) ys[s] = F.div(row[s], spec.multipliers[s]);
    return lagrange_interpolate(F, spec.locators, ys);
}

bool is_grs_member(const CodeSpec& spec, const std::vector<uint16_t>& row) {
    return recover_message_poly(spec, row).degree() < spec.k_grs;
}

AlternantBasis alternant_basis(const CodeSpec& spec) {
    const FieldContext& F = spec.field();
    const long n = spec.n();
    const int m = F.degree();

    // GF(2^m) parity conditions: the Lagrange interpolation of beta^-1 c must
    // have zero coefficients at X^k, ..., X^(n-1).  Column s contributes the
    // high coefficients of beta_s^-1 L_s(X).
    std::vector<uint16_t> master(size_t(n) + 1, 0);
    master[0] = 1;
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j-- > 0;) {
            uint16_t hi = master[size_t(j)];
            master[size_t(j) + 1] ^= hi;
            master[size_t(j)] = F.mul(hi, spec.locators[size_t(i)]);
        }

    const long checks = n - spec.k_grs;
    // Binary matrix with m*checks rows over n columns.
    const size_t words = size_t((n + 63) / 64);
    std::vector<std::vector<uint64_t>> H(size_t(m) * size_t(checks),
                                         std::vector<uint64_t>(words, 0));
    std::vector<uint16_t> num(size_t(n), 0);
    for (long s = 0; s < n; ++s) {
        uint16_t xs = spec.locators[size_t(s)];
        uint16_t carry = master[size_t(n)];
        for (long j = n; j-- > 0;) {
            num[size_t(j)] = carry;
            carry = uint16_t(master[size_t(j)] ^ F.mul(carry, xs));
        }
        uint16_t denom = 0;
        for (long j = n; j-- > 0;) denom = uint16_t(F.mul(denom, xs) ^ num[size_t(j)]);
        uint16_t scale = F.inv(F.mul(denom, spec.multipliers[size_t(s)]));
        for (long i = 0; i < checks; ++i) {
            uint16_t coef = F.mul(num[size_t(spec.k_grs + i)], scale);
            for (int bit = 0; bit < m; ++bit)
                if (coef >> bit & 1)
                    H[size_t(i) * size_t(m) + size_t(bit)][size_t(s) >> 6] |=
                        uint64_t(1) << (s & 63);
        }
    }

    // Kernel of H over GF(2): Gaussian elimination tracking pivot columns.
    AlternantBasis basis;
    basis.n = n;
    long rank = 0;
    std::vector<std::vector<uint64_t>> R;
    std::vector<long> pivots;
    for (auto row : H) {
        for (size_t r = 0; r < R.size(); ++r) {
            long pc = pivots[r];
            if ((row[size_t(pc) >> 6] >> (pc & 63)) & 1)
                for (size_t w = 0; w < words; ++w) row[w] ^= R[r][w];
        }
        long pc = -1;
        for (long s = 0; s < n; ++s)
            if ((row[size_t(s) >> 6] >> (s & 63)) & 1) {
                pc = s;
                break;
            }
        if (pc < 0) continue;
        R.push_back(row);
        pivots.push_back(pc);
        ++rank;
    }
    // Back-substitute to reduced row echelon form.
    for (size_t r = 0; r < R.size(); ++r)
        for (size_t r2 = 0; r2 < R.size(); ++r2) {
            if (r2 == r) continue;
            long pc = pivots[r];
            if ((R[r2][size_t(pc) >> 6] >> (pc & 63)) & 1)
                for (size_t w = 0; w < words; ++w) R[r2][w] ^= R[r][w];
        }

    basis.k_a = n - rank;
    std::vector<bool> is_pivot(size_t(n), false);
    for (long pc : pivots) is_pivot[size_t(pc)] = true;
    for (long s = 0; s < n; ++s) {
        if (is_pivot[size_t(s)]) continue;
        std::vector<uint64_t> v(words, 0);
        v[size_t(s) >> 6] |= uint64_t(1) << (s & 63);
        for (size_t r = 0; r < R.size(); ++r)
            if ((R[r][size_t(s) >> 6] >> (s & 63)) & 1)
                v[size_t(pivots[r]) >> 6] ^= uint64_t(1) << (pivots[r] & 63);
        basis.rows.push_back(std::move(v));
    }
    return basis;
}

long column_distance(const InterleavedWord& a, const InterleavedWord& b) {
    long d = 0;
    for (size_t s = 0; s < a.row1.size(); ++s)
        if (a.row1[s] != b.row1[s] || a.row2[s] != b.row2[s]) ++d;
    return d;
}

uint64_t rng_below(std::mt19937_64& rng, uint64_t bound) {
    // Rejection sampling on the raw stream, deterministic across platforms.
    const uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

SampledCodeword sample_codeword_pair(const CodeSpec& spec, const AlternantBasis& basis,
                                     std::mt19937_64& rng) {
    if (basis.k_a < 1) throw EmptyCode("alternant code has dimension zero");
    const long n = spec.n();
    SampledCodeword out;
    out.word.row1.assign(size_t(n), 0);
    out.word.row2.assign(size_t(n), 0);
    for (int row = 0; row < 2; ++row) {
        auto& bits = row == 0 ? out.word.row1 : out.word.row2;
        for (long i = 0; i < basis.k_a; ++i) {
            if (rng_below(rng, 2) == 0) continue;
            for (long s = 0; s < n; ++s)
                bits[size_t(s)] ^= uint8_t(basis.bit(size_t(i), size_t(s)));
        }
    }
    std::vector<uint16_t> r1(out.word.row1.begin(), out.word.row1.end());
    std::vector<uint16_t> r2(out.word.row2.begin(), out.word.row2.end());
    out.f = recover_message_poly(spec, r1);
    out.g = recover_message_poly(spec, r2);
    return out;
}

std::pair<InterleavedWord, ErrorPattern> apply_column_errors(const InterleavedWord& word,
                                                             long t, std::mt19937_64& rng) {
    const long n = word.n();
    if (t < 0 || t > n) throw TooManyErrors("column error count must lie in [0, n]");
    InterleavedWord r = word;
    ErrorPattern e;
    e.row1.assign(size_t(n), 0);
    e.row2.assign(size_t(n), 0);

    std::vector<long> idx(size_t(n), 0);
    for (long i = 0; i < n; ++i) idx[size_t(i)] = i;
    for (long i = 0; i < t; ++i) {
        long j = i + long(rng_below(rng, uint64_t(n - i)));
        std::swap(idx[size_t(i)], idx[size_t(j)]);
    }
    // Nonzero column patterns, indexed deterministically.
    static const uint8_t patterns[3][2] = {{0, 1}, {1, 0}, {1, 1}};
    for (long i = 0; i < t; ++i) {
        long s = idx[size_t(i)];
        const uint8_t* p = patterns[rng_below(rng, 3)];
        e.row1[size_t(s)] = p[0];
        e.row2[size_t(s)] = p[1];
        r.row1[size_t(s)] ^= p[0];
        r.row2[size_t(s)] ^= p[1];
        e.colsupp.push_back(s);
    }
    std::sort(e.colsupp.begin(), e.colsupp.end());
    return {std::move(r), std::move(e)};
}

bool encode_binary_pair(const CodeSpec& spec, const UniPoly& f, const UniPoly& g,
                        InterleavedWord* out) {
    std::vector<uint16_t> c1 = grs_encode(spec, f);
    std::vector<uint16_t> c2 = grs_encode(spec, g);
    for (uint16_t v : c1)
        if (!FieldContext::in_gf2(v)) return false;
    for (uint16_t v : c2)
        if (!FieldContext::in_gf2(v)) return false;
    out->row1.assign(c1.begin(), c1.end());
    out->row2.assign(c2.begin(), c2.end());
    return true;
}

}  // namespace ialt
