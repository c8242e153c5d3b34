// GRS, binary alternant and 2-interleaved alternant codes, plus the
// exact-weight column error channel.

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "ialt/gf.hpp"
#include "ialt/poly.hpp"

namespace ialt {

struct DuplicateLocator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ZeroMultiplier : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegreeTooHigh : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptyCode : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TooManyErrors : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CodeSpec {
    std::shared_ptr<const FieldContext> ctx;
    std::vector<uint16_t> locators;     // S, distinct
    std::vector<uint16_t> multipliers;  // B, nonzero
    long k_grs = 0;

    const FieldContext& field() const { return *ctx; }
    long n() const { return long(locators.size()); }
    long designed_distance() const { return n() - k_grs + 1; }
};

CodeSpec make_code(std::shared_ptr<const FieldContext> ctx, std::vector<uint16_t> locators,
                   std::vector<uint16_t> multipliers, long k_grs);

/// Default locator/multiplier choice: S = {0, alpha^0, ..., alpha^(n-2)},
/// B = all ones.  For n = 2^m this makes S the whole field.
CodeSpec make_default_code(std::shared_ptr<const FieldContext> ctx, long n, long k_grs);

/// (beta_1 f(alpha_1), ..., beta_n f(alpha_n)); requires deg f < k_GRS.
std::vector<uint16_t> grs_encode(const CodeSpec& spec, const UniPoly& f);

/// Lagrange interpolation of beta^-1 * row at the locators.
UniPoly recover_message_poly(const CodeSpec& spec, const std::vector<uint16_t>& row);

/// True iff beta^-1 * row interpolates to degree < k_GRS.
bool is_grs_member(const CodeSpec& spec, const std::vector<uint16_t>& row);

struct AlternantBasis {
    long n = 0;
    long k_a = 0;
    // Row-major binary generator basis; bit s of rows[i][s/64] is column s.
    std::vector<std::vector<uint64_t>> rows;

    bool bit(size_t row, size_t col) const {
        return (rows[row][col >> 6] >> (col & 63)) & 1;
    }
};

/// Binary basis of GRS(S,B,k) intersected with F_2^n, by expanding the
/// GF(2^m) parity constraints over GF(2) and computing the kernel.
AlternantBasis alternant_basis(const CodeSpec& spec);

struct InterleavedWord {
    std::vector<uint8_t> row1, row2;  // bits

    long n() const { return long(row1.size()); }
    friend bool operator==(const InterleavedWord& a, const InterleavedWord& b) {
        return a.row1 == b.row1 && a.row2 == b.row2;
    }
};

struct ErrorPattern {
    std::vector<uint8_t> row1, row2;
    std::vector<long> colsupp;
};

/// Column Hamming distance between two interleaved words.
long column_distance(const InterleavedWord& a, const InterleavedWord& b);

/// Deterministic uniform draw in [0, bound) from the raw 64-bit stream.
uint64_t rng_below(std::mt19937_64& rng, uint64_t bound);

struct SampledCodeword {
    InterleavedWord word;
    UniPoly f, g;
};

/// Two independent uniform messages encoded through the binary basis;
/// f and g are recovered by Lagrange interpolation and re-encode to the rows.
SampledCodeword sample_codeword_pair(const CodeSpec& spec, const AlternantBasis& basis,
                                     std::mt19937_64& rng);

/// Corrupts exactly t columns: a uniform t-subset of positions, each hit by a
/// uniform pattern from {01, 10, 11}.
std::pair<InterleavedWord, ErrorPattern> apply_column_errors(const InterleavedWord& word,
                                                             long t, std::mt19937_64& rng);

/// Encode a pair (f, g) and reduce to bits; returns false if any symbol of
/// the encoding lies outside GF(2).
bool encode_binary_pair(const CodeSpec& spec, const UniPoly& f, const UniPoly& g,
                        InterleavedWord* out);

}  // namespace ialt
