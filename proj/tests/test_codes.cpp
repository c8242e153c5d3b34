#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ialt/codes.hpp"

using namespace ialt;

namespace {

std::shared_ptr<const FieldContext> field(int m) {
    return std::make_shared<const FieldContext>(m, default_modulus(m));
}

}  // namespace

TEST_CASE("make_code validation and designed distance") {
    auto F32 = field(5);
    CodeSpec c = make_default_code(F32, 32, 20);
    CHECK(c.n() == 32);
    CHECK(c.designed_distance() == 13);

    CodeSpec full = make_default_code(F32, 32, 32);
    CHECK(full.designed_distance() == 1);

    CHECK_THROWS_AS(make_code(F32, {1, 1, 2}, {1, 1, 1}, 2), DuplicateLocator);
    CHECK_THROWS_AS(make_code(F32, {1, 2, 3}, {1, 0, 1}, 2), ZeroMultiplier);
    CHECK_THROWS_AS(make_code(F32, {1, 2, 3}, {1, 1, 1}, 4), BadDimension);
    CHECK_THROWS_AS(make_code(F32, {1, 2, 3}, {1, 1, 1}, 0), BadDimension);
    CHECK_THROWS_AS(make_default_code(field(2), 5, 2), BadDimension);  // n > 2^m
}

TEST_CASE("grs_encode basics") {
    auto F16 = field(4);
    CodeSpec c = make_default_code(F16, 16, 5);
    const FieldContext& F = c.field();

    std::vector<uint16_t> zero = grs_encode(c, UniPoly(F));
    for (uint16_t v : zero) CHECK(v == 0);

    std::vector<uint16_t> ones = grs_encode(c, UniPoly::constant(F, 1));
    for (uint16_t v : ones) CHECK(v == 1);

    // f = X over the full locator set evaluates to the locators themselves.
    std::vector<uint16_t> ident = grs_encode(c, UniPoly(F, {0, 1}));
    for (size_t s = 0; s < ident.size(); ++s) CHECK(ident[s] == c.locators[s]);

    CHECK_THROWS_AS(grs_encode(c, UniPoly::x_power(F, 5)), DegreeTooHigh);
}

TEST_CASE("alternant basis edge shapes") {
    auto F8 = field(3);
    // k_GRS = n: every binary vector is a codeword.
    CodeSpec cfull = make_default_code(F8, 8, 8);
    AlternantBasis bfull = alternant_basis(cfull);
    CHECK(bfull.k_a == 8);

    // k_GRS = 1 with unit multipliers: {0, all-ones}.
    CodeSpec c1 = make_default_code(F8, 8, 1);
    AlternantBasis b1 = alternant_basis(c1);
    CHECK(b1.k_a == 1);
    for (long s = 0; s < 8; ++s) CHECK(b1.bit(0, size_t(s)));
}

TEST_CASE("alternant basis rows are GRS members (n=32, k=20)") {
    auto F32 = field(5);
    CodeSpec c = make_default_code(F32, 32, 20);
    AlternantBasis b = alternant_basis(c);
    CHECK(b.k_a >= 1);
    CHECK(b.k_a <= c.k_grs);
    // Per-row interpolation oracle.
    for (size_t r = 0; r < b.rows.size(); ++r) {
        std::vector<uint16_t> row(32);
        for (long s = 0; s < 32; ++s) row[size_t(s)] = b.bit(r, size_t(s)) ? 1 : 0;
        CHECK(is_grs_member(c, row));
    }
    // GF(2) rank oracle: the kernel basis has full row rank.
    std::vector<uint64_t> rows;
    for (const auto& r : b.rows) rows.push_back(r[0]);
    long rank = 0;
    for (long col = 0; col < 32 && !rows.empty(); ++col) {
        size_t piv = rows.size();
        for (size_t r = 0; r < rows.size(); ++r)
            if ((rows[r] >> col) & 1) {
                piv = r;
                break;
            }
        if (piv == rows.size()) continue;
        ++rank;
        uint64_t pv = rows[piv];
        rows.erase(rows.begin() + long(piv));
        for (auto& r : rows)
            if ((r >> col) & 1) r ^= pv;
    }
    CHECK(rank == b.k_a);
}

TEST_CASE("sampled codewords round-trip and are linear") {
    auto F16 = field(4);
    CodeSpec c = make_default_code(F16, 16, 9);
    AlternantBasis b = alternant_basis(c);
    REQUIRE(b.k_a >= 1);
    std::mt19937_64 rng(123);
    for (int it = 0; it < 50; ++it) {
        SampledCodeword s = sample_codeword_pair(c, b, rng);
        CHECK(s.f.degree() < c.k_grs);
        CHECK(s.g.degree() < c.k_grs);
        std::vector<uint16_t> c1 = grs_encode(c, s.f);
        std::vector<uint16_t> c2 = grs_encode(c, s.g);
        for (long i = 0; i < c.n(); ++i) {
            CHECK(c1[size_t(i)] == s.word.row1[size_t(i)]);
            CHECK(c2[size_t(i)] == s.word.row2[size_t(i)]);
        }
        // Linearity: the sum of the two rows is again a GRS member.
        std::vector<uint16_t> sum(size_t(c.n()));
        for (long i = 0; i < c.n(); ++i)
            sum[size_t(i)] = uint16_t(s.word.row1[size_t(i)] ^ s.word.row2[size_t(i)]);
        CHECK(is_grs_member(c, sum));
    }
}

TEST_CASE("seed-pinned sample is stable") {
    auto F32 = field(5);
    CodeSpec c = make_default_code(F32, 32, 20);
    AlternantBasis b = alternant_basis(c);
    std::mt19937_64 rng(0);
    SampledCodeword s = sample_codeword_pair(c, b, rng);
    uint64_t bits1 = 0, bits2 = 0;
    for (long i = 0; i < 32; ++i) {
        bits1 |= uint64_t(s.word.row1[size_t(i)]) << i;
        bits2 |= uint64_t(s.word.row2[size_t(i)]) << i;
    }
    // Regression fixture recorded on first run with seed 0, then pinned.
    CHECK(bits1 == 0x196f5139ull);
    CHECK(bits2 == 0x65bd44e1ull);
}

TEST_CASE("column errors hit exactly t columns") {
    auto F16 = field(4);
    CodeSpec c = make_default_code(F16, 16, 9);
    AlternantBasis b = alternant_basis(c);
    std::mt19937_64 rng(7);
    SampledCodeword s = sample_codeword_pair(c, b, rng);

    auto [r0, e0] = apply_column_errors(s.word, 0, rng);
    CHECK(r0 == s.word);
    CHECK(e0.colsupp.empty());

    auto [rn, en] = apply_column_errors(s.word, 16, rng);
    CHECK(en.colsupp.size() == 16);

    for (int it = 0; it < 40; ++it) {
        auto [r, e] = apply_column_errors(s.word, 5, rng);
        CHECK(e.colsupp.size() == 5);
        CHECK(column_distance(r, s.word) == 5);
        for (long col : e.colsupp) {
            int pat = e.row1[size_t(col)] * 2 + e.row2[size_t(col)];
            CHECK(pat >= 1);  // one of 01, 10, 11
        }
    }
    CHECK_THROWS_AS(apply_column_errors(s.word, 17, rng), TooManyErrors);
}

TEST_CASE("binary pair encoding filter") {
    auto F16 = field(4);
    CodeSpec c = make_default_code(F16, 16, 9);
    AlternantBasis b = alternant_basis(c);
    std::mt19937_64 rng(9);
    SampledCodeword s = sample_codeword_pair(c, b, rng);
    InterleavedWord w;
    CHECK(encode_binary_pair(c, s.f, s.g, &w));
    CHECK(w == s.word);
    // A message with non-binary encoding is rejected.
    UniPoly bad = UniPoly(c.field(), {3, 7, 2});
    InterleavedWord dummy;
    CHECK(!encode_binary_pair(c, bad, s.g, &dummy));
}
