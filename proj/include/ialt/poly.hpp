// Sparse polynomial algebra over GF(2^m): trivariate polynomials with
// weighted-degree metadata, Hasse derivatives, resultants, gcd and
// degree-bounded root extraction.
//
// TriPoly stores terms sorted by the canonical key order (b, c, a), i.e.
// Y-exponent major.  Bivariate polynomials are TriPoly values with one
// exponent identically zero; univariate polynomials get a dense type.
// All values are immutable from the caller's point of view; the decoder
// uses the *_inplace entry points on polynomials it owns.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ialt/gf.hpp"

namespace ialt {

struct ZeroPolynomial : std::domain_error {
    using std::domain_error::domain_error;
};
struct BothConstantInZ : std::domain_error {
    using std::domain_error::domain_error;
};
struct InexactDivision : std::logic_error {
    using std::logic_error::logic_error;
};

struct Monomial {
    uint32_t a = 0;  // X exponent
    uint32_t b = 0;  // Y exponent
    uint32_t c = 0;  // Z exponent

    uint64_t key() const {
        return (uint64_t(b) << 48) | (uint64_t(c) << 32) | a;
    }
    static Monomial from_key(uint64_t k) {
        return Monomial{uint32_t(k & 0xFFFFFFFFu), uint32_t(k >> 48),
                        uint32_t((k >> 32) & 0xFFFFu)};
    }
    long total_degree() const { return long(a) + b + c; }
    friend bool operator==(const Monomial& u, const Monomial& v) {
        return u.a == v.a && u.b == v.b && u.c == v.c;
    }
};

struct WeightVector {
    long w1 = 1, w2 = 1, w3 = 1;
};

long weighted_degree(const Monomial& m, const WeightVector& w);

enum class Ordering { Less, Equal, Greater };

/// Total order of Definition-2 type: weighted degree first, then smaller
/// X exponent, then smaller Y exponent (and Z as a formal final tie break,
/// which never fires for positive weights).
Ordering monomial_cmp(const Monomial& u, const Monomial& v, const WeightVector& w);

class UniPoly {
  public:
    UniPoly() : ctx_(nullptr) {}
    explicit UniPoly(const FieldContext& ctx) : ctx_(&ctx) {}
    UniPoly(const FieldContext& ctx, std::vector<uint16_t> coeffs);

    static UniPoly constant(const FieldContext& ctx, uint16_t v);
    static UniPoly x_power(const FieldContext& ctx, uint32_t e, uint16_t coeff = 1);

    const FieldContext& context() const { return *ctx_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return long(c_.size()) - 1; }
    uint16_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<uint16_t>& coeffs() const { return c_; }
    uint16_t leading_coeff() const;

    uint16_t eval(uint16_t x) const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(uint16_t s) const;
    UniPoly monic() const;
    /// Quotient and remainder; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }
    /// Lexicographic on (degree, coefficient values); a deterministic order
    /// used to sort root lists.
    friend bool operator<(const UniPoly& a, const UniPoly& b);

    std::string to_string() const;

  private:
    void trim();
    const FieldContext* ctx_;
    std::vector<uint16_t> c_;  // low to high, trailing zeros removed
};

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);  // monic
UniPoly lagrange_interpolate(const FieldContext& ctx, const std::vector<uint16_t>& xs,
                             const std::vector<uint16_t>& ys);

class TriPoly {
  public:
    struct Term {
        uint64_t key;
        uint16_t coeff;
    };

    explicit TriPoly(const FieldContext& ctx) : ctx_(&ctx) {}
    /// Terms may be in any order and may repeat; they are normalized.
    TriPoly(const FieldContext& ctx, std::vector<std::pair<Monomial, uint16_t>> terms);

    static TriPoly monomial_term(const FieldContext& ctx, const Monomial& m, uint16_t coeff);
    static TriPoly from_unipoly(const UniPoly& f, int var);  // var: 0=X,1=Y,2=Z

    const FieldContext& context() const { return *ctx_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    uint16_t coeff(const Monomial& m) const;

    long deg_x() const;
    long deg_y() const;
    long deg_z() const;
    long weighted_degree(const WeightVector& w) const;  // throws ZeroPolynomial
    Monomial leading_monomial(const WeightVector& w) const;

    TriPoly operator+(const TriPoly& o) const;
    TriPoly operator*(const TriPoly& o) const;
    TriPoly scaled(uint16_t s) const;
    TriPoly mul_monomial(const Monomial& m, uint16_t coeff) const;

    /// this += s * o
    void add_scaled_inplace(const TriPoly& o, uint16_t s);
    /// this *= (X + x)   (char 2: equals X - x)
    void mul_x_plus_inplace(uint16_t x);
    /// Y += y, Z += z translation (self-inverse in characteristic 2).
    TriPoly shift_yz(uint16_t y, uint16_t z) const;

    uint16_t evaluate(uint16_t x, uint16_t y, uint16_t z) const;
    /// Hasse derivative of the given order evaluated at a point, without
    /// materializing the derivative polynomial.
    uint16_t hasse_eval(uint32_t a, uint32_t b, uint32_t c, uint16_t x, uint16_t y,
                        uint16_t z) const;

    /// Exact division; throws InexactDivision if d does not divide.
    TriPoly exact_div(const TriPoly& d) const;

    /// Divide every coefficient by the canonical leading coefficient.
    TriPoly normalized() const;

    friend bool operator==(const TriPoly& p, const TriPoly& q);

    /// Debug serialization: terms as "coeff*X^a*Y^b*Z^c", ascending under
    /// the given weighted order, joined by " + ".
    std::string to_string(const WeightVector& w) const;

  private:
    friend TriPoly swap_yz(const TriPoly&);
    void normalize();
    const FieldContext* ctx_;
    std::vector<Term> terms_;  // sorted by key, nonzero coeffs
};

long weighted_degree(const TriPoly& p, const WeightVector& w);
TriPoly hasse_derivative(const TriPoly& p, const Monomial& order);
/// Largest m such that all Hasse derivatives of total order < m vanish at
/// the point.  Throws ZeroPolynomial on the zero polynomial.
int multiplicity_at(const TriPoly& p, uint16_t x, uint16_t y, uint16_t z);

TriPoly swap_yz(const TriPoly& p);

/// Sylvester resultant of q and p with respect to Z (result in X,Y) or Y
/// (result in X,Z).  Small instances go through fraction-free Bareiss
/// elimination on the Sylvester matrix; large ones are evaluated pointwise
/// over an extension field and interpolated, which computes the same
/// determinant.  w_hint tightens the interpolation grid; any weights are
/// sound, the default is the unweighted bound.
TriPoly resultant_z(const TriPoly& q, const TriPoly& p,
                    const WeightVector& w_hint = WeightVector{1, 1, 1});
TriPoly resultant_y(const TriPoly& q, const TriPoly& p,
                    const WeightVector& w_hint = WeightVector{1, 1, 1});

/// Greatest common divisor by nested primitive pseudo-remainder sequences,
/// eliminating Z, then Y, down to univariate gcd in X.  The result is
/// normalized to canonical leading coefficient 1.
TriPoly trivariate_gcd(const TriPoly& q, const TriPoly& p);

/// All f with deg f < deg_bound and h(X, f(X)) == 0, for bivariate h(X,Y),
/// by Roth-Ruckenstein recursion; roots are enumerated in ascending
/// field-element value order per coefficient and returned sorted.
std::vector<UniPoly> y_roots(const TriPoly& h, long deg_bound);

/// p with Y := f(X), Z := g(X).
UniPoly substitute(const TriPoly& p, const UniPoly& f, const UniPoly& g);

// Internal entry points, exposed for tests.
TriPoly resultant_sylvester_bareiss(const TriPoly& q, const TriPoly& p);
TriPoly resultant_evaluated(const TriPoly& q, const TriPoly& p, const WeightVector& w_hint);

}  // namespace ialt
