// Arithmetic in GF(2^m), 1 <= m <= 16, with log/antilog tables.
//
// A FieldContext is immutable after construction and may be shared freely
// across threads.  Elements are plain values; the hot paths work on raw
// uint16_t values through the context, FieldElement is the checked wrapper.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ialt {

struct ReducibleModulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ContextMismatch : std::logic_error {
    using std::logic_error::logic_error;
};
struct ZeroInverse : std::domain_error {
    using std::domain_error::domain_error;
};

/// One irreducible polynomial per extension degree, as a bit vector
/// (bit i = coefficient of X^i).  E.g. default_modulus(5) == 0x25 (X^5+X^2+1).
uint32_t default_modulus(int m);

class FieldContext {
  public:
    /// Builds GF(2^m) from an irreducible modulus of degree exactly m.
    /// Irreducibility is verified by exhaustive trial division; a generator
    /// of the multiplicative group is located and log/antilog tables built.
    FieldContext(int m, uint32_t modulus);

    int degree() const { return m_; }
    uint32_t modulus() const { return modulus_; }
    uint32_t size() const { return uint32_t(1) << m_; }
    uint32_t mul_order() const { return order_; }  // 2^m - 1
    uint16_t generator() const { return generator_; }

    bool same_field(const FieldContext& o) const {
        return m_ == o.m_ && modulus_ == o.modulus_;
    }

    static uint16_t add(uint16_t a, uint16_t b) { return a ^ b; }

    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[uint32_t(log_[a]) + log_[b]];
    }

    uint16_t inv(uint16_t a) const {
        if (a == 0) throw ZeroInverse("inverse of zero");
        return exp_[order_ - log_[a]];
    }

    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

    /// a^e with 0^0 == 1.
    uint16_t pow(uint16_t a, long long e) const;

    /// Discrete log w.r.t. the generator; a must be nonzero.
    uint32_t log(uint16_t a) const {
        if (a == 0) throw ZeroInverse("log of zero");
        return log_[a];
    }
    /// generator^e for any e >= 0 (reduced mod 2^m - 1).
    uint16_t exp(uint64_t e) const { return exp_[e % order_]; }

    /// GF(2) membership test used by the alternant intersection.
    static bool in_gf2(uint16_t a) { return a <= 1; }

  private:
    int m_;
    uint32_t modulus_;
    uint32_t order_;
    uint16_t generator_;
    std::vector<uint32_t> log_;  // index: element value, log_[0] unused
    std::vector<uint16_t> exp_;  // size 2*order_, wrap-free addition of logs
};

/// Spec'd constructor; rejects reducible moduli and degree mismatches.
FieldContext make_field(int m, uint32_t modulus);

class FieldElement {
  public:
    FieldElement() : ctx_(nullptr), v_(0) {}
    FieldElement(const FieldContext& ctx, uint16_t v) : ctx_(&ctx), v_(v) {}

    uint16_t value() const { return v_; }
    const FieldContext& context() const { return *ctx_; }

    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        a.require_same(b);
        return FieldElement(*a.ctx_, FieldContext::add(a.v_, b.v_));
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) { return a + b; }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        a.require_same(b);
        return FieldElement(*a.ctx_, a.ctx_->mul(a.v_, b.v_));
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        a.require_same(b);
        return FieldElement(*a.ctx_, a.ctx_->div(a.v_, b.v_));
    }
    FieldElement inverse() const { return FieldElement(*ctx_, ctx_->inv(v_)); }
    FieldElement pow(long long e) const { return FieldElement(*ctx_, ctx_->pow(v_, e)); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return a.v_ != b.v_;
    }

  private:
    void require_same(const FieldElement& o) const {
        if (ctx_ == nullptr || o.ctx_ == nullptr || !ctx_->same_field(*o.ctx_))
            throw ContextMismatch("elements belong to different fields");
    }
    const FieldContext* ctx_;
    uint16_t v_;
};

inline FieldElement fe_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement fe_inv(const FieldElement& a) { return a.inverse(); }

/// Embedding of GF(2^m) into GF(2^(m*r)), found by locating a root of the
/// base modulus in the extension.  map() is a field homomorphism; unmap()
/// inverts it for values in the image.
class SubfieldEmbedding {
  public:
    SubfieldEmbedding(const FieldContext& base, const FieldContext& ext);

    const FieldContext& base() const { return *base_; }
    const FieldContext& ext() const { return *ext_; }

    uint16_t map(uint16_t a) const { return fwd_[a]; }
    /// Returns false if v is not the image of a base element.
    bool unmap(uint16_t v, uint16_t* out) const {
        int32_t b = inv_[v];
        if (b < 0) return false;
        *out = uint16_t(b);
        return true;
    }

  private:
    const FieldContext* base_;
    const FieldContext* ext_;
    std::vector<uint16_t> fwd_;
    std::vector<int32_t> inv_;
};

/// Shared cache of field contexts (used for resultant evaluation fields).
/// Returned pointers stay valid for the program lifetime.
const FieldContext* shared_field(int m, uint32_t modulus);
const SubfieldEmbedding* shared_embedding(const FieldContext& base, const FieldContext& ext);

}  // namespace ialt
