#include "ialt/poly.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>
#include <unordered_map>

namespace ialt {

namespace {

inline uint32_t key_a(uint64_t k) { return uint32_t(k & 0xFFFFFFFFu); }
inline uint32_t key_c(uint64_t k) { return uint32_t((k >> 32) & 0xFFFFu); }
inline uint32_t key_b(uint64_t k) { return uint32_t(k >> 48); }
inline uint64_t make_key(uint32_t a, uint32_t b, uint32_t c) {
    return (uint64_t(b) << 48) | (uint64_t(c) << 32) | a;
}

// C(n,k) mod 2 by Lucas: odd iff k is a submask of n.
inline bool binom_odd(uint32_t n, uint32_t k) { return (n & k) == k; }

void sort_combine(std::vector<TriPoly::Term>& v) {
    std::sort(v.begin(), v.end(),
              [](const TriPoly::Term& s, const TriPoly::Term& t) { return s.key < t.key; });
    size_t out = 0;
    for (size_t i = 0; i < v.size();) {
        uint64_t k = v[i].key;
        uint16_t acc = 0;
        while (i < v.size() && v[i].key == k) acc ^= v[i++].coeff;
        if (acc) v[out++] = TriPoly::Term{k, acc};
    }
    v.resize(out);
}

}  // namespace

long weighted_degree(const Monomial& m, const WeightVector& w) {
    return w.w1 * long(m.a) + w.w2 * long(m.b) + w.w3 * long(m.c);
}

Ordering monomial_cmp(const Monomial& u, const Monomial& v, const WeightVector& w) {
    long du = weighted_degree(u, w), dv = weighted_degree(v, w);
    if (du != dv) return du < dv ? Ordering::Less : Ordering::Greater;
    if (u.a != v.a) return u.a < v.a ? Ordering::Less : Ordering::Greater;
    if (u.b != v.b) return u.b < v.b ? Ordering::Less : Ordering::Greater;
    if (u.c != v.c) return u.c < v.c ? Ordering::Less : Ordering::Greater;
    return Ordering::Equal;
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(const FieldContext& ctx, std::vector<uint16_t> coeffs)
    : ctx_(&ctx), c_(std::move(coeffs)) {
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(const FieldContext& ctx, uint16_t v) {
    UniPoly p(ctx);
    if (v) p.c_.push_back(v);
    return p;
}

UniPoly UniPoly::x_power(const FieldContext& ctx, uint32_t e, uint16_t coeff) {
    UniPoly p(ctx);
    if (coeff) {
        p.c_.assign(e + 1, 0);
        p.c_[e] = coeff;
    }
    return p;
}

uint16_t UniPoly::leading_coeff() const {
    if (c_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
    return c_.back();
}

uint16_t UniPoly::eval(uint16_t x) const {
    uint16_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = uint16_t(ctx_->mul(acc, x) ^ c_[i]);
    return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly r(*ctx_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = uint16_t(coeff(i) ^ o.coeff(i));
    r.trim();
    return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    UniPoly r(*ctx_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] ^= ctx_->mul(c_[i], o.c_[j]);
    }
    r.trim();
    return r;
}

UniPoly UniPoly::scaled(uint16_t s) const {
    UniPoly r(*ctx_);
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& v : r.c_) v = ctx_->mul(v, s);
    return r;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(ctx_->inv(c_.back()));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("division by zero polynomial");
    UniPoly q(*ctx_), r = *this;
    long dd = d.degree();
    if (degree() < dd) return {q, r};
    q.c_.assign(degree() - dd + 1, 0);
    uint16_t ilc = ctx_->inv(d.c_.back());
    for (long i = r.degree(); i >= dd; --i) {
        uint16_t t = ctx_->mul(r.coeff(size_t(i)), ilc);
        if (t == 0) continue;
        q.c_[size_t(i - dd)] = t;
        for (long j = 0; j <= dd; ++j)
            r.c_[size_t(i - dd + j)] ^= ctx_->mul(t, d.c_[size_t(j)]);
    }
    r.trim();
    q.trim();
    return {q, r};
}

bool operator<(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string UniPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "0x" << std::hex << c_[i] << std::dec << "*X^" << i;
    }
    return os.str();
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly u = a, v = b;
    while (!v.is_zero()) {
        UniPoly r = u.divmod(v).second;
        u = v;
        v = r;
    }
    return u.monic();
}

UniPoly lagrange_interpolate(const FieldContext& ctx, const std::vector<uint16_t>& xs,
                             const std::vector<uint16_t>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("point count mismatch");
    size_t n = xs.size();
    // master polynomial M(X) = prod (X + x_i), master[k] = X^k coefficient
    std::vector<uint16_t> master(n + 1, 0);
    master[0] = 1;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j-- > 0;) {
            uint16_t hi = master[j];
            master[j + 1] ^= hi;
            master[j] = ctx.mul(hi, xs[i]);
        }
    }
    UniPoly acc(ctx);
    std::vector<uint16_t> num(n, 0);
    for (size_t i = 0; i < n; ++i) {
        // num = M / (X + x_i) by synthetic division
        uint16_t carry = master[n];
        for (size_t j = n; j-- > 0;) {
            num[j] = carry;
            carry = uint16_t(master[j] ^ ctx.mul(carry, xs[i]));
        }
        uint16_t denom = 0;
        for (size_t j = n; j-- > 0;) denom = uint16_t(ctx.mul(denom, xs[i]) ^ num[j]);
        uint16_t s = ctx.div(ys[i], denom);
        if (s == 0) continue;
        UniPoly li(ctx, std::vector<uint16_t>(num.begin(), num.end()));
        acc = acc + li.scaled(s);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// TriPoly

TriPoly::TriPoly(const FieldContext& ctx, std::vector<std::pair<Monomial, uint16_t>> terms)
    : ctx_(&ctx) {
    terms_.reserve(terms.size());
    for (auto& [m, v] : terms)
        if (v) terms_.push_back(Term{m.key(), v});
    sort_combine(terms_);
}

TriPoly TriPoly::monomial_term(const FieldContext& ctx, const Monomial& m, uint16_t coeff) {
    TriPoly p(ctx);
    if (coeff) p.terms_.push_back(Term{m.key(), coeff});
    return p;
}

TriPoly TriPoly::from_unipoly(const UniPoly& f, int var) {
    TriPoly p(f.context());
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        uint16_t v = f.coeffs()[i];
        if (!v) continue;
        Monomial m;
        if (var == 0)
            m.a = uint32_t(i);
        else if (var == 1)
            m.b = uint32_t(i);
        else
            m.c = uint32_t(i);
        p.terms_.push_back(Term{m.key(), v});
    }
    sort_combine(p.terms_);
    return p;
}

void TriPoly::normalize() { sort_combine(terms_); }

uint16_t TriPoly::coeff(const Monomial& m) const {
    uint64_t k = m.key();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, uint64_t key) { return t.key < key; });
    return (it != terms_.end() && it->key == k) ? it->coeff : 0;
}

long TriPoly::deg_x() const {
    long d = -1;
    for (const Term& t : terms_) d = std::max(d, long(key_a(t.key)));
    return d;
}
long TriPoly::deg_y() const {
    return terms_.empty() ? -1 : long(key_b(terms_.back().key));
}
long TriPoly::deg_z() const {
    long d = -1;
    for (const Term& t : terms_) d = std::max(d, long(key_c(t.key)));
    return d;
}

long TriPoly::weighted_degree(const WeightVector& w) const {
    return ialt::weighted_degree(leading_monomial(w), w);
}

Monomial TriPoly::leading_monomial(const WeightVector& w) const {
    if (terms_.empty()) throw ZeroPolynomial("weighted degree of the zero polynomial");
    Monomial best = Monomial::from_key(terms_[0].key);
    for (size_t i = 1; i < terms_.size(); ++i) {
        Monomial m = Monomial::from_key(terms_[i].key);
        if (monomial_cmp(best, m, w) == Ordering::Less) best = m;
    }
    return best;
}

long weighted_degree(const TriPoly& p, const WeightVector& w) { return p.weighted_degree(w); }

TriPoly TriPoly::operator+(const TriPoly& o) const {
    TriPoly r(*ctx_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            uint16_t v = uint16_t(terms_[i].coeff ^ o.terms_[j].coeff);
            if (v) r.terms_.push_back(Term{terms_[i].key, v});
            ++i, ++j;
        }
    }
    return r;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
    TriPoly r(*ctx_);
    if (is_zero() || o.is_zero()) return r;
    size_t budget = terms_.size() * o.terms_.size();
    if (budget <= (size_t(1) << 22)) {
        r.terms_.reserve(budget);
        for (const Term& s : terms_)
            for (const Term& t : o.terms_) {
                uint16_t v = ctx_->mul(s.coeff, t.coeff);
                if (v) r.terms_.push_back(Term{s.key + t.key, v});
            }
        sort_combine(r.terms_);
    } else {
        std::unordered_map<uint64_t, uint16_t> acc;
        acc.reserve(1 << 20);
        for (const Term& s : terms_)
            for (const Term& t : o.terms_) {
                uint16_t v = ctx_->mul(s.coeff, t.coeff);
                if (v) {
                    auto [it, fresh] = acc.emplace(s.key + t.key, v);
                    if (!fresh) {
                        it->second ^= v;
                        if (it->second == 0) acc.erase(it);
                    }
                }
            }
        r.terms_.reserve(acc.size());
        for (auto& [k, v] : acc) r.terms_.push_back(Term{k, v});
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& s, const Term& t) { return s.key < t.key; });
    }
    return r;
}

TriPoly TriPoly::scaled(uint16_t s) const {
    TriPoly r(*ctx_);
    if (s == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff = ctx_->mul(t.coeff, s);
    return r;
}

TriPoly TriPoly::mul_monomial(const Monomial& m, uint16_t coeff) const {
    TriPoly r(*ctx_);
    if (coeff == 0) return r;
    uint64_t k = m.key();
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_)
        r.terms_.push_back(Term{t.key + k, ctx_->mul(t.coeff, coeff)});
    return r;
}

void TriPoly::add_scaled_inplace(const TriPoly& o, uint16_t s) {
    if (s == 0 || o.is_zero()) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
            out.push_back(Term{o.terms_[j].key, ctx_->mul(o.terms_[j].coeff, s)});
            ++j;
        } else {
            uint16_t v = uint16_t(terms_[i].coeff ^ ctx_->mul(o.terms_[j].coeff, s));
            if (v) out.push_back(Term{terms_[i].key, v});
            ++i, ++j;
        }
    }
    terms_.swap(out);
}

void TriPoly::mul_x_plus_inplace(uint16_t x) {
    if (x == 0) {
        for (auto& t : terms_) t.key += 1;  // a sits in the low bits
        return;
    }
    // (X + x) * p, processed per (b,c) run in one pass: within a run the terms
    // are sorted by ascending a, and out(a) = x*in(a) ^ in(a-1).
    std::vector<Term> out;
    out.reserve(terms_.size() + 16);
    size_t i = 0;
    while (i < terms_.size()) {
        uint64_t run = terms_[i].key >> 32;  // (b,c) part
        uint16_t prev_coeff = 0;
        uint32_t prev_a = 0;
        while (i < terms_.size() && (terms_[i].key >> 32) == run) {
            uint32_t a = key_a(terms_[i].key);
            if (prev_coeff && prev_a + 1 < a)
                out.push_back(Term{(run << 32) | (prev_a + 1), prev_coeff});
            uint16_t here = ctx_->mul(terms_[i].coeff, x);
            if (prev_coeff && prev_a + 1 == a) here ^= prev_coeff;
            if (here) out.push_back(Term{(run << 32) | a, here});
            prev_coeff = terms_[i].coeff;
            prev_a = a;
            ++i;
        }
        if (prev_coeff) out.push_back(Term{(run << 32) | (prev_a + 1), prev_coeff});
    }
    terms_.swap(out);
}

TriPoly TriPoly::shift_yz(uint16_t y, uint16_t z) const {
    if (y == 0 && z == 0) return *this;
    long dy = std::max(deg_y(), 0L), dz = std::max(deg_z(), 0L);
    std::vector<uint16_t> ypow(size_t(dy) + 1), zpow(size_t(dz) + 1);
    ypow[0] = zpow[0] = 1;
    for (long i = 1; i <= dy; ++i) ypow[size_t(i)] = ctx_->mul(ypow[size_t(i - 1)], y);
    for (long i = 1; i <= dz; ++i) zpow[size_t(i)] = ctx_->mul(zpow[size_t(i - 1)], z);

    TriPoly r(*ctx_);
    r.terms_.reserve(terms_.size() * 2);
    for (const Term& t : terms_) {
        uint32_t a = key_a(t.key), b = key_b(t.key), c = key_c(t.key);
        // (Y+y)^b = sum over submasks i of b of Y^i y^(b-i); likewise for Z.
        // ypow[e] vanishes for e > 0 when y == 0, so the zero cases fall out.
        uint32_t bi = b;
        while (true) {
            uint16_t cb = ctx_->mul(t.coeff, ypow[b - bi]);
            if (cb) {
                uint32_t cj = c;
                while (true) {
                    uint16_t v = ctx_->mul(cb, zpow[c - cj]);
                    if (v) r.terms_.push_back(Term{make_key(a, bi, cj), v});
                    if (cj == 0) break;
                    cj = (cj - 1) & c;
                }
            }
            if (bi == 0) break;
            bi = (bi - 1) & b;
        }
    }
    sort_combine(r.terms_);
    return r;
}

uint16_t TriPoly::evaluate(uint16_t x, uint16_t y, uint16_t z) const {
    uint16_t acc = 0;
    for (const Term& t : terms_) {
        uint32_t a = key_a(t.key), b = key_b(t.key), c = key_c(t.key);
        uint16_t v = t.coeff;
        v = ctx_->mul(v, ctx_->pow(x, a));
        v = ctx_->mul(v, ctx_->pow(y, b));
        v = ctx_->mul(v, ctx_->pow(z, c));
        acc ^= v;
    }
    return acc;
}

uint16_t TriPoly::hasse_eval(uint32_t a, uint32_t b, uint32_t c, uint16_t x, uint16_t y,
                             uint16_t z) const {
    uint16_t acc = 0;
    for (const Term& t : terms_) {
        uint32_t p = key_a(t.key), q = key_b(t.key), r = key_c(t.key);
        if (!binom_odd(p, a) || !binom_odd(q, b) || !binom_odd(r, c)) continue;
        uint32_t ea = p - a, eb = q - b, ec = r - c;
        if ((ea && x == 0) || (eb && y == 0) || (ec && z == 0)) continue;
        uint16_t v = t.coeff;
        if (ea) v = ctx_->mul(v, ctx_->pow(x, ea));
        if (eb) v = ctx_->mul(v, ctx_->pow(y, eb));
        if (ec) v = ctx_->mul(v, ctx_->pow(z, ec));
        acc ^= v;
    }
    return acc;
}

TriPoly TriPoly::exact_div(const TriPoly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("division by zero polynomial");
    TriPoly rem = *this;
    TriPoly quot(*ctx_);
    const Term& dl = d.terms_.back();
    uint16_t dl_inv = ctx_->inv(dl.coeff);
    uint32_t da = key_a(dl.key), db = key_b(dl.key), dc = key_c(dl.key);
    while (!rem.terms_.empty()) {
        const Term& rl = rem.terms_.back();
        uint32_t ra = key_a(rl.key), rb = key_b(rl.key), rc = key_c(rl.key);
        if (ra < da || rb < db || rc < dc)
            throw InexactDivision("leading term not divisible");
        Monomial qm{ra - da, rb - db, rc - dc};
        uint16_t qc = ctx_->mul(rl.coeff, dl_inv);
        quot.terms_.push_back(Term{qm.key(), qc});
        rem.add_scaled_inplace(d.mul_monomial(qm, 1), qc);
    }
    sort_combine(quot.terms_);
    return quot;
}

TriPoly TriPoly::normalized() const {
    if (terms_.empty()) return *this;
    return scaled(ctx_->inv(terms_.back().coeff));
}

bool operator==(const TriPoly& p, const TriPoly& q) {
    if (p.terms_.size() != q.terms_.size()) return false;
    for (size_t i = 0; i < p.terms_.size(); ++i)
        if (p.terms_[i].key != q.terms_[i].key || p.terms_[i].coeff != q.terms_[i].coeff)
            return false;
    return true;
}

std::string TriPoly::to_string(const WeightVector& w) const {
    if (terms_.empty()) return "0";
    std::vector<Monomial> ms;
    ms.reserve(terms_.size());
    for (const Term& t : terms_) ms.push_back(Monomial::from_key(t.key));
    std::sort(ms.begin(), ms.end(), [&](const Monomial& u, const Monomial& v) {
        return monomial_cmp(u, v, w) == Ordering::Less;
    });
    std::ostringstream os;
    for (size_t i = 0; i < ms.size(); ++i) {
        if (i) os << " + ";
        os << "0x" << std::hex << coeff(ms[i]) << std::dec << "*X^" << ms[i].a << "*Y^"
           << ms[i].b << "*Z^" << ms[i].c;
    }
    return os.str();
}

TriPoly swap_yz(const TriPoly& p) {
    TriPoly r(*p.ctx_);
    r.terms_.reserve(p.terms_.size());
    for (const TriPoly::Term& t : p.terms_)
        r.terms_.push_back(
            TriPoly::Term{make_key(key_a(t.key), key_c(t.key), key_b(t.key)), t.coeff});
    sort_combine(r.terms_);
    return r;
}

TriPoly hasse_derivative(const TriPoly& p, const Monomial& order) {
    TriPoly r(p.context());
    std::vector<TriPoly::Term> out;
    for (const TriPoly::Term& t : p.terms()) {
        uint32_t a = key_a(t.key), b = key_b(t.key), c = key_c(t.key);
        if (a < order.a || b < order.b || c < order.c) continue;
        if (!binom_odd(a, order.a) || !binom_odd(b, order.b) || !binom_odd(c, order.c))
            continue;
        out.push_back(TriPoly::Term{make_key(a - order.a, b - order.b, c - order.c), t.coeff});
    }
    return TriPoly(p.context(), [&] {
        std::vector<std::pair<Monomial, uint16_t>> v;
        v.reserve(out.size());
        for (auto& t : out) v.emplace_back(Monomial::from_key(t.key), t.coeff);
        return v;
    }());
}

int multiplicity_at(const TriPoly& p, uint16_t x, uint16_t y, uint16_t z) {
    if (p.is_zero()) throw ZeroPolynomial("multiplicity of the zero polynomial");
    long max_order = 0;
    for (const TriPoly::Term& t : p.terms())
        max_order = std::max(max_order, Monomial::from_key(t.key).total_degree());
    for (long ord = 0; ord <= max_order; ++ord) {
        for (long a = 0; a <= ord; ++a)
            for (long b = 0; a + b <= ord; ++b) {
                long c = ord - a - b;
                if (p.hasse_eval(uint32_t(a), uint32_t(b), uint32_t(c), x, y, z) != 0)
                    return int(ord);
            }
    }
    return int(max_order) + 1;
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

// Z-coefficient of exponent c, as an (X,Y) polynomial.
TriPoly z_coefficient(const TriPoly& p, uint32_t cz) {
    std::vector<std::pair<Monomial, uint16_t>> v;
    for (const TriPoly::Term& t : p.terms())
        if (key_c(t.key) == cz)
            v.emplace_back(Monomial{key_a(t.key), key_b(t.key), 0}, t.coeff);
    return TriPoly(p.context(), std::move(v));
}

}  // namespace

TriPoly resultant_sylvester_bareiss(const TriPoly& q, const TriPoly& p) {
    const FieldContext& ctx = q.context();
    long dq = std::max(q.deg_z(), 0L), dp = std::max(p.deg_z(), 0L);
    long s = dq + dp;
    if (s == 0) throw BothConstantInZ("resultant of two polynomials constant in Z");

    std::vector<TriPoly> qc, pc;
    for (long i = 0; i <= dq; ++i) qc.push_back(z_coefficient(q, uint32_t(i)));
    for (long i = 0; i <= dp; ++i) pc.push_back(z_coefficient(p, uint32_t(i)));

    const size_t dim = size_t(s);
    std::vector<std::vector<TriPoly>> M(dim, std::vector<TriPoly>(dim, TriPoly(ctx)));
    for (long r = 0; r < dp; ++r)
        for (long j = 0; j <= dq; ++j) M[size_t(r)][size_t(r + j)] = qc[size_t(dq - j)];
    for (long r = 0; r < dq; ++r)
        for (long j = 0; j <= dp; ++j) M[size_t(dp + r)][size_t(r + j)] = pc[size_t(dp - j)];

    // Bareiss fraction-free elimination; divisions are exact.  Row swaps do
    // not change the determinant in characteristic 2.
    TriPoly prev = TriPoly::monomial_term(ctx, Monomial{}, 1);
    for (long k = 0; k + 1 < s; ++k) {
        if (M[size_t(k)][size_t(k)].is_zero()) {
            long r = k + 1;
            while (r < s && M[size_t(r)][size_t(k)].is_zero()) ++r;
            if (r == s) return TriPoly(ctx);  // singular: resultant 0
            std::swap(M[size_t(k)], M[size_t(r)]);
        }
        for (long i = k + 1; i < s; ++i)
            for (long j = k + 1; j < s; ++j) {
                TriPoly num = M[size_t(i)][size_t(j)] * M[size_t(k)][size_t(k)] +
                              M[size_t(i)][size_t(k)] * M[size_t(k)][size_t(j)];
                M[size_t(i)][size_t(j)] = num.is_zero() ? num : num.exact_div(prev);
            }
        prev = M[size_t(k)][size_t(k)];
        for (long i = k + 1; i < s; ++i) M[size_t(i)][size_t(k)] = TriPoly(ctx);
    }
    return M[size_t(s - 1)][size_t(s - 1)];
}

namespace {

// det of the formal Sylvester matrix Sylv_{dA,dB}(A,B) for scalar
// coefficient vectors over L, allowing leading zeros (degree drops).
// Characteristic 2, so all determinant signs are +1.
uint16_t sylvester_det_scalar(const FieldContext& L, const uint16_t* A, long dA,
                              const uint16_t* B, long dB) {
    long a = dA;
    while (a >= 0 && A[a] == 0) --a;
    long b = dB;
    while (b >= 0 && B[b] == 0) --b;
    if (dA + dB == 0) return 1;
    if (a < 0 || b < 0) return 0;
    if (a < dA && b < dB) return 0;

    uint16_t factor = 1;
    if (a < dA) factor = L.pow(B[b], dA - a);
    if (b < dB) factor = L.mul(factor, L.pow(A[a], dB - b));
    if (a == 0 && b == 0) return factor;  // Res of two constants is 1

    // Euclidean resultant of the actual-degree polynomials.
    std::vector<uint16_t> U(A, A + a + 1), V(B, B + b + 1);
    uint16_t res = 1;
    while (true) {
        long du = long(U.size()) - 1, dv = long(V.size()) - 1;
        if (dv == 0) {
            res = L.mul(res, L.pow(V[0], du));
            break;
        }
        if (du < dv) {
            std::swap(U, V);
            continue;
        }
        // R = U mod V
        std::vector<uint16_t> R = U;
        uint16_t ilc = L.inv(V.back());
        for (long i = long(R.size()) - 1; i >= dv; --i) {
            uint16_t t = L.mul(R[size_t(i)], ilc);
            if (t == 0) continue;
            for (long j = 0; j <= dv; ++j) R[size_t(i - dv + j)] ^= L.mul(t, V[size_t(j)]);
        }
        while (!R.empty() && R.back() == 0) R.pop_back();
        if (R.empty()) return 0;  // common factor of positive degree
        long dr = long(R.size()) - 1;
        res = L.mul(res, L.pow(V.back(), du - dr));
        U = std::move(V);
        V = std::move(R);
    }
    return L.mul(res, factor);
}

struct EvalShape {
    // (b,c) groups with dense X-coefficient vectors (embedded into L).
    struct Group {
        uint32_t b, c;
        std::vector<uint16_t> xc;  // low to high
    };
    std::vector<Group> groups;
    long dz = 0;

    EvalShape(const TriPoly& p, const SubfieldEmbedding* emb) {
        dz = std::max(p.deg_z(), 0L);
        const auto& ts = p.terms();
        size_t i = 0;
        while (i < ts.size()) {
            uint64_t run = ts[i].key >> 32;
            Group g;
            g.b = uint32_t(run >> 16);
            g.c = uint32_t(run & 0xFFFFu);
            size_t j = i;
            uint32_t amax = 0;
            while (j < ts.size() && (ts[j].key >> 32) == run) {
                amax = std::max(amax, key_a(ts[j].key));
                ++j;
            }
            g.xc.assign(amax + 1, 0);
            for (size_t k = i; k < j; ++k) {
                uint16_t v = ts[k].coeff;
                g.xc[key_a(ts[k].key)] = emb ? emb->map(v) : v;
            }
            groups.push_back(std::move(g));
            i = j;
        }
    }

    // Collapse X := x, giving per-(b,c) values; then for a fixed y give the
    // Z-coefficient vector.
    void eval_x(const FieldContext& L, const std::vector<uint16_t>& xpow,
                std::vector<uint16_t>& out) const {
        out.assign(groups.size(), 0);
        for (size_t g = 0; g < groups.size(); ++g) {
            const auto& xc = groups[g].xc;
            uint16_t acc = 0;
            for (size_t a = 0; a < xc.size(); ++a)
                if (xc[a]) acc ^= L.mul(xc[a], xpow[a]);
            out[g] = acc;
        }
    }

    void z_vector(const FieldContext& L, const std::vector<uint16_t>& gvals,
                  const uint16_t* ypow, std::vector<uint16_t>& out) const {
        std::fill(out.begin(), out.end(), 0);
        for (size_t g = 0; g < groups.size(); ++g) {
            if (gvals[g] == 0) continue;
            out[groups[g].c] ^= L.mul(gvals[g], ypow[groups[g].b]);
        }
    }
};

}  // namespace

TriPoly resultant_evaluated(const TriPoly& q, const TriPoly& p, const WeightVector& w_hint) {
    const FieldContext& F = q.context();
    long dzq = std::max(q.deg_z(), 0L), dzp = std::max(p.deg_z(), 0L);
    if (dzq + dzp == 0) throw BothConstantInZ("resultant of two polynomials constant in Z");
    WeightVector w = w_hint;
    if (w.w1 < 1 || w.w2 < 1 || w.w3 < 1) w = WeightVector{1, 1, 1};

    long Wq = q.weighted_degree(w), Wp = p.weighted_degree(w);
    // Every determinant term consumes total Z-degree exactly dzq*dzp.
    long DW = dzp * Wq + dzq * Wp - w.w3 * dzq * dzp;
    long DX = dzp * q.deg_x() + dzq * p.deg_x();
    long DU = dzp * std::max(q.deg_y(), 0L) + dzq * std::max(p.deg_y(), 0L);
    long nx = std::min(DW / w.w1, DX) + 1;
    long maxb = std::min(DU, DW / w.w2);
    long ny = maxb + 1;

    // Extension field with enough evaluation points.
    const int m = F.degree();
    const FieldContext* L = nullptr;
    for (int r = 1; m * r <= 20 && m * r <= 16; ++r) {
        if ((uint64_t(1) << (m * r)) >= uint64_t(nx) + 17) {
            L = shared_field(m * r, default_modulus(m * r));
            break;
        }
    }
    if (L == nullptr) return resultant_sylvester_bareiss(q, p);
    const SubfieldEmbedding* emb =
        L->same_field(F) ? nullptr : shared_embedding(F, *L);

    EvalShape Q(q, emb), P(p, emb);
    long s_q = Q.dz, s_p = P.dz;

    const long ystride = std::max({q.deg_y(), p.deg_y(), 0L}) + 1;
    std::vector<uint16_t> ypowflat(size_t(ny) * size_t(ystride));
    for (long j = 0; j < ny; ++j) {
        uint16_t* yp = &ypowflat[size_t(j) * size_t(ystride)];
        yp[0] = 1;
        for (long e = 1; e < ystride; ++e) yp[e] = L->mul(yp[e - 1], uint16_t(j));
    }

    // Grid of determinant values H[i][j], i over x nodes, j over y nodes.
    std::vector<uint16_t> H(size_t(nx) * size_t(ny));
    std::vector<uint16_t> xpow(size_t(std::max(q.deg_x(), p.deg_x())) + 1);
    std::vector<uint16_t> qg, pg, qz(size_t(s_q) + 1), pz(size_t(s_p) + 1);
    bool all_zero = true;
    for (long i = 0; i < nx; ++i) {
        uint16_t x = uint16_t(i);
        xpow[0] = 1;
        for (size_t e = 1; e < xpow.size(); ++e) xpow[e] = L->mul(xpow[e - 1], x);
        Q.eval_x(*L, xpow, qg);
        P.eval_x(*L, xpow, pg);
        for (long j = 0; j < ny; ++j) {
            const uint16_t* yp = &ypowflat[size_t(j) * size_t(ystride)];
            Q.z_vector(*L, qg, yp, qz);
            P.z_vector(*L, pg, yp, pz);
            uint16_t d = sylvester_det_scalar(*L, qz.data(), s_q, pz.data(), s_p);
            H[size_t(i) * size_t(ny) + size_t(j)] = d;
            if (d) all_zero = false;
        }
    }
    if (all_zero) return TriPoly(F);

    // Newton interpolation in Y per x node: coefficients hb[b][i].
    std::vector<uint16_t> hb(size_t(ny) * size_t(nx));
    {
        std::vector<uint16_t> dd(size_t(ny), 0), pc(size_t(ny), 0);
        for (long i = 0; i < nx; ++i) {
            for (long j = 0; j < ny; ++j) dd[size_t(j)] = H[size_t(i) * size_t(ny) + size_t(j)];
            for (long k = 1; k < ny; ++k)
                for (long j = ny - 1; j >= k; --j) {
                    uint16_t num = uint16_t(dd[size_t(j)] ^ dd[size_t(j - 1)]);
                    dd[size_t(j)] = L->div(num, uint16_t(j ^ (j - k)));
                }
            // Newton form -> power basis.
            std::fill(pc.begin(), pc.end(), 0);
            for (long j = ny - 1; j >= 0; --j) {
                // pc = pc*(X + y_j) + dd[j]
                for (long t = ny - 1; t >= 1; --t)
                    pc[size_t(t)] = uint16_t(pc[size_t(t - 1)] ^ L->mul(pc[size_t(t)], uint16_t(j)));
                pc[0] = uint16_t(L->mul(pc[0], uint16_t(j)) ^ dd[size_t(j)]);
            }
            for (long b = 0; b < ny; ++b) hb[size_t(b) * size_t(nx) + size_t(i)] = pc[size_t(b)];
        }
    }

    // Newton interpolation in X per Y-coefficient, over a prefix of the grid.
    std::vector<std::pair<Monomial, uint16_t>> terms;
    for (long b = 0; b <= maxb; ++b) {
        long nb = std::min(nx, std::min(DX, (DW - w.w2 * b) / w.w1) + 1);
        if (nb <= 0) nb = 1;
        const uint16_t* vals = &hb[size_t(b) * size_t(nx)];
        std::vector<uint16_t> dd(vals, vals + nb);
        for (long k = 1; k < nb; ++k)
            for (long i = nb - 1; i >= k; --i) {
                uint16_t num = uint16_t(dd[size_t(i)] ^ dd[size_t(i - 1)]);
                dd[size_t(i)] = L->div(num, uint16_t(i ^ (i - k)));
            }
        std::vector<uint16_t> pc(size_t(nb), 0);
        for (long i = nb - 1; i >= 0; --i) {
            for (long t = nb - 1; t >= 1; --t)
                pc[size_t(t)] = uint16_t(pc[size_t(t - 1)] ^ L->mul(pc[size_t(t)], uint16_t(i)));
            pc[0] = uint16_t(L->mul(pc[0], uint16_t(i)) ^ dd[size_t(i)]);
        }
        for (long a = 0; a < nb; ++a) {
            if (pc[size_t(a)] == 0) continue;
            uint16_t base_v = pc[size_t(a)];
            if (emb) {
                uint16_t u;
                if (!emb->unmap(pc[size_t(a)], &u))
                    throw std::logic_error("resultant interpolation left the base field");
                base_v = u;
            }
            terms.emplace_back(Monomial{uint32_t(a), uint32_t(b), 0}, base_v);
        }
    }
    TriPoly Hpoly(F, std::move(terms));

    // Self-check at points beyond the interpolation grid.
    for (long i = 0; i < 16; ++i) {
        uint16_t x = uint16_t(nx + i);
        uint16_t y = uint16_t((i * 37 + 11) % ny);
        xpow[0] = 1;
        for (size_t e = 1; e < xpow.size(); ++e) xpow[e] = L->mul(xpow[e - 1], x);
        Q.eval_x(*L, xpow, qg);
        P.eval_x(*L, xpow, pg);
        std::vector<uint16_t> ypw(size_t(ystride), 0);
        ypw[0] = 1;
        for (long e = 1; e < ystride; ++e) ypw[size_t(e)] = L->mul(ypw[size_t(e - 1)], y);
        Q.z_vector(*L, qg, ypw.data(), qz);
        P.z_vector(*L, pg, ypw.data(), pz);
        uint16_t want = sylvester_det_scalar(*L, qz.data(), s_q, pz.data(), s_p);
        uint16_t got = 0;
        for (const TriPoly::Term& t : Hpoly.terms()) {
            uint16_t v = emb ? emb->map(t.coeff) : t.coeff;
            v = L->mul(v, L->pow(x, key_a(t.key)));
            v = L->mul(v, L->pow(y, key_b(t.key)));
            got ^= v;
        }
        if (got != want) throw std::logic_error("resultant interpolation self-check failed");
    }
    return Hpoly;
}

namespace {

bool resultant_small(const TriPoly& q, const TriPoly& p) {
    long s = std::max(q.deg_z(), 0L) + std::max(p.deg_z(), 0L);
    return s <= 6 && q.term_count() * p.term_count() <= 20000 &&
           q.deg_x() + q.deg_y() + p.deg_x() + p.deg_y() <= 64;
}

}  // namespace

TriPoly resultant_z(const TriPoly& q, const TriPoly& p, const WeightVector& w_hint) {
    if (q.is_zero() || p.is_zero()) throw ZeroPolynomial("resultant of the zero polynomial");
    if (q.deg_z() <= 0 && p.deg_z() <= 0)
        throw BothConstantInZ("both polynomials constant in Z");
    if (resultant_small(q, p)) return resultant_sylvester_bareiss(q, p);
    return resultant_evaluated(q, p, w_hint);
}

TriPoly resultant_y(const TriPoly& q, const TriPoly& p, const WeightVector& w_hint) {
    WeightVector wy{w_hint.w1, w_hint.w3, w_hint.w2};
    TriPoly r = resultant_z(swap_yz(q), swap_yz(p), wy);
    return swap_yz(r);
}

// ---------------------------------------------------------------------------
// GCD via nested primitive pseudo-remainder sequences

namespace {

long deg_var(const TriPoly& p, int var) {
    switch (var) {
        case 0: return p.deg_x();
        case 1: return p.deg_y();
        default: return p.deg_z();
    }
}

// Coefficient of var^e (the var exponent is removed).
TriPoly var_coefficient(const TriPoly& p, int var, uint32_t e) {
    std::vector<std::pair<Monomial, uint16_t>> v;
    for (const TriPoly::Term& t : p.terms()) {
        Monomial m = Monomial::from_key(t.key);
        uint32_t ev = var == 0 ? m.a : var == 1 ? m.b : m.c;
        if (ev != e) continue;
        if (var == 0)
            m.a = 0;
        else if (var == 1)
            m.b = 0;
        else
            m.c = 0;
        v.emplace_back(m, t.coeff);
    }
    return TriPoly(p.context(), std::move(v));
}

Monomial var_monomial(int var, uint32_t e) {
    Monomial m;
    if (var == 0)
        m.a = e;
    else if (var == 1)
        m.b = e;
    else
        m.c = e;
    return m;
}

bool pure_x(const TriPoly& p) { return p.deg_y() <= 0 && p.deg_z() <= 0; }

UniPoly to_unipoly_x(const TriPoly& p) {
    std::vector<uint16_t> c(size_t(std::max(p.deg_x(), 0L)) + 1, 0);
    for (const TriPoly::Term& t : p.terms()) c[key_a(t.key)] = t.coeff;
    return UniPoly(p.context(), std::move(c));
}

TriPoly content_var(const TriPoly& p, int var);

// Pseudo-remainder of a by b in the given variable (characteristic 2, so the
// usual sign bookkeeping disappears).
TriPoly prem_var(const TriPoly& a, const TriPoly& b, int var) {
    long db = deg_var(b, var);
    TriPoly lcb = var_coefficient(b, var, uint32_t(db));
    TriPoly r = a;
    while (!r.is_zero()) {
        long dr = deg_var(r, var);
        if (dr < db) break;
        TriPoly lcr = var_coefficient(r, var, uint32_t(dr));
        r = r * lcb + lcr.mul_monomial(var_monomial(var, uint32_t(dr - db)), 1) * b;
    }
    return r;
}

TriPoly gcd_impl(const TriPoly& q, const TriPoly& p) {
    const FieldContext& ctx = q.context();
    if (q.is_zero()) return p;
    if (p.is_zero()) return q;
    int var;
    if (q.deg_z() > 0 || p.deg_z() > 0)
        var = 2;
    else if (q.deg_y() > 0 || p.deg_y() > 0)
        var = 1;
    else if (pure_x(q) && pure_x(p)) {
        if (q.deg_x() <= 0 || p.deg_x() <= 0)
            return TriPoly::monomial_term(ctx, Monomial{}, 1);  // nonzero scalar: unit
        UniPoly g = uni_gcd(to_unipoly_x(q), to_unipoly_x(p));
        return TriPoly::from_unipoly(g, 0);
    } else {
        var = 0;
    }

    if (deg_var(q, var) == 0 || deg_var(p, var) == 0) {
        // One side is var-free: gcd divides the contents.
        TriPoly cq = deg_var(q, var) == 0 ? q : content_var(q, var);
        TriPoly cp = deg_var(p, var) == 0 ? p : content_var(p, var);
        return gcd_impl(cq, cp);
    }

    TriPoly contq = content_var(q, var), contp = content_var(p, var);
    TriPoly a = q.exact_div(contq), b = p.exact_div(contp);
    if (deg_var(a, var) < deg_var(b, var)) std::swap(a, b);
    while (true) {
        TriPoly r = prem_var(a, b, var);
        if (r.is_zero()) {
            // b (primitive) is the gcd of the primitive parts.
            return b * gcd_impl(contq, contp);
        }
        if (deg_var(r, var) == 0) {
            // Primitive parts are coprime in var.
            return gcd_impl(contq, contp);
        }
        a = b;
        b = r.exact_div(content_var(r, var));
    }
}

TriPoly content_var(const TriPoly& p, int var) {
    long d = deg_var(p, var);
    TriPoly acc(p.context());
    for (long e = 0; e <= d; ++e) {
        TriPoly c = var_coefficient(p, var, uint32_t(e));
        if (c.is_zero()) continue;
        acc = gcd_impl(acc, c);
        if (acc.term_count() == 1 && acc.terms()[0].key == 0) break;  // unit content
    }
    return acc.normalized();
}

}  // namespace

TriPoly trivariate_gcd(const TriPoly& q, const TriPoly& p) {
    if (q.is_zero() && p.is_zero()) throw ZeroPolynomial("gcd of two zero polynomials");
    return gcd_impl(q, p).normalized();
}

// ---------------------------------------------------------------------------
// Roth-Ruckenstein root extraction

namespace {

struct RRContext {
    const FieldContext* F;
    long bound;
    std::vector<uint16_t> prefix;
    std::vector<UniPoly> found;
};

// All shift work is truncated to X-degree < cap; the final acceptance test
// stays exact because deg_X h(X, f(X)) < cap holds for every candidate f.
void rr_recurse(RRContext& rc, std::vector<TriPoly::Term> h, long cap, long depth) {
    const FieldContext& F = *rc.F;
    if (depth == rc.bound) {
        if (cap > 0)
            for (const auto& t : h)
                if (key_b(t.key) == 0) return;  // h(X,0) != 0
        rc.found.emplace_back(F, std::vector<uint16_t>(rc.prefix.begin(), rc.prefix.end()));
        return;
    }
    bool treat_zero = h.empty() || cap <= 0;
    uint32_t min_a = 0;
    if (!treat_zero) {
        min_a = ~uint32_t(0);
        for (const auto& t : h) min_a = std::min(min_a, key_a(t.key));
        if (min_a > 0) {
            for (auto& t : h) t.key -= min_a;
            cap -= long(min_a);
            if (cap <= 0) treat_zero = true;
        }
    }

    // Roots of h(0, Y).
    std::vector<uint16_t> p0;
    if (!treat_zero) {
        for (const auto& t : h)
            if (key_a(t.key) == 0) {
                uint32_t b = key_b(t.key);
                if (p0.size() <= b) p0.resize(b + 1, 0);
                p0[b] = t.coeff;
            }
    }
    for (uint32_t g = 0; g < F.size(); ++g) {
        uint16_t gamma = uint16_t(g);
        if (!treat_zero) {
            uint16_t acc = 0;
            for (size_t i = p0.size(); i-- > 0;) acc = uint16_t(F.mul(acc, gamma) ^ p0[i]);
            if (acc != 0) continue;
        }
        // h(X, X*Y + gamma), truncated to X-degree < cap.
        std::vector<TriPoly::Term> hs;
        if (!treat_zero) {
            hs.reserve(h.size() * 2);
            long dyh = 0;
            for (const auto& t : h) dyh = std::max(dyh, long(key_b(t.key)));
            std::vector<uint16_t> gpow(size_t(dyh) + 1);
            gpow[0] = 1;
            for (long e = 1; e <= dyh; ++e) gpow[size_t(e)] = F.mul(gpow[size_t(e - 1)], gamma);
            for (const auto& t : h) {
                uint32_t a = key_a(t.key), b = key_b(t.key);
                if (gamma == 0) {
                    if (long(a) + b < cap)
                        hs.push_back(TriPoly::Term{make_key(a + b, b, 0), t.coeff});
                    continue;
                }
                uint32_t i = b;
                while (true) {
                    if (long(a) + i < cap) {
                        uint16_t v = F.mul(t.coeff, gpow[b - i]);
                        if (v) hs.push_back(TriPoly::Term{make_key(a + i, i, 0), v});
                    }
                    if (i == 0) break;
                    i = (i - 1) & b;
                }
            }
            sort_combine(hs);
        }
        rc.prefix.push_back(gamma);
        rr_recurse(rc, std::move(hs), cap, depth + 1);
        rc.prefix.pop_back();
    }
}

}  // namespace

std::vector<UniPoly> y_roots(const TriPoly& h, long deg_bound) {
    if (h.is_zero()) throw ZeroPolynomial("root extraction from the zero polynomial");
    if (h.deg_z() > 0) throw std::invalid_argument("y_roots expects a polynomial in X and Y");
    if (deg_bound <= 0) return {};
    long cap = 0;
    for (const TriPoly::Term& t : h.terms())
        cap = std::max(cap, long(key_a(t.key)) + long(key_b(t.key)) * (deg_bound - 1));
    cap += 1;
    RRContext rc{&h.context(), deg_bound, {}, {}};
    std::vector<TriPoly::Term> terms(h.terms().begin(), h.terms().end());
    rr_recurse(rc, std::move(terms), cap, 0);
    std::sort(rc.found.begin(), rc.found.end());
    rc.found.erase(std::unique(rc.found.begin(), rc.found.end()), rc.found.end());
    return rc.found;
}

UniPoly substitute(const TriPoly& p, const UniPoly& f, const UniPoly& g) {
    const FieldContext& ctx = p.context();
    long dy = std::max(p.deg_y(), 0L), dz = std::max(p.deg_z(), 0L);
    std::vector<UniPoly> fp(size_t(dy) + 1, UniPoly(ctx)), gp(size_t(dz) + 1, UniPoly(ctx));
    fp[0] = UniPoly::constant(ctx, 1);
    for (long i = 1; i <= dy; ++i) fp[size_t(i)] = fp[size_t(i - 1)] * f;
    gp[0] = UniPoly::constant(ctx, 1);
    for (long i = 1; i <= dz; ++i) gp[size_t(i)] = gp[size_t(i - 1)] * g;

    UniPoly acc(ctx);
    const auto& ts = p.terms();
    size_t i = 0;
    while (i < ts.size()) {
        uint64_t run = ts[i].key >> 32;
        std::vector<uint16_t> xs;
        while (i < ts.size() && (ts[i].key >> 32) == run) {
            uint32_t a = key_a(ts[i].key);
            if (xs.size() <= a) xs.resize(a + 1, 0);
            xs[a] = ts[i].coeff;
            ++i;
        }
        uint32_t b = uint32_t(run >> 16), c = uint32_t(run & 0xFFFFu);
        acc = acc + UniPoly(ctx, std::move(xs)) * fp[b] * gp[c];
    }
    return acc;
}

}  // namespace ialt
