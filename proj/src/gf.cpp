#include "ialt/gf.hpp"

#include <map>
#include <mutex>
#include <memory>

namespace ialt {

namespace {

// Carry-less multiply-and-reduce over GF(2)[X]/(modulus), table-free.
// Used only while constructing the tables.
uint32_t clmul_mod(uint32_t a, uint32_t b, uint32_t modulus, int m) {
    uint64_t acc = 0;
    uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    // reduce
    for (int d = 63; d >= m; --d) {
        if (acc >> d & 1) acc ^= uint64_t(modulus) << (d - m);
    }
    return uint32_t(acc);
}

int poly2_degree(uint64_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

uint64_t poly2_mod(uint64_t a, uint64_t b) {
    int db = poly2_degree(b);
    int da = poly2_degree(a);
    while (da >= db) {
        a ^= b << (da - db);
        da = poly2_degree(a);
    }
    return a;
}

bool poly2_irreducible(uint32_t p, int m) {
    if (m <= 0) return false;
    if ((p & 1) == 0) return false;  // divisible by X
    for (int d = 1; 2 * d <= m; ++d) {
        for (uint64_t q = uint64_t(1) << d; q < (uint64_t(1) << (d + 1)); ++q) {
            if (poly2_mod(p, q) == 0) return false;
        }
    }
    return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> fs;
    for (uint32_t p = 2; uint64_t(p) * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

uint32_t default_modulus(int m) {
    static const uint32_t table[17] = {
        0,       0x3,    0x7,    0xB,    0x13,   0x25,    0x43,   0x89,  0x11D,
        0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443,  0x8003, 0x1100B};
    if (m < 1 || m > 16) throw DegreeMismatch("no default modulus for m=" + std::to_string(m));
    return table[m];
}

FieldContext::FieldContext(int m, uint32_t modulus) : m_(m), modulus_(modulus) {
    if (m < 1 || m > 16) throw DegreeMismatch("extension degree out of range: " + std::to_string(m));
    if (poly2_degree(modulus) != m)
        throw DegreeMismatch("modulus degree does not match m");
    if (!poly2_irreducible(modulus, m))
        throw ReducibleModulus("modulus is reducible over GF(2)");

    order_ = size() - 1;
    log_.assign(size(), 0);
    exp_.assign(2 * size_t(order_), 0);

    // Find a generator of the multiplicative group.
    auto factors = prime_factors(order_);
    generator_ = 0;
    for (uint32_t g = 2; g < size(); ++g) {
        bool ok = true;
        for (uint32_t p : factors) {
            uint32_t e = order_ / p;
            uint32_t acc = 1, base = g;
            while (e) {
                if (e & 1) acc = clmul_mod(acc, base, modulus_, m_);
                base = clmul_mod(base, base, modulus_, m_);
                e >>= 1;
            }
            if (acc == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            generator_ = uint16_t(g);
            break;
        }
    }
    if (generator_ == 0) generator_ = 1;  // m == 1: trivial group

    uint32_t v = 1;
    for (uint32_t i = 0; i < order_; ++i) {
        exp_[i] = uint16_t(v);
        exp_[i + order_] = uint16_t(v);
        log_[v] = i;
        v = clmul_mod(v, generator_, modulus_, m_);
    }
    if (v != 1) throw ReducibleModulus("generator order check failed");
}

uint16_t FieldContext::pow(uint16_t a, long long e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    uint64_t r = uint64_t(e) % order_;
    return exp_[(uint64_t(log_[a]) * r) % order_];
}

FieldContext make_field(int m, uint32_t modulus) { return FieldContext(m, modulus); }

SubfieldEmbedding::SubfieldEmbedding(const FieldContext& base, const FieldContext& ext)
    : base_(&base), ext_(&ext) {
    if (ext.degree() % base.degree() != 0)
        throw DegreeMismatch("extension degree is not a multiple of base degree");
    // Root of the base modulus inside the extension.
    uint32_t pi = base.modulus();
    uint16_t root = 0;
    bool found = false;
    for (uint32_t t = 0; t < ext.size(); ++t) {
        uint16_t acc = 0;
        // Horner over the bits of pi, high to low.
        for (int d = base.degree(); d >= 0; --d) {
            acc = ext.mul(acc, uint16_t(t));
            if (pi >> d & 1) acc ^= 1;
        }
        if (acc == 0) {
            root = uint16_t(t);
            found = true;
            break;
        }
    }
    if (!found) throw ReducibleModulus("base modulus has no root in extension");

    fwd_.assign(base.size(), 0);
    inv_.assign(ext.size(), -1);
    std::vector<uint16_t> pw(base.degree());
    uint16_t p = 1;
    for (int i = 0; i < base.degree(); ++i) {
        pw[i] = p;
        p = ext.mul(p, root);
    }
    for (uint32_t a = 0; a < base.size(); ++a) {
        uint16_t v = 0;
        for (int i = 0; i < base.degree(); ++i)
            if (a >> i & 1) v ^= pw[i];
        fwd_[a] = v;
        inv_[v] = int32_t(a);
    }
}

namespace {
std::mutex g_cache_mutex;
std::map<std::pair<int, uint32_t>, std::unique_ptr<FieldContext>> g_field_cache;
std::map<std::pair<const FieldContext*, const FieldContext*>,
         std::unique_ptr<SubfieldEmbedding>>
    g_embed_cache;
}  // namespace

const FieldContext* shared_field(int m, uint32_t modulus) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto key = std::make_pair(m, modulus);
    auto it = g_field_cache.find(key);
    if (it == g_field_cache.end())
        it = g_field_cache.emplace(key, std::make_unique<FieldContext>(m, modulus)).first;
    return it->second.get();
}

const SubfieldEmbedding* shared_embedding(const FieldContext& base, const FieldContext& ext) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto key = std::make_pair(&base, &ext);
    auto it = g_embed_cache.find(key);
    if (it == g_embed_cache.end())
        it = g_embed_cache.emplace(key, std::make_unique<SubfieldEmbedding>(base, ext)).first;
    return it->second.get();
}

}  // namespace ialt
