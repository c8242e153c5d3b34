#include "ialt/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ialt/bounds.hpp"

namespace ialt {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

uint64_t mix_seed(uint64_t base_seed, int m1, int m2, long trial_index) {
    uint64_t s = splitmix64(base_seed);
    s = splitmix64(s ^ (uint64_t(uint32_t(m1)) << 40) ^ (uint64_t(uint32_t(m2)) << 20));
    return splitmix64(s ^ uint64_t(trial_index));
}

namespace {

void check_trial_invariants(const CampaignConfig& cfg, const DecoderParams& params,
                            const BasisState& basis, const SampledCodeword& sent,
                            const DecodeResult& res) {
    const long n = cfg.code.n();
    const long t = cfg.t;
    // Existence bound: the smallest basis element stays within Delta.
    long d1 = basis.polys[0].weighted_degree(basis.w);
    if (double(d1) > params.delta + 1e-9)
        throw std::logic_error("invariant violated: deg_w(G_1) exceeds Delta");
    if (d1 <= params.m1 * (params.k_grs - 1))
        throw std::logic_error("invariant violated: deg_w(G_1) lower bound");
    // Vanishing of low-degree basis elements on the transmitted pair.
    long vanish_below = params.m1 * (n - t) + params.m2 * t;
    for (const TriPoly& g : basis.polys) {
        if (g.weighted_degree(basis.w) >= vanish_below) continue;
        if (!substitute(g, sent.f, sent.g).is_zero())
            throw std::logic_error("invariant violated: G(X, f, g) != 0 below the degree bound");
    }
    double chi = chi_list_bound(n, t, params.k_grs, params.m1, params.m2);
    if (double(res.raw_list.size()) > chi || double(res.f_root_count) > chi ||
        double(res.g_root_count) > chi)
        throw std::logic_error("invariant violated: list size exceeds chi");
}

}  // namespace

TrialRecord run_trial(const CampaignConfig& config, std::pair<int, int> pair, long trial_index,
                      const AlternantBasis& alt_basis) {
    TrialRecord rec;
    rec.m1 = pair.first;
    rec.m2 = pair.second;
    rec.seed = mix_seed(config.base_seed, pair.first, pair.second, trial_index);
    std::mt19937_64 rng(rec.seed);

    SampledCodeword sent = sample_codeword_pair(config.code, alt_basis, rng);
    auto [received, err] = apply_column_errors(sent.word, config.t, rng);

    DecoderParams params =
        make_decoder_params(config.code.n(), config.code.k_grs, pair.first, pair.second);

    auto t0 = std::chrono::steady_clock::now();
    DecodeResult res;
    if (config.check_invariants) {
        BasisState st = init_basis(config.code.field(), params);
        st = interpolate(std::move(st), config.code, received, params);
        res = recover(st, config.code, params);
        if (res.status == DecodeStatus::Success) {
            // Re-run the filter exactly as decode() does.
            DecodeResult full = decode(received, config.code, params);
            check_trial_invariants(config, params, st, sent, full);
            res = std::move(full);
        } else {
            check_trial_invariants(config, params, st, sent, res);
        }
    } else {
        res = decode(received, config.code, params);
    }
    auto t1 = std::chrono::steady_clock::now();

    rec.status = res.status;
    rec.raw_size = res.raw_list.size();
    rec.filtered_size = res.filtered.size();
    rec.tau_hat = res.tau_hat;
    rec.delta_hat = res.delta_hat;
    rec.constraints = res.constraints_processed;
    rec.f_roots = res.f_root_count;
    rec.g_roots = res.g_root_count;
    if (config.record_timing)
        rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    for (const ListEntry& e : res.filtered)
        if (e.f == sent.f && e.g == sent.g) {
            rec.success = true;
            break;
        }
    return rec;
}

CampaignResult run_campaign(const CampaignConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (auto [m1, m2] : config.pairs)
        if (!(0 <= m2 && m2 < m1)) throw BadMultiplicities("need 0 <= m2 < m1");

    AlternantBasis basis = alternant_basis(config.code);

    long workers = 1;
    if (const char* env = std::getenv("IALT_WORKERS"))
        workers = std::max(1L, std::atol(env));
    else
        workers = std::max(1u, std::thread::hardware_concurrency());

    CampaignResult result;
    const long per_pair = config.trials;
    result.records.resize(config.pairs.size() * size_t(per_pair));

    std::atomic<size_t> next{0};
    const size_t total = result.records.size();
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= total) break;
            size_t pair_idx = i / size_t(per_pair);
            long trial = long(i % size_t(per_pair));
            result.records[i] =
                run_trial(config, config.pairs[pair_idx], trial, basis);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (long w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (size_t p = 0; p < config.pairs.size(); ++p) {
        PairSummary s;
        s.m1 = config.pairs[p].first;
        s.m2 = config.pairs[p].second;
        s.trials = per_pair;
        double succ = 0, fail = 0, raw = 0, filt = 0, ms = 0;
        for (long i = 0; i < per_pair; ++i) {
            const TrialRecord& r = result.records[p * size_t(per_pair) + size_t(i)];
            succ += r.success ? 1 : 0;
            fail += r.status == DecodeStatus::Failure ? 1 : 0;
            raw += double(r.raw_size);
            filt += double(r.filtered_size);
            ms += r.ms;
        }
        s.success_rate = succ / double(per_pair);
        s.failure_rate = fail / double(per_pair);
        s.mean_raw = raw / double(per_pair);
        s.mean_filtered = filt / double(per_pair);
        s.mean_ms = ms / double(per_pair);
        result.summaries.push_back(s);
    }
    return result;
}

std::string campaign_csv(const CampaignResult& result) {
    std::ostringstream os;
    os << "m1,m2,m_total,trials,success_rate,failure_rate,mean_raw_list,mean_filtered_list,"
          "mean_ms\n";
    char buf[256];
    for (const PairSummary& s : result.summaries) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%ld,%.6f,%.6f,%.6f,%.6f,%.3f\n", s.m1, s.m2,
                      s.m1 + 3 * s.m2, s.trials, s.success_rate, s.failure_rate, s.mean_raw,
                      s.mean_filtered, s.mean_ms);
        os << buf;
    }
    return os.str();
}

std::string campaign_summary_json(const CampaignConfig& config, const CampaignResult& result) {
    nlohmann::json j;
    j["n"] = config.code.n();
    j["k_grs"] = config.code.k_grs;
    j["m"] = config.code.field().degree();
    j["t"] = config.t;
    j["trials"] = config.trials;
    j["base_seed"] = config.base_seed;
    j["pairs"] = nlohmann::json::array();
    for (size_t p = 0; p < result.summaries.size(); ++p) {
        const PairSummary& s = result.summaries[p];
        nlohmann::json e;
        e["m1"] = s.m1;
        e["m2"] = s.m2;
        e["m_total"] = s.m1 + 3 * s.m2;
        e["success_rate"] = s.success_rate;
        e["failure_rate"] = s.failure_rate;
        e["mean_raw_list"] = s.mean_raw;
        e["mean_filtered_list"] = s.mean_filtered;
        e["mean_ms"] = s.mean_ms;
        j["pairs"].push_back(e);
    }
    return j.dump(2) + "\n";
}

namespace {

uint32_t parse_hex(const nlohmann::json& v) {
    if (v.is_number_unsigned() || v.is_number_integer()) return v.get<uint32_t>();
    std::string s = v.get<std::string>();
    return uint32_t(std::stoul(s, nullptr, 16));
}

}  // namespace

CodeSpec code_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int m = j.at("m").get<int>();
    uint32_t modulus = j.contains("modulus_hex") ? parse_hex(j["modulus_hex"])
                                                 : default_modulus(m);
    auto ctx = std::make_shared<const FieldContext>(m, modulus);
    long n = j.at("n").get<long>();
    long k = j.at("k_grs").get<long>();
    if (!j.contains("locators") && !j.contains("multipliers"))
        return make_default_code(ctx, n, k);

    std::vector<uint16_t> S, B;
    if (j.contains("locators"))
        for (const auto& v : j["locators"]) S.push_back(uint16_t(parse_hex(v)));
    else {
        CodeSpec d = make_default_code(ctx, n, k);
        S = d.locators;
    }
    if (j.contains("multipliers"))
        for (const auto& v : j["multipliers"]) B.push_back(uint16_t(parse_hex(v)));
    else
        B.assign(size_t(n), 1);
    return make_code(ctx, std::move(S), std::move(B), k);
}

CampaignConfig campaign_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CampaignConfig cfg;
    cfg.code = code_from_json_text(j.at("code").dump());
    cfg.t = j.at("t").get<long>();
    cfg.trials = j.value("trials", 100L);
    cfg.base_seed = j.value("base_seed", uint64_t(0));
    cfg.record_timing = j.value("record_timing", true);
    cfg.check_invariants = j.value("check_invariants", false);
    if (j.contains("pairs")) {
        for (const auto& p : j["pairs"])
            cfg.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }
    if (cfg.pairs.empty()) throw std::invalid_argument("campaign config lists no (m1,m2) pairs");
    return cfg;
}

}  // namespace ialt
