// Seeded Monte-Carlo campaigns over (code, t, m1, m2) grids.  Trials are
// deterministic functions of (base_seed, pair, trial index) and may run on a
// worker pool; aggregation order is fixed by trial index.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ialt/codes.hpp"
#include "ialt/decoder.hpp"

namespace ialt {

struct CampaignConfig {
    CodeSpec code;
    long t = 0;
    std::vector<std::pair<int, int>> pairs;  // (m1, m2)
    long trials = 100;
    uint64_t base_seed = 0;
    bool record_timing = true;    // mean_ms column is 0.000 when off
    bool check_invariants = false;
};

struct TrialRecord {
    uint64_t seed = 0;
    int m1 = 0, m2 = 0;
    DecodeStatus status = DecodeStatus::Failure;
    bool success = false;  // transmitted pair in the filtered list
    size_t raw_size = 0, filtered_size = 0;
    std::optional<Rational> tau_hat;
    long long delta_hat = 0;
    unsigned long long constraints = 0;
    size_t f_roots = 0, g_roots = 0;
    double ms = 0.0;
};

struct PairSummary {
    int m1 = 0, m2 = 0;
    long trials = 0;
    double success_rate = 0.0;
    double failure_rate = 0.0;  // decoding-failure status (distinct from a miss)
    double mean_raw = 0.0;
    double mean_filtered = 0.0;
    double mean_ms = 0.0;
};

struct CampaignResult {
    std::vector<TrialRecord> records;  // grid-major, trial-index order
    std::vector<PairSummary> summaries;
};

uint64_t splitmix64(uint64_t x);
/// Per-trial seed; depends only on (base_seed, m1, m2, index).
uint64_t mix_seed(uint64_t base_seed, int m1, int m2, long trial_index);

TrialRecord run_trial(const CampaignConfig& config, std::pair<int, int> pair, long trial_index,
                      const AlternantBasis& basis);

/// Runs the full grid; worker count from IALT_WORKERS (default: hardware).
CampaignResult run_campaign(const CampaignConfig& config);

/// Fixed-column CSV: m1,m2,m_total,trials,success_rate,failure_rate,
/// mean_raw_list,mean_filtered_list,mean_ms
std::string campaign_csv(const CampaignResult& result);
std::string campaign_summary_json(const CampaignConfig& config, const CampaignResult& result);

/// Parses {m, modulus_hex, n, k_grs, locators?, multipliers?}.
CodeSpec code_from_json_text(const std::string& text);
CampaignConfig campaign_from_json_text(const std::string& text);

}  // namespace ialt
