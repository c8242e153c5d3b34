// Command-line front end: decode one received word, pick multiplicities,
// tabulate radius bounds, or run a simulation campaign.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ialt/bounds.hpp"
#include "ialt/decoder.hpp"
#include "ialt/harness.hpp"
#include "ialt/multiplicity.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<uint8_t> parse_bit_row(const std::string& hex, long n) {
    std::string s = hex;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    std::vector<uint8_t> bits(size_t(n), 0);
    // Hex string encodes a bitmask; bit s of the integer is position s.
    long bit = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        int v = std::isdigit(*it) ? *it - '0' : std::tolower(*it) - 'a' + 10;
        if (v < 0 || v > 15) throw std::runtime_error("bad hex digit in received row");
        for (int k = 0; k < 4; ++k, ++bit)
            if (bit < n) bits[size_t(bit)] = uint8_t((v >> k) & 1);
    }
    return bits;
}

std::string poly_coeffs_hex(const ialt::UniPoly& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (uint16_t c : f.coeffs()) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "0x%x", c);
        arr.push_back(std::string(buf));
    }
    return arr.dump();
}

int cmd_decode(const std::string& code_path, const std::string& received, int m1, int m2,
               bool dump_basis, const std::string& json_out) {
    ialt::CodeSpec spec = ialt::code_from_json_text(read_file(code_path));
    auto comma = received.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("--received wants two comma-separated hex rows");
    ialt::InterleavedWord r;
    r.row1 = parse_bit_row(received.substr(0, comma), spec.n());
    r.row2 = parse_bit_row(received.substr(comma + 1), spec.n());

    ialt::DecoderParams params = ialt::make_decoder_params(spec.n(), spec.k_grs, m1, m2);
    ialt::BasisState st = ialt::init_basis(spec.field(), params);
    st = ialt::interpolate(std::move(st), spec, r, params);
    if (dump_basis) {
        for (size_t j = 0; j < st.polys.size(); ++j)
            std::cerr << "G_" << (j + 1) << ": " << st.polys[j].to_string(st.w) << "\n";
    }
    ialt::DecodeResult res = ialt::recover(st, spec, params);
    if (res.status == ialt::DecodeStatus::Success) {
        // Apply the same post-filter as decode().
        ialt::DecodeResult full = ialt::decode(r, spec, params);
        res = std::move(full);
    }

    nlohmann::json out;
    out["status"] = res.status == ialt::DecodeStatus::Success ? "success" : "failure";
    if (res.tau_hat)
        out["tau_hat"] = {{"num", res.tau_hat->num}, {"den", res.tau_hat->den}};
    else
        out["tau_hat"] = nullptr;
    out["delta_hat"] = res.delta_hat;
    out["raw_list_size"] = res.raw_list.size();
    out["constraints_processed"] = res.constraints_processed;
    out["list"] = nlohmann::json::array();
    for (const ialt::ListEntry& e : res.filtered) {
        nlohmann::json le;
        le["f_coeffs_hex"] = nlohmann::json::parse(poly_coeffs_hex(e.f));
        le["g_coeffs_hex"] = nlohmann::json::parse(poly_coeffs_hex(e.g));
        le["distance"] = e.distance;
        out["list"].push_back(le);
    }
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << text;
    }
    return res.status == ialt::DecodeStatus::Success ? 0 : 1;
}

int cmd_multiplicity(long n, long d, long t, long m_total, const std::string& strategy,
                     int m1_max) {
    if (strategy == "candidate1") {
        ialt::RatioChoice rc = ialt::candidate1_ratio(n, d);
        auto [m1, m2] = ialt::ratio_to_integers(rc.rho, m1_max);
        double delta = ialt::compute_delta(n, n - d + 1, m1, m2);
        std::printf("strategy=candidate1\n");
        std::printf("rho=%.6f sigma=%.6f\n", rc.rho, rc.sigma);
        std::printf("m1=%d m2=%d\n", m1, m2);
        std::printf("radius_eq4=%.6f\n", ialt::radius_theorem1(n, delta, m1, m2));
    } else if (strategy == "candidate2") {
        if (m_total < 1) throw std::runtime_error("--m-total required for candidate2");
        // Symmetric channel: the received symbol per row is irrelevant to the
        // resulting levels; use the all-zero word.
        ialt::InterleavedWord w;
        w.row1.assign(size_t(n), 0);
        w.row2.assign(size_t(n), 0);
        ialt::ReliabilityMatrix pi = ialt::build_reliability(t, n, w);
        ialt::MultiplicityMatrix mm = ialt::assign_multiplicities(pi, m_total);
        auto [m1, m2] = ialt::dominant_levels(mm, w);
        std::printf("strategy=candidate2\n");
        std::printf("m_total=%ld assigned=%ld\n", m_total, mm.total_assigned());
        std::printf("m1=%ld m2=%ld rho=%.6f\n", m1, m2, m1 ? double(m2) / double(m1) : 0.0);
        if (m1 > 0 && m2 < m1) {
            double sigma = ialt::sigma_nu(double(m2) / double(m1), double(d) / double(n)).sigma;
            double delta = ialt::compute_delta(n, n - d + 1, int(m1), int(m2));
            std::printf("sigma=%.6f radius_eq4=%.6f\n", sigma,
                        ialt::radius_theorem1(n, delta, int(m1), int(m2)));
        }
    } else {
        throw std::runtime_error("unknown strategy: " + strategy);
    }
    return 0;
}

int cmd_bounds(long n, long d, const std::string& grid, int m1, int m2) {
    std::printf("dn,gs,kv_binary,johnson_q2,sigma_star,rho_star\n");
    auto emit = [&](double dn_val, long nn, long dd) {
        ialt::ClassicalRadii cr = ialt::classical_radii(nn, dd);
        ialt::RatioChoice rc = ialt::candidate1_ratio(nn, dd);
        std::printf("%.4f,%.6f,%.6f,%.6f,%.6f,%.6f\n", dn_val, cr.gs / nn,
                    cr.kv_binary / nn, cr.johnson_q2 / nn, rc.sigma, rc.rho);
    };
    if (!grid.empty()) {
        double start, stop, step;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
            throw std::runtime_error("--dn-grid wants start:stop:step");
        const long nn = 2000;
        for (double dn = start; dn <= stop + 1e-12; dn += step)
            emit(dn, nn, std::lround(dn * nn));
    } else {
        emit(double(d) / double(n), n, d);
    }
    if (m1 > 0) {
        double delta = ialt::compute_delta(n, n - d + 1, m1, m2);
        std::fprintf(stderr, "# m1=%d m2=%d delta=%.4f radius_eq4=%.4f cost=%lld\n", m1, m2,
                     delta, ialt::radius_theorem1(n, delta, m1, m2),
                     ialt::interpolation_cost(m1, m2, n));
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    ialt::CampaignConfig cfg = ialt::campaign_from_json_text(read_file(config_path));
    ialt::CampaignResult res = ialt::run_campaign(cfg);
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(out_dir + "/results.csv");
        f << ialt::campaign_csv(res);
    }
    {
        std::ofstream f(out_dir + "/summary.json");
        f << ialt::campaign_summary_json(cfg, res);
    }
    for (const ialt::PairSummary& s : res.summaries)
        std::printf("(m1,m2)=(%d,%d): success %.3f, failure %.3f, mean list %.3f\n", s.m1,
                    s.m2, s.success_rate, s.failure_rate, s.mean_filtered);
    std::printf("wrote %s/results.csv and %s/summary.json\n", out_dir.c_str(),
                out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"List decoder for 2-interleaved binary alternant codes"};
    app.require_subcommand(1);

    auto* dec = app.add_subcommand("decode", "decode one received word");
    std::string code_path, received, json_out;
    int m1 = 2, m2 = 1;
    bool dump_basis = false;
    dec->add_option("--code", code_path, "code config JSON")->required();
    dec->add_option("--received", received, "two comma-separated hex bit rows")->required();
    dec->add_option("--m1", m1, "received-point multiplicity")->required();
    dec->add_option("--m2", m2, "side-point multiplicity")->required();
    dec->add_flag("--dump-basis", dump_basis, "print the Groebner basis to stderr");
    dec->add_option("--json-out", json_out, "also write the result JSON here");

    auto* mult = app.add_subcommand("multiplicity", "choose (m1, m2)");
    long mn = 32, md = 13, mt = 10, m_total = 0;
    int m1_max = 8;
    std::string strategy = "candidate1";
    mult->add_option("--n", mn, "code length")->required();
    mult->add_option("--d", md, "designed distance")->required();
    mult->add_option("--t", mt, "error weight (candidate2)");
    mult->add_option("--m-total", m_total, "total multiplicity budget (candidate2)");
    mult->add_option("--strategy", strategy, "candidate1 | candidate2");
    mult->add_option("--m1-max", m1_max, "largest m1 for candidate1 realization");

    auto* bnd = app.add_subcommand("bounds", "emit radius bound CSV");
    long bn = 32, bd = 13;
    int bm1 = 0, bm2 = 0;
    std::string grid;
    bnd->add_option("--n", bn, "code length");
    bnd->add_option("--d", bd, "designed distance");
    bnd->add_option("--dn-grid", grid, "d/n grid start:stop:step");
    bnd->add_option("--m1", bm1, "also report Eq-4 radius for this m1");
    bnd->add_option("--m2", bm2, "and this m2");

    auto* sim = app.add_subcommand("simulate", "run a seeded campaign");
    std::string config_path, out_dir = ".";
    sim->add_option("--config", config_path, "campaign config JSON")->required();
    sim->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) return cmd_decode(code_path, received, m1, m2, dump_basis, json_out);
        if (mult->parsed()) return cmd_multiplicity(mn, md, mt, m_total, strategy, m1_max);
        if (bnd->parsed()) return cmd_bounds(bn, bd, grid, bm1, bm2);
        if (sim->parsed()) return cmd_simulate(config_path, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
