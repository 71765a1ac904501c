#include "sturmspec/bandtype.hpp"
#include "sturmspec/ids.hpp"
#include "sturmspec/spectree.hpp"
#include "sturmspec/verify.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace sturmspec;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_out(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open " + out);
    f << text;
}

std::string cf_str(const std::vector<long long>& tail) {
    std::string s;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(tail[i]);
    }
    return s;
}

struct AlphaOpts {
    std::string cf, rat, preset;
    std::vector<long long> resolve(int depth = 24) const {
        int given = (!cf.empty()) + (!rat.empty()) + (!preset.empty());
        if (given != 1) throw MalformedDigits("give exactly one of --cf / --rat / --preset");
        if (!cf.empty()) return parse_alpha("cf:" + cf, depth);
        if (!rat.empty()) return parse_alpha("rat:" + rat, depth);
        return parse_alpha(preset, depth);
    }
};

void add_alpha_opts(CLI::App* cmd, AlphaOpts& a) {
    cmd->add_option("--cf", a.cf, "continued fraction digits, e.g. 1,1,2");
    cmd->add_option("--rat", a.rat, "rational alpha p/q");
    cmd->add_option("--preset", a.preset, "golden | silver");
}

std::vector<double> parse_grid(const std::string& s) {
    // a:b:n
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw MalformedDigits("V grid must be a:b:n");
    const double a = std::stod(s.substr(0, c1));
    const double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(s.substr(c2 + 1));
    std::vector<double> grid;
    for (int i = 0; i < n; ++i)
        grid.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return grid;
}

int cmd_bands(const AlphaOpts& a, double V, bool exact, const std::string& format,
              const std::string& out) {
    const auto tail = a.resolve();
    const ContFrac c = ContFrac::from_tail(tail);
    BandScanOptions opt;
    opt.exact = exact;
    BandSet bs = spectrum_bands(c, V, opt);
    classify_bands(c, bs);
    std::string text;
    if (format == "csv") {
        text = "cf,V,index,left,right,theta_left,theta_right,type\n";
        for (const Band& b : bs.bands)
            text += "\"" + cf_str(tail) + "\"," + fmt(V) + "," + std::to_string(b.index) +
                    "," + fmt(b.left) + "," + fmt(b.right) + "," +
                    (b.theta_left ? "pi" : "0") + "," + (b.theta_right ? "pi" : "0") + "," +
                    b.type + "\n";
    } else {
        for (const Band& b : bs.bands) text += band_record_json(c, V, b) + "\n";
    }
    write_out(text, out);
    return 0;
}

int cmd_butterfly(const AlphaOpts& a, const std::string& vgrid, int depth,
                  const std::string& format, const std::string& out) {
    const auto tail = a.resolve(std::max(depth, 1));
    const auto grid = parse_grid(vgrid);
    struct Row {
        std::string cf;
        double V, left, right;
        char type;
    };
    std::vector<std::vector<Row>> per_v(grid.size());
    std::vector<std::thread> pool;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> cursor{0};
    for (unsigned t = 0; t < std::min<std::size_t>(hw, grid.size()); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = cursor++; i < grid.size(); i = cursor++) {
                for (int k = 1; k <= depth && k <= static_cast<int>(tail.size()); ++k) {
                    const std::vector<long long> trunc(tail.begin(), tail.begin() + k);
                    const ContFrac c = ContFrac::from_tail(trunc);
                    BandSet bs = spectrum_bands(c, grid[i]);
                    classify_bands(c, bs);
                    for (const Band& b : bs.bands)
                        per_v[i].push_back({cf_str(trunc), grid[i], b.left, b.right, b.type});
                }
            }
        });
    for (auto& th : pool) th.join();

    std::string text;
    if (format == "svg") {
        double emin = -2, emax = 2;
        for (const auto& rows : per_v)
            for (const auto& r : rows) {
                emin = std::min(emin, r.left);
                emax = std::max(emax, r.right);
            }
        const double W = 900, H = 600, pad = 20;
        auto xmap = [&](double e) { return pad + (e - emin) / (emax - emin) * (W - 2 * pad); };
        text = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" +
               fmt(H) + "\">\n";
        const double rh = (H - 2 * pad) / std::max<std::size_t>(grid.size(), 1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (const auto& r : per_v[i]) {
                const double x = xmap(r.left);
                const double w = std::max(0.5, xmap(r.right) - x);
                text += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(pad + i * rh) + "\" width=\"" +
                        fmt(w) + "\" height=\"" + fmt(std::max(1.0, rh - 1)) + "\" fill=\"" +
                        (r.type == 'B' ? "#d33" : "#36c") + "\"/>\n";
            }
        }
        text += "</svg>\n";
    } else {
        text = "cf,V,left,right,type\n";
        for (const auto& rows : per_v)
            for (const auto& r : rows)
                text += "\"" + r.cf + "\"," + fmt(r.V) + "," + fmt(r.left) + "," +
                        fmt(r.right) + "," + r.type + "\n";
    }
    write_out(text, out);
    return 0;
}

int cmd_verify(const std::string& suite, const verify::Params& p, const std::string& out) {
    std::vector<verify::SuiteResult> results;
    if (suite == "all") {
        results = verify::run_all(p);
    } else {
        results.push_back(verify::run_suite(suite, p));
    }
    bool pass = true;
    for (const auto& r : results) {
        std::printf("[%s] %-12s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.empty() ? "" : " ", r.detail.c_str());
        pass = pass && r.pass;
    }
    if (!out.empty() && suite == "dry-tmp") {
        const auto tail = parse_alpha("golden", p.k + 2);
        write_out(gaps_csv(tail, p.k, p.V), out);
    }
    return pass ? 0 : 1;
}

int cmd_tree(const AlphaOpts& a, int depth, const std::string& format, const std::string& out) {
    const auto tail = a.resolve(std::max(depth, 1));
    const SpectralTree tree(std::vector<long long>(tail.begin(),
                                                   tail.begin() + std::min<std::size_t>(
                                                                      tail.size(), depth)),
                            depth);
    write_out(format == "dot" ? tree.to_dot() : tree.to_json(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra of Sturmian Hamiltonians and their periodic approximants"};
    app.require_subcommand(1);

    AlphaOpts a_bands, a_butter, a_tree;
    double V = 1.0;
    bool exact = false;
    std::string format = "json", out, vgrid = "0.2:8:40";
    int depth = 6;
    verify::Params vp;
    std::string suite = "all";

    auto* bands = app.add_subcommand("bands", "spectral bands of one approximant");
    add_alpha_opts(bands, a_bands);
    bands->add_option("--V", V, "coupling constant");
    bands->add_flag("--exact", exact, "Sturm-chain exact edge isolation");
    bands->add_option("--format", format, "json | csv");
    bands->add_option("--out", out, "output file (default stdout)");

    auto* butter = app.add_subcommand("butterfly", "Kohmoto butterfly sweep");
    add_alpha_opts(butter, a_butter);
    butter->add_option("--V-grid", vgrid, "V grid a:b:n");
    butter->add_option("--depth", depth, "approximant levels");
    butter->add_option("--format", format, "csv | svg");
    butter->add_option("--out", out, "output file");

    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("suite", suite,
                    "all | traces | edges | fricke | bands | dichotomy | duality | tree | "
                    "interlacing | ids | dry-tmp | mirror | ladder | words");
    ver->add_option("--V", vp.V, "dry-tmp coupling");
    ver->add_option("--k", vp.k, "dry-tmp level");
    ver->add_option("--L", vp.L, "dry-tmp label range");
    ver->add_option("--out", out, "gap table CSV (dry-tmp)");

    auto* tr = app.add_subcommand("tree", "spectral alpha-tree export");
    add_alpha_opts(tr, a_tree);
    tr->add_option("--depth", depth, "tree depth");
    tr->add_option("--format", format, "json | dot");
    tr->add_option("--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bands->parsed()) return cmd_bands(a_bands, V, exact, format, out);
        if (butter->parsed()) return cmd_butterfly(a_butter, vgrid, depth, format, out);
        if (ver->parsed()) {
            bool known = suite == "all";
            for (const auto& n : verify::suite_names()) known = known || n == suite;
            if (!known) {
                std::cerr << "unknown suite: " << suite << "\n";
                return 2;
            }
            return cmd_verify(suite, vp, out);
        }
        if (tr->parsed()) return cmd_tree(a_tree, depth, format == "json" ? "json" : format, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
