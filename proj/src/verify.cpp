#include "sturmspec/verify.hpp"

#include "sturmspec/bandtype.hpp"
#include "sturmspec/ids.hpp"
#include "sturmspec/interlace.hpp"
#include "sturmspec/spectree.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace sturmspec::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<long long> repeat_digits(long long d, int n) {
    return std::vector<long long>(n, d);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(hw, count); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() < 4000) detail << what << "; ";
        }
    }
};

// ---- criterion 1: closed-form trace polynomials --------------------------
SuiteResult suite_traces(const Params&) {
    Checker ck;
    for (long long vi : {1LL, 3LL}) {
        const Rational V(vi);
        auto expect_poly = [&](const ContFrac& c, const Poly& want, const std::string& name) {
            ck.expect(poly_equal(trace_poly(c, V).coeffs, want),
                      name + " mismatch at V=" + std::to_string(vi));
        };
        const Rational v = V;
        expect_poly(ContFrac::from_digits({0}), {Rational(2)}, "t_[0]");
        expect_poly(ContFrac::from_digits({0, 0, 0}), {Rational(2)}, "t_[0,0,0]");
        expect_poly(ContFrac::from_digits({0, 0, 1, -1}), {Rational(2)}, "t_[0,0,1,-1]");
        expect_poly(ContFrac::from_digits({0, 0}), {Rational(0), Rational(1)}, "t_[0,0]");
        expect_poly(ContFrac::from_digits({0, 0, -1}), {v, Rational(1)}, "t_[0,0,-1]");
        expect_poly(ContFrac::from_digits({0, 0, 1}), {-v, Rational(1)}, "t_[0,0,1]");
        expect_poly(ContFrac::from_digits({0, 0, 2}), {Rational(-2), -v, Rational(1)},
                    "t_[0,0,2]");
        expect_poly(ContFrac::from_digits({0, 0, 1, 2}),
                    {2 * v, v * v - 3, -2 * v, Rational(1)}, "t_[0,0,1,2]");
        expect_poly(ContFrac::from_digits({0, 0, 3}), {v, Rational(-3), -v, Rational(1)},
                    "t_[0,0,3]");
    }
    return {"traces", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 2: closed-form band edges ----------------------------------
SuiteResult suite_edges(const Params&) {
    Checker ck;
    for (double V : {0.5, 1.0, 2.0, 5.0}) {
        const double e0 = V / 2 - std::sqrt(V * V / 4 + 4);
        const double e3 = V / 2 + std::sqrt(V * V / 4 + 4);
        const double e4 = (V - 1) / 2 - std::sqrt(V * V + 2 * V + 9) / 2;
        const double e6 = (V + 1) / 2 - std::sqrt(V * V - 2 * V + 9) / 2;
        const double e8 = (V - 1) / 2 + std::sqrt(V * V + 2 * V + 9) / 2;
        const double e9 = (V + 1) / 2 + std::sqrt(V * V - 2 * V + 9) / 2;
        const double want2[4] = {e0, 0.0, V, e3};
        const double want3[6] = {e4, -1.0, e6, 1.0, e8, e9};

        const BandSet b2 = spectrum_bands(ContFrac::from_digits({0, 0, 2}), V);
        const BandSet b3 = spectrum_bands(ContFrac::from_digits({0, 0, 2, 1}), V);
        ck.expect(b2.bands.size() == 2 && b3.bands.size() == 3, "band counts");
        const double got2[4] = {b2.bands[0].left, b2.bands[0].right, b2.bands[1].left,
                                b2.bands[1].right};
        const double got3[6] = {b3.bands[0].left, b3.bands[0].right, b3.bands[1].left,
                                b3.bands[1].right, b3.bands[2].left, b3.bands[2].right};
        for (int i = 0; i < 4; ++i)
            ck.expect(std::fabs(got2[i] - want2[i]) < 1e-10,
                      "E_" + std::to_string(i) + " at V=" + std::to_string(V));
        for (int i = 0; i < 6; ++i)
            ck.expect(std::fabs(got3[i] - want3[i]) < 1e-10,
                      "E_" + std::to_string(4 + i) + " at V=" + std::to_string(V));
    }
    return {"edges", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 3: Fricke-Vogt ---------------------------------------------
SuiteResult suite_fricke(const Params&) {
    Checker ck;
    std::mt19937 rng(20260811);
    auto rand_cf = [&](int kmax, long long qcap) {
        while (true) {
            const int k = 1 + static_cast<int>(rng() % kmax);
            std::vector<long long> tail(k);
            for (auto& d : tail) d = 1 + rng() % 4;
            const ContFrac c = ContFrac::from_tail(tail);
            const Phi phi = evaluate(c);
            if (!phi.degenerate && den(phi.value) <= qcap) return c;
        }
    };
    std::atomic<int> bad{0};
    std::vector<std::tuple<ContFrac, long long, double, double>> cases;
    for (int i = 0; i < 1000; ++i) {
        const ContFrac c = rand_cf(8, 400);
        const long long n = rng() % 4;
        std::uniform_real_distribution<double> ve(0.01, 8.0);
        const double V = ve(rng);
        std::uniform_real_distribution<double> ee(-(3.0 + V), 3.0 + V);
        cases.emplace_back(c, n, ee(rng), V);
    }
    parallel_for(cases.size(), [&](std::size_t i) {
        const auto& [c, n, E, V] = cases[i];
        if (std::fabs(fricke_vogt_residual(c, n, E, V)) >= 1e-8) ++bad;
    });
    ck.expect(bad == 0, std::to_string(bad.load()) + " float residuals above 1e-8");
    for (int i = 0; i < 50; ++i) {
        const ContFrac c = rand_cf(5, 60);
        const long long n = rng() % 3;
        const Rational E(static_cast<long long>(rng() % 1000) - 500, 100);
        const Rational V(1 + static_cast<long long>(rng() % 70), 10);
        ck.expect(fricke_vogt_residual_exact(c, n, E, V) == 0,
                  "exact residual nonzero for " + c.str());
    }
    return {"fricke", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 4: band count & disjointness -------------------------------
SuiteResult suite_bands(const Params&) {
    Checker ck;
    std::mutex mx;
    struct Task { long long digit; int k; double V; };
    std::vector<Task> tasks;
    for (long long d : {1LL, 2LL})
        for (int k = 1; k <= 10; ++k)
            for (double V : {0.3, 1.0, 4.5}) tasks.push_back({d, k, V});
    parallel_for(tasks.size(), [&](std::size_t i) {
        const auto [d, k, V] = tasks[i];
        const auto tail = repeat_digits(d, k);
        const long long qk = convergent(tail, k).second.convert_to<long long>();
        const BandSet bs = spectrum_bands(ContFrac::from_tail(tail), V);
        std::ostringstream what;
        bool ok = static_cast<long long>(bs.bands.size()) == qk;
        for (std::size_t j = 0; ok && j + 1 < bs.bands.size(); ++j)
            if (!(bs.bands[j + 1].left - bs.bands[j].right > 1e-9)) ok = false;
        if (!ok) {
            std::lock_guard lock(mx);
            ck.expect(false, "family " + std::to_string(d) + " k=" + std::to_string(k) +
                                 " V=" + std::to_string(V));
        }
    });
    return {"bands", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 5: A/B dichotomy & stability -------------------------------
SuiteResult suite_dichotomy(const Params&) {
    Checker ck;
    const std::vector<double> grid = {0.5, 1.0, 2.0, 3.0, 4.5, 8.0};
    for (int k = 1; k <= 8; ++k) {
        const auto tail = repeat_digits(1, k);
        const long long qk = convergent(tail, k).second.convert_to<long long>();
        const long long qk1 = convergent(tail, k - 1).second.convert_to<long long>();
        try {
            const auto reports = classify(ContFrac::from_tail(tail), grid);
            long long na = 0, nb = 0;
            for (const auto& r : reports) (r.final == 'A' ? na : nb)++;
            ck.expect(na == qk - qk1 && nb == qk1,
                      "type counts at k=" + std::to_string(k));
        } catch (const std::exception& e) {
            ck.expect(false, std::string("classification unstable: ") + e.what());
        }
    }
    return {"dichotomy", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 6: duality --------------------------------------------------
SuiteResult suite_duality(const Params&) {
    Checker ck;
    std::vector<std::pair<std::vector<long long>, long long>> samples;
    for (long long m : {2LL, 3LL, 4LL}) {
        samples.push_back({{}, m});
        samples.push_back({{1}, m});
        samples.push_back({{2}, m});
        samples.push_back({{1, 2}, m});
        samples.push_back({{1, 1}, m});
        samples.push_back({{2, 1}, m});
    }
    samples.push_back({{1, 1, 1}, 2});
    samples.push_back({{3}, 2});
    int done = 0;
    for (const auto& [base, m] : samples) {
        if (done >= 20) break;
        ++done;
        const ContFrac c = ContFrac::from_tail(base);
        const ContFrac cm = c.extended(m);
        const ContFrac cm11 = c.extended(m - 1).extended(1);
        ck.expect(poly_equal(trace_poly(cm, Rational(1)).coeffs,
                             trace_poly(cm11, Rational(1)).coeffs),
                  "trace polynomial duality for " + cm.str());
        for (double V : {1.0, 3.0}) {
            const BandSet a = spectrum_bands(cm, V);
            const BandSet b = spectrum_bands(cm11, V);
            ck.expect(a.bands.size() == b.bands.size(), "band count " + cm.str());
            for (std::size_t j = 0; j < a.bands.size(); ++j) {
                ck.expect(std::fabs(a.bands[j].left - b.bands[j].left) < 1e-10 &&
                              std::fabs(a.bands[j].right - b.bands[j].right) < 1e-10,
                          "edge mismatch " + cm.str());
            }
            const auto ta = classify(cm, {V});
            const auto tb = classify(cm11, {V});
            for (std::size_t j = 0; j < ta.size(); ++j)
                ck.expect(ta[j].final != tb[j].final,
                          "types not swapped for " + cm.str() + " band " + std::to_string(j));
        }
    }
    return {"duality", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 7: tree bijection -------------------------------------------
SuiteResult suite_tree(const Params&) {
    Checker ck;
    const SpectralTree tree(repeat_digits(1, 9), 8);
    for (double V : {1.0, 5.0}) {
        // bijection level-by-level: counts match
        for (int k = 0; k <= 8; ++k) {
            const BandSet& bs = tree.level_bands(k, V);
            long long na = 0, nb = 0, va = 0, vb = 0;
            for (const Band& b : bs.bands) (b.type == 'A' ? na : nb)++;
            for (int id : tree.level(k))
                (tree.vertex(id).label == 'A' ? va : vb)++;
            ck.expect(na == va && nb == vb, "psi level counts k=" + std::to_string(k));
        }
        // edge inclusion
        for (std::size_t id = 0; id < tree.vertex_count(); ++id) {
            const auto& v = tree.vertex(static_cast<int>(id));
            if (v.parent < 0) continue;
            const Band child = tree.psi(v.id, V);
            const Band parent = tree.psi(v.parent, V);
            ck.expect(parent.left < child.left && child.right < parent.right,
                      "edge inclusion at vertex " + std::to_string(id));
        }
        // adjacent-level order preservation
        for (int k = -1; k <= 8; ++k) {
            for (int dk = 0; dk <= 1; ++dk) {
                if (k + dk > 8) continue;
                for (int id1 : tree.level(k)) {
                    for (int id2 : tree.level(k + dk)) {
                        if (id1 == id2) continue;
                        // skip ancestor pairs (prec undefined along directed paths)
                        if (dk != 0) {
                            const auto& lo = tree.vertex(id2);
                            if (lo.parent == id1) continue;
                        }
                        const auto p1 = [&] {
                            BoundaryPath p;
                            int cur = id1;
                            while (tree.vertex(cur).parent >= 0) {
                                p.insert(p.begin(), tree.vertex(cur).slot);
                                cur = tree.vertex(cur).parent;
                            }
                            return p;
                        }();
                        const auto p2 = [&] {
                            BoundaryPath p;
                            int cur = id2;
                            while (tree.vertex(cur).parent >= 0) {
                                p.insert(p.begin(), tree.vertex(cur).slot);
                                cur = tree.vertex(cur).parent;
                            }
                            return p;
                        }();
                        // prefix pairs are ancestor related: skip
                        const std::size_t pl = std::min(p1.size(), p2.size());
                        if (std::equal(p1.begin(), p1.begin() + pl, p2.begin())) continue;
                        if (compare_paths(p1, p2) != PathOrder::less) continue;
                        const Band b1 = tree.psi(id1, V);
                        const Band b2 = tree.psi(id2, V);
                        ck.expect(b1.left < b2.left && b1.right < b2.right,
                                  "order preservation " + std::to_string(id1) + "<" +
                                      std::to_string(id2));
                    }
                }
            }
        }
    }
    // two-level counterexample for digits starting 1,2
    {
        const SpectralTree t12({1, 2}, 2);
        const int u = t12.level(0).front();
        int w = -1;
        for (int id : t12.level(2))
            if (t12.vertex(id).label == 'A') { w = id; break; }
        ck.expect(w >= 0, "counterexample vertex missing");
        const Band bu = t12.psi(u, 1.0);
        const Band bw = t12.psi(w, 1.0);
        ck.expect(bu.left < bw.left && bw.right < bu.right,
                  "counterexample: psi(w) not strictly inside psi(u)");
        ck.expect(!(bu.left < bw.left && bu.right < bw.right) ||
                      (bw.left > bu.left && bw.right < bu.right),
                  "counterexample shape");
    }
    return {"tree", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 8: interlacing ----------------------------------------------
SuiteResult suite_interlacing(const Params&) {
    Checker ck;
    std::mt19937 rng(424242);
    struct Inst {
        ContFrac c;
        long long m, n;
        double V, tc, tcm, tcmn;
    };
    std::vector<Inst> insts;
    const double vs[3] = {0.5, 1.0, 5.0};
    while (insts.size() < 200) {
        const int k = 1 + rng() % 3;
        std::vector<long long> tail(k);
        for (auto& d : tail) d = 1 + rng() % 3;
        const ContFrac c = ContFrac::from_tail(tail);
        const Phi phi = evaluate(c);
        if (phi.degenerate) continue;
        const long long m = 1 + rng() % 3, n = 1 + rng() % 3;
        const long long q1 = den(phi.value).convert_to<long long>();
        const long long q2 =
            den(evaluate(c.extended(m)).value).convert_to<long long>();
        const long long q3 = n * q2 + q1;
        if (q3 > 60 || q1 < 2 || n * q2 < 2) continue;
        const double tc = (rng() % 2) * kPi, tcm = (rng() % 2) * kPi;
        const double tcmn = std::fabs(std::remainder(tc + tcm, 2 * kPi));
        insts.push_back({c, m, n, vs[rng() % 3], tc, tcm, tcmn});
    }
    std::mutex mx;
    parallel_for(insts.size(), [&](std::size_t i) {
        const auto& in = insts[i];
        std::string what;
        try {
            const auto d = rank2_decomposition(in.c, in.m, in.n, in.V, in.tc, in.tcm, in.tcmn);
            if (d.residual >= 1e-10) what += "residual ";
            if (std::fabs(d.trace) >= 1e-10) what += "trace ";
            if (d.third_singular >= 1e-10) what += "rank ";
            if (!d.orthogonality_forces_zero) what += "orthogonality ";
            const auto rep = interlacing_check(in.c, in.m, in.n, in.V, in.tc, in.tcm, in.tcmn);
            if (!rep.holds) what += "interlacing ";
            if (!rep.strict_ok) what += "strictness ";
        } catch (const std::exception& e) {
            what += e.what();
        }
        if (!what.empty()) {
            std::lock_guard lock(mx);
            ck.expect(false, what + "at " + in.c.str() + " m=" + std::to_string(in.m) +
                                 " n=" + std::to_string(in.n));
        }
    });
    return {"interlacing", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 9: IDS consistency ------------------------------------------
SuiteResult suite_ids(const Params&) {
    Checker ck;
    const auto tail = repeat_digits(1, 16);
    const long long q10 = convergent(tail, 10).second.convert_to<long long>();
    const long long n = convergent(tail, 14).second.convert_to<long long>();
    const double tol = 2.0 / static_cast<double>(q10);
    std::vector<BoundaryPath> paths;
    for (unsigned seed = 1; paths.size() < 10; ++seed) {
        BoundaryPath p = sample_boundary_path(tail, seed, 14);
        int level = -1;
        // keep only paths reaching depth >= 12
        {
            int lv = -1;
            char lb = 'R';
            for (int s : p) {
                if (lb == 'R') { lv = s == 0 ? 0 : 1; lb = s == 0 ? 'A' : 'B'; }
                else if (s % 2 == 1) { lv += 1; lb = 'A'; }
                else { lv += 2; lb = 'B'; }
            }
            level = lv;
        }
        if (level < 12) continue;
        paths.push_back(std::move(p));
    }
    std::mutex mx;
    parallel_for(paths.size() * 2, [&](std::size_t i) {
        const double V = (i % 2) ? 5.0 : 1.0;
        const auto& p = paths[i / 2];
        const auto np = ids_path(tail, p);
        const double E = energy_value(boundary_energy(tail, p, V, 1e-10));
        const double nb = ids_bruteforce(tail, V, E, n);
        if (!(std::fabs(np.value - nb) <= tol)) {
            std::lock_guard lock(mx);
            ck.expect(false, "path " + path_str(p) + " V=" + std::to_string(V) +
                                 " |" + std::to_string(np.value) + "-" +
                                 std::to_string(nb) + "|");
        }
    });
    return {"ids", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 10: dry ten martini at desk scale ----------------------------
SuiteResult suite_dry_tmp(const Params& p) {
    Checker ck;
    const auto tail = repeat_digits(1, p.k + 2);
    std::map<double, std::set<long long>> labels;
    for (double V : {1.0, 5.0}) {
        const auto rep = dry_tmp_verify(tail, p.k, V, p.L);
        ck.expect(rep.all_labels_matched, "unmatched gap label at V=" + std::to_string(V));
        ck.expect(rep.every_l_realized, "missing labels at V=" + std::to_string(V));
        std::set<long long> ls;
        for (const auto& g : rep.gap_list)
            if (g.l && std::llabs(*g.l) <= p.L) ls.insert(*g.l);
        labels[V] = std::move(ls);
    }
    ck.expect(labels[1.0] == labels[5.0], "label sets differ across V");
    return {"dry-tmp", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 11: negative-V mirror ----------------------------------------
SuiteResult suite_mirror(const Params&) {
    Checker ck;
    const auto tail = repeat_digits(1, 10);
    const auto rep = negative_v_check(tail, 6, 1.0);
    ck.expect(rep.band_mirror,
              "band mirror error " + std::to_string(rep.max_mirror_error));
    ck.expect(rep.ids_complement,
              "ids complement error " + std::to_string(rep.max_ids_error));
    return {"mirror", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 12: trace ladder ---------------------------------------------
SuiteResult suite_ladder(const Params&) {
    Checker ck;
    int applicable = 0;
    for (int k = 1; k <= 6; ++k) {
        const ContFrac c = ContFrac::from_tail(repeat_digits(1, k));
        const auto types = classify(c, {8.0});
        for (const auto& t : types) {
            if (t.final != 'B') continue;
            for (long long m = 1; m <= 3; ++m) {
                const auto rep = trace_ladder_check(c, t.index, m, 3, 0.5);
                if (!rep.applicable) continue;
                ++applicable;
                ck.expect(rep.equality, "ladder equality " + c.str() + " band " +
                                            std::to_string(t.index) + " m=" +
                                            std::to_string(m));
                ck.expect(rep.monotone, "ladder monotonicity " + c.str());
                ck.expect(rep.sign_products, "ladder sign products " + c.str());
            }
        }
    }
    ck.expect(applicable > 0, "no applicable type-B ladder instances");
    return {"ladder", ck.ok, 0, ck.detail.str()};
}

// ---- criterion 13: words ------------------------------------------------------
SuiteResult suite_words(const Params&) {
    Checker ck;
    for (long long d : {1LL, 2LL}) {
        const auto tail = repeat_digits(d, 10);
        const SeedConvention sc = resolve_seed_convention(tail, 10);
        for (int k = 1; k <= 10; ++k) {
            const std::vector<long long> trunc(tail.begin(), tail.begin() + k);
            const ContFrac c = ContFrac::from_tail(trunc);
            const Phi phi = evaluate(c);
            const auto w = word_period(c);
            long long ones = 0;
            for (int b : w) ones += b;
            ck.expect(ones == num(phi.value),
                      "ones count at family " + std::to_string(d) + " k=" + std::to_string(k));
            if (k >= 2)
                ck.expect(word_concat_order(tail, k) != ConcatOrder::none,
                          "concatenation fails at k=" + std::to_string(k));
            ck.expect(is_rotation(w, substitution_word(tail, k, sc)),
                      "substitution rotation-match k=" + std::to_string(k));
        }
    }
    return {"words", ck.ok, 0, ck.detail.str()};
}

using SuiteFn = SuiteResult (*)(const Params&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"traces", suite_traces},       {"edges", suite_edges},
        {"fricke", suite_fricke},       {"bands", suite_bands},
        {"dichotomy", suite_dichotomy}, {"duality", suite_duality},
        {"tree", suite_tree},           {"interlacing", suite_interlacing},
        {"ids", suite_ids},             {"dry-tmp", suite_dry_tmp},
        {"mirror", suite_mirror},       {"ladder", suite_ladder},
        {"words", suite_words},
    };
    return reg;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [n, f] : registry()) names.push_back(n);
    return names;
}

SuiteResult run_suite(const std::string& name, const Params& p) {
    for (const auto& [n, f] : registry()) {
        if (n != name) continue;
        const auto t0 = Clock::now();
        SuiteResult r = f(p);
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return r;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_all(const Params& p) {
    std::vector<SuiteResult> out;
    for (const auto& [n, f] : registry()) out.push_back(run_suite(n, p));
    return out;
}

} // namespace sturmspec::verify
