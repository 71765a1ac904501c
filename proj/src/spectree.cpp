#include "sturmspec/spectree.hpp"

#include "sturmspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sturmspec {

namespace {

constexpr std::size_t kTreeVertexCap = 200000;

std::vector<int> root_path_slots(const std::vector<TreeVertex>& vs, int id) {
    std::vector<int> slots;
    while (vs[id].parent >= 0) {
        slots.push_back(vs[id].slot);
        id = vs[id].parent;
    }
    std::reverse(slots.begin(), slots.end());
    return slots;
}

} // namespace

SpectralTree::SpectralTree(std::vector<long long> alpha_tail, int depth)
    : tail_(std::move(alpha_tail)), depth_(depth) {
    if (depth_ < 0) throw MalformedDigits("tree depth must be >= 0");
    if (static_cast<int>(tail_.size()) < depth_)
        throw MalformedDigits("tree depth exceeds the digit list");
    for (long long c : tail_)
        if (c < 1) throw MalformedDigits("tree digits must be >= 1");

    TreeVertex root;
    root.id = 0;
    root.level = -1;
    root.label = 'R';
    vertices_.push_back(root);

    // Vertices create their ordered child slots; a slot whose level lies
    // beyond the built depth stays -1.
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_.size() > kTreeVertexCap)
            throw DepthExceeded("tree vertex cap exceeded");
        const int level = vertices_[i].level;
        const char label = vertices_[i].label;
        auto emit = [&](int child_level, char child_label, int slot) {
            int id = -1;
            if (child_level <= depth_) {
                id = static_cast<int>(vertices_.size());
                TreeVertex v;
                v.id = id;
                v.level = child_level;
                v.label = child_label;
                v.parent = static_cast<int>(i);
                v.slot = slot;
                vertices_.push_back(v);
            }
            vertices_[i].children.push_back(id);
        };
        if (label == 'R') {
            emit(0, 'A', 0);
            emit(1, 'B', 1);
            continue;
        }
        if (level >= depth_) continue; // children lie beyond the built depth
        const long long M = label == 'A' ? tail_.at(level) - 1 : tail_.at(level);
        for (long long s = 0; s < 2 * M + 1; ++s) {
            if (s % 2 == 0) emit(level + 2, 'B', static_cast<int>(s));
            else emit(level + 1, 'A', static_cast<int>(s));
        }
    }

    levels_.assign(depth_ + 2, {});
    for (const auto& v : vertices_) levels_[v.level + 1].push_back(v.id);
    auto lex_less = [&](int a, int b) {
        return root_path_slots(vertices_, a) < root_path_slots(vertices_, b);
    };
    for (auto& lv : levels_) std::sort(lv.begin(), lv.end(), lex_less);
    for (auto& lv : levels_) {
        int a_rank = 0, b_rank = 0;
        for (std::size_t r = 0; r < lv.size(); ++r) {
            TreeVertex& v = vertices_[lv[r]];
            v.rank_in_level = static_cast<int>(r);
            v.label_rank = v.label == 'A' ? a_rank++ : (v.label == 'B' ? b_rank++ : 0);
        }
    }
}

int SpectralTree::slot_count(int id) const {
    return static_cast<int>(vertices_.at(id).children.size());
}

int SpectralTree::vertex_at(const BoundaryPath& path) const {
    int id = 0;
    for (int s : path) {
        const auto& ch = vertices_.at(id).children;
        if (s < 0 || s >= static_cast<int>(ch.size()) || ch[s] < 0)
            throw DepthExceeded("path leaves the built tree");
        id = ch[s];
    }
    return id;
}

const BandSet& SpectralTree::level_bands(int level, double V) const {
    const auto key = std::make_pair(level, static_cast<long long>(V * (1LL << 24)));
    auto it = band_cache_.find(key);
    if (it != band_cache_.end()) return it->second;
    const std::vector<long long> trunc(tail_.begin(), tail_.begin() + level);
    const ContFrac c = ContFrac::from_tail(trunc);
    BandSet bs = spectrum_bands(c, V);
    classify_bands(c, bs);
    return band_cache_.emplace(key, std::move(bs)).first->second;
}

Band SpectralTree::psi(int vertex_id, double V) const {
    const TreeVertex& v = vertices_.at(vertex_id);
    if (v.label == 'R') {
        Band b;
        b.left = -std::numeric_limits<double>::infinity();
        b.right = std::numeric_limits<double>::infinity();
        b.index = -1;
        return b;
    }
    const BandSet& bs = level_bands(v.level, V);
    int rank = 0;
    for (const Band& b : bs.bands) {
        if (b.type != v.label) continue;
        if (rank == v.label_rank) return b;
        ++rank;
    }
    throw std::logic_error("psi: no band with matching type rank");
}

std::string SpectralTree::to_json() const {
    std::ostringstream os;
    os << "{\"alpha\":[";
    for (std::size_t i = 0; i < tail_.size(); ++i) {
        if (i) os << ",";
        os << tail_[i];
    }
    os << "],\"depth\":" << depth_ << ",\"vertices\":[";
    bool first = true;
    for (const auto& v : vertices_) {
        if (!first) os << ",";
        first = false;
        os << "{\"id\":" << v.id << ",\"level\":" << v.level << ",\"label\":\"" << v.label
           << "\",\"parent\":" << v.parent << ",\"order\":" << v.rank_in_level << "}";
    }
    os << "]}";
    return os.str();
}

std::string SpectralTree::to_dot() const {
    std::ostringstream os;
    os << "digraph spectral_tree {\n  rankdir=TB;\n";
    for (const auto& v : vertices_) {
        os << "  v" << v.id << " [label=\"" << v.label << v.level << "." << v.rank_in_level
           << "\"" << (v.label == 'B' ? ",color=red" : (v.label == 'A' ? ",color=blue" : ""))
           << "];\n";
        if (v.parent >= 0) os << "  v" << v.parent << " -> v" << v.id << ";\n";
    }
    os << "}\n";
    return os.str();
}

PathOrder compare_paths(const BoundaryPath& a, const BoundaryPath& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return PathOrder::less;
        if (a[i] > b[i]) return PathOrder::greater;
    }
    return PathOrder::equal; // equal prefixes address nested vertices
}

namespace {

// Bands of sigma_level overlapping a window, usable past the dense cap.
class LevelScanner {
public:
    LevelScanner(const std::vector<long long>& tail, int level, double V) {
        const std::vector<long long> trunc(tail.begin(), tail.begin() + level);
        c_ = ContFrac::from_tail(trunc);
        const Phi phi = evaluate(*c_);
        q_ = den(phi.value).convert_to<long long>();
        V_ = V;
        if (q_ <= static_cast<long long>(kDenseEigenCap)) {
            dense_ = spectrum_bands(*c_, V);
        } else {
            const auto word = word_period(*c_);
            h0_ = build_floquet(word, V, 0.0);
            hpi_ = build_floquet(word, V, kPi);
        }
    }

    long long q() const { return q_; }

    std::vector<Band> overlapping(double lo, double hi) const {
        std::vector<Band> out;
        if (dense_) {
            for (const Band& b : dense_->bands)
                if (b.right >= lo && b.left <= hi) out.push_back(b);
            return out;
        }
        long long jlo = floquet_counting(lo, *h0_) - 1;
        long long jhi = floquet_counting(hi, *h0_);
        jlo = std::max<long long>(jlo, 0);
        jhi = std::min<long long>(jhi, q_ - 1);
        for (long long j = jlo; j <= jhi; ++j) {
            Band b;
            b.index = static_cast<int>(j);
            b.theta_left = edge_theta(b.index, Side::left, q_);
            b.theta_right = edge_theta(b.index, Side::right, q_);
            b.left = floquet_eigenvalue_at(b.theta_left ? *hpi_ : *h0_, j);
            b.right = floquet_eigenvalue_at(b.theta_right ? *hpi_ : *h0_, j);
            if (b.right >= lo && b.left <= hi) out.push_back(b);
        }
        return out;
    }

private:
    std::optional<ContFrac> c_;
    long long q_ = 0;
    double V_ = 0;
    std::optional<BandSet> dense_;
    std::optional<FloquetMatrix> h0_, hpi_;
};

struct DescentState {
    int level = -1;
    char label = 'R';
    double left = -std::numeric_limits<double>::infinity();
    double right = std::numeric_limits<double>::infinity();
};

DescentState descend_step(const std::vector<long long>& tail, const DescentState& cur,
                          int slot, double V) {
    int target_level;
    char target_label;
    int child_rank;
    if (cur.label == 'R') {
        if (slot < 0 || slot > 1) throw DepthExceeded("invalid root slot");
        target_level = slot == 0 ? 0 : 1;
        target_label = slot == 0 ? 'A' : 'B';
        child_rank = 0;
    } else {
        const long long M =
            cur.label == 'A' ? tail.at(cur.level) - 1 : tail.at(cur.level);
        if (slot < 0 || slot >= 2 * M + 1) throw DepthExceeded("invalid child slot");
        if (slot % 2 == 1) {
            target_level = cur.level + 1;
            target_label = 'A';
            child_rank = (slot - 1) / 2;
        } else {
            target_level = cur.level + 2;
            target_label = 'B';
            child_rank = slot / 2;
        }
    }
    if (static_cast<std::size_t>(target_level) > tail.size())
        throw DepthExceeded("path deeper than the digit list");

    const double box = 3.0 + std::fabs(V);
    const double wlo = std::max(cur.left, -box), whi = std::min(cur.right, box);
    const LevelScanner scan(tail, target_level, V);
    std::vector<Band> inside;
    if (target_label == 'A') {
        for (const Band& b : scan.overlapping(wlo, whi))
            if (b.left > cur.left && b.right < cur.right) inside.push_back(b);
    } else {
        // B-children: strictly inside, and not weakly inside any band one
        // level below the target.
        const LevelScanner below(tail, target_level - 1, V);
        const auto below_bands = below.overlapping(wlo, whi);
        for (const Band& b : scan.overlapping(wlo, whi)) {
            if (!(b.left > cur.left && b.right < cur.right)) continue;
            bool weak = false;
            for (const Band& j : below_bands)
                if (j.left <= b.left + 1e-9 && b.right <= j.right + 1e-9) weak = true;
            if (!weak) inside.push_back(b);
        }
    }
    if (child_rank >= static_cast<int>(inside.size()))
        throw std::logic_error("descent: fewer candidate bands than the tree slot");
    DescentState next;
    next.level = target_level;
    next.label = target_label;
    next.left = inside[child_rank].left;
    next.right = inside[child_rank].right;
    return next;
}

} // namespace

std::vector<EnergyInterval>
descend_path(const std::vector<long long>& alpha_tail, const BoundaryPath& path, double V) {
    std::vector<EnergyInterval> out;
    DescentState cur;
    for (int slot : path) {
        cur = descend_step(alpha_tail, cur, slot, V);
        out.push_back({cur.left, cur.right});
    }
    return out;
}

std::variant<double, EnergyInterval>
boundary_energy(const std::vector<long long>& alpha_tail, const BoundaryPath& path,
                double V, double tol) {
    if (V <= 0) throw ZeroCoupling("boundary energy needs V > 0");
    DescentState cur;
    for (int slot : path) {
        cur = descend_step(alpha_tail, cur, slot, V);
        if (cur.right - cur.left < tol) return 0.5 * (cur.left + cur.right);
    }
    if (cur.label == 'R') throw InsufficientDepth("empty path");
    return EnergyInterval{cur.left, cur.right};
}

bool lipschitz_check(const std::vector<long long>& alpha_tail, const BoundaryPath& path,
                     double V1, double V2, double tol) {
    const double e1 = energy_value(boundary_energy(alpha_tail, path, V1, tol));
    const double e2 = energy_value(boundary_energy(alpha_tail, path, V2, tol));
    return std::fabs(e1 - e2) <= std::fabs(V1 - V2) + 2.0 * tol;
}

InjectivityReport injectivity_bound_check(const std::vector<long long>& alpha_tail,
                                          const BoundaryPath& g1, const BoundaryPath& g2,
                                          double V) {
    InjectivityReport rep;
    if (g1 == g2) return rep; // vacuous
    const PathOrder ord = compare_paths(g1, g2);
    if (ord == PathOrder::equal) return rep; // nested prefixes
    const BoundaryPath& lo = ord == PathOrder::less ? g1 : g2;
    std::size_t k = 0;
    while (k < lo.size() && g1[k] == g2[k]) ++k;

    // Two auxiliary paths between the descents: gammaL takes lo's divergence
    // child and then always the rightmost slot, gammaR takes the next sibling
    // and then always the leftmost slot.  Overlap of their band systems at
    // stage m forces the digit-sum bound sum c_{k0+j} < 2/|V|.
    const BoundaryPath prefix(lo.begin(), lo.begin() + k);
    DescentState common;
    for (int s : prefix) common = descend_step(alpha_tail, common, s, V);
    const int k0 = common.level;

    auto extend = [&](BoundaryPath p, bool rightmost) {
        DescentState st;
        int level = -1;
        char label = 'R';
        for (int s : p) {
            if (label == 'R') { level = s == 0 ? 0 : 1; label = s == 0 ? 'A' : 'B'; }
            else if (s % 2 == 1) { level += 1; label = 'A'; }
            else { level += 2; label = 'B'; }
        }
        while (level + 2 <= static_cast<int>(alpha_tail.size()) &&
               p.size() < prefix.size() + 14) {
            const long long M = label == 'A' ? alpha_tail.at(level) - 1 : alpha_tail.at(level);
            p.push_back(rightmost ? static_cast<int>(2 * M) : 0);
            level += 2;
            label = 'B';
        }
        return p;
    };
    BoundaryPath gl = prefix;
    gl.push_back(lo[k]);
    gl = extend(std::move(gl), true);
    BoundaryPath gr = prefix;
    gr.push_back(lo[k] + 1);
    gr = extend(std::move(gr), false);

    const auto bl = descend_path(alpha_tail, gl, V);
    const auto br = descend_path(alpha_tail, gr, V);
    for (int m = 1; k + m < bl.size() && k + m + 1 < br.size(); ++m) {
        const EnergyInterval& L = bl[k + m];
        const EnergyInterval& R = br[k + m + 1];
        const bool overlap = L.left <= R.right && R.left <= L.right;
        if (!overlap) {
            rep.separation_depth = m;
            return rep;
        }
        long long sum = 0;
        const int start = std::max(k0, 0); // tail index of c_{k0+1}
        for (int l = 0; l < 2 * m && start + l < static_cast<int>(alpha_tail.size()); ++l)
            sum += alpha_tail.at(start + l);
        if (static_cast<double>(sum) >= 2.0 / std::fabs(V)) {
            rep.ok = false;
            return rep;
        }
    }
    return rep; // never separated within the tested depth, bound never failed
}

std::string path_str(const BoundaryPath& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ",";
        os << p[i];
    }
    return os.str();
}

BoundaryPath parse_path(const std::string& s) {
    BoundaryPath p;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        p.push_back(std::stoi(tok));
    }
    return p;
}

BoundaryPath sample_boundary_path(const std::vector<long long>& alpha_tail,
                                  unsigned seed, int max_level) {
    BoundaryPath path;
    unsigned state = seed * 2654435761u + 12345u;
    auto rng = [&]() {
        state = state * 1664525u + 1013904223u;
        return state >> 16;
    };
    int level = -1;
    char label = 'R';
    while (true) {
        if (label == 'R') {
            const int slot = static_cast<int>(rng() % 2);
            if (slot == 1 && 1 > max_level) { path.push_back(0); level = 0; label = 'A'; continue; }
            path.push_back(slot);
            level = slot == 0 ? 0 : 1;
            label = slot == 0 ? 'A' : 'B';
            continue;
        }
        if (level >= static_cast<int>(alpha_tail.size()) || level >= max_level) break;
        const long long M = label == 'A' ? alpha_tail.at(level) - 1 : alpha_tail.at(level);
        int slot = static_cast<int>(rng() % (2 * M + 1));
        // B slots advance two levels; fall back to an A slot near the cap
        const bool b_slot = slot % 2 == 0;
        if (b_slot && level + 2 > std::min<int>(max_level, static_cast<int>(alpha_tail.size()))) {
            if (M >= 1 && level + 1 <= max_level) slot = 1;
            else break;
        }
        path.push_back(slot);
        if (slot % 2 == 1) {
            level += 1;
            label = 'A';
        } else {
            level += 2;
            label = 'B';
        }
    }
    return path;
}

} // namespace sturmspec
