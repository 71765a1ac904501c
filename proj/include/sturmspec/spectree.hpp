#pragma once

#include "sturmspec/bandscan.hpp"
#include "sturmspec/bandtype.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sturmspec {

/// Child-slot sequence from the root.  Slot order equals the sibling order:
/// the root's slots are [u^0, w^0]; any other vertex interleaves its
/// children as w^1 < u^1 < w^2 < ... < u^M < w^{M+1} (even slots are
/// B-children two levels down, odd slots A-children one level down).
using BoundaryPath = std::vector<int>;

struct TreeVertex {
    int id = -1;
    int level = -2;
    char label = 'R'; // 'R' root, 'A', 'B'
    int parent = -1;
    int slot = -1;          // index in the parent's ordered child list
    std::vector<int> children; // ids in slot order (only for built levels)
    int rank_in_level = -1; // position in the <-ordered level list
    int label_rank = -1;    // position among same-label vertices of the level
};

/// The spectral alpha-tree, explicitly materialized through a depth cap.
class SpectralTree {
public:
    SpectralTree(std::vector<long long> alpha_tail, int depth);

    const std::vector<long long>& alpha_tail() const { return tail_; }
    int depth() const { return depth_; }
    const TreeVertex& vertex(int id) const { return vertices_.at(id); }
    int root() const { return 0; }
    std::size_t vertex_count() const { return vertices_.size(); }
    /// Vertices of one level in <-order; level in [-1, depth].
    const std::vector<int>& level(int k) const { return levels_.at(k + 1); }

    /// Number of child slots of a vertex (0 when its children lie beyond
    /// the built depth).
    int slot_count(int id) const;
    /// Follow a path of child slots from the root; DepthExceeded past depth.
    int vertex_at(const BoundaryPath& path) const;

    /// The band associated with a vertex: same-label rank within its level
    /// matches the same-type rank within sigma_level(V).  Root maps to the
    /// full line.  Band sets are cached per (level, V).
    Band psi(int vertex_id, double V) const;
    const BandSet& level_bands(int level, double V) const;

    std::string to_json() const;
    std::string to_dot() const;

private:
    std::vector<long long> tail_;
    int depth_;
    std::vector<TreeVertex> vertices_;
    std::vector<std::vector<int>> levels_; // levels_[k+1] = level k
    mutable std::map<std::pair<int, long long>, BandSet> band_cache_;
};

enum class PathOrder { less, equal, greater };
PathOrder compare_paths(const BoundaryPath& a, const BoundaryPath& b);

struct EnergyInterval {
    double left = 0;
    double right = 0;
    double mid() const { return 0.5 * (left + right); }
    double width() const { return right - left; }
};

/// Nested-band descent along a boundary path.  Returns the midpoint once
/// the band width drops below tol; a path exhausted earlier yields the
/// last interval instead.  Works past the dense-eigensolver cap through
/// windowed eigenvalue extraction.
std::variant<double, EnergyInterval>
boundary_energy(const std::vector<long long>& alpha_tail, const BoundaryPath& path,
                double V, double tol);

/// The band interval of every path prefix (prefix_bands[j] is the band of
/// the j-th vertex after the root).
std::vector<EnergyInterval>
descend_path(const std::vector<long long>& alpha_tail, const BoundaryPath& path, double V);

inline double energy_value(const std::variant<double, EnergyInterval>& e) {
    if (std::holds_alternative<double>(e)) return std::get<double>(e);
    return std::get<EnergyInterval>(e).mid();
}

/// |E(gamma;V1) - E(gamma;V2)| <= |V1 - V2| + 2 tol.
bool lipschitz_check(const std::vector<long long>& alpha_tail, const BoundaryPath& path,
                     double V1, double V2, double tol);

struct InjectivityReport {
    bool ok = true;
    int separation_depth = -1; // steps past divergence until bands disjoint
};

/// Separation mechanism behind injectivity: while the two descents still
/// overlap after the divergence, the inter-level digit sums must stay
/// below 2/|V|.
InjectivityReport injectivity_bound_check(const std::vector<long long>& alpha_tail,
                                          const BoundaryPath& g1, const BoundaryPath& g2,
                                          double V);

std::string path_str(const BoundaryPath& p);
BoundaryPath parse_path(const std::string& s);

/// Deterministic pseudo-random boundary path staying within max_level;
/// purely combinatorial (no band computation).
BoundaryPath sample_boundary_path(const std::vector<long long>& alpha_tail,
                                  unsigned seed, int max_level);

} // namespace sturmspec
