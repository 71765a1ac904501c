#include "sturmspec/bandtype.hpp"
#include "sturmspec/ids.hpp"
#include "sturmspec/interlace.hpp"
#include "sturmspec/spectree.hpp"
#include "sturmspec/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sturmspec;

namespace {

ContFrac make_cf(const std::vector<long long>& digits) {
    return ContFrac::from_digits(digits);
}

py::dict band_to_dict(const Band& b) {
    py::dict d;
    d["left"] = b.left;
    d["right"] = b.right;
    d["index"] = b.index;
    d["theta_left"] = b.theta_left ? "pi" : "0";
    d["theta_right"] = b.theta_right ? "pi" : "0";
    d["type"] = std::string(1, b.type);
    return d;
}

py::list bands_to_list(const BandSet& bs) {
    py::list out;
    for (const Band& b : bs.bands) out.append(band_to_dict(b));
    return out;
}

} // namespace

PYBIND11_MODULE(_sturmspec, m) {
    m.doc() = "spectra of Sturmian Hamiltonians and their periodic approximants";

    py::register_exception<MalformedDigits>(m, "MalformedDigits", PyExc_ValueError);
    py::register_exception<DegenerateExpansion>(m, "DegenerateExpansion", PyExc_ValueError);
    py::register_exception<ZeroCoupling>(m, "ZeroCoupling", PyExc_ValueError);

    m.def("evaluate", [](const std::vector<long long>& digits) -> py::object {
        const Phi phi = evaluate(make_cf(digits));
        if (phi.degenerate) return py::none();
        py::tuple t(2);
        t[0] = py::int_(py::str(num(phi.value).str()));
        t[1] = py::int_(py::str(den(phi.value).str()));
        return t;
    }, py::arg("digits"), "phi(c) as a (p, q) pair, None for the -1 sentinel");

    m.def("convergents", [](const std::vector<long long>& tail, int k) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [p, q] : convergents(tail, k)) out.emplace_back(p.str(), q.str());
        return out;
    }, py::arg("tail"), py::arg("k"));

    m.def("mechanical_word", [](long long p, long long q, long long n) {
        return mechanical_word(Rational(p, q), BigInt(n));
    }, py::arg("p"), py::arg("q"), py::arg("n"));

    m.def("word_period", [](const std::vector<long long>& digits) {
        return word_period(make_cf(digits));
    }, py::arg("digits"));

    m.def("substitution_word", [](const std::vector<long long>& tail, int n) {
        return substitution_word(tail, n, resolve_seed_convention(tail, static_cast<int>(tail.size())));
    }, py::arg("tail"), py::arg("n"));

    m.def("trace_poly", [](const std::vector<long long>& digits, double V) {
        std::vector<std::string> coeffs;
        for (const auto& c : trace_poly(make_cf(digits), rational_from_double(V)).coeffs)
            coeffs.push_back(to_string(c));
        return coeffs;
    }, py::arg("digits"), py::arg("V"), "exact coefficients, ascending degree");

    m.def("trace_eval", [](const std::vector<long long>& digits, double E, double V) {
        return trace_eval(make_cf(digits), E, V);
    }, py::arg("digits"), py::arg("E"), py::arg("V"));

    m.def("fricke_vogt_residual",
          [](const std::vector<long long>& digits, long long n, double E, double V) {
              return fricke_vogt_residual(make_cf(digits), n, E, V);
          },
          py::arg("digits"), py::arg("n"), py::arg("E"), py::arg("V"));

    m.def("spectrum_bands", [](const std::vector<long long>& digits, double V, bool exact) {
        const ContFrac c = make_cf(digits);
        BandScanOptions opt;
        opt.exact = exact;
        BandSet bs = spectrum_bands(c, V, opt);
        classify_bands(c, bs);
        return bands_to_list(bs);
    }, py::arg("digits"), py::arg("V"), py::arg("exact") = false);

    m.def("zentrum", [](const std::vector<long long>& digits, int index, double V) {
        const ContFrac c = make_cf(digits);
        return zentrum(c, spectrum_bands(c, V).band(index), V);
    }, py::arg("digits"), py::arg("index"), py::arg("V"));

    m.def("hausdorff_distance", [](const std::vector<long long>& digits, double V1, double V2) {
        const ContFrac c = make_cf(digits);
        return hausdorff_distance(spectrum_bands(c, V1), spectrum_bands(c, V2));
    }, py::arg("digits"), py::arg("V1"), py::arg("V2"));

    m.def("build_floquet", [](const std::vector<long long>& digits, double V, double theta,
                              int n_copies) {
        const SymMatrix d = build_floquet(make_cf(digits), V, theta, n_copies).dense();
        std::vector<std::vector<double>> rows(d.n, std::vector<double>(d.n));
        for (std::size_t i = 0; i < d.n; ++i)
            for (std::size_t j = 0; j < d.n; ++j) rows[i][j] = d.at(i, j);
        return rows;
    }, py::arg("digits"), py::arg("V"), py::arg("theta"), py::arg("n_copies") = 1);

    m.def("floquet_eigenvalues", [](const std::vector<long long>& digits, double V,
                                    double theta, int n_copies) {
        return floquet_eigenvalues(build_floquet(make_cf(digits), V, theta, n_copies));
    }, py::arg("digits"), py::arg("V"), py::arg("theta"), py::arg("n_copies") = 1);

    m.def("counting", [](const std::vector<long long>& digits, double V, double theta,
                         int n_copies, double lam) {
        return floquet_counting(lam, build_floquet(make_cf(digits), V, theta, n_copies));
    }, py::arg("digits"), py::arg("V"), py::arg("theta"), py::arg("n_copies"), py::arg("lam"));

    m.def("edge_theta", [](int index, bool right, long long q) {
        return edge_theta(index, right ? Side::right : Side::left, q);
    }, py::arg("index"), py::arg("right"), py::arg("q"));

    m.def("admissible", &admissible, py::arg("ind_c"), py::arg("ind_cm"), py::arg("ind_cmn"),
          py::arg("side_c"), py::arg("side_cm"), py::arg("side_cmn"), py::arg("n"));

    m.def("classify", [](const std::vector<long long>& digits, const std::vector<double>& grid) {
        std::vector<std::string> out;
        for (const auto& r : classify(make_cf(digits), grid)) out.push_back(std::string(1, r.final));
        return out;
    }, py::arg("digits"), py::arg("v_grid"));

    m.def("backward_type", [](const std::vector<long long>& digits, int index, double V) {
        const auto f = backward_type(make_cf(digits), index, V);
        py::dict d;
        d["A"] = f.A;
        d["weakA"] = f.weakA;
        d["B"] = f.B;
        d["weakB"] = f.weakB;
        return d;
    }, py::arg("digits"), py::arg("index"), py::arg("V"));

    py::class_<SpectralTree>(m, "SpectralTree")
        .def(py::init<std::vector<long long>, int>(), py::arg("alpha_tail"), py::arg("depth"))
        .def("to_json", &SpectralTree::to_json)
        .def("to_dot", &SpectralTree::to_dot)
        .def("vertex_count", &SpectralTree::vertex_count)
        .def("level", [](const SpectralTree& t, int k) { return t.level(k); })
        .def("psi", [](const SpectralTree& t, int id, double V) {
            return band_to_dict(t.psi(id, V));
        });

    m.def("boundary_energy", [](const std::vector<long long>& tail, const BoundaryPath& path,
                                double V, double tol) -> py::object {
        const auto e = boundary_energy(tail, path, V, tol);
        if (std::holds_alternative<double>(e)) return py::float_(std::get<double>(e));
        const auto iv = std::get<EnergyInterval>(e);
        return py::make_tuple(iv.left, iv.right);
    }, py::arg("tail"), py::arg("path"), py::arg("V"), py::arg("tol") = 1e-9);

    m.def("compare_paths", [](const BoundaryPath& a, const BoundaryPath& b) {
        const auto o = compare_paths(a, b);
        return o == PathOrder::less ? -1 : (o == PathOrder::greater ? 1 : 0);
    }, py::arg("a"), py::arg("b"));

    m.def("ids_bruteforce",
          py::overload_cast<const std::vector<long long>&, double, double, long long>(
              &ids_bruteforce),
          py::arg("tail"), py::arg("V"), py::arg("E"), py::arg("n"));

    m.def("ids_path", [](const std::vector<long long>& tail, const BoundaryPath& path) {
        const auto r = ids_path(tail, path);
        return py::make_tuple(r.value, r.tail_bound);
    }, py::arg("tail"), py::arg("path"));

    m.def("gaps", [](const std::vector<long long>& tail, int k, double V) {
        py::list out;
        for (const auto& g : gaps(tail, k, V)) {
            py::dict d;
            d["left"] = g.left;
            d["right"] = g.right;
            d["ids"] = g.ids;
            d["l"] = g.l ? py::object(py::int_(*g.l)) : py::object(py::none());
            d["residual"] = g.residual;
            out.append(d);
        }
        return out;
    }, py::arg("tail"), py::arg("k"), py::arg("V"));

    m.def("dry_tmp_verify", [](const std::vector<long long>& tail, int k, double V, long long L) {
        const auto rep = dry_tmp_verify(tail, k, V, L);
        py::dict d;
        d["all_labels_matched"] = rep.all_labels_matched;
        d["every_l_realized"] = rep.every_l_realized;
        d["missing_l"] = rep.missing_l;
        d["gap_count"] = rep.gap_list.size();
        return d;
    }, py::arg("tail"), py::arg("k"), py::arg("V"), py::arg("L"));

    m.def("rank2_decomposition", [](const std::vector<long long>& digits, long long mm,
                                    long long n, double V, double tc, double tcm, double tcmn) {
        const auto d = rank2_decomposition(make_cf(digits), mm, n, V, tc, tcm, tcmn);
        py::dict out;
        out["residual"] = d.residual;
        out["trace"] = d.trace;
        out["third_singular"] = d.third_singular;
        out["x"] = d.x;
        out["y"] = d.y;
        return out;
    }, py::arg("digits"), py::arg("m"), py::arg("n"), py::arg("V"), py::arg("theta_c"),
       py::arg("theta_cm"), py::arg("theta_cmn"));

    m.def("interlacing_check", [](const std::vector<long long>& digits, long long mm,
                                  long long n, double V, double tc, double tcm, double tcmn) {
        const auto r = interlacing_check(make_cf(digits), mm, n, V, tc, tcm, tcmn);
        return py::make_tuple(r.holds, r.strict_ok);
    }, py::arg("digits"), py::arg("m"), py::arg("n"), py::arg("V"), py::arg("theta_c"),
       py::arg("theta_cm"), py::arg("theta_cmn"));

    m.def("verify_suite", [](const std::string& name, double V, int k, long long L) {
        verify::Params p;
        p.V = V;
        p.k = k;
        p.L = L;
        const auto r = verify::run_suite(name, p);
        return py::make_tuple(r.pass, r.detail);
    }, py::arg("name"), py::arg("V") = 1.0, py::arg("k") = 10, py::arg("L") = 5);
}
