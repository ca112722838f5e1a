#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "bordism/class_complex.hpp"
#include "bordism/double_complex.hpp"
#include "bordism/gf2.hpp"
#include "bordism/invariants.hpp"
#include "bordism/representations.hpp"
#include "bordism/spectral_sequence.hpp"
#include "bordism/universal_complex.hpp"

namespace py = pybind11;
using namespace bordism;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::module_::import("builtins").attr("int")(v.str())); }

void require_brute(int n) {
    if (n < 1 || n > 4) throw py::value_error("n must be in 1..4");
}

std::size_t dense_rank(const std::vector<std::vector<int>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Gf2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw py::value_error("ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) {
            if ((rows[i][j] & 1) != 0) m.set(i, j);
        }
    }
    return rank(m);
}

std::map<int, std::size_t> universal_homology(int n) {
    require_brute(n);
    const auto c = UniversalComplex(n).chain_complex();
    std::map<int, std::size_t> out;
    for (int q = -1; q <= n - 1; ++q) out[q] = c.homology_dim(q);
    return out;
}

std::vector<std::size_t> class_counts(int n) {
    require_brute(n);
    const auto d = build_class_complex(n);
    std::vector<std::size_t> out;
    for (int p = 0; p <= n - 1; ++p) out.push_back(d.count(p));
    return out;
}

std::map<int, std::size_t> total_homology(int n) {
    require_brute(n);
    const auto t = build_total_complex(n);
    std::map<int, std::size_t> out;
    for (int l = t.min_degree(); l <= t.max_degree(); ++l) out[l] = t.homology_dim(l);
    return out;
}

std::map<std::pair<int, int>, std::size_t> spectral_page(int n, int r) {
    require_brute(n);
    if (r < 0 || r > 3) throw py::value_error("page must be in 0..3");
    SpectralSequence ss(std::make_shared<const DoubleComplex>(build_double_complex(n)));
    return ss.page(r).dims;
}

std::vector<std::vector<Mask>> faithful_reps(int n) {
    require_brute(n);
    std::vector<std::vector<Mask>> out;
    for (const auto& tau : enumerate_faithful_reps(n)) out.push_back(tau.factors());
    return out;
}

py::dict dual(int n, const std::vector<Mask>& factors) {
    const FaithfulRep tau(n, factors);
    const auto b = dual_D(tau);
    py::dict d;
    d["element"] = b.to_string(n);
    d["p"] = b.p;
    d["q"] = b.q;
    d["inverse"] = dual_inverse(n, b).factors();
    return d;
}

py::dict check(int n, const std::string& text) {
    require_brute(n);
    RepPolynomial f(n);
    try {
        f = parse_polynomial(text, n);
    } catch (const PolyParseError& e) {
        throw py::value_error(e.what());
    } catch (const NonFaithfulMonomial& e) {
        throw py::value_error(e.what());
    }
    const auto t = build_total_complex(n);
    py::dict d;
    d["dual"] = in_image_dual(f, t);
    d["lls"] = in_image_lls(f);
    d["monomials"] = f.size();
    return d;
}

py::list verify(int n) {
    if (n < 1 || n > 5) throw py::value_error("n must be in 1..5");
    py::list out;
    for (const auto& r : run_invariants(n)) {
        py::dict d;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["cases"] = r.cases;
        d["detail"] = r.detail;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GF(2) chain complexes for equivariant bordism of (Z_2)^n actions";

    m.def("dimension_formula", [](int n) { return to_py(dimension_formula(n)); }, py::arg("n"));
    m.def(
        "constants",
        [](int n) {
            const auto k = constants(n);
            py::dict d;
            py::list f;
            for (const auto& v : k.f) f.append(to_py(v));
            py::list a;
            for (const auto& v : k.A_pn) a.append(to_py(v));
            d["f"] = f;
            d["A_n"] = to_py(k.A_n);
            d["A_pn"] = a;
            return d;
        },
        py::arg("n"));
    m.def("f_count", [](int n, int p) { return to_py(f_count(n, p)); }, py::arg("n"), py::arg("p"));
    m.def("link_count", [](int n, int p, int q) { return to_py(link_count(n, p, q)); }, py::arg("n"), py::arg("p"),
          py::arg("q"));
    m.def("gf2_rank", &dense_rank, py::arg("rows"), "Rank over GF(2) of a 0/1 matrix given as a list of rows.");
    m.def("universal_homology", &universal_homology, py::arg("n"), "Reduced Betti numbers of X(Z_2^n) by degree.");
    m.def("class_counts", &class_counts, py::arg("n"), "Number of simplex classes in each dimension.");
    m.def("total_homology", &total_homology, py::arg("n"), "Homology dimensions of the total complex by degree.");
    m.def("spectral_page", &spectral_page, py::arg("n"), py::arg("page"), "Dimensions {(p, q): dim} of one page.");
    m.def("faithful_reps", &faithful_reps, py::arg("n"), "Faithful monomials as sorted factor masks.");
    m.def("dual", &dual, py::arg("n"), py::arg("factors"), "Dual basis element of a faithful monomial.");
    m.def("check", &check, py::arg("n"), py::arg("text"), "Both membership criteria for a polynomial in file format.");
    m.def("verify", &verify, py::arg("n"), "Every invariant check for one n.");
}
