#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pvkit/basechange.hpp"
#include "pvkit/errors.hpp"
#include "pvkit/galois.hpp"
#include "pvkit/session.hpp"

namespace py = pybind11;
using namespace pvkit;

namespace {

IVec to_ivec(const std::vector<long>& v) {
    IVec out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<std::vector<long>> from_imat(const std::vector<IVec>& rows) {
    std::vector<std::vector<long>> out;
    for (const auto& r : rows) {
        std::vector<long> row;
        for (const auto& x : r) row.push_back(x.get_si());
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::vector<std::string>> mat_strings(const Mat<RingElement>& m) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : m) {
        std::vector<std::string> r;
        for (const auto& e : row) r.push_back(e.to_string());
        out.push_back(std::move(r));
    }
    return out;
}

struct PyField {
    FieldPtr p;
};
struct PyRing {
    RingPtr p;
};
struct PyPV {
    PVPtr p;
};

} // namespace

PYBIND11_MODULE(_pvkit, m) {
    m.doc() = "exact difference Galois theory toolkit";

    py::register_exception<usage_error>(m, "UsageError");
    py::register_exception<domain_error>(m, "DomainError");

    py::class_<PyField>(m, "Field")
        .def_static("rationals", [] { return PyField{ConstantsField::rationals()}; })
        .def_static("cyclotomic", [](long n) { return PyField{ConstantsField::cyclotomic(n)}; })
        .def_property_readonly("name", [](const PyField& f) { return f.p->name(); })
        .def("__repr__", [](const PyField& f) { return "Field(" + f.p->name() + ")"; });

    py::class_<RingElement>(m, "RingElement")
        .def("__add__", [](const RingElement& a, const RingElement& b) { return a + b; })
        .def("__sub__", [](const RingElement& a, const RingElement& b) { return a - b; })
        .def("__mul__", [](const RingElement& a, const RingElement& b) { return a * b; })
        .def("__neg__", [](const RingElement& a) { return -a; })
        .def("__pow__", [](const RingElement& a, long e) { return a.pow(e); })
        .def("__eq__", [](const RingElement& a, const RingElement& b) { return a == b; })
        .def("inverse", &RingElement::inverse)
        .def("is_zero", &RingElement::is_zero)
        .def("is_unit", &RingElement::is_unit)
        .def("tau", [](const RingElement& e, long power) { return tau_apply(e, power); },
             py::arg("power") = 1)
        .def("__str__", &RingElement::to_string)
        .def("__repr__", [](const RingElement& e) { return "RingElement(" + e.to_string() + ")"; });

    py::class_<PyRing>(m, "Ring")
        .def_static("shift_field",
                    [](const PyField& k) { return PyRing{BaseDifferenceRing::shift_field(k.p)}; })
        .def_static("q_dilation_field",
                    [](const PyField& k, long num, long den) {
                        return PyRing{BaseDifferenceRing::q_dilation_field(k.p, Rat(num) / Rat(den))};
                    },
                    py::arg("field"), py::arg("num"), py::arg("den") = 1)
        .def_static("shift_poly",
                    [](const PyField& k) { return PyRing{BaseDifferenceRing::shift_poly(k.p)}; })
        .def_static("cyclic_product",
                    [](const PyField& k, int n) {
                        return PyRing{BaseDifferenceRing::cyclic_product_cycle(k.p, n)};
                    })
        .def_property_readonly("name", [](const PyRing& r) { return r.p->name(); })
        .def_property_readonly("field", [](const PyRing& r) { return PyField{r.p->coefficient_field()}; })
        .def("zero", [](const PyRing& r) { return r.p->zero(); })
        .def("one", [](const PyRing& r) { return r.p->one(); })
        .def("x", [](const PyRing& r) { return r.p->x(); })
        .def("rational",
             [](const PyRing& r, long num, long den) {
                 return r.p->from_rational(Rat(num) / Rat(den));
             },
             py::arg("num"), py::arg("den") = 1)
        .def("constant_generator",
             [](const PyRing& r) { return r.p->from_constant(r.p->coefficient_field()->generator()); })
        .def("tuple",
             [](const PyRing& r, const std::vector<long>& t) {
                 std::vector<FieldElement> c;
                 for (long v : t) c.push_back(r.p->coefficient_field()->from_long(v));
                 return r.p->from_tuple(std::move(c));
             })
        .def("__repr__", [](const PyRing& r) { return "Ring(" + r.p->name() + ")"; });

    m.def("constants_of", [](const PyRing& r) {
        ConstantsInfo ci = constants_of(r.p);
        return py::make_tuple(PyField{ci.field}, ci.certificate);
    });
    m.def("total_fractions_check", [](const PyRing& r) {
        TotalFractionsResult res = total_fractions_check(r.p);
        return py::make_tuple(PyRing{res.s}, res.report);
    });
    m.def("simplicity_certificate", [](const PyRing& r) {
        SimplicityCertificate c = simplicity_certificate(r.p);
        const char* v = c.verdict == SimplicityVerdict::simple      ? "simple"
                        : c.verdict == SimplicityVerdict::not_simple ? "not_simple"
                                                                     : "unknown";
        return py::make_tuple(std::string(v), c.trace);
    });

    py::class_<DifferenceModule>(m, "Module")
        .def_static("from_system",
                    [](const PyRing& r, const Mat<RingElement>& b) {
                        return DifferenceModule::from_system_matrix(r.p, b);
                    })
        .def_static("scalar",
                    [](const PyRing& r, const RingElement& a) {
                        return DifferenceModule::scalar(r.p, a);
                    })
        .def_property_readonly("rank", &DifferenceModule::rank)
        .def("system_matrix",
             [](const DifferenceModule& m_) { return mat_strings(m_.system_matrix()); })
        .def("tau_matrix", [](const DifferenceModule& m_) { return mat_strings(m_.tau_matrix()); })
        .def("dual",
             [](const DifferenceModule& m_) { return construct(ModuleConstruction::dual, m_); })
        .def("tensor",
             [](const DifferenceModule& a, const DifferenceModule& b) {
                 return construct(ModuleConstruction::tensor, a, &b);
             })
        .def("dsum",
             [](const DifferenceModule& a, const DifferenceModule& b) {
                 return construct(ModuleConstruction::dsum, a, &b);
             })
        .def("hom", [](const DifferenceModule& a, const DifferenceModule& b) {
            return construct(ModuleConstruction::hom, a, &b);
        });

    m.def(
        "fixed_vectors",
        [](const DifferenceModule& m_, int cap) {
            FixedVectorSpace fv = fixed_vectors(m_, cap);
            std::vector<std::vector<std::string>> basis;
            for (const auto& v : fv.basis) {
                std::vector<std::string> row;
                for (const auto& e : v) row.push_back(e.to_string());
                basis.push_back(std::move(row));
            }
            return basis;
        },
        py::arg("module"), py::arg("degree_cap") = 24);

    m.def(
        "solve",
        [](const PyRing& r, const RingElement& a, const RingElement& b, int cap) {
            ScalarSolutions s = scalar_rational_solutions(r.p, a, b, cap);
            std::optional<std::string> part;
            if (s.particular) part = s.particular->to_string();
            std::vector<std::string> hom;
            for (const auto& h : s.homogeneous) hom.push_back(h.to_string());
            return py::make_tuple(part, hom);
        },
        py::arg("ring"), py::arg("a"), py::arg("b"), py::arg("degree_cap") = 24);

    m.def("tau_coboundary", [](const RingElement& a) -> std::optional<std::string> {
        auto w = tau_coboundary(a);
        if (!w) return std::nullopt;
        return w->to_string();
    });
    m.def("relation_lattice", [](const std::vector<RingElement>& a) {
        RelationLattice rl = relation_lattice(a);
        std::vector<std::string> wit;
        for (const auto& w : rl.witnesses) wit.push_back(w.to_string());
        return py::make_tuple(from_imat(rl.lattice.basis()), wit);
    });

    py::class_<PyPV>(m, "PVExtension")
        .def("to_json", [](const PyPV& s) { return pv_to_json(s.p).dump(); })
        .def("__repr__", [](const PyPV& s) {
            return "PVExtension(rank=" + std::to_string(s.p->tau_scalars.size()) + ")";
        });

    m.def("construct_pv", [](const DifferenceModule& m_) { return PyPV{construct_pv(m_)}; });
    m.def("universal_pv", [](const std::vector<DifferenceModule>& gens) {
        return PyPV{universal_pv(gens)};
    });
    m.def("verify_pv", [](const PyPV& s, const DifferenceModule& m_) {
        PVReport r = verify_pv(s.p, m_);
        py::dict d;
        auto cond = [](const PVCondition& c) {
            py::dict e;
            e["pass"] = c.pass;
            e["notes"] = c.notes;
            return e;
        };
        d["a"] = cond(r.a);
        d["b"] = cond(r.b);
        d["c"] = cond(r.c);
        d["d"] = cond(r.d);
        d["e"] = cond(r.e);
        d["all_pass"] = r.all_pass();
        return d;
    });
    m.def("pv_isomorphism", [](const PyPV& a, const PyPV& b) {
        PVIsomorphism iso = pv_isomorphism(a.p, b.p);
        std::vector<std::string> units;
        for (const auto& u : iso.units) units.push_back(u.to_string());
        return py::make_tuple(from_imat(iso.exponents), units);
    });

    m.def("galois_group", [](const PyPV& s) { return group_to_json(galois_group(s.p)).dump(); });
    m.def("galois_group_of_module",
          [](const DifferenceModule& m_) { return group_to_json(galois_group(m_)).dump(); });
    m.def("automorphism_count_check", [](const PyPV& s) {
        AutomorphismCount c = automorphism_count_check(s.p);
        py::dict d;
        d["skipped"] = c.skipped;
        d["count"] = static_cast<long>(c.count);
        d["expected"] = static_cast<long>(c.expected);
        d["pass"] = c.pass();
        return d;
    });
    m.def(
        "fixed_subring_check",
        [](const PyPV& s, std::uint64_t seed) {
            FixedSubringReport r = fixed_subring_check(s.p, galois_group(s.p), seed);
            return py::make_tuple(r.pass, r.trace);
        },
        py::arg("pv"), py::arg("seed") = 2026);
    m.def("fibre_functor", [](const DifferenceModule& n, const PyPV& s) {
        return representation_to_json(fibre_functor(n, s.p)).dump();
    });
    m.def("descend", [](const std::vector<long>& chi, const PyPV& s) {
        return descend(to_ivec(chi), s.p);
    });

    m.def("extend_constants", [](const PyRing& r, const PyField& cprime) {
        ExtendedRing ext = extend_constants(r.p, cprime.p);
        return py::make_tuple(PyRing{ext.ring}, ext.report);
    });
    m.def(
        "galois_commutation_check",
        [](const PyRing& r, const PyField& cprime, std::uint64_t seed) {
            CommutationReport rep = galois_commutation_check(extend_constants(r.p, cprime.p), seed);
            py::dict d;
            d["pass"] = rep.pass;
            d["automorphisms"] = static_cast<long>(rep.automorphisms);
            d["trace"] = rep.trace;
            return d;
        },
        py::arg("ring"), py::arg("cprime"), py::arg("seed") = 2026);
    m.def("split", [](const DifferenceModule& m_) {
        SplitResult s = split_and_analyze(m_);
        py::dict d;
        d["constants"] = PyField{s.constants};
        d["extended_ring"] = PyRing{s.extended.ring};
        d["diagonal"] = s.diagonal;
        std::vector<std::string> ev;
        for (const auto& e : s.eigenvalues) ev.push_back(e.to_string());
        d["eigenvalues"] = ev;
        d["p"] = mat_strings(s.p);
        d["p_inv"] = mat_strings(s.p_inv);
        d["min_poly"] = s.extension_min_poly.to_string();
        d["report"] = s.report;
        return d;
    });

    m.def(
        "run_program",
        [](const std::string& text, bool json, bool trace, std::uint64_t seed, int degree_cap) {
            SessionOptions opt;
            opt.json = json;
            opt.trace = trace;
            opt.seed = seed;
            opt.degree_cap = degree_cap;
            RunResult r = run_program(text, opt);
            return py::make_tuple(r.exit_code, r.output, r.diagnostics);
        },
        py::arg("text"), py::arg("json") = false, py::arg("trace") = false,
        py::arg("seed") = 2026, py::arg("degree_cap") = 24);
}
