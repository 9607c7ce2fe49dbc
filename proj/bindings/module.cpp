#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "prk/arith.hpp"
#include "prk/classnumber.hpp"
#include "prk/cli.hpp"
#include "prk/density.hpp"
#include "prk/errors.hpp"
#include "prk/prational.hpp"
#include "prk/quadfield.hpp"
#include "prk/search.hpp"

namespace py = pybind11;

namespace {

prk::Int to_int(py::handle h) {
    if (!py::isinstance<py::int_>(h)) {
        throw py::type_error("expected an int");
    }
    const std::string s = py::str(h);
    return prk::Int(s);
}

py::int_ from_int(const prk::Int& z) {
    PyObject* obj = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (obj == nullptr) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

py::object opt_int(const std::optional<prk::Int>& z) {
    if (z) return from_int(*z);
    return py::none();
}

py::dict field_dict(const prk::FieldDescriptor& K) {
    py::dict d;
    d["radicand"] = from_int(K.radicand);
    d["discriminant"] = from_int(K.discriminant);
    d["real"] = K.real;
    d["omega"] = K.omega;
    return d;
}

py::dict verdict_dict(const prk::PRationalityVerdict& v) {
    py::dict d;
    d["outcome"] = std::string(prk::outcome_name(v.outcome));
    d["h"] = opt_int(v.h);
    d["residue"] = opt_int(v.residue);
    py::list reasons;
    for (const auto& e : v.reasons) {
        py::dict r;
        r["tag"] = e.tag;
        r["detail"] = e.detail;
        reasons.append(r);
    }
    d["reasons"] = reasons;
    py::list subs;
    for (const auto& sc : v.subfields) {
        py::dict s;
        s["radicand"] = from_int(sc.radicand);
        s["h"] = opt_int(sc.h);
        s["h_divisible"] = sc.h_divisible;
        s["ramified"] = sc.ramified;
        s["residue"] = opt_int(sc.residue);
        s["trace_divisible"] = sc.trace_divisible;
        subs.append(s);
    }
    d["subfields"] = subs;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "p-rationality toolkit for quadratic and multiquadratic "
              "number fields";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const prk::domain_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const prk::unsupported_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const prk::computation_error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def("kronecker", [](py::handle a, py::handle n) {
        return prk::kronecker(to_int(a), to_int(n));
    });
    m.def("is_prime",
          [](py::handle n) { return prk::is_prime(to_int(n)); });
    m.def("squarefree_decompose", [](py::handle n) {
        const auto [kern, m2] = prk::squarefree_decompose(to_int(n));
        return py::make_tuple(from_int(kern), from_int(m2));
    });
    m.def("squarefree_kernel", [](py::handle n) {
        return from_int(prk::squarefree_kernel(to_int(n)));
    });
    m.def("crt_combine",
          [](const std::vector<std::pair<py::object, py::object>>& pairs) {
              std::vector<std::pair<prk::Int, prk::Int>> ps;
              for (const auto& [r, m] : pairs) {
                  ps.emplace_back(to_int(r), to_int(m));
              }
              const prk::CrtPlan plan = prk::crt_combine(ps);
              py::dict d;
              d["residue"] = from_int(plan.combined_residue);
              d["modulus"] = from_int(plan.combined_modulus);
              return d;
          });
    m.def("make_field",
          [](py::handle n) { return field_dict(prk::make_field(to_int(n))); });
    m.def("residual_degree", [](py::handle d, py::handle p) {
        return prk::residual_degree(prk::make_field(to_int(d)), to_int(p));
    });
    m.def("fundamental_unit", [](py::handle d) {
        const auto u = prk::fundamental_unit(prk::make_field(to_int(d)));
        py::dict out;
        out["t"] = from_int(u.t);
        out["u"] = from_int(u.u);
        out["sigma"] = u.sigma;
        out["norm"] = u.norm;
        out["regulator"] = u.regulator;
        return out;
    });
    m.def("regulator", [](py::handle d) {
        return prk::regulator(prk::make_field(to_int(d)));
    });
    m.def(
        "class_number",
        [](py::handle d, const std::string& method) {
            const auto cert = prk::class_number_certificate(
                prk::make_field(to_int(d)), method);
            py::dict out;
            out["h"] = from_int(cert.h);
            out["method"] = cert.method;
            out["bound"] = cert.bound ? py::object(py::float_(*cert.bound))
                                      : py::object(py::none());
            out["l_value"] = cert.l_value
                                 ? py::object(py::float_(*cert.l_value))
                                 : py::object(py::none());
            return out;
        },
        py::arg("d"), py::arg("method") = "auto");
    m.def("louboutin_bound", [](py::handle d) {
        return prk::louboutin_bound(prk::make_field(to_int(d)));
    });
    m.def("le_bound", [](py::handle d) {
        return prk::le_bound(prk::make_field(to_int(d)));
    });
    m.def("l_upper_bound", [](py::handle d) {
        return prk::l_upper_bound(prk::make_field(to_int(d)));
    });
    m.def("real_inequality_check", [](py::handle p) {
        return prk::real_inequality_check(to_int(p));
    });
    m.def("fibonacci_residue", [](py::handle d, py::handle p) {
        const auto fr = prk::generalized_fibonacci_mod(
            prk::make_field(to_int(d)), to_int(p));
        py::dict out;
        out["f"] = fr.f;
        out["q"] = from_int(fr.q);
        out["residue"] = from_int(fr.residue);
        out["trace_divisible"] = fr.trace_divisible;
        return out;
    });
    m.def("is_p_rational", [](py::handle d, py::handle p) {
        const prk::FieldDescriptor K = prk::make_field(to_int(d));
        const auto v = K.real
                           ? prk::is_p_rational_real(K, to_int(p))
                           : prk::is_p_rational_imaginary(K, to_int(p));
        return verdict_dict(v);
    });
    m.def("quadratic_subfield_radicands",
          [](const std::vector<py::object>& rads) {
              std::vector<prk::Int> rs;
              for (const auto& r : rads) rs.push_back(to_int(r));
              py::list out;
              for (const auto& k : prk::quadratic_subfield_radicands(rs)) {
                  out.append(from_int(k));
              }
              return out;
          });
    m.def("check_k_alpha", [](py::handle p, py::handle alpha) {
        return verdict_dict(prk::check_K_alpha(to_int(p), to_int(alpha)));
    });
    m.def("check_f_alpha", [](py::handle p, py::handle alpha) {
        return verdict_dict(prk::check_F_alpha(to_int(p), to_int(alpha)));
    });
    m.def("admissible_moduli",
          [](const std::vector<py::object>& rs, int count, py::handle lo,
             py::handle hi) {
              std::vector<prk::Int> rr;
              for (const auto& r : rs) rr.push_back(to_int(r));
              py::list out;
              for (const auto& v :
                   prk::admissible_moduli(rr, count, to_int(lo), to_int(hi))) {
                  out.append(from_int(v));
              }
              return out;
          });
    m.def("find_prime_square_divisors",
          [](const std::vector<py::object>& rs,
             const std::vector<py::object>& ms, py::handle limit) {
              std::vector<prk::Int> rr, mm;
              for (const auto& r : rs) rr.push_back(to_int(r));
              for (const auto& v : ms) mm.push_back(to_int(v));
              const auto sr =
                  prk::find_prime_square_divisors(rr, mm, to_int(limit));
              py::dict out;
              out["p"] = from_int(sr.p);
              out["scan_steps"] = sr.scan_steps;
              out["residue"] = from_int(sr.plan.combined_residue);
              out["modulus"] = from_int(sr.plan.combined_modulus);
              py::list shifts;
              for (const auto& [r, mv] : sr.shifts) {
                  shifts.append(py::make_tuple(from_int(r), from_int(mv)));
              }
              out["shifts"] = shifts;
              return out;
          });
    m.def(
        "scan_imaginary",
        [](int k, const std::string& variant, py::handle from,
           py::handle to, int jobs) {
            const auto rows = prk::scan_consecutive_imaginary(
                k,
                variant == "shifted" ? prk::ImaginaryVariant::shifted
                                     : prk::ImaginaryVariant::p_multiplied,
                to_int(from), to_int(to), jobs);
            py::list out;
            for (const auto& row : rows) {
                py::dict r;
                r["p"] = from_int(row.p);
                r["simultaneous"] = row.simultaneous;
                py::list entries;
                for (const auto& e : row.entries) {
                    py::dict ed;
                    ed["j"] = e.j;
                    ed["radicand"] = from_int(e.radicand);
                    ed["skipped"] = e.skipped;
                    if (!e.skipped) {
                        ed["kernel"] = from_int(e.kern);
                        ed["h"] = from_int(e.h);
                        ed["louboutin_bound"] = e.louboutin;
                        ed["p_divides_h"] = e.p_divides_h;
                    }
                    entries.append(ed);
                }
                r["entries"] = entries;
                out.append(r);
            }
            return out;
        },
        py::arg("k"), py::arg("variant"), py::arg("from_p"),
        py::arg("to_p"), py::arg("jobs") = 1);
    m.def(
        "scan_real",
        [](py::handle from, py::handle to, int jobs) {
            const auto rows =
                prk::scan_real_family(to_int(from), to_int(to), jobs);
            py::list out;
            for (const auto& row : rows) {
                py::dict r;
                r["p"] = from_int(row.p);
                r["all_squarefree"] = row.all_squarefree;
                r["simultaneous"] = row.simultaneous;
                py::list entries;
                for (const auto& e : row.entries) {
                    py::dict ed;
                    ed["c"] = e.c;
                    ed["value"] = from_int(e.value);
                    ed["squarefree"] = e.squarefree;
                    if (e.evaluated) {
                        ed["h"] = from_int(e.h);
                        ed["residue"] = from_int(e.residue);
                        ed["f"] = e.f;
                        ed["outcome"] =
                            std::string(prk::outcome_name(e.outcome));
                    }
                    entries.append(ed);
                }
                r["entries"] = entries;
                out.append(r);
            }
            return out;
        },
        py::arg("from_p"), py::arg("to_p"), py::arg("jobs") = 1);
    m.def("rho_prime", [](py::handle c, py::handle q) {
        return prk::rho_prime(to_int(c), to_int(q));
    });
    m.def("euler_density", [](py::handle c, long cutoff) {
        const auto rep = prk::euler_density(to_int(c), cutoff);
        py::dict out;
        out["c"] = from_int(rep.c);
        out["product_value"] = rep.product_value;
        out["terms_used"] = rep.terms_used;
        out["tail_bound"] = rep.tail_bound;
        out["reference_constant"] =
            rep.reference ? py::object(py::float_(rep.reference->value))
                          : py::object(py::none());
        out["agreement"] = rep.agreement
                               ? py::object(py::bool_(*rep.agreement))
                               : py::object(py::none());
        return out;
    });
    m.def("lowerbound_product", [](long terms) {
        const auto r = prk::lowerbound_product(terms);
        py::dict out;
        out["value"] = r.value;
        out["tail_bound"] = r.tail_bound;
        out["terms"] = r.terms;
        return out;
    });
    m.def("empirical_density", [](py::handle c, long X) {
        const auto r = prk::empirical_density(to_int(c), X);
        py::dict out;
        out["count_squarefree"] = r.count_squarefree;
        out["prime_count"] = r.prime_count;
        out["ratio"] = r.ratio;
        return out;
    });
    m.def("intersection_lower_bound",
          [](const std::vector<double>& deltas) {
              return prk::intersection_lower_bound(deltas);
          });
    m.def("run_command", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = prk::run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
