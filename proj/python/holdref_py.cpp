#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <json.hpp>

#include "holdref/cli/run_config.hpp"
#include "holdref/error.hpp"
#include "holdref/functional.hpp"
#include "holdref/hermite_hadamard.hpp"
#include "holdref/holder.hpp"
#include "holdref/partition.hpp"
#include "holdref/quadrature.hpp"
#include "holdref/search.hpp"

namespace py = pybind11;
using namespace holdref;

namespace {

// Accepts an expression string, a number, or a sequence of samples.
FunctionSpec to_spec(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return FunctionSpec::parse(obj.cast<std::string>());
  if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj))
    return FunctionSpec::constant(obj.cast<double>());
  return FunctionSpec::samples(obj.cast<std::vector<double>>());
}

CornerContext make_context(const Rectangle& rect, const py::object& f, const py::object& f_st,
                           double p, const QuadratureRule& rule, bool verbatim) {
  return CornerContext{rect,
                       to_spec(f),
                       to_spec(f_st),
                       ConjugateExponents::from_p(p),
                       rule,
                       verbatim ? MeanSign::Verbatim : MeanSign::Corrected};
}

py::object json_to_py(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical and refined Hoelder bounds for isotonic linear functionals";

  py::register_exception<Error>(m, "HoldrefError", PyExc_ValueError);

  py::class_<IndexRange1D>(m, "IndexRange")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_readwrite("n", &IndexRange1D::n);
  py::class_<IndexGrid2D>(m, "IndexGrid")
      .def(py::init<std::size_t, std::size_t>(), py::arg("n"), py::arg("m"))
      .def_readwrite("n", &IndexGrid2D::n)
      .def_readwrite("m", &IndexGrid2D::m);
  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &Interval::a)
      .def_readwrite("b", &Interval::b);
  py::class_<Rectangle>(m, "Rectangle")
      .def(py::init<double, double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"),
           py::arg("d"))
      .def_readwrite("a", &Rectangle::a)
      .def_readwrite("b", &Rectangle::b)
      .def_readwrite("c", &Rectangle::c)
      .def_readwrite("d", &Rectangle::d);

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def(py::init([](const std::string& family, int panels, int nodes_per_panel) {
             QuadratureRule r{parse_quadrature_family(family), panels, nodes_per_panel};
             validate(r);
             return r;
           }),
           py::arg("family") = "gauss-legendre-composite", py::arg("panels") = 32,
           py::arg("nodes_per_panel") = 5)
      .def_property_readonly("family",
                             [](const QuadratureRule& r) { return std::string(to_string(r.family)); })
      .def_readonly("panels", &QuadratureRule::panels)
      .def_readonly("nodes_per_panel", &QuadratureRule::nodes_per_panel);

  m.def(
      "integrate",
      [](const py::object& f, const Domain& domain, const QuadratureRule& rule) {
        const FunctionSpec spec = to_spec(f);
        const QuadResult r = std::holds_alternative<Interval>(domain)
                                 ? integrate_1d(spec, std::get<Interval>(domain), rule)
                                 : integrate_2d(spec, std::get<Rectangle>(domain), rule);
        return py::make_tuple(r.value, r.error_estimate);
      },
      py::arg("f"), py::arg("domain"), py::arg("rule") = QuadratureRule{},
      "Integral of f over an Interval or Rectangle; returns (value, error_estimate).");

  py::class_<Functional>(m, "Functional")
      .def_static(
          "discrete_sum",
          [](const Domain& domain, std::vector<double> weights) {
            return Functional::discrete_sum(domain, std::move(weights));
          },
          py::arg("domain"), py::arg("weights") = std::vector<double>{})
      .def_static(
          "integral",
          [](const Domain& domain, const QuadratureRule& rule) {
            if (const auto* iv = std::get_if<Interval>(&domain)) return Functional::integral(*iv, rule);
            if (const auto* r = std::get_if<Rectangle>(&domain)) return Functional::integral(*r, rule);
            throw Error(ErrorKind::InvalidArgument, "integral needs an Interval or Rectangle");
          },
          py::arg("domain"), py::arg("rule") = QuadratureRule{})
      .def("__call__", [](const Functional& A, const py::object& f) { return A(to_spec(f)); })
      .def("refined", &Functional::refined)
      .def_property_readonly("is_quadrature", &Functional::is_quadrature);

  py::class_<Partition>(m, "Partition")
      .def_static(
          "make",
          [](const std::string& kind, const Domain& domain, std::optional<int> m) {
            return Partition::make(parse_partition_kind(kind), domain, m);
          },
          py::arg("kind"), py::arg("domain"), py::arg("m") = py::none())
      .def_static(
          "from_members",
          [](const Domain& domain, const py::list& members) {
            std::vector<FunctionSpec> specs;
            for (const auto& item : members) specs.push_back(to_spec(item));
            return Partition::from_members(domain, std::move(specs));
          },
          py::arg("domain"), py::arg("members"))
      .def_property_readonly("kind",
                             [](const Partition& p) { return std::string(to_string(p.kind())); })
      .def("__len__", &Partition::size)
      .def("weights_at", [](const Partition& p, double x, double y) { return p.weights_at({x, y}); },
           py::arg("x"), py::arg("y") = 0.0);

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("regime",
                             [](const BoundReport& r) { return std::string(to_string(r.regime)); })
      .def_readonly("p", &BoundReport::p)
      .def_readonly("q", &BoundReport::q)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("classical", &BoundReport::classical)
      .def_readonly("terms", &BoundReport::terms)
      .def_readonly("refined", &BoundReport::refined)
      .def_readonly("slack_refined", &BoundReport::slack_refined)
      .def_readonly("refinement_gap", &BoundReport::refinement_gap)
      .def_readonly("tightness", &BoundReport::tightness);

  py::class_<ChainReport>(m, "ChainReport")
      .def_readonly("lhs", &ChainReport::lhs)
      .def_readonly("refined", &ChainReport::refined)
      .def_readonly("classical", &ChainReport::classical)
      .def_readonly("lower_slack", &ChainReport::lower_slack)
      .def_readonly("upper_slack", &ChainReport::upper_slack)
      .def_readonly("min_slack", &ChainReport::min_slack)
      .def_readonly("tolerance", &ChainReport::tolerance)
      .def_readonly("pass_", &ChainReport::pass)
      .def_readonly("bound", &ChainReport::bound)
      .def("__bool__", [](const ChainReport& c) { return c.pass; });

  m.def("conjugate_of", &conjugate_of, py::arg("p"));
  m.def(
      "young_gap",
      [](double a, double b, double t) {
        const YoungGap y = young_gap(a, b, t);
        return py::make_tuple(y.lhs, y.rhs, y.gap);
      },
      py::arg("a"), py::arg("b"), py::arg("t"), "Returns (a^t b^(1-t), t a + (1-t) b, gap).");

  m.def(
      "classical_holder",
      [](const Functional& A, const py::object& f, const py::object& g, double p,
         const py::object& w) {
        return classical_holder(A, to_spec(w), to_spec(f), to_spec(g), ConjugateExponents::from_p(p));
      },
      py::arg("A"), py::arg("f"), py::arg("g"), py::arg("p"), py::arg("w") = 1.0);
  m.def(
      "improved_holder",
      [](const Functional& A, const py::object& f, const py::object& g, double p,
         const Partition& part, const py::object& w) {
        return improved_holder(A, to_spec(w), to_spec(f), to_spec(g), ConjugateExponents::from_p(p),
                               part);
      },
      py::arg("A"), py::arg("f"), py::arg("g"), py::arg("p"), py::arg("partition"),
      py::arg("w") = 1.0);
  m.def(
      "reversed_holder",
      [](const Functional& A, const py::object& f, const py::object& g, double p,
         const py::object& w) {
        return reversed_holder(A, to_spec(w), to_spec(f), to_spec(g), ConjugateExponents::from_p(p));
      },
      py::arg("A"), py::arg("f"), py::arg("g"), py::arg("p"), py::arg("w") = 1.0);
  m.def(
      "verify_chain",
      [](const Functional& A, const py::object& f, const py::object& g, double p,
         const Partition& part, const py::object& w, double relative_tolerance) {
        ChainOptions opt;
        opt.relative_tolerance = relative_tolerance;
        return verify_chain(A, to_spec(w), to_spec(f), to_spec(g), ConjugateExponents::from_p(p),
                            part, opt);
      },
      py::arg("A"), py::arg("f"), py::arg("g"), py::arg("p"), py::arg("partition"),
      py::arg("w") = 1.0, py::arg("relative_tolerance") = kChainTolerance);

  m.def(
      "hh_identity",
      [](const Rectangle& rect, const py::object& f, const py::object& f_st, bool verbatim,
         const QuadratureRule& rule, double tol) {
        const CornerContext ctx = make_context(rect, f, f_st, 2.0, rule, verbatim);
        const LeftSide left = hh_left_side(ctx);
        const IdentityCheck c = verify_hh_identity(ctx, tol);
        py::dict out;
        out["corner_average"] = left.corner_average;
        out["mean"] = left.mean;
        out["edge_term"] = left.edge_term;
        out["left"] = c.left;
        out["right"] = c.right;
        out["residual"] = c.residual;
        out["pass"] = c.pass;
        return out;
      },
      py::arg("rect"), py::arg("f"), py::arg("f_st"), py::arg("paper_verbatim_sign") = false,
      py::arg("rule") = QuadratureRule{}, py::arg("tol") = 1e-8);
  m.def(
      "corner_bounds",
      [](const Rectangle& rect, const py::object& f, const py::object& f_st, double p,
         const QuadratureRule& rule) {
        const CornerBounds b = compare_corner_bounds(make_context(rect, f, f_st, p, rule, false));
        py::dict out;
        out["lhs_abs"] = b.lhs_abs;
        out["edge_term"] = b.edge_term;
        out["kernel_abs"] = b.kernel_abs;
        out["holder_refined"] = b.holder_refined;
        out["improved"] = b.bound_improved;
        out["brackets"] = b.brackets;
        out["classical"] = b.bound_classical;
        out["pass"] = b.pass;
        return out;
      },
      py::arg("rect"), py::arg("f"), py::arg("f_st"), py::arg("p") = 2.0,
      py::arg("rule") = QuadratureRule{});
  m.def(
      "corner_bound_values",
      [](const Rectangle& rect, const Corners& abs_corners, double p) {
        const auto exps = ConjugateExponents::from_p(p);
        const ImprovedCornerBound imp = corner_bound_improved(rect, abs_corners, exps);
        return py::make_tuple(imp.bound, corner_bound_classical(rect, abs_corners, exps));
      },
      py::arg("rect"), py::arg("abs_corners"), py::arg("p"),
      "Returns (improved, classical) from |f_st| at corners (a,c), (a,d), (b,c), (b,d).");
  m.def(
      "kernel_moment",
      [](double p, const QuadratureRule& rule) {
        const KernelMoment km = kernel_moment(p, rule);
        py::dict out;
        out["value"] = km.value;
        out["placements"] = km.placements;
        out["closed_form"] = km.closed_form;
        out["max_spread"] = km.max_spread;
        return out;
      },
      py::arg("p"), py::arg("rule") = QuadratureRule{});

  m.def(
      "fuzz_chain",
      [](const std::string& fuzz_case, std::uint64_t seed, std::uint64_t trials,
         const py::kwargs& ranges) {
        FuzzConfig cfg;
        cfg.fuzz_case = parse_fuzz_case(fuzz_case);
        cfg.seed = seed;
        cfg.trials = trials;
        for (const auto& [key, value] : ranges) {
          const auto k = key.cast<std::string>();
          if (k == "n_min") cfg.n_min = value.cast<std::size_t>();
          else if (k == "n_max") cfg.n_max = value.cast<std::size_t>();
          else if (k == "m_min") cfg.m_min = value.cast<std::size_t>();
          else if (k == "m_max") cfg.m_max = value.cast<std::size_t>();
          else if (k == "p_min") cfg.p_min = value.cast<double>();
          else if (k == "p_max") cfg.p_max = value.cast<double>();
          else if (k == "value_min") cfg.value_min = value.cast<double>();
          else if (k == "value_max") cfg.value_max = value.cast<double>();
          else if (k == "relative_tolerance") cfg.relative_tolerance = value.cast<double>();
          else throw Error(ErrorKind::InvalidArgument, "unknown fuzz option '" + k + "'");
        }
        std::string text;
        {
          py::gil_scoped_release release;
          text = fuzz_chain(normalized(cfg)).to_json();
        }
        return json_to_py(text);
      },
      py::arg("case"), py::arg("seed") = 0, py::arg("trials") = 1000,
      "Seeded chain-violation search; returns the summary as a dict.");

  m.def(
      "run",
      [](const std::string& command, const std::string& config_json, const std::string& format) {
        cli::RunConfig cfg =
            cli::make_run_config(cli::parse_command(command), nlohmann::json::parse(config_json));
        cfg.format = cli::parse_output_format(format);
        cfg.out_path.clear();
        std::ostringstream out, err;
        const int code = cli::run_config(cfg, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("config_json"), py::arg("format") = "csv",
      "Runs a CLI command on a JSON config; returns (exit_code, report, diagnostics).");

  m.attr("__version__") = "0.1.0";
}
