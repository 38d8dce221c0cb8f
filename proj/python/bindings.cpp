#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sderand/cli.hpp"
#include "sderand/errors.hpp"
#include "sderand/experiments.hpp"
#include "sderand/report.hpp"

namespace py = pybind11;
using namespace sderand;

namespace {

LadderConfig make_ladder(const DriftSpec& drift, Scheme scheme, std::vector<std::size_t> ns, std::size_t n_ref,
                         std::size_t samples, double p, std::uint64_t seed, std::size_t workers) {
    LadderConfig c;
    c.drift = drift;
    c.scheme = scheme;
    c.ns = std::move(ns);
    c.n_ref = n_ref;
    c.samples = samples;
    c.p = p;
    c.master_seed = seed;
    c.workers = workers;
    return c;
}

py::dict fit_to_dict(const OrderFit& fit) {
    py::dict d;
    d["slope"] = fit.slope;
    d["intercept"] = fit.intercept;
    d["r_squared"] = fit.r_squared;
    d["slope_std_error"] = fit.slope_std_error;
    d["per_point_ci"] = fit.per_point_ci;
    d["degenerate"] = fit.degenerate;
    d["degenerate_zero"] = fit.degenerate_zero;
    return d;
}

py::dict ladder_to_dict(const ErrorLadder& ladder) {
    py::dict d;
    d["ns"] = ladder.ns();
    d["estimates"] = ladder.estimates();
    d["std_errors"] = ladder.std_errors();
    d["max_drift_excursion"] = ladder.max_drift_excursion;
    d["drift_bound_holds"] = ladder.drift_bound_holds;
    return d;
}

py::dict probe_to_dict(const IProbeResult& r) {
    py::dict d;
    d["kind"] = std::string(to_string(r.kind));
    d["n"] = r.n;
    d["moment"] = r.moment;
    d["estimate"] = r.estimate;
    d["std_error"] = r.std_error;
    d["drift_bound_holds"] = r.drift_bound_holds;
    return d;
}

ProbeConfig make_probe(const DriftSpec& drift, ObservableKind observable, std::size_t n, std::size_t q,
                       std::size_t samples, double p, std::uint64_t seed, std::size_t workers) {
    ProbeConfig c;
    c.drift = drift;
    c.observable = {observable, drift.d};
    c.n = n;
    c.q = q;
    c.samples = samples;
    c.p = p;
    c.master_seed = seed;
    c.workers = workers;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Randomised Euler-Maruyama, randomised quadrature and strong-order experiments.";
    m.attr("__version__") = kToolVersion;

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::vector<std::uint64_t>>(), py::arg("master_seed"),
             py::arg("path") = std::vector<std::uint64_t>{})
        .def("child", py::overload_cast<std::uint64_t>(&RngStream::child, py::const_))
        .def("uniform", &RngStream::uniform)
        .def("normal", &RngStream::normal)
        .def_property_readonly("master_seed", &RngStream::master_seed)
        .def_property_readonly("path", &RngStream::path);

    py::class_<BrownianPath>(m, "BrownianPath")
        .def_property_readonly("n", &BrownianPath::n)
        .def_property_readonly("d", &BrownianPath::d)
        .def_property_readonly("positions", &BrownianPath::positions)
        .def("increments", &BrownianPath::increments)
        .def("__eq__", [](const BrownianPath& a, const BrownianPath& b) { return a == b; });

    py::class_<RandomOffsets>(m, "RandomOffsets")
        .def(py::init<std::vector<double>>())
        .def_property_readonly("taus", &RandomOffsets::taus)
        .def("__len__", &RandomOffsets::n);

    m.def("kappa", &kappa, py::arg("n"), py::arg("s"));
    m.def("kappa_tau", &kappa_tau, py::arg("n"), py::arg("s"), py::arg("offsets"));
    m.def("sample_brownian", &sample_brownian, py::arg("n_fine"), py::arg("d"), py::arg("stream"));
    m.def("coarsen_path", &coarsen_path, py::arg("path"), py::arg("factor"));
    m.def("sample_offsets", &sample_offsets, py::arg("n"), py::arg("stream"));

    py::enum_<DriftFamily>(m, "DriftFamily")
        .value("Zero", DriftFamily::Zero)
        .value("Constant", DriftFamily::Constant)
        .value("TimeOnly", DriftFamily::TimeOnly)
        .value("Product", DriftFamily::Product)
        .value("Weierstrass", DriftFamily::Weierstrass)
        .value("SpaceOnly", DriftFamily::SpaceOnly);

    py::class_<DriftSpec>(m, "DriftSpec")
        .def(py::init<>())
        .def_readwrite("family", &DriftSpec::family)
        .def_readwrite("alpha", &DriftSpec::alpha)
        .def_readwrite("beta", &DriftSpec::beta)
        .def_readwrite("K", &DriftSpec::amplitude)
        .def_readwrite("d", &DriftSpec::d)
        .def_readwrite("anchor", &DriftSpec::anchor)
        .def_readwrite("constant_value", &DriftSpec::constant_value)
        .def_readwrite("L", &DriftSpec::truncation)
        .def_static("zero", &DriftSpec::zero, py::arg("d") = 1)
        .def_static("constant", &DriftSpec::constant, py::arg("value"))
        .def_static("time_only", &DriftSpec::time_only, py::arg("alpha"), py::arg("K") = 1.0,
                    py::arg("anchor") = kDefaultAnchor, py::arg("d") = 1)
        .def_static("product", &DriftSpec::product, py::arg("alpha"), py::arg("beta"), py::arg("K") = 1.0,
                    py::arg("d") = 1, py::arg("anchor") = kDefaultAnchor)
        .def_static("weierstrass", &DriftSpec::weierstrass, py::arg("alpha"), py::arg("beta"), py::arg("K") = 1.0,
                    py::arg("d") = 1, py::arg("L") = 12, py::arg("anchor") = kDefaultAnchor)
        .def_static("space_only", &DriftSpec::space_only, py::arg("beta"), py::arg("K") = 1.0, py::arg("d") = 1)
        .def("gamma", &DriftSpec::gamma)
        .def("validate", &DriftSpec::validate);

    py::enum_<ObservableKind>(m, "ObservableKind")
        .value("UnitScalar", ObservableKind::UnitScalar)
        .value("SmoothDecay", ObservableKind::SmoothDecay);

    m.def("eval_drift", [](const DriftSpec& spec, double t, std::vector<double> x) { return eval_drift(spec, t, x); },
          py::arg("spec"), py::arg("t"), py::arg("x"));
    m.def("eval_observable",
          [](ObservableKind kind, double t, std::vector<double> x) {
              return eval_observable({kind, x.size()}, t, x);
          },
          py::arg("kind"), py::arg("t"), py::arg("x"));
    m.def("probe_holder_seminorms",
          [](const DriftSpec& spec, std::size_t n_pairs, const RngStream& stream) {
              const HolderProbe probe = probe_holder_seminorms(spec, n_pairs, stream);
              return py::make_tuple(probe.time_seminorm, probe.space_seminorm);
          },
          py::arg("spec"), py::arg("n_pairs"), py::arg("stream"));

    py::enum_<Scheme>(m, "Scheme")
        .value("StandardEM", Scheme::StandardEM)
        .value("RandomisedEM", Scheme::RandomisedEM);

    auto states_of = [](const DiscreteTrajectory& t) { return t.states; };
    m.def("simulate_standard_em",
          [states_of](const DriftSpec& spec, const BrownianPath& path, std::vector<double> x0) {
              return states_of(simulate_standard_em(Drift(spec), path, x0));
          },
          py::arg("drift"), py::arg("path"), py::arg("x0"), "Node states, row-major [n+1][d].");
    m.def("simulate_randomised_em",
          [states_of](const DriftSpec& spec, const BrownianPath& path, const RandomOffsets& offsets,
                      std::vector<double> x0) {
              return states_of(simulate_randomised_em(Drift(spec), path, offsets, x0));
          },
          py::arg("drift"), py::arg("path"), py::arg("offsets"), py::arg("x0"));
    m.def("simulate_reference",
          [states_of](const DriftSpec& spec, const BrownianPath& path, std::vector<double> x0, const RngStream& stream,
                      std::size_t max_ladder_n) {
              return states_of(simulate_reference(Drift(spec), path, x0, stream, max_ladder_n));
          },
          py::arg("drift"), py::arg("fine_path"), py::arg("x0"), py::arg("stream"), py::arg("max_ladder_n"));

    py::class_<TimeFunction>(m, "TimeFunction")
        .def("__call__", &TimeFunction::operator())
        .def("describe", &TimeFunction::describe);
    m.def("constant_integrand", [](double c) { return TimeFunction(integrand::Constant{c}); });
    m.def("affine_integrand", [](double slope, double intercept) { return TimeFunction(integrand::Affine{slope, intercept}); },
          py::arg("slope"), py::arg("intercept") = 0.0);
    m.def("power_integrand",
          [](double anchor, double exponent, double scale) { return TimeFunction(integrand::Power{anchor, exponent, scale}); },
          py::arg("anchor"), py::arg("exponent"), py::arg("scale") = 1.0);
    m.def("weierstrass_integrand",
          [](double alpha, double anchor, int truncation, double scale) {
              return TimeFunction(integrand::Weierstrass{alpha, anchor, truncation, scale});
          },
          py::arg("alpha"), py::arg("anchor") = kDefaultAnchor, py::arg("L") = 12, py::arg("scale") = 1.0);

    m.def("randomised_quadrature",
          [](const TimeFunction& g, std::size_t n, const RandomOffsets& offsets) {
              return randomised_quadrature(g, n, offsets).values;
          },
          py::arg("g"), py::arg("n"), py::arg("offsets"));
    m.def("leftpoint_quadrature", [](const TimeFunction& g, std::size_t n) { return leftpoint_quadrature(g, n).values; },
          py::arg("g"), py::arg("n"));
    m.def("integral_oracle", &integral_oracle, py::arg("g"), py::arg("t"));
    m.def("martingale_diagnostic",
          [](const TimeFunction& g, std::size_t n, std::size_t samples, std::uint64_t seed, std::size_t workers) {
              const MartingaleReport r = martingale_diagnostic(g, n, samples, RngStream(seed), workers);
              py::dict d;
              std::vector<double> means, ses;
              for (const auto& s : r.steps) {
                  means.push_back(s.mean);
                  ses.push_back(s.std_error);
              }
              d["means"] = means;
              d["std_errors"] = ses;
              d["flagged_steps"] = r.flagged_steps;
              d["terminal_mean"] = r.terminal_mean;
              d["terminal_truth"] = r.terminal_truth;
              d["terminal_unbiased"] = r.terminal_unbiased;
              return d;
          },
          py::arg("g"), py::arg("n"), py::arg("samples"), py::arg("seed") = 0, py::arg("workers") = 1);
    m.def("quadrature_order_experiment",
          [](const TimeFunction& g, std::vector<std::size_t> ns, std::size_t samples, std::uint64_t seed, double p,
             std::size_t workers) {
              const auto r = quadrature_order_experiment(g, ns, samples, RngStream(seed), p, workers);
              py::dict d;
              d["ns"] = r.ns;
              d["randomised_error"] = r.randomised_error;
              d["leftpoint_error"] = r.leftpoint_error;
              d["randomised_fit"] = fit_to_dict(r.randomised_fit);
              d["leftpoint_fit"] = fit_to_dict(r.leftpoint_fit);
              return d;
          },
          py::arg("g"), py::arg("ns"), py::arg("samples"), py::arg("seed") = 0, py::arg("p") = 2.0,
          py::arg("workers") = 1);

    m.def("fit_power_law",
          [](std::vector<std::size_t> ns, std::vector<double> estimates, std::vector<double> std_errors) {
              return fit_to_dict(fit_power_law(ns, estimates, std_errors));
          },
          py::arg("ns"), py::arg("estimates"), py::arg("std_errors") = std::vector<double>{});
    m.def("run_ladder",
          [](const DriftSpec& drift, Scheme scheme, std::vector<std::size_t> ns, std::size_t n_ref, std::size_t samples,
             double p, std::uint64_t seed, std::size_t workers) {
              const ErrorLadder ladder = run_ladder(make_ladder(drift, scheme, std::move(ns), n_ref, samples, p, seed, workers));
              py::dict d = ladder_to_dict(ladder);
              if (ladder.points.size() >= 3) d["fit"] = fit_to_dict(fit_order(ladder));
              return d;
          },
          py::arg("drift"), py::arg("scheme"), py::arg("ns"), py::arg("n_ref"), py::arg("samples"), py::arg("p") = 2.0,
          py::arg("seed") = 0, py::arg("workers") = 1);
    m.def("strong_error_estimate",
          [](const DriftSpec& drift, Scheme scheme, std::size_t n, std::size_t n_ref, std::size_t samples, double p,
             std::uint64_t seed) {
              const LadderPoint point = strong_error_estimate(make_ladder(drift, scheme, {n}, n_ref, samples, p, seed, 1), n);
              return py::make_tuple(point.estimate, point.std_error);
          },
          py::arg("drift"), py::arg("scheme"), py::arg("n"), py::arg("n_ref"), py::arg("samples"), py::arg("p") = 2.0,
          py::arg("seed") = 0);
    m.def("compare_schemes",
          [](const DriftSpec& drift, std::vector<std::size_t> ns, std::size_t n_ref, std::size_t samples, double p,
             std::uint64_t seed, std::size_t workers) {
              const auto c = compare_schemes(
                  make_ladder(drift, Scheme::RandomisedEM, std::move(ns), n_ref, samples, p, seed, workers));
              py::dict d;
              d["standard"] = ladder_to_dict(c.standard);
              d["randomised"] = ladder_to_dict(c.randomised);
              d["standard_fit"] = fit_to_dict(c.standard_fit);
              d["randomised_fit"] = fit_to_dict(c.randomised_fit);
              d["slope_gap"] = c.slope_gap;
              return d;
          },
          py::arg("drift"), py::arg("ns"), py::arg("n_ref"), py::arg("samples"), py::arg("p") = 2.0,
          py::arg("seed") = 0, py::arg("workers") = 1);
    m.def("measure_I1",
          [](const DriftSpec& drift, std::size_t n, std::size_t q, std::size_t samples, double p, std::uint64_t seed,
             std::size_t workers) {
              return probe_to_dict(measure_I1(make_probe(drift, ObservableKind::UnitScalar, n, q, samples, p, seed, workers)));
          },
          py::arg("drift"), py::arg("n"), py::arg("q") = 16, py::arg("samples") = 200, py::arg("p") = 2.0,
          py::arg("seed") = 0, py::arg("workers") = 1);
    m.def("measure_I2",
          [](const DriftSpec& drift, ObservableKind observable, std::size_t n, std::size_t q, std::size_t samples,
             double p, std::uint64_t seed, std::size_t workers) {
              return probe_to_dict(measure_I2(make_probe(drift, observable, n, q, samples, p, seed, workers)));
          },
          py::arg("drift"), py::arg("observable"), py::arg("n"), py::arg("q") = 16, py::arg("samples") = 200,
          py::arg("p") = 2.0, py::arg("seed") = 0, py::arg("workers") = 1);

    m.def("emit_csv",
          [](const std::vector<std::tuple<std::size_t, std::string, double, double, double, std::size_t, std::uint64_t>>& rows) {
              std::vector<CsvRow> out;
              for (const auto& [n, scheme, p, est, se, samples, seed] : rows) out.push_back({n, scheme, p, est, se, samples, seed});
              return emit_csv(out);
          },
          py::arg("rows"));

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ValueError);
    py::register_exception<UnsupportedFunctionError>(m, "UnsupportedFunctionError", PyExc_ValueError);
}
