#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "stopwise/bounds.hpp"
#include "stopwise/order_monotonicity.hpp"
#include "stopwise/quality_model.hpp"
#include "stopwise/simulate.hpp"
#include "stopwise/value_curve.hpp"

namespace py = pybind11;
using namespace stopwise;

namespace {

ThresholdResult threshold_for(const QualityModel& model, long n, double tol) {
  if (n <= 0) n = model.intrinsic_n();
  if (n <= 0) {
    throw std::invalid_argument(
        "model has no intrinsic horizon; pass n explicitly");
  }
  return optimal_threshold(model.mu_sequence(n), n, tol);
}

ValueCurve curve_for(const QualityModel& model, long n) {
  if (n <= 0) n = model.intrinsic_n();
  if (n <= 0) {
    throw std::invalid_argument(
        "model has no intrinsic horizon; pass n explicitly");
  }
  std::vector<double> mu = model.mu_sequence(n);
  return full_curve(mu, mu[0], n, model.label());
}

}  // namespace

PYBIND11_MODULE(_stopwise, m) {
  m.doc() = "Payoff curves and optimal thresholds for quality-based hiring";

  py::class_<QualityModel>(m, "Model")
      .def_static("parse", &parse_model_spec, py::arg("spec"))
      .def_static("exponential", &QualityModel::exponential)
      .def_static("uniform", &QualityModel::uniform)
      .def_static("normal", &QualityModel::normal)
      .def_static("pareto", &QualityModel::pareto, py::arg("alpha"))
      .def_static("bernoulli", &QualityModel::bernoulli, py::arg("p"))
      .def_static("classical_indicator", &QualityModel::classical_indicator,
                  py::arg("n"))
      .def_static("permutation", &QualityModel::permutation, py::arg("n"))
      .def_static("finite_multiset", &QualityModel::finite_multiset,
                  py::arg("values"))
      .def_static("cdf_table", &QualityModel::cdf_table, py::arg("xs"),
                  py::arg("Fs"), py::arg("label") = std::string("cdf"))
      .def_property_readonly("label", &QualityModel::label)
      .def_property_readonly("iid", &QualityModel::iid)
      .def_property_readonly("has_atoms", &QualityModel::has_atoms)
      .def_property_readonly("intrinsic_n", &QualityModel::intrinsic_n)
      .def("mu", &QualityModel::mu)
      .def("mu_max", &QualityModel::mu_max, py::arg("k"))
      .def("mu_increment", &QualityModel::mu_increment, py::arg("k"))
      .def("mu_sequence", &QualityModel::mu_sequence, py::arg("n"))
      .def("quantile", &QualityModel::quantile, py::arg("u"))
      .def("__repr__", [](const QualityModel& q) {
        return "Model('" + q.label() + "')";
      });

  py::class_<ThresholdResult>(m, "ThresholdResult")
      .def_readonly("n", &ThresholdResult::n)
      .def_readonly("c_star", &ThresholdResult::c_star)
      .def_readonly("v_star", &ThresholdResult::v_star)
      .def_readonly("harmonic_tail", &ThresholdResult::harmonic_tail)
      .def_readonly("satisfies_theorem_bound",
                    &ThresholdResult::satisfies_theorem_bound)
      .def_readonly("degenerate", &ThresholdResult::degenerate)
      .def("__repr__", [](const ThresholdResult& r) {
        return "ThresholdResult(n=" + std::to_string(r.n) +
               ", c_star=" + std::to_string(r.c_star) +
               ", v_star=" + std::to_string(r.v_star) + ")";
      });

  py::class_<ValueCurve>(m, "ValueCurve")
      .def_readonly("n", &ValueCurve::n)
      .def_readonly("model_label", &ValueCurve::model_label)
      .def_readonly("values", &ValueCurve::values)
      .def_readonly("diffs", &ValueCurve::diffs);

  py::class_<SimReport>(m, "SimReport")
      .def_readonly("estimate", &SimReport::estimate)
      .def_readonly("std_error", &SimReport::std_error)
      .def_readonly("best_pick_rate", &SimReport::best_pick_rate)
      .def_readonly("trials", &SimReport::trials)
      .def("__repr__", [](const SimReport& r) {
        return "SimReport(estimate=" + std::to_string(r.estimate) +
               ", std_error=" + std::to_string(r.std_error) + ")";
      });

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("c", &SweepPoint::c)
      .def_readonly("estimate", &SweepPoint::estimate)
      .def_readonly("std_error", &SweepPoint::std_error);

  py::class_<SweepReport>(m, "SweepReport")
      .def_readonly("n", &SweepReport::n)
      .def_readonly("trials", &SweepReport::trials)
      .def_readonly("seed", &SweepReport::seed)
      .def_readonly("workers", &SweepReport::workers)
      .def_readonly("per_c", &SweepReport::per_c)
      .def_readonly("argmax_c", &SweepReport::argmax_c);

  py::class_<ArgmaxReport>(m, "ArgmaxReport")
      .def_readonly("c_hat", &ArgmaxReport::c_hat)
      .def_readonly("estimate", &ArgmaxReport::estimate)
      .def_readonly("std_error", &ArgmaxReport::std_error)
      .def_readonly("analytic_c_star", &ArgmaxReport::analytic_c_star)
      .def_readonly("analytic_v_star", &ArgmaxReport::analytic_v_star)
      .def_readonly("separated", &ArgmaxReport::separated);

  py::class_<Bracket>(m, "Bracket")
      .def_readonly("lower", &Bracket::lower)
      .def_readonly("upper", &Bracket::upper);

  py::class_<BernoulliBeta>(m, "BernoulliBeta")
      .def_readonly("g_alpha", &BernoulliBeta::g_alpha)
      .def_readonly("beta", &BernoulliBeta::beta);

  py::class_<SignViolation>(m, "SignViolation")
      .def_readonly("j", &SignViolation::j)
      .def_readonly("k", &SignViolation::k)
      .def_readonly("value", &SignViolation::value);

  m.def("threshold", &threshold_for, py::arg("model"), py::arg("n") = 0,
        py::arg("tol") = 0.0,
        "Optimal threshold of the model on a horizon of n candidates");
  m.def("curve", &curve_for, py::arg("model"), py::arg("n") = 0,
        "Payoff of every threshold on a horizon of n candidates");

  m.def(
      "value_at",
      [](const std::vector<double>& mu_seq, double mu, long n, long c) {
        return value_at(mu_seq, mu, n, c);
      },
      py::arg("mu_seq"), py::arg("mu"), py::arg("n"), py::arg("c"));
  m.def(
      "forward_diff",
      [](const std::vector<double>& mu_seq, long n, long c) {
        return forward_diff(mu_seq, n, c);
      },
      py::arg("mu_seq"), py::arg("n"), py::arg("c"));
  m.def(
      "second_diff",
      [](const std::vector<double>& mu_seq, long c) {
        return second_diff(mu_seq, c);
      },
      py::arg("mu_seq"), py::arg("c"));
  m.def(
      "optimal_threshold",
      [](const std::vector<double>& mu_seq, long n, double tol) {
        return optimal_threshold(mu_seq, n, tol);
      },
      py::arg("mu_seq"), py::arg("n"), py::arg("tol") = 0.0);
  m.def(
      "argmax_first",
      [](const std::vector<double>& values) { return argmax_first(values); },
      py::arg("values"));

  m.def(
      "discrete_derivative",
      [](const std::vector<double>& mu_seq, int j, long k) {
        return discrete_derivative(mu_seq, j, k);
      },
      py::arg("mu_seq"), py::arg("j"), py::arg("k"));
  m.def(
      "sign_alternation_check",
      [](const std::vector<double>& mu_seq, int j_max) {
        return sign_alternation_check(mu_seq, j_max);
      },
      py::arg("mu_seq"), py::arg("j_max"));
  m.def(
      "prop3_identity_residual",
      [](const std::vector<double>& pool, int j, long k) {
        return prop3_identity_residual(order_stat_means(pool), j, k);
      },
      py::arg("pool"), py::arg("j"), py::arg("k"),
      "Floating-point residual of the derivative identity on a finite pool");
  m.def(
      "prop3_identity_residual_exact",
      [](const std::vector<long long>& pool, int j, long k) {
        Rational r = prop3_identity_residual_exact(pool, j, k);
        return py::make_tuple(r.num(), r.den());
      },
      py::arg("pool"), py::arg("j"), py::arg("k"),
      "Exact rational residual (numerator, denominator) on an integer pool");

  m.def("harmonic_tail_from", &harmonic_tail_from, py::arg("c_star"),
        py::arg("n"));
  m.def("harmonic_bound_holds", &harmonic_bound_holds, py::arg("c_star"),
        py::arg("n"));
  m.def("classical_threshold", &classical_threshold, py::arg("n"));
  m.def("exponential_bracket", &exponential_bracket, py::arg("n"));
  m.def("normal_upper_bound", &normal_upper_bound, py::arg("n"));
  m.def("pareto_ratio_bound", &pareto_ratio_bound, py::arg("alpha"));
  m.def("bernoulli_beta", &bernoulli_beta, py::arg("alpha"));
  m.def("permutation_threshold", &permutation_threshold, py::arg("n"));

  m.def(
      "simulate",
      [](const QualityModel& model, long n, long c, long trials, uint64_t seed,
         int workers) {
        SimConfig cfg;
        cfg.n = n;
        cfg.c = c;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.workers = workers;
        return simulate(model, cfg);
      },
      py::arg("model"), py::arg("n"), py::arg("c"), py::arg("trials"),
      py::arg("seed") = 0, py::arg("workers") = 1,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "exact_enumeration",
      [](const std::vector<double>& values, long c) {
        return exact_enumeration(values, c);
      },
      py::arg("values"), py::arg("c"));
  m.def(
      "exact_enumeration_curve",
      [](const std::vector<double>& values) {
        return exact_enumeration_curve(values);
      },
      py::arg("values"));
  m.def("sweep_simulate", &sweep_simulate, py::arg("model"), py::arg("n"),
        py::arg("trials"), py::arg("seed") = 0, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("empirical_argmax", &empirical_argmax, py::arg("model"), py::arg("n"),
        py::arg("trials"), py::arg("seed") = 0, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
}
