#include "beatty/beatty_sequence.hpp"
#include "beatty/diophantine.hpp"
#include "beatty/errors.hpp"
#include "beatty/exp_sums.hpp"
#include "beatty/primes.hpp"
#include "beatty/representations.hpp"
#include "beatty/singular_series.hpp"
#include "beatty/smoothing.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace beatty;

namespace {

// Arbitrary-size integers cross the boundary as Python ints.
py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

BigInt from_py(const py::int_& v) { return BigInt(py::str(py::handle(v)).cast<std::string>()); }

std::vector<BeattySequence> make_sequences(const std::vector<std::string>& alphas,
                                           const std::vector<std::string>& betas) {
  if (alphas.size() != betas.size()) throw std::invalid_argument("need one beta per alpha");
  std::vector<BeattySequence> out;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    out.emplace_back(parse_real_expr(alphas[i]), parse_real_expr(betas[i]));
  return out;
}

Weighting weighting(bool weighted) { return weighted ? Weighting::weighted : Weighting::unweighted; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core routines for Beatty-prime representation experiments";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<LimitTooLarge>(m, "LimitTooLarge", PyExc_ValueError);
  py::register_exception<InvalidWidth>(m, "InvalidWidth", PyExc_ValueError);
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", PyExc_ArithmeticError);
  py::register_exception<ToleranceUnreachable>(m, "ToleranceUnreachable", PyExc_ArithmeticError);

  py::class_<RealExpr>(m, "RealExpr")
      .def("approx", &RealExpr::approx)
      .def("is_irrational", &RealExpr::is_irrational)
      .def("__str__", &RealExpr::to_string)
      .def("__repr__", [](const RealExpr& e) { return "RealExpr(" + e.to_string() + ")"; })
      .def("__float__", &RealExpr::approx);
  m.def("parse_real_expr", [](const std::string& s) { return parse_real_expr(s); }, py::arg("text"));

  py::class_<BeattySequence>(m, "BeattySequence")
      .def(py::init([](const std::string& alpha, const std::string& beta) {
             return BeattySequence(parse_real_expr(alpha), parse_real_expr(beta));
           }),
           py::arg("alpha"), py::arg("beta") = "0")
      .def_property_readonly("gamma", &BeattySequence::gamma_value)
      .def_property_readonly("delta", &BeattySequence::delta_value)
      .def("__contains__", &BeattySequence::contains)
      .def("contains", &BeattySequence::contains, py::arg("n"))
      .def("enumerate", &BeattySequence::enumerate, py::arg("limit"))
      .def("position", &BeattySequence::position, py::arg("n"));

  m.def(
      "primes_upto",
      [](std::uint64_t limit) {
        const auto t = sieve(limit);
        return std::vector<std::uint32_t>(t.primes().begin(), t.primes().end());
      },
      py::arg("limit"));

  py::class_<SingularSeriesValue>(m, "SingularSeriesValue")
      .def_readonly("n", &SingularSeriesValue::n)
      .def_readonly("k", &SingularSeriesValue::k)
      .def_readonly("value", &SingularSeriesValue::value)
      .def_readonly("error_bound", &SingularSeriesValue::error_bound)
      .def_readonly("cutoff_prime", &SingularSeriesValue::cutoff_prime);
  m.def("singular_series", &singular_series, py::arg("n"), py::arg("k"), py::arg("tol") = 1e-8);
  m.def(
      "main_term",
      [](std::uint64_t n, const std::vector<std::string>& alphas) {
        std::vector<RealExpr> a;
        for (const auto& s : alphas) a.push_back(parse_real_expr(s));
        return main_term(n, a);
      },
      py::arg("n"), py::arg("alphas"));

  py::class_<SmoothedIndicator>(m, "SmoothedIndicator")
      .def(py::init([](double gamma, double width, const std::string& side) {
             if (side != "plus" && side != "minus") throw std::invalid_argument("side must be 'plus' or 'minus'");
             return SmoothedIndicator(gamma, width, side == "plus" ? Side::plus : Side::minus);
           }),
           py::arg("gamma"), py::arg("width"), py::arg("side") = "plus")
      .def("__call__", &SmoothedIndicator::operator(), py::arg("x"))
      .def("fourier_coeff", &SmoothedIndicator::fourier_coeff, py::arg("m"));

  m.def(
      "count_exact",
      [](std::uint64_t n, const std::vector<std::string>& alphas, const std::vector<std::string>& betas,
         bool weighted) { return count_exact(n, make_sequences(alphas, betas), weighting(weighted)); },
      py::arg("n"), py::arg("alphas"), py::arg("betas"), py::arg("weighted") = false);
  m.def(
      "count_all_upto",
      [](std::uint64_t x, const std::vector<std::string>& alphas, const std::vector<std::string>& betas,
         bool weighted) { return count_all_upto(x, make_sequences(alphas, betas), weighting(weighted)).values; },
      py::arg("x"), py::arg("alphas"), py::arg("betas"), py::arg("weighted") = false);
  m.def(
      "smoothed_count",
      [](std::uint64_t n, const std::vector<std::string>& alphas, const std::vector<std::string>& betas,
         double delta, const std::string& side) {
        return smoothed_count(n, make_sequences(alphas, betas), delta, side == "minus" ? Side::minus : Side::plus);
      },
      py::arg("n"), py::arg("alphas"), py::arg("betas"), py::arg("delta"), py::arg("side") = "plus");
  m.def(
      "exceptional_scan",
      [](std::uint64_t x, const std::string& a1, const std::string& a2) {
        return exceptional_scan(x, BeattySequence(parse_real_expr(a1), RealExpr(0)),
                                BeattySequence(parse_real_expr(a2), RealExpr(0)));
      },
      py::arg("x"), py::arg("alpha1"), py::arg("alpha2"));

  py::class_<ContinuedFraction>(m, "ContinuedFraction")
      .def_property_readonly("partial_quotients",
                             [](const ContinuedFraction& cf) {
                               py::list out;
                               for (const auto& a : cf.partial_quotients) out.append(to_py(a));
                               return out;
                             })
      .def_property_readonly("convergents", [](const ContinuedFraction& cf) {
        py::list out;
        for (const auto& c : cf.convergents) out.append(py::make_tuple(to_py(c.p), to_py(c.q)));
        return out;
      });
  m.def(
      "continued_fraction",
      [](const std::string& theta, const py::int_& q_limit) {
        return continued_fraction(parse_real_expr(theta), from_py(q_limit));
      },
      py::arg("theta"), py::arg("q_limit"));
  m.def(
      "lemma3_approx",
      [](const std::string& theta, const py::int_& Q, double eps) {
        const auto r = lemma3_approx(parse_real_expr(theta), from_py(Q), eps);
        return py::make_tuple(to_py(r.a), to_py(r.q), r.residual_bound);
      },
      py::arg("theta"), py::arg("Q"), py::arg("epsilon") = 0.25,
      "Returns (a, q, bound) with |q*theta - a| <= bound <= 1/Q.");

  m.def("S_point", &S_point, py::arg("xi"), py::arg("N"));
  m.def("S_grid", &S_grid, py::arg("N"), py::arg("T"));
  m.def(
      "farey_arcs",
      [](std::int64_t Q) {
        py::list out;
        for (const auto& a : farey_arcs(Q))
          out.append(py::make_tuple(a.a, a.q, py::make_tuple(a.lo.num, a.lo.den), py::make_tuple(a.hi.num, a.hi.den)));
        return out;
      },
      py::arg("Q"));
  m.def(
      "parseval_check",
      [](std::uint64_t N, std::size_t T) {
        const auto r = parseval_check(N, T);
        return py::dict(py::arg("mean_square") = r.mean_square, py::arg("exact") = r.exact,
                        py::arg("relative_residual") = r.relative_residual);
      },
      py::arg("N"), py::arg("T"));
}
