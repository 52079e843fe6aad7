#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "knets/bounds.hpp"
#include "knets/construct.hpp"
#include "knets/knet_io.hpp"
#include "knets/net.hpp"
#include "knets/parallel.hpp"
#include "knets/verify.hpp"

namespace py = pybind11;
using namespace knets;

PYBIND11_MODULE(_core, m) {
  m.doc() = "comparator network toolkit: k-sorter networks, 0-1 verification, "
            "pass search, parallel schedules, comparison bounds";

  auto base = py::register_exception<Error>(m, "KnetsError");
  py::register_exception<StructuralError>(m, "NetStructureError", base);
  py::register_exception<ParameterError>(m, "DomainError", base);
  py::register_exception<ResourceError>(m, "BudgetError", base);
  py::register_exception<ParseError>(m, "KnetParseError", base);

  py::class_<Comparator>(m, "Comparator")
      .def(py::init([](std::vector<int> lines) { return Comparator{std::move(lines)}; }),
           py::arg("lines"))
      .def_readwrite("lines", &Comparator::lines)
      .def("size", &Comparator::size)
      .def("validate", &Comparator::validate, py::arg("width"))
      .def(py::self == py::self)
      .def("__repr__", [](const Comparator& c) {
        std::string s = "Comparator([";
        for (std::size_t i = 0; i < c.lines.size(); ++i)
          s += (i ? ", " : "") + std::to_string(c.lines[i]);
        return s + "])";
      });

  py::class_<Network>(m, "Network")
      .def(py::init<>())
      .def(py::init([](int width, std::vector<Comparator> comparators) {
             return Network{width, std::move(comparators), std::nullopt};
           }),
           py::arg("width"), py::arg("comparators"))
      .def_readwrite("width", &Network::width)
      .def_readwrite("comparators", &Network::comparators)
      .def_readwrite("round_marks", &Network::round_marks)
      .def("size", &Network::size)
      .def("arity", &Network::arity)
      .def("round_count", &Network::round_count)
      .def("rounds", &Network::rounds)
      .def("validate", &Network::validate)
      .def(py::self == py::self)
      .def("__repr__", [](const Network& n) {
        return "Network(width=" + std::to_string(n.width) + ", size=" +
               std::to_string(n.size()) + ")";
      });

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("valid", &VerificationReport::valid)
      .def_readonly("inputs_tested", &VerificationReport::inputs_tested)
      .def_readonly("counterexample_input", &VerificationReport::counterexample_input)
      .def_readonly("counterexample_output", &VerificationReport::counterexample_output)
      .def("__repr__", [](const VerificationReport& r) {
        return std::string("VerificationReport(valid=") + (r.valid ? "True" : "False") +
               ", inputs_tested=" + std::to_string(r.inputs_tested) + ")";
      });

  m.def("apply_comparator", &apply_comparator, py::arg("seq"), py::arg("comparator"));
  m.def("apply_network", &apply_network, py::arg("seq"), py::arg("net"));
  m.def("parse_network", &parse_network, py::arg("text"));
  m.def("to_knet", &to_knet, py::arg("net"));

  py::class_<Rational>(m, "Rational")
      .def_readonly("num", &Rational::num)
      .def_readonly("den", &Rational::den)
      .def("value", &Rational::value)
      .def(py::self == py::self)
      .def("__repr__", [](const Rational& r) {
        return std::to_string(r.num) + "/" + std::to_string(r.den);
      });

  py::enum_<StoogeOrder>(m, "StoogeOrder")
      .value("FIRST_LAST_FIRST", StoogeOrder::FirstLastFirst)
      .value("LAST_FIRST_LAST", StoogeOrder::LastFirstLast);

  py::class_<PassScheme>(m, "PassScheme")
      .def(py::init([](int n, int window, std::vector<int> offsets) {
             return PassScheme{n, window, std::move(offsets)};
           }),
           py::arg("n"), py::arg("window"), py::arg("offsets"))
      .def_readwrite("n", &PassScheme::n)
      .def_readwrite("window", &PassScheme::window)
      .def_readwrite("offsets", &PassScheme::offsets)
      .def(py::self == py::self);

  m.def("triangle", &triangle, py::arg("n"), py::arg("k"));
  m.def("triangle_size_formula", &triangle_size_formula, py::arg("n"), py::arg("k"));
  m.def("stooge_scheme", &stooge_scheme, py::arg("n"),
        py::arg("order") = StoogeOrder::FirstLastFirst);
  m.def("pass_scheme_to_network", &pass_scheme_to_network, py::arg("scheme"));

  m.def("zero_one_verify", &zero_one_verify, py::arg("net"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("zero_one_sample_verify", &zero_one_sample_verify, py::arg("net"), py::arg("samples"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("permutation_verify", &permutation_verify, py::arg("net"), py::arg("width_limit") = 8,
        py::call_guard<py::gil_scoped_release>());

  py::enum_<SearchMode>(m, "SearchMode")
      .value("CONTIGUOUS_WINDOWS", SearchMode::ContiguousWindows)
      .value("ARBITRARY_SUBSETS", SearchMode::ArbitrarySubsets);

  py::class_<SearchSpec>(m, "SearchSpec")
      .def(py::init<>())
      .def_readwrite("n", &SearchSpec::n)
      .def_readwrite("window", &SearchSpec::window)
      .def_readwrite("max_passes", &SearchSpec::max_passes)
      .def_readwrite("mode", &SearchSpec::mode)
      .def_readwrite("budget", &SearchSpec::budget)
      .def_readwrite("threads", &SearchSpec::threads);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("found", &SearchResult::found)
      .def_readonly("min_passes", &SearchResult::min_passes)
      .def_readonly("witness", &SearchResult::witness)
      .def_readonly("witness_scheme", &SearchResult::witness_scheme)
      .def_readonly("sequences_tested", &SearchResult::sequences_tested);

  m.def("search_min_passes", py::overload_cast<const SearchSpec&>(&search_min_passes),
        py::arg("spec"), py::call_guard<py::gil_scoped_release>());

  py::enum_<Verdict>(m, "Verdict")
      .value("CONFIRMED", Verdict::Confirmed)
      .value("REFUTED_AT_THIS_N", Verdict::RefutedAtThisN)
      .value("INCONCLUSIVE", Verdict::Inconclusive);

  py::class_<PostulationCheck>(m, "PostulationCheck")
      .def_readonly("postulation", &PostulationCheck::postulation)
      .def_readonly("n", &PostulationCheck::n)
      .def_readonly("window", &PostulationCheck::window)
      .def_readonly("mode", &PostulationCheck::mode)
      .def_readonly("verdict", &PostulationCheck::verdict)
      .def_readonly("min_passes", &PostulationCheck::min_passes)
      .def_readonly("witness", &PostulationCheck::witness)
      .def_readonly("inputs_tested", &PostulationCheck::inputs_tested);

  m.def("check_postulations", &check_postulations,
        py::arg("budget_per_instance") = kDefaultSearchBudget, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<MergeSpec>(m, "MergeSpec")
      .def(py::init([](int a_len, int b_len, int base, int width) {
             return MergeSpec{a_len, b_len, base, width};
           }),
           py::arg("a_len"), py::arg("b_len"), py::arg("base") = 0, py::arg("width") = 0)
      .def_readwrite("a_len", &MergeSpec::a_len)
      .def_readwrite("b_len", &MergeSpec::b_len)
      .def_readwrite("base", &MergeSpec::base)
      .def_readwrite("width", &MergeSpec::width);

  py::class_<RoundSchedule>(m, "RoundSchedule")
      .def_readonly("width", &RoundSchedule::width)
      .def_readonly("rounds", &RoundSchedule::rounds)
      .def("round_count", &RoundSchedule::round_count)
      .def("comparison_count", &RoundSchedule::comparison_count)
      .def("to_network", &RoundSchedule::to_network)
      .def("validate", &RoundSchedule::validate);

  m.def("valley_merge_schedule", &valley_merge_schedule, py::arg("spec"));
  m.def("parallel_merge_sort_schedule", &parallel_merge_sort_schedule, py::arg("n"));
  m.def("apply_schedule", &apply_schedule, py::arg("seq"), py::arg("schedule"));

  py::class_<StageTable::Row>(m, "StageRow")
      .def_readonly("run_length", &StageTable::Row::run_length)
      .def_readonly("run_count", &StageTable::Row::run_count)
      .def_readonly("rounds", &StageTable::Row::rounds);

  py::class_<StageTable>(m, "StageTable")
      .def_readonly("rows", &StageTable::rows)
      .def("total_rounds", &StageTable::total_rounds);

  m.def("schedule_stage_table", &schedule_stage_table, py::arg("n"));

  py::class_<BoundsReport>(m, "BoundsReport")
      .def_readonly("n", &BoundsReport::n)
      .def_readonly("lower", &BoundsReport::lower)
      .def_readonly("upper", &BoundsReport::upper)
      .def("__repr__", [](const BoundsReport& b) {
        return "BoundsReport(n=" + std::to_string(b.n) + ", lower=" + std::to_string(b.lower) +
               ", upper=" + std::to_string(b.upper) + ")";
      });

  m.def("comparison_bounds", &comparison_bounds, py::arg("n"));

  py::class_<CountingSortRun>(m, "CountingSortRun")
      .def_readonly("input", &CountingSortRun::input)
      .def_readonly("output", &CountingSortRun::output)
      .def_readonly("comparisons", &CountingSortRun::comparisons);

  m.def("merge_insertion_sort", &merge_insertion_sort, py::arg("seq"));
  m.def("is_sorted_scan",
        [](const KeySequence& seq) { return is_sorted_scan(std::span<const Key>(seq)); },
        py::arg("seq"));
}
