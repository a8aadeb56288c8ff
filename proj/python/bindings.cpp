#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kfreewalk/cli.hpp"
#include "kfreewalk/constants.hpp"
#include "kfreewalk/counting.hpp"
#include "kfreewalk/exactdist.hpp"
#include "kfreewalk/montecarlo.hpp"
#include "kfreewalk/verify.hpp"

namespace py = pybind11;
using namespace kfreewalk;

namespace {

std::vector<int> table_values(const SieveTable& t)
{
    return {t.values().begin(), t.values().end()};
}

}  // namespace

PYBIND11_MODULE(_kfreewalk, m)
{
    m.doc() = "k-free values along alpha-random walks";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RefusalError>(m, "RefusalError", PyExc_RuntimeError);

    py::class_<WalkParams>(m, "WalkParams")
        .def(py::init([](unsigned k, std::uint64_t a, std::uint64_t b, std::uint64_t r, double alpha) {
                 WalkParams p{k, a, b, r, alpha};
                 p.validate();
                 return p;
             }),
             py::arg("k") = 3, py::arg("a") = 2, py::arg("b") = 3, py::arg("r") = 0,
             py::arg("alpha") = 0.5)
        .def_readonly("k", &WalkParams::k)
        .def_readonly("a", &WalkParams::a)
        .def_readonly("b", &WalkParams::b)
        .def_readonly("r", &WalkParams::r)
        .def_readonly("alpha", &WalkParams::alpha)
        .def("__repr__", [](const WalkParams& p) {
            std::ostringstream os;
            os << "WalkParams(k=" << p.k << ", a=" << p.a << ", b=" << p.b << ", r=" << p.r
               << ", alpha=" << p.alpha << ")";
            return os.str();
        });

    py::class_<DensityConstant>(m, "DensityConstant")
        .def_readonly("value", &DensityConstant::value)
        .def_readonly("tail_bound", &DensityConstant::tail_bound)
        .def_property_readonly("lower", &DensityConstant::lower)
        .def_property_readonly("upper", &DensityConstant::upper)
        .def("contains", &DensityConstant::contains);

    py::class_<CertifiedValue>(m, "CertifiedValue")
        .def_readonly("value", &CertifiedValue::value)
        .def_readonly("tail_bound", &CertifiedValue::tail_bound)
        .def_property_readonly("lower", &CertifiedValue::lower)
        .def_property_readonly("upper", &CertifiedValue::upper)
        .def("contains", &CertifiedValue::contains);

    m.def("iroot", &iroot, py::arg("n"), py::arg("k"));
    m.def("mobius_sieve", [](std::uint64_t lo, std::uint64_t hi) { return table_values(mobius_sieve(lo, hi)); },
          py::arg("lo"), py::arg("hi"));
    m.def("kfree_sieve",
          [](std::uint64_t lo, std::uint64_t hi, unsigned k) { return table_values(kfree_sieve(lo, hi, k)); },
          py::arg("lo"), py::arg("hi"), py::arg("k"));
    m.def("zeta_k", &zeta_k, py::arg("k"), py::arg("terms"));

    m.def("one_over_zeta", &one_over_zeta, py::arg("k"), py::arg("prime_limit") = kDefaultPrimeLimit);
    m.def("theta_k", &theta_k, py::arg("params"), py::arg("prime_limit") = kDefaultPrimeLimit);
    m.def("beta_k", &beta_k, py::arg("k"), py::arg("q"), py::arg("r"),
          py::arg("prime_limit") = kDefaultPrimeLimit);
    m.def("M_k", &M_k, py::arg("n"), py::arg("u"), py::arg("v"), py::arg("k"));
    m.def("f_of_i", &f_of_i, py::arg("params"), py::arg("i"));
    m.def("f_values", &f_values, py::arg("params"), py::arg("N"));

    py::class_<MeanF>(m, "MeanF")
        .def_readonly("sum", &MeanF::sum)
        .def_readonly("predicted", &MeanF::predicted)
        .def_readonly("residual", &MeanF::residual);
    m.def("mean_f", &mean_f, py::arg("params"), py::arg("N"), py::arg("prime_limit") = kDefaultPrimeLimit);

    py::class_<SumSplit>(m, "SumSplit")
        .def_readonly("exact", &SumSplit::exact)
        .def_readonly("main", &SumSplit::main)
        .def_readonly("error", &SumSplit::error);
    m.def("binom_congruence_sum", &binom_congruence_sum, py::arg("n"), py::arg("d"), py::arg("c"),
          py::arg("alpha"));
    m.def("kfree_binom_sum", &kfree_binom_sum, py::arg("n"), py::arg("u"), py::arg("v"), py::arg("k"),
          py::arg("alpha"));
    m.def("expect_Xi", &expect_Xi, py::arg("params"), py::arg("i"));
    m.def("expect_XiXj", &expect_XiXj, py::arg("params"), py::arg("i"), py::arg("j"));

    py::class_<ExactMoments>(m, "ExactMoments")
        .def_readonly("N", &ExactMoments::N)
        .def_readonly("e_xi", &ExactMoments::e_xi)
        .def_readonly("e_sbar", &ExactMoments::e_sbar)
        .def_readonly("v_sbar", &ExactMoments::v_sbar)
        .def_readonly("v_sbar_raw", &ExactMoments::v_sbar_raw)
        .def_property_readonly("method", [](const ExactMoments& e) {
            return e.method == MomentMethod::binomial_sum ? "binomial_sum" : "full_path_enumeration";
        });
    m.def("exact_moments",
          [](const WalkParams& p, std::uint64_t N, bool with_variance, std::uint64_t pair_cap) {
              return exact_moments(p, N, with_variance, pair_cap);
          },
          py::arg("params"), py::arg("N"), py::arg("with_variance") = false,
          py::arg("pair_cap") = kDefaultPairCap);
    m.def("oracle_full_paths", &oracle_full_paths, py::arg("params"), py::arg("N"));

    py::class_<WalkResult>(m, "WalkResult")
        .def_readonly("sbar", &WalkResult::sbar)
        .def_readonly("hits", &WalkResult::hits)
        .def_readonly("final_position", &WalkResult::final_position)
        .def_readonly("steps_a", &WalkResult::steps_a);
    m.def("simulate_walk",
          py::overload_cast<const WalkParams&, std::uint64_t, std::uint64_t>(&simulate_walk),
          py::arg("params"), py::arg("N"), py::arg("seed"));

    py::class_<TrialBatch>(m, "TrialBatch")
        .def_readonly("N", &TrialBatch::N)
        .def_readonly("master_seed", &TrialBatch::master_seed)
        .def_readonly("trials", &TrialBatch::trials)
        .def_readonly("seeds", &TrialBatch::seeds)
        .def_readonly("sbar_values", &TrialBatch::sbar_values)
        .def_readonly("mean", &TrialBatch::mean)
        .def_readonly("sample_variance", &TrialBatch::sample_variance);
    m.def("run_trials", &run_trials, py::arg("params"), py::arg("N"), py::arg("trials"),
          py::arg("seed"), py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("Ns", &DecayFit::Ns)
        .def_readonly("means", &DecayFit::means)
        .def_readonly("variances", &DecayFit::variances)
        .def_readonly("slope", &DecayFit::slope)
        .def_readonly("intercept", &DecayFit::intercept)
        .def_readonly("r_squared", &DecayFit::r_squared)
        .def_readonly("dropped", &DecayFit::dropped)
        .def_readonly("warnings", &DecayFit::warnings);
    m.def("variance_decay", &variance_decay, py::arg("params"), py::arg("Ns"), py::arg("trials_per_N"),
          py::arg("seed"), py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());

    py::class_<CountReport>(m, "CountReport")
        .def_readonly("N", &CountReport::N)
        .def_readonly("k", &CountReport::k)
        .def_readonly("q", &CountReport::q)
        .def_readonly("r", &CountReport::r)
        .def_readonly("count", &CountReport::count)
        .def_readonly("density", &CountReport::density)
        .def_readonly("predicted", &CountReport::predicted)
        .def_readonly("residual", &CountReport::residual);
    m.def("count_kfree", [](std::uint64_t N, unsigned k) { return count_kfree(N, k); }, py::arg("N"),
          py::arg("k"));
    m.def("count_kfree_ap",
          [](std::uint64_t N, unsigned k, std::uint64_t q, std::uint64_t r) { return count_kfree_ap(N, k, q, r); },
          py::arg("N"), py::arg("k"), py::arg("q"), py::arg("r"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("statistic", &CheckResult::statistic)
        .def_readonly("threshold", &CheckResult::threshold)
        .def_readonly("detail", &CheckResult::detail);
    m.def("verify",
          [](bool quick) {
              VerifyOptions opt;
              opt.quick = quick;
              return run_verify_suite(opt);
          },
          py::arg("quick") = true);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out;
              std::ostringstream err;
              const int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Run the command-line interface in process; returns (exit_code, stdout, stderr).");
}
