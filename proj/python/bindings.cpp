#include "dicke/cli.hpp"
#include "dicke/elimination.hpp"
#include "dicke/errors.hpp"
#include "dicke/flow.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/spectra.hpp"
#include "dicke/variants.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  using namespace dicke;
  m.doc() = "Adiabatic elimination for the Dicke model";
  m.attr("__version__") = std::string(cli::kVersion);

  // Exceptions: Python classes mirror the C++ hierarchy.
  static py::exception<Error> error(m, "DickeError", PyExc_RuntimeError);
  static py::exception<PhysicsError> physics(m, "PhysicsError", error.ptr());
  static py::exception<Resonance> resonance(m, "Resonance", physics.ptr());
  static py::exception<NotBlockDiagonal> not_block(m, "NotBlockDiagonal", physics.ptr());
  static py::exception<StepUnderflow> underflow(m, "StepUnderflow", physics.ptr());
  static py::exception<DomainError> domain(m, "DomainError", physics.ptr());
  static py::exception<DimensionMismatch> mismatch(m, "DimensionMismatch", error.ptr());
  static py::exception<NotSymmetric> not_sym(m, "NotSymmetric", error.ptr());
  static py::exception<NotDiagonal> not_diag(m, "NotDiagonal", error.ptr());
  static py::exception<Overflow> overflow(m, "Overflow", error.ptr());
  static py::exception<DegenerateFit> degenerate(m, "DegenerateFit", error.ptr());
  static py::exception<cli::ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<cli::ValidationError> validation(m, "ValidationError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Resonance& e) {
      py::set_error(resonance, e.what());
    } catch (const NotBlockDiagonal& e) {
      py::set_error(not_block, e.what());
    } catch (const StepUnderflow& e) {
      py::set_error(underflow, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain, e.what());
    } catch (const PhysicsError& e) {
      py::set_error(physics, e.what());
    } catch (const DimensionMismatch& e) {
      py::set_error(mismatch, e.what());
    } catch (const NotSymmetric& e) {
      py::set_error(not_sym, e.what());
    } catch (const NotDiagonal& e) {
      py::set_error(not_diag, e.what());
    } catch (const Overflow& e) {
      py::set_error(overflow, e.what());
    } catch (const DegenerateFit& e) {
      py::set_error(degenerate, e.what());
    } catch (const cli::ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const cli::ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<SpaceSpec>(m, "SpaceSpec")
      .def(py::init<int, int, Index>(), py::arg("two_s"), py::arg("n_max"),
           py::arg("max_dim") = kDefaultMaxDim)
      .def_property_readonly("two_s", &SpaceSpec::two_s)
      .def_property_readonly("n_max", &SpaceSpec::n_max)
      .def_property_readonly("dim", &SpaceSpec::dim)
      .def_property_readonly("spin", &SpaceSpec::spin)
      .def("index", &SpaceSpec::index, py::arg("n"), py::arg("k"))
      .def("excitation", &SpaceSpec::excitation, py::arg("i"))
      .def("__repr__", [](const SpaceSpec& s) {
        return "SpaceSpec(two_s=" + std::to_string(s.two_s()) +
               ", n_max=" + std::to_string(s.n_max()) + ")";
      });
  m.def("make_space", &make_space, py::arg("two_s"), py::arg("n_max"),
        py::arg("max_dim") = kDefaultMaxDim);

  py::class_<DickeParams>(m, "DickeParams")
      .def(py::init([](double omega0, double omega1, double g) {
             return DickeParams{omega0, omega1, g};
           }),
           py::arg("omega0"), py::arg("omega1"), py::arg("g"))
      .def_readwrite("omega0", &DickeParams::omega0)
      .def_readwrite("omega1", &DickeParams::omega1)
      .def_readwrite("g", &DickeParams::g)
      .def_property_readonly("delta", &DickeParams::delta);

  py::enum_<Symmetry>(m, "Symmetry")
      .value("Symmetric", Symmetry::Symmetric)
      .value("Antisymmetric", Symmetry::Antisymmetric)
      .value("General", Symmetry::General);

  py::class_<Operator>(m, "Operator")
      .def(py::init<SpaceSpec, Matrix, Symmetry>(), py::arg("space"), py::arg("matrix"),
           py::arg("symmetry") = Symmetry::General)
      .def_property_readonly("space", &Operator::space)
      .def_property_readonly("matrix", &Operator::matrix)
      .def_property_readonly("symmetry", &Operator::symmetry)
      .def_property_readonly("dim", &Operator::dim)
      .def("max_abs", &Operator::max_abs)
      .def("__add__", [](const Operator& a, const Operator& b) { return a + b; })
      .def("__sub__", [](const Operator& a, const Operator& b) { return a - b; })
      .def("__matmul__", [](const Operator& a, const Operator& b) { return a * b; })
      .def("__rmul__", [](const Operator& a, double s) { return s * a; });

  m.def("annihilation_op", &annihilation_op, py::arg("space"));
  m.def("creation_op", &creation_op, py::arg("space"));
  m.def("excitation_number_op", &excitation_number_op, py::arg("space"));
  m.def(
      "spin_ops",
      [](const SpaceSpec& s) {
        SpinOps ops = spin_ops(s);
        return py::make_tuple(ops.plus, ops.minus, ops.z);
      },
      py::arg("space"), "Returns (S+, S-, Sz).");
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));

  py::class_<Generator>(m, "Generator")
      .def_property_readonly("matrix", &Generator::matrix)
      .def_property_readonly("op", &Generator::op)
      .def_property_readonly("space", &Generator::space);

  py::class_<EliminationReport>(m, "EliminationReport")
      .def_readonly("residual_max", &EliminationReport::residual_max)
      .def_readonly("zeroed_entries", &EliminationReport::zeroed_entries)
      .def_readonly("min_gap_used", &EliminationReport::min_gap_used);

  m.def(
      "split_dicke",
      [](const DickeParams& p, const SpaceSpec& s) {
        auto split = split_dicke(p, s);
        return py::make_tuple(split.h0, split.hi);
      },
      py::arg("params"), py::arg("space"), "Returns (H0, HI).");
  m.def("dicke_hamiltonian", &dicke_hamiltonian, py::arg("params"), py::arg("space"));
  m.def(
      "solve_generator",
      [](const Operator& h0, const Operator& hi, double tol_gap) {
        auto sol = solve_generator(h0, hi, tol_gap);
        return py::make_tuple(sol.generator, sol.report);
      },
      py::arg("h0"), py::arg("hi"), py::arg("tol_gap") = kDefaultTolGap);
  m.def("closed_form_generator", &closed_form_generator, py::arg("params"), py::arg("space"));
  m.def("second_order", &second_order, py::arg("hi"), py::arg("k"));
  m.def(
      "effective_hamiltonian",
      [](const DickeParams& p, const SpaceSpec& s, double tol_gap) {
        auto eff = effective_hamiltonian(p, s, tol_gap);
        return py::make_tuple(eff.hamiltonian, eff.report);
      },
      py::arg("params"), py::arg("space"), py::arg("tol_gap") = kDefaultTolGap);
  m.def("matrix_exponential", &matrix_exponential, py::arg("k"), py::arg("tol") = 1e-16);
  m.def("similarity_transform", &similarity_transform, py::arg("h"), py::arg("k"),
        py::arg("tol") = 1e-16);

  py::enum_<VariantId>(m, "VariantId")
      .value("Froehlich", VariantId::Froehlich)
      .value("Guess", VariantId::Guess)
      .value("DiscreteSequence", VariantId::DiscreteSequence);
  m.def(
      "effective_closed_form",
      [](const DickeParams& p, const SpaceSpec& s, VariantId v, bool include_residual) {
        return effective_closed_form(p, s, v, VariantOptions{include_residual});
      },
      py::arg("params"), py::arg("space"), py::arg("variant"), py::arg("include_residual") = true);
  m.def("discrete_coefficient", &discrete_coefficient, py::arg("params"));

  py::class_<FlowSample>(m, "FlowSample")
      .def_readonly("l", &FlowSample::l)
      .def_readonly("offdiag_norm", &FlowSample::offdiag_norm);
  py::class_<FlowResult>(m, "FlowResult")
      .def_property_readonly("h", [](const FlowResult& r) { return r.final.h; })
      .def_property_readonly("l", [](const FlowResult& r) { return r.final.l; })
      .def_property_readonly("offdiag_norm", [](const FlowResult& r) { return r.final.offdiag_norm; })
      .def_readonly("converged", &FlowResult::converged)
      .def_readonly("steps", &FlowResult::steps)
      .def_readonly("history", &FlowResult::history);
  m.def("wegner_generator", py::overload_cast<const Matrix&>(&wegner_generator), py::arg("h"));
  m.def("off_diag_norm", py::overload_cast<const Matrix&>(&off_diag_norm), py::arg("h"));
  m.def(
      "integrate_flow",
      [](const Matrix& h, std::optional<double> dl0, double tol_offdiag,
         std::optional<double> l_max) {
        FlowOptions opts;
        opts.dl0 = dl0;
        opts.tol_offdiag = tol_offdiag;
        opts.l_max = l_max;
        return integrate_flow(h, opts);
      },
      py::arg("h"), py::arg("dl0") = py::none(), py::arg("tol_offdiag") = 1e-10,
      py::arg("l_max") = py::none());

  m.def("eigenvalues_sym", py::overload_cast<const Operator&>(&eigenvalues_sym), py::arg("h"));
  py::class_<Block>(m, "Block")
      .def_readonly("q", &Block::q)
      .def_readonly("indices", &Block::indices)
      .def_readonly("submatrix", &Block::submatrix);
  m.def(
      "block_decompose",
      [](const Operator& h, double tol) { return block_decompose(h, tol).blocks; }, py::arg("h"),
      py::arg("tol") = 1e-12);
  py::class_<BlockComparison>(m, "BlockComparison")
      .def_readonly("q", &BlockComparison::q)
      .def_readonly("eigs_a", &BlockComparison::eigs_a)
      .def_readonly("eigs_b", &BlockComparison::eigs_b)
      .def_readonly("max_abs_err", &BlockComparison::max_abs_err);
  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("per_block", &SpectrumReport::per_block)
      .def_readonly("global_max_abs_err", &SpectrumReport::global_max_abs_err)
      .def_readonly("global_rmse", &SpectrumReport::global_rmse);
  m.def("compare_spectra", &compare_spectra, py::arg("a"), py::arg("b"), py::arg("q_max"),
        py::arg("tol") = 1e-12);
  py::class_<SweepRecord>(m, "SweepRecord")
      .def(py::init([](double delta, double err) { return SweepRecord{delta, err, 0.0, 0.0}; }),
           py::arg("delta"), py::arg("global_max_abs_err"))
      .def_readonly("delta", &SweepRecord::delta)
      .def_readonly("global_max_abs_err", &SweepRecord::global_max_abs_err)
      .def_readonly("global_rmse", &SweepRecord::global_rmse)
      .def_readonly("runtime_seconds", &SweepRecord::runtime_seconds);
  m.def(
      "detuning_sweep",
      [](const DickeParams& base, const std::vector<double>& deltas, const SpaceSpec& s,
         int q_max) {
        auto r = detuning_sweep(base, deltas, s, q_max);
        return py::make_tuple(r.records, r.slope);
      },
      py::arg("base"), py::arg("deltas"), py::arg("space"), py::arg("q_max"),
      "Returns (records, slope); slope is None when it cannot be fitted.");
  m.def("fit_loglog_slope", &fit_loglog_slope, py::arg("records"));

  m.def(
      "run_config",
      [](const std::string& text) { return cli::render_report(cli::parse_config(text)); },
      py::arg("text"), "Parse a YAML run configuration and return the rendered report.");
}
