#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vnlw/csv.hpp"
#include "vnlw/evolution.hpp"
#include "vnlw/problem.hpp"
#include "vnlw/solver.hpp"

namespace py = pybind11;
using namespace vnlw;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dirichlet solver for the stationary bipartite wave equation "
            "(-Lap_x + Lap_y) Phi = 0 on box domains: anti-inner-product "
            "algebra, spectral and Galerkin weak solves, spectral time "
            "evolution, CSV field I/O.";

  const auto base = py::register_exception<Error>(m, "VnlwError");
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<ParseError>(m, "ParseFailure", base);
  py::register_exception<NotHermitianData>(m, "NotHermitianData", base);
  py::register_exception<NotPurelyImaginary>(m, "NotPurelyImaginary", base);
  py::register_exception<GridMismatch>(m, "GridMismatch", base);
  py::register_exception<TooLarge>(m, "TooLarge", base);
  py::register_exception<NonuniformTimes>(m, "NonuniformTimes", base);
  py::register_exception<EmptyTrajectory>(m, "EmptyTrajectory", base);

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init([](double length, int n_cells) {
             Grid1D g{length, n_cells};
             g.validate();
             return g;
           }),
           py::arg("length"), py::arg("n_cells"))
      .def_readonly("length", &Grid1D::length)
      .def_readonly("n_cells", &Grid1D::n_cells)
      .def_property_readonly("spacing", &Grid1D::spacing)
      .def_property_readonly("interior_count", &Grid1D::interior_count);

  py::class_<Domain>(m, "Domain")
      .def(py::init([](const Grid1D& axis, int dim) {
             Domain d{axis, dim};
             d.validate();
             return d;
           }),
           py::arg("axis"), py::arg("dim") = 1)
      .def_readonly("axis", &Domain::axis)
      .def_readonly("dim", &Domain::dim)
      .def_property_readonly("interior_points", &Domain::interior_points)
      .def_property_readonly("closed_points", &Domain::closed_points)
      .def_property_readonly("cell_volume", &Domain::cell_volume)
      .def_property_readonly("pair_volume", &Domain::pair_volume);

  py::class_<DirichletOperator>(m, "DirichletOperator")
      .def_property_readonly("domain", &DirichletOperator::domain)
      .def_property_readonly("size", &DirichletOperator::size)
      .def_property_readonly("matrix", &DirichletOperator::matrix)
      .def_property_readonly("eigenvalues", &DirichletOperator::eigenvalues)
      .def_property_readonly("eigenvectors", &DirichletOperator::eigenvectors)
      .def_property_readonly("axis_potential", &DirichletOperator::axis_potential);

  m.def("build_operator", &build_operator, py::arg("grid"),
        py::arg("potential") = std::nullopt, py::arg("dim") = 1);

  py::class_<BipartiteField>(m, "BipartiteField")
      .def(py::init<Domain, Eigen::MatrixXcd>(), py::arg("domain"), py::arg("values"))
      .def_readonly("domain", &BipartiteField::domain)
      .def_readwrite("values", &BipartiteField::values);

  py::class_<ClosedField>(m, "ClosedField")
      .def(py::init<Domain, Eigen::MatrixXcd>(), py::arg("domain"), py::arg("values"))
      .def_readonly("domain", &ClosedField::domain)
      .def_readwrite("values", &ClosedField::values);

  py::class_<WaveFunction>(m, "WaveFunction")
      .def(py::init<Domain, Eigen::VectorXcd>(), py::arg("domain"), py::arg("values"))
      .def_readonly("domain", &WaveFunction::domain)
      .def_readwrite("values", &WaveFunction::values);

  py::class_<ClosedWave>(m, "ClosedWave")
      .def(py::init<Domain, Eigen::VectorXcd>(), py::arg("domain"), py::arg("values"))
      .def_readonly("domain", &ClosedWave::domain)
      .def_readwrite("values", &ClosedWave::values);

  m.def("zero_field", &zero_field);
  m.def("interior_coord", &interior_coord);
  m.def("closed_coord", &closed_coord);
  m.def("swap_adjoint", &swap_adjoint);
  m.def("hermitian_project", &hermitian_project);
  m.def("hermitian_defect", py::overload_cast<const BipartiteField&>(&hermitian_defect));
  m.def("hermitian_defect", py::overload_cast<const ClosedField&>(&hermitian_defect));
  m.def("interior_part", &interior_part);
  m.def("sup_norm", &sup_norm);
  m.def("l2_norm", py::overload_cast<const BipartiteField&>(&l2_norm));
  m.def("l2_norm", py::overload_cast<const WaveFunction&>(&l2_norm));
  m.def("tensor_field", &tensor_field);

  py::enum_<FormKind>(m, "FormKind")
      .value("Full", FormKind::Full)
      .value("S", FormKind::S)
      .value("Anti", FormKind::Anti);
  m.def("dirichlet_form", &dirichlet_form, py::arg("psi"), py::arg("phi"),
        py::arg("which"), py::arg("op"));
  m.def("functional_l", &functional_l);
  m.def("apply_pair_operator", &apply_pair_operator);
  m.def("poincare_constant", &poincare_constant);

  // anti-inner-product algebra
  py::class_<aip::AntiInnerSpace>(m, "AntiInnerSpace")
      .def(py::init<Eigen::MatrixXcd, Eigen::MatrixXcd>(), py::arg("basis"),
           py::arg("metric"))
      .def_static("with_identity_metric", &aip::AntiInnerSpace::with_identity_metric)
      .def_property_readonly("ambient_dim", &aip::AntiInnerSpace::ambient_dim)
      .def_property_readonly("dim", &aip::AntiInnerSpace::dim)
      .def_property_readonly("basis", &aip::AntiInnerSpace::basis)
      .def_property_readonly("metric", &aip::AntiInnerSpace::metric)
      .def_property_readonly("skew_gram", &aip::AntiInnerSpace::skew_gram)
      .def("inner", &aip::AntiInnerSpace::inner)
      .def("anti_inner", &aip::AntiInnerSpace::anti_inner)
      .def("element", &aip::AntiInnerSpace::element);

  py::class_<aip::AntiProductReport>(m, "AntiProductReport")
      .def_readonly("additivity_defect", &aip::AntiProductReport::additivity_defect)
      .def_readonly("antisymmetry_defect", &aip::AntiProductReport::antisymmetry_defect)
      .def_readonly("separated", &aip::AntiProductReport::separated)
      .def_readonly("kernel_basis", &aip::AntiProductReport::kernel_basis);

  m.def("anti_inner_det2",
        [](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
          if (u.size() != 2 || v.size() != 2)
            throw BadDimension("anti_inner_det2: arguments must be 2-vectors");
          return aip::anti_inner_det2(u.head<2>(), v.head<2>());
        });
  m.def("check_axioms",
        py::overload_cast<const aip::AntiInnerSpace&, int, std::uint64_t>(
            &aip::check_axioms),
        py::arg("space"), py::arg("sample_count"), py::arg("seed"));
  m.def("separation_kernel", &aip::separation_kernel, py::arg("space"),
        py::arg("rank_cutoff") = tol::algebra);

  py::class_<aip::Representation>(m, "Representation")
      .def_readonly("representer", &aip::Representation::representer)
      .def_readonly("coordinates", &aip::Representation::coordinates)
      .def_readonly("residual", &aip::Representation::residual);
  m.def("represent_functional", &aip::represent_functional, py::arg("space"),
        py::arg("l_values"), py::arg("imag_tol") = tol::algebra,
        py::arg("svd_cutoff") = tol::algebra);

  // weak problem
  py::class_<ReducedProblem>(m, "ReducedProblem")
      .def_readonly("source", &ReducedProblem::source)
      .def_readonly("boundary_data", &ReducedProblem::boundary_data)
      .def_readonly("op", &ReducedProblem::op);

  py::class_<SpectralSolution>(m, "SpectralSolution")
      .def_readonly("coefficients", &SpectralSolution::coefficients)
      .def_readonly("theta", &SpectralSolution::theta)
      .def_readonly("kernel_obstruction", &SpectralSolution::kernel_obstruction)
      .def_readonly("gap_floor", &SpectralSolution::gap_floor);

  py::class_<GalerkinSolution>(m, "GalerkinSolution")
      .def_readonly("theta", &GalerkinSolution::theta)
      .def_readonly("residual", &GalerkinSolution::residual);

  m.def("reduce_problem", &reduce_problem, py::arg("f"), py::arg("op"),
        py::arg("herm_tol") = tol::algebra);
  m.def("problem_from_source", &problem_from_source, py::arg("w"), py::arg("op"),
        py::arg("sym_tol") = tol::algebra);
  m.def("check_source_symmetry", &check_source_symmetry, py::arg("w"),
        py::arg("tol") = tol::algebra);
  m.def("solve_spectral", &solve_spectral, py::arg("problem"),
        py::arg("gap_cutoff_rel") = 1e-9);
  m.def("solve_galerkin", &solve_galerkin, py::arg("problem"),
        py::arg("max_basis_dim") = 529);
  m.def("weak_residual", &weak_residual);
  m.def("laplace_oracle", &laplace_oracle);
  m.def("compose_solution", &compose_solution);
  m.def("hermitian_basis_size", &hermitian_basis_size);
  m.def("hermitian_basis_field", &hermitian_basis_field);
  m.def("hermitian_field_space", &hermitian_field_space);
  m.def("field_from_ambient", &field_from_ambient);

  // evolution
  py::class_<EvolutionConfig>(m, "EvolutionConfig")
      .def(py::init<DirichletOperator, double, std::vector<double>>(), py::arg("op"),
           py::arg("hbar") = 1.0, py::arg("times") = std::vector<double>{})
      .def_readonly("op", &EvolutionConfig::op)
      .def_readonly("hbar", &EvolutionConfig::hbar)
      .def_readonly("times", &EvolutionConfig::times);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("norms", &Trajectory::norms);
  py::class_<WaveTrajectory>(m, "WaveTrajectory")
      .def_readonly("times", &WaveTrajectory::times)
      .def_readonly("states", &WaveTrajectory::states)
      .def_readonly("norms", &WaveTrajectory::norms);

  m.def("propagate_vnlw", &propagate_vnlw);
  m.def("propagate_schrodinger", &propagate_schrodinger);
  m.def("norm_drift", py::overload_cast<const Trajectory&>(&norm_drift));
  m.def("norm_drift", py::overload_cast<const WaveTrajectory&>(&norm_drift));
  m.def("product_form_check",
        py::overload_cast<const WaveFunction&, const EvolutionConfig&>(
            &product_form_check));
  m.def("product_form_check",
        py::overload_cast<const BipartiteField&, const EvolutionConfig&>(
            &product_form_check));
  m.def("factorization_defect", &factorization_defect);
  m.def("extract_gaps", &extract_gaps, py::arg("trajectory"), py::arg("probe"),
        py::arg("peak_threshold") = 0.05);
  m.def("fourier_bin_width", &fourier_bin_width);

  // field CSV I/O
  m.def("write_field_csv",
        py::overload_cast<const std::filesystem::path&, const BipartiteField&>(
            &write_field_csv));
  m.def("write_field_csv",
        py::overload_cast<const std::filesystem::path&, const ClosedField&>(
            &write_field_csv));
  m.def("read_field_csv", &read_field_csv);
  m.def("write_norms_csv", &write_norms_csv);

  // batch pipeline
  py::class_<ProblemSpec> spec(m, "ProblemSpec");
  py::enum_<ProblemSpec::Mode>(spec, "Mode")
      .value("Solve", ProblemSpec::Mode::Solve)
      .value("Evolve", ProblemSpec::Mode::Evolve)
      .value("Verify", ProblemSpec::Mode::Verify);
  spec.def_readonly("mode", &ProblemSpec::mode)
      .def_readonly("dim", &ProblemSpec::dim)
      .def_readonly("length", &ProblemSpec::length)
      .def_readonly("n_cells", &ProblemSpec::n_cells)
      .def_readonly("times", &ProblemSpec::times)
      .def_readwrite("tol_weak", &ProblemSpec::tol_weak)
      .def_readwrite("tol_alg", &ProblemSpec::tol_alg);

  m.def("parse_problem", &parse_problem);
  m.def("run", &run, py::arg("spec"), py::arg("out_dir"));
}
