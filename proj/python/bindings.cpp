#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcausal/classical.hpp"
#include "qcausal/errors.hpp"
#include "qcausal/io.hpp"
#include "qcausal/models.hpp"
#include "qcausal/quantum.hpp"
#include "qcausal/sweep.hpp"

namespace py = pybind11;
using namespace qcausal;

namespace {

SystemLayout make_layout(const std::vector<std::string>& labels, const std::vector<int>& dims) {
  if (labels.size() != dims.size()) throw std::invalid_argument("labels and dims differ in length");
  std::vector<Factor> f;
  for (std::size_t i = 0; i < labels.size(); ++i) f.push_back({labels[i], dims[i]});
  return SystemLayout(std::move(f));
}

std::vector<double> betas_or_default(std::vector<double> betas, double lo, double hi, int count) {
  if (!betas.empty()) return betas;
  return linspace_open(lo, hi, count);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qcausal core bindings";

  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Amplitudes>(m, "Amplitudes")
      .def(py::init([](double g, double l) { return Amplitudes{g, l}; }), py::arg("gamma"), py::arg("lambda_"))
      .def_readwrite("gamma", &Amplitudes::gamma)
      .def_readwrite("lambda_", &Amplitudes::lambda);

  py::class_<JointPMF>(m, "JointPMF")
      .def(py::init<std::vector<int>, std::vector<double>>(), py::arg("supports"), py::arg("probs"))
      .def_property_readonly("supports", &JointPMF::supports)
      .def_property_readonly("probs", &JointPMF::probs)
      .def("marginal", &JointPMF::marginal);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const CMatrix& mat, const std::vector<std::string>& labels, const std::vector<int>& dims,
                       bool repair) {
             return DensityMatrix(mat, make_layout(labels, dims), repair ? Repair::kYes : Repair::kNo);
           }),
           py::arg("matrix"), py::arg("labels"), py::arg("dims"), py::arg("repair") = false)
      .def_property_readonly("matrix", &DensityMatrix::mat)
      .def_property_readonly("labels", [](const DensityMatrix& r) { return r.layout().labels(); })
      .def_property_readonly("dims", [](const DensityMatrix& r) { return r.layout().dims(); })
      .def("marginal", &DensityMatrix::marginal, py::arg("kept"));

  py::enum_<VerdictKind>(m, "VerdictKind")
      .value("Latent", VerdictKind::kLatent)
      .value("TriangleOrDirect", VerdictKind::kTriangleOrDirect);

  py::enum_<UpdateRule>(m, "UpdateRule")
      .value("Product", UpdateRule::kProduct)
      .value("Symmetrized", UpdateRule::kSymmetrized)
      .value("LogDomain", UpdateRule::kLogDomain);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("kind", &Verdict::kind)
      .def_readonly("min_entropy_z", &Verdict::min_entropy_z)
      .def_readonly("theta", &Verdict::theta)
      .def_readonly("threshold", &Verdict::threshold)
      .def_readonly("alpha", &Verdict::alpha)
      .def_property_readonly("per_beta", [](const Verdict& v) {
        py::list out;
        for (const auto& r : v.per_beta) out.append(py::make_tuple(r.beta, r.cmi, r.entropy_z));
        return out;
      });

  m.def("vn_entropy", &vn_entropy, "Von Neumann entropy in bits");
  m.def("quantum_mi", &quantum_mi);
  m.def("qcmi", py::overload_cast<const DensityMatrix&>(&qcmi), "I(X;Y|Z) of a three-factor state");

  m.def("bsc2_latent", [](double q, double p1, double p2) {
    auto c = bsc2_latent(q, p1, p2);
    return py::make_tuple(c.pxy, c.rho_xy);
  }, py::arg("q"), py::arg("p1"), py::arg("p2"));
  m.def("bsc2_direct", [](double q, double p) {
    auto c = bsc2_direct(q, p);
    return py::make_tuple(c.pxy, c.rho_xy);
  }, py::arg("q"), py::arg("p"));
  m.def("gqsc_latent", [](const Amplitudes& a, double q, double p1, double p2) {
    auto s = gqsc_latent(a, q, p1, p2);
    return py::make_tuple(s.rho_zxy, s.rho_xy);
  }, py::arg("amps"), py::arg("q"), py::arg("p1"), py::arg("p2"));
  m.def("gqsc_direct", &gqsc_direct, py::arg("amps"), py::arg("q"), py::arg("p"));
  m.def("depolarizing_latent", [](const Amplitudes& a, const Amplitudes& b, double q, double p1, double p2) {
    auto s = depolarizing_latent(a, b, q, p1, p2);
    return py::make_tuple(s.rho_zxy, s.rho_xy);
  }, py::arg("first"), py::arg("second"), py::arg("q"), py::arg("p1"), py::arg("p2"));
  m.def("depolarizing_direct", &depolarizing_direct, py::arg("first"), py::arg("second"), py::arg("q"),
        py::arg("p"));

  m.def("rotate_to_pmf", [](const DensityMatrix& rho) {
    auto r = rotate_to_pmf(rho);
    return py::make_tuple(r.pmf, r.degenerate);
  });

  m.def("latent_search", [](const DensityMatrix& rho, double beta, int iterations, int dim_z, std::uint64_t seed,
                            UpdateRule rule) {
    QuantumSearchParams p;
    p.beta = beta;
    p.iterations = iterations;
    p.dim_z = dim_z;
    p.seed = seed;
    p.rule = rule;
    py::gil_scoped_release release;
    return q_latent_search(rho, p);
  }, py::arg("rho_xy"), py::arg("beta"), py::arg("iterations") = 500, py::arg("dim_z") = 2,
        py::arg("seed") = 1, py::arg("rule") = UpdateRule::kSymmetrized);

  m.def("infer_quantum", [](const DensityMatrix& rho, std::vector<double> betas, double threshold, double alpha,
                            int iterations, int dim_z, std::uint64_t seed, int restarts, int workers,
                            UpdateRule rule) {
    QInferOptions o;
    o.betas = betas_or_default(std::move(betas), 0.7, 0.8, 50);
    o.threshold = threshold;
    o.alpha = alpha;
    o.iterations = iterations;
    o.dim_z = dim_z;
    o.seed = seed;
    o.restarts = restarts;
    o.workers = workers;
    o.rule = rule;
    py::gil_scoped_release release;
    return q_infer_graph(rho, o);
  }, py::arg("rho_xy"), py::arg("betas") = std::vector<double>{}, py::arg("threshold") = 0.05,
        py::arg("alpha") = 0.8, py::arg("iterations") = 500, py::arg("dim_z") = 2, py::arg("seed") = 1,
        py::arg("restarts") = 1, py::arg("workers") = 1, py::arg("rule") = UpdateRule::kSymmetrized);

  m.def("infer_classical", [](const JointPMF& pxy, std::vector<double> betas, double threshold, double alpha,
                              int iterations, int dim_z, std::uint64_t seed, int restarts, int workers) {
    InferOptions o;
    o.betas = betas_or_default(std::move(betas), 0.7, 0.8, 50);
    o.threshold = threshold;
    o.alpha = alpha;
    o.iterations = iterations;
    o.dim_z = dim_z;
    o.seed = seed;
    o.restarts = restarts;
    o.workers = workers;
    py::gil_scoped_release release;
    return infer_graph(pxy, o);
  }, py::arg("pxy"), py::arg("betas") = std::vector<double>{}, py::arg("threshold") = 0.001,
        py::arg("alpha") = 0.8, py::arg("iterations") = 500, py::arg("dim_z") = 4, py::arg("seed") = 1,
        py::arg("restarts") = 1, py::arg("workers") = 1);

  m.def("read_density", &read_density, py::arg("path"));
  m.def("write_density", &write_density, py::arg("path"), py::arg("rho"));
}
