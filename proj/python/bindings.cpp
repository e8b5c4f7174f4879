#include <iostream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gradsim/attacks.hpp"
#include "gradsim/config.hpp"
#include "gradsim/detector.hpp"
#include "gradsim/features.hpp"
#include "gradsim/model.hpp"
#include "gradsim/pipeline.hpp"

namespace py = pybind11;
using namespace gradsim;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Tensor to_tensor(const Array& a, const Shape& shape) {
  const std::size_t n = shape_size(shape);
  if (std::size_t(a.size()) != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " values, got " + std::to_string(a.size()));
  return Tensor(shape, std::vector<double>(a.data(), a.data() + n));
}

Array to_array(const Tensor& t) {
  std::vector<py::ssize_t> dims(t.shape().begin(), t.shape().end());
  Array out(dims);
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_gradsim, m) {
  m.doc() = "Gradient-similarity adversarial detection";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Model>(m, "Model")
      .def(py::init([](const std::string& architecture, std::uint64_t seed) {
             return Model(Architecture::parse(architecture), seed);
           }),
           py::arg("architecture"), py::arg("seed") = 1)
      .def_property_readonly("num_parameters", &Model::num_parameters)
      .def_property_readonly("num_classes", &Model::num_classes)
      .def_property_readonly("input_shape", &Model::input_shape)
      .def("parameters", [](const Model& self) { return to_array(self.flatten()); })
      .def("logits", [](const Model& self, const Array& x) { return to_array(logits(self, to_tensor(x, self.input_shape()))); })
      .def("predict_proba",
           [](const Model& self, const Array& x) { return to_array(predict_proba(self, to_tensor(x, self.input_shape()))); })
      .def("predict", [](const Model& self, const Array& x) { return predict(self, to_tensor(x, self.input_shape())); })
      .def("loss", [](const Model& self, const Array& x, std::size_t y) {
        return loss(self, to_tensor(x, self.input_shape()), y);
      })
      .def("grad_params", [](const Model& self, const Array& x, std::size_t y) {
        return to_array(grad_params(self, to_tensor(x, self.input_shape()), y));
      })
      .def("grad_input", [](const Model& self, const Array& x, std::size_t y) {
        return to_array(grad_input(self, to_tensor(x, self.input_shape()), y));
      })
      .def("gradient_similarity",
           [](const Model& self, const Array& x_train, std::size_t y_train, const Array& x_test, std::size_t y_test) {
             return gradient_similarity(self, {to_tensor(x_train, self.input_shape()), y_train},
                                        {to_tensor(x_test, self.input_shape()), y_test});
           })
      .def("save", [](const Model& self, const std::filesystem::path& path) { save_model(self, path); });

  m.def("load_model", &load_model, py::arg("path"));

  py::class_<AttackResult>(m, "AttackResult")
      .def_property_readonly("x_adv", [](const AttackResult& r) { return to_array(r.x_adv); })
      .def_readonly("success", &AttackResult::success)
      .def_readonly("l2", &AttackResult::l2)
      .def_readonly("linf", &AttackResult::linf)
      .def_readonly("iterations_used", &AttackResult::iterations_used)
      .def_readonly("predicted_class", &AttackResult::predicted_class)
      .def_readonly("target", &AttackResult::target);

  m.def(
      "run_attack",
      [](const std::string& name, const Model& model, const Array& x, std::size_t y, std::optional<double> epsilon,
         std::optional<std::size_t> iterations, std::optional<std::size_t> target,
         std::optional<std::size_t> max_features) {
        const AttackKind kind = parse_attack(name);
        AttackConfig cfg = default_attack_config(kind);
        if (epsilon) cfg.epsilon = *epsilon;
        if (iterations) cfg.iterations = *iterations;
        if (max_features) cfg.max_features = *max_features;
        cfg.target = target;
        return run_attack(kind, model, to_tensor(x, model.input_shape()), y, cfg);
      },
      py::arg("name"), py::arg("model"), py::arg("x"), py::arg("y"), py::arg("epsilon") = py::none(),
      py::arg("iterations") = py::none(), py::arg("target") = py::none(), py::arg("max_features") = py::none());

  m.def(
      "roc_auc",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        const RocCurve roc = roc_auc(scores, labels);
        std::vector<double> fpr, tpr;
        for (const auto& p : roc.points) fpr.push_back(p.fpr), tpr.push_back(p.tpr);
        return py::make_tuple(roc.auc, fpr, tpr);
      },
      py::arg("scores"), py::arg("labels"), "AUC with the fpr and tpr of every threshold; label 1 is positive.");

  m.def(
      "validate_config",
      [](const std::filesystem::path& path, const std::vector<std::string>& overrides) {
        return dump_config(load_config(path, overrides));
      },
      py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
      "Resolved config as JSON; raises ConfigError on invalid input.");

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& path, const std::string& stage, const std::vector<std::string>& overrides) {
        py::gil_scoped_release release;
        return run_pipeline(path, parse_stage(stage), overrides, std::cout, std::cerr);
      },
      py::arg("config"), py::arg("stage") = "all", py::arg("overrides") = std::vector<std::string>{},
      "Runs a pipeline stage and returns the exit code (0 ok, 2 config error, 3 stage failure).");
}
