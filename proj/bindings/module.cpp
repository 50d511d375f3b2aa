// Python bindings for the core operations: matrices move across the boundary
// as float64 numpy arrays (copied, row-major).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swag/activations.hpp"
#include "swag/checkpoint.hpp"
#include "swag/data.hpp"
#include "swag/errors.hpp"
#include "swag/experiments.hpp"
#include "swag/matrix.hpp"
#include "swag/model.hpp"
#include "swag/rng.hpp"
#include "swag/training.hpp"

namespace py = pybind11;
using namespace swag;

namespace {

Matrix matrix_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) {
        throw DimensionError("expected a 2-D array, got " + std::to_string(arr.ndim()) + "-D");
    }
    const auto rows = static_cast<std::size_t>(arr.shape(0));
    const auto cols = static_cast<std::size_t>(arr.shape(1));
    std::vector<double> data(arr.data(), arr.data() + rows * cols);
    return Matrix(rows, cols, std::move(data));
}

py::array_t<double> matrix_to_numpy(const Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    std::copy(m.data(), m.data() + m.size(), arr.mutable_data());
    return arr;
}

using NpMatrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

Basis parse_basis(const std::string& name) { return basis_from_string(name); }

py::dict report_to_dict(const TrainReport& report) {
    py::list epochs;
    for (const auto& rec : report.epochs) {
        py::dict d;
        d["epoch"] = rec.epoch;
        d["train_loss"] = rec.train_loss;
        d["test_loss"] = rec.test_loss;
        if (rec.test_accuracy) d["test_accuracy"] = *rec.test_accuracy;
        epochs.append(d);
    }
    py::dict out;
    out["epochs"] = epochs;
    out["wall_seconds"] = report.wall_seconds;
    out["seed"] = report.seed;
    out["config_name"] = report.config_name;
    return out;
}

Dataset dataset_from_numpy(const NpMatrix& inputs, const NpMatrix& targets) {
    Dataset ds;
    ds.inputs = matrix_from_numpy(inputs);
    ds.targets = matrix_from_numpy(targets);
    if (ds.inputs.cols() != ds.targets.cols()) {
        throw DimensionError("inputs and targets disagree on sample count");
    }
    if (ds.targets.rows() == 10) {
        ds.labels.reserve(ds.targets.cols());
        for (std::size_t j = 0; j < ds.targets.cols(); ++j) {
            int label = 0;
            double best = ds.targets(0, j);
            for (std::size_t i = 1; i < 10; ++i) {
                if (ds.targets(i, j) > best) {
                    best = ds.targets(i, j);
                    label = static_cast<int>(i);
                }
            }
            ds.labels.push_back(label);
        }
    }
    return ds;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polynomial-basis feedforward networks (C++ core)";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_property_readonly("seed", &Rng::seed)
        .def("uniform", &Rng::next_uniform)
        .def("gaussian", &Rng::next_gaussian)
        .def("split", &Rng::split, py::arg("stream"));

    m.def("gaussian_matrix",
          [](Rng& rng, std::size_t rows, std::size_t cols) {
              return matrix_to_numpy(gaussian_matrix(rng, rows, cols));
          },
          py::arg("rng"), py::arg("rows"), py::arg("cols"));

    m.def("matmul", [](const NpMatrix& a, const NpMatrix& b) {
        return matrix_to_numpy(matmul(matrix_from_numpy(a), matrix_from_numpy(b)));
    });
    m.def("affine", [](const NpMatrix& w, const NpMatrix& b, const NpMatrix& x) {
        return matrix_to_numpy(affine(matrix_from_numpy(w), matrix_from_numpy(b),
                                      matrix_from_numpy(x)));
    });

    m.def("monomial_forward",
          [](const NpMatrix& z, int p, const std::string& basis) {
              return matrix_to_numpy(monomial_forward(matrix_from_numpy(z), p, parse_basis(basis)));
          },
          py::arg("z"), py::arg("p"), py::arg("basis") = "factorial");
    m.def("monomial_backward",
          [](const NpMatrix& z, int p, const std::string& basis) {
              return matrix_to_numpy(monomial_backward(matrix_from_numpy(z), p, parse_basis(basis)));
          },
          py::arg("z"), py::arg("p"), py::arg("basis") = "factorial");
    m.def("classic_forward", [](const NpMatrix& z, const std::string& act) {
        return matrix_to_numpy(classic_forward(matrix_from_numpy(z), activation_from_string(act)));
    });
    m.def("classic_backward", [](const NpMatrix& z, const std::string& act) {
        return matrix_to_numpy(classic_backward(matrix_from_numpy(z), activation_from_string(act)));
    });

    py::class_<ModelConfig>(m, "ModelConfig")
        .def_property_readonly("name", [](const ModelConfig& c) { return c.name; })
        .def_property_readonly("input_dim", [](const ModelConfig& c) { return c.input_dim; })
        .def_property_readonly("output_dim", &ModelConfig::output_dim)
        .def("param_count", &ModelConfig::param_count)
        .def("to_json", [](const ModelConfig& c) { return config_to_json(c); });

    m.def("swag_config",
          [](std::string name, std::size_t input_dim, std::size_t k, std::size_t l,
             std::size_t pairs, std::size_t hidden, std::size_t out,
             const std::string& out_act, const std::string& basis) {
              return swag_config(std::move(name), input_dim, k, l, pairs, hidden, out,
                                 activation_from_string(out_act), parse_basis(basis));
          },
          py::arg("name"), py::arg("input_dim"), py::arg("k"), py::arg("l"),
          py::arg("pairs"), py::arg("hidden"), py::arg("out"),
          py::arg("out_act") = "linear", py::arg("basis") = "factorial");
    m.def("baseline_config", &baseline_config, py::arg("name"));
    m.def("function_arch_config", [](const std::string& arch, const std::string& basis) {
        return function_arch_config(arch, parse_basis(basis));
    }, py::arg("arch"), py::arg("basis") = "factorial");
    m.def("mnist_swag_config", [](const std::string& basis) {
        return mnist_swag_config(parse_basis(basis));
    }, py::arg("basis") = "factorial");

    py::class_<Model>(m, "Model")
        .def(py::init([](const ModelConfig& config, std::uint64_t seed) {
                 Rng rng(seed);
                 return Model(config, rng);
             }),
             py::arg("config"), py::arg("seed"))
        .def_property_readonly("config", &Model::config)
        .def("param_count", &Model::param_count)
        .def("predict",
             [](Model& model, const NpMatrix& x) {
                 return matrix_to_numpy(model.predict(matrix_from_numpy(x)));
             })
        .def("parameters",
             [](Model& model) {
                 py::list out;
                 for (const auto& p : model.parameter_copies()) out.append(matrix_to_numpy(p));
                 return out;
             })
        .def("save", [](const Model& model, const std::string& path) {
            save_checkpoint(model, path);
        });
    m.def("load_model", &load_checkpoint, py::arg("path"));

    m.def("exact_polynomial_weights",
          [](const std::vector<double>& coeffs, const std::string& basis) {
              return exact_polynomial_weights(coeffs, parse_basis(basis));
          },
          py::arg("coeffs"), py::arg("basis") = "factorial");

    m.def("mse_loss", [](const NpMatrix& pred, const NpMatrix& target) {
        LossResult r = mse_loss(matrix_from_numpy(pred), matrix_from_numpy(target));
        return py::make_tuple(r.value, matrix_to_numpy(r.grad));
    });
    m.def("softmax_cross_entropy", [](const NpMatrix& logits, const NpMatrix& onehot) {
        LossResult r = softmax_cross_entropy(matrix_from_numpy(logits), matrix_from_numpy(onehot));
        return py::make_tuple(r.value, matrix_to_numpy(r.grad));
    });
    m.def("accuracy", [](const NpMatrix& logits, const std::vector<int>& labels) {
        return accuracy(matrix_from_numpy(logits), labels);
    });

    m.def("fit",
          [](Model& model, const NpMatrix& train_x, const NpMatrix& train_y,
             const NpMatrix& test_x, const NpMatrix& test_y, std::size_t epochs,
             std::size_t batch_size, const std::string& loss, std::uint64_t seed,
             double lr) {
              Dataset train = dataset_from_numpy(train_x, train_y);
              Dataset test = dataset_from_numpy(test_x, test_y);
              FitOptions opts;
              opts.epochs = epochs;
              opts.batch_size = batch_size;
              opts.loss = loss_kind_from_string(loss);
              opts.seed = seed;
              opts.adam.alpha = lr;
              return report_to_dict(fit(model, train, test, opts));
          },
          py::arg("model"), py::arg("train_x"), py::arg("train_y"), py::arg("test_x"),
          py::arg("test_y"), py::arg("epochs") = 50, py::arg("batch_size") = 10,
          py::arg("loss") = "mse", py::arg("seed") = 0, py::arg("lr") = 1e-3);

    m.def("grad_check",
          [](Model& model, const std::string& loss, const NpMatrix& x, const NpMatrix& y,
             double h) {
              return grad_check(model, loss_kind_from_string(loss), matrix_from_numpy(x),
                                matrix_from_numpy(y), h);
          },
          py::arg("model"), py::arg("loss"), py::arg("x"), py::arg("y"), py::arg("h") = 1e-6);
    m.def("gradcheck_suite", [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : gradcheck_suite(seed)) {
            out.append(py::make_tuple(c.label, c.max_rel_error));
        }
        return out;
    }, py::arg("seed") = 0);

    m.def("eval_target", [](const std::string& which, double x) {
        return eval_target(target_from_string(which), x);
    }, py::arg("which"), py::arg("x"));
    m.def("make_experiment1",
          [](const std::string& which, std::uint64_t seed) {
              auto [train, test] = make_experiment1(target_from_string(which), seed);
              return py::make_tuple(matrix_to_numpy(train.inputs), matrix_to_numpy(train.targets),
                                    matrix_to_numpy(test.inputs), matrix_to_numpy(test.targets));
          },
          py::arg("which"), py::arg("seed"));
    m.def("make_experiment2", [](const std::string& which) {
        auto [train, test] = make_experiment2(target_from_string(which));
        return py::make_tuple(matrix_to_numpy(train.inputs), matrix_to_numpy(train.targets),
                              matrix_to_numpy(test.inputs), matrix_to_numpy(test.targets));
    }, py::arg("which"));
    m.def("normalize_unit", [](const NpMatrix& x) {
        return matrix_to_numpy(normalize_unit(matrix_from_numpy(x)));
    });
    m.def("one_hot", [](int label) { return matrix_to_numpy(one_hot(label)); });
    m.def("load_mnist", [](const std::string& images, const std::string& labels) {
        Dataset ds = load_mnist(images, labels);
        return py::make_tuple(matrix_to_numpy(ds.inputs), matrix_to_numpy(ds.targets),
                              ds.labels);
    }, py::arg("images_path"), py::arg("labels_path"));
}
