// Python bindings for the main operations: dataset handling, masks, presets,
// anomaly analysis, model training and forecasting.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tslab/analysis.hpp"

namespace py = pybind11;
using namespace tslab;

namespace {

SeriesFrame frame_from_array(const Eigen::MatrixXd& values, const std::string& name) {
    SeriesFrame f;
    f.name = name;
    f.values = values;
    f.timestamps.resize(values.rows());
    for (std::int64_t i = 0; i < values.rows(); ++i) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%012lld", static_cast<long long>(i));
        f.timestamps[i] = buf;
    }
    return f;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> build_mask_py(const std::string& kind, int p_lb, int p_fc) {
    MaskKind k;
    if (kind == "bi")
        k = MaskKind::bi;
    else if (kind == "uni")
        k = MaskKind::uni;
    else if (kind == "hybrid")
        k = MaskKind::hybrid;
    else
        throw ConfigError("unknown mask kind: " + kind);
    return build_mask(k, p_lb, p_fc).allowed;
}

py::dict report_to_dict(const MetricsReport& r) {
    py::dict d;
    d["dataset"] = r.dataset;
    d["arch"] = r.arch;
    d["mask"] = r.mask;
    d["aggregation"] = r.aggregation;
    d["paradigm"] = r.paradigm;
    d["norm"] = r.norm;
    d["pred_len"] = r.pred_len;
    d["seed"] = r.seed;
    d["mse"] = r.mse;
    d["mae"] = r.mae;
    d["n_windows"] = r.n_windows;
    d["wall_time_s"] = r.wall_time_s;
    return d;
}

std::vector<const WindowPair*> as_ptrs(const std::vector<WindowPair>& w) {
    std::vector<const WindowPair*> out;
    out.reserve(w.size());
    for (const auto& x : w) out.push_back(&x);
    return out;
}

}  // namespace

PYBIND11_MODULE(tslab, m) {
    m.doc() = "transformer architecture laboratory for long-term time series forecasting";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<TrainError>(m, "TrainError", PyExc_RuntimeError);

    py::class_<SeriesFrame>(m, "SeriesFrame")
        .def(py::init([](const Eigen::MatrixXd& values, const std::string& name) {
                 return frame_from_array(values, name);
             }),
             py::arg("values"), py::arg("name") = "frame")
        .def_readwrite("name", &SeriesFrame::name)
        .def_readwrite("values", &SeriesFrame::values)
        .def_readwrite("timestamps", &SeriesFrame::timestamps)
        .def_readwrite("frequency", &SeriesFrame::frequency)
        .def_property_readonly("n_steps", &SeriesFrame::n_steps)
        .def_property_readonly("n_channels", &SeriesFrame::n_channels)
        .def("__repr__", [](const SeriesFrame& f) {
            return "SeriesFrame('" + f.name + "', " + std::to_string(f.n_steps()) + " x " +
                   std::to_string(f.n_channels()) + ")";
        });

    py::class_<WindowPair>(m, "WindowPair")
        .def_readwrite("lookback", &WindowPair::lookback)
        .def_readwrite("target", &WindowPair::target)
        .def_readwrite("channel_id", &WindowPair::channel_id)
        .def_readwrite("origin_t", &WindowPair::origin_t);

    py::class_<Standardizer>(m, "Standardizer")
        .def_static("fit", &Standardizer::fit)
        .def("apply", &Standardizer::apply)
        .def("invert", &Standardizer::invert)
        .def_property_readonly("mean", &Standardizer::mean)
        .def_property_readonly("std", &Standardizer::std_dev);

    m.def("load_csv", &load_csv, py::arg("path"));
    m.def("save_csv", &save_csv, py::arg("frame"), py::arg("path"));
    m.def(
        "split",
        [](const SeriesFrame& f, const std::string& train, const std::string& val, const std::string& test,
           bool overlap) {
            SplitSpec spec(Ratio::parse(train), Ratio::parse(val), Ratio::parse(test), overlap);
            SplitResult r = split(f, spec);
            return py::make_tuple(r.train, r.val, r.test);
        },
        py::arg("frame"), py::arg("train_ratio") = "0.7", py::arg("val_ratio") = "0.1", py::arg("test_ratio") = "0.2",
        py::arg("lookback_overlap") = true);
    m.def("channel_split", &channel_split);
    m.def(
        "make_windows",
        [](const SeriesFrame& segment, int lookback, int horizon, const SeriesFrame* prefix) {
            return make_windows(segment, lookback, horizon, prefix);
        },
        py::arg("segment"), py::arg("lookback"), py::arg("horizon"), py::arg("overlap_prefix") = nullptr);
    m.def("subset_ratio", &subset_ratio, py::arg("frame"), py::arg("r"));
    m.def("patchify", &patchify, py::arg("series"), py::arg("patch_len"));
    m.def("build_mask", &build_mask_py, py::arg("kind"), py::arg("p_lb"), py::arg("p_fc") = 0);
    m.def(
        "anomaly_sample_ratio",
        [](const SeriesFrame& f, int sample_len, double threshold, double iqr_k) {
            AnomalySpec spec;
            spec.sample_len = sample_len;
            spec.outlier_fraction_threshold = threshold;
            spec.iqr_k = iqr_k;
            return anomaly_sample_ratio(f, spec);
        },
        py::arg("frame"), py::arg("sample_len"), py::arg("threshold") = 0.05, py::arg("iqr_k") = 1.5);
    m.def("mse", &mse);
    m.def("mae", &mae);
    m.def("preset_names", &preset_names);

    py::class_<ModelConfig>(m, "ModelConfig")
        .def(py::init<>())
        .def_property(
            "arch", [](const ModelConfig& c) { return to_string(c.architecture); },
            [](ModelConfig& c, const std::string& s) { c.architecture = parse_architecture(s); })
        .def_property(
            "aggregation", [](const ModelConfig& c) { return to_string(c.aggregation); },
            [](ModelConfig& c, const std::string& s) { c.aggregation = parse_aggregation(s); })
        .def_property(
            "paradigm", [](const ModelConfig& c) { return to_string(c.paradigm); },
            [](ModelConfig& c, const std::string& s) { c.paradigm = parse_paradigm(s); })
        .def_property(
            "norm", [](const ModelConfig& c) { return to_string(c.norm); },
            [](ModelConfig& c, const std::string& s) { c.norm = parse_norm(s); })
        .def_readwrite("d_model", &ModelConfig::d_model)
        .def_readwrite("n_heads", &ModelConfig::n_heads)
        .def_readwrite("layers", &ModelConfig::layers)
        .def_readwrite("patch_len", &ModelConfig::patch_len)
        .def_readwrite("lookback", &ModelConfig::lookback_len)
        .def_readwrite("horizon", &ModelConfig::horizon)
        .def_readwrite("lr", &ModelConfig::lr)
        .def_readwrite("batch_size", &ModelConfig::batch_size)
        .def_readwrite("epochs", &ModelConfig::epochs)
        .def_readwrite("seed", &ModelConfig::seed)
        .def_readwrite("revin", &ModelConfig::use_revin)
        .def_readwrite("pre_norm", &ModelConfig::pre_norm)
        .def_readwrite("dropout", &ModelConfig::dropout)
        .def("validate", &ModelConfig::validate)
        .def("digest", &ModelConfig::digest)
        .def("__repr__", [](const ModelConfig& c) {
            return "ModelConfig(" + to_string(c.architecture) + ", " + to_string(c.aggregation) + ", " +
                   to_string(c.paradigm) + ", " + to_string(c.norm) + ")";
        });

    m.def("preset", &preset, py::arg("name"));

    py::class_<ForecastModel>(m, "ForecastModel")
        .def(py::init([](const ModelConfig& cfg, std::uint64_t seed) { return ForecastModel(cfg, seed); }),
             py::arg("config"), py::arg("seed") = 0)
        .def_property_readonly("config", &ForecastModel::config)
        .def_property_readonly("parameter_count", &ForecastModel::parameter_count)
        .def(
            "train",
            [](ForecastModel& model, const std::vector<WindowPair>& train_w, const std::vector<WindowPair>& val_w,
               int patience, bool verbose) {
                TrainConfig tc = TrainConfig::from_model(model.config());
                tc.patience = patience;
                tc.verbose = verbose;
                auto h = train(model, train_w, val_w, tc);
                py::dict d;
                d["train_loss"] = h.train_loss;
                d["val_mse"] = h.val_mse;
                d["best_epoch"] = h.best_epoch;
                d["best_val_mse"] = h.best_val_mse;
                return d;
            },
            py::arg("train_windows"), py::arg("val_windows"), py::arg("patience") = 10, py::arg("verbose") = false)
        .def(
            "forecast",
            [](ForecastModel& model, const std::vector<WindowPair>& windows, int horizon) {
                ModelForecaster f(model);
                return f.forecast_batch(as_ptrs(windows), horizon > 0 ? horizon : model.config().horizon);
            },
            py::arg("windows"), py::arg("horizon") = 0)
        .def(
            "evaluate",
            [](ForecastModel& model, const std::vector<WindowPair>& windows, const std::vector<int>& lengths,
               const std::string& dataset) {
                ModelForecaster f(model);
                auto reports = evaluate(f, windows, lengths, dataset, model.config());
                py::list out;
                for (const auto& r : reports) out.append(report_to_dict(r));
                return out;
            },
            py::arg("windows"), py::arg("lengths"), py::arg("dataset") = "data")
        .def(
            "attention_maps",
            [](ForecastModel& model, const Eigen::VectorXd& lookback) {
                AttentionCapture cap = capture_attention(model, lookback);
                py::dict d;
                d["self"] = cap.self_maps;
                d["cross"] = cap.cross_maps;
                return d;
            },
            py::arg("lookback"))
        .def("save", [](const ForecastModel& m2, const std::string& dir) { save_checkpoint(m2, dir); })
        .def_static("load", [](const std::string& dir) { return load_checkpoint(dir); });
}
