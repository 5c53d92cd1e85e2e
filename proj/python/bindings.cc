// Copyright 2026 The dctcomp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the codec, the coefficient-domain input path and the
// experiment harness.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "dctcomp/data/corpus.h"
#include "dctcomp/data/images.h"
#include "dctcomp/dct/full_decode.h"
#include "dctcomp/dct/planes.h"
#include "dctcomp/dct/transform.h"
#include "dctcomp/error.h"
#include "dctcomp/harness/config.h"
#include "dctcomp/harness/experiment.h"
#include "dctcomp/harness/report.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/jpeg/tables.h"
#include "dctcomp/nn/optim.h"

namespace py = pybind11;

namespace dctcomp {
namespace {

using U8Array = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;
using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::span<const uint8_t> Bytes(const py::bytes& b, std::string& holder) {
  holder = b;
  return {reinterpret_cast<const uint8_t*>(holder.data()), holder.size()};
}

RgbImage ToRgb(const U8Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw py::value_error("expected an (H, W, 3) uint8 array");
  RgbImage img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::memcpy(img.pixels.data(), a.data(), img.pixels.size());
  return img;
}

U8Array FromRgb(const RgbImage& img) {
  U8Array out({img.height, img.width, 3});
  std::memcpy(out.mutable_data(), img.pixels.data(), img.pixels.size());
  return out;
}

dct::Block8x8 ToBlock(const F64Array& a) {
  if (a.size() != 64) throw py::value_error("expected 64 values");
  dct::Block8x8 b{};
  std::memcpy(b.data(), a.data(), sizeof(b));
  return b;
}

F64Array FromBlock(const dct::Block8x8& b) {
  F64Array out({8, 8});
  std::memcpy(out.mutable_data(), b.data(), sizeof(b));
  return out;
}

py::object JsonLoads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

}  // namespace
}  // namespace dctcomp

PYBIND11_MODULE(_dctcomp, m) {
  using namespace dctcomp;
  m.doc() = "DCT-domain image classification from partially decoded JPEG files";

  static py::exception<Error> error_type(m, "DctcompError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), e.what());
    }
  });

  m.def(
      "encode_jpeg",
      [](const U8Array& rgb, int quality, bool unquantized, const std::string& subsampling,
         int restart_interval) {
        const auto sub = data::ParseSubsampling(subsampling);
        const auto tables = data::CorpusTables(
            unquantized ? dct::Variant::kUnquantized : dct::Variant::kQuantized, quality);
        jpeg::EncodeOptions opt;
        opt.subsampling = sub;
        opt.restart_interval = restart_interval;
        const auto bytes = jpeg::EncodeJpeg(RgbToYcbcrPlanes(ToRgb(rgb), sub), tables, opt);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("rgb"), py::arg("quality") = 75, py::arg("unquantized") = false,
      py::arg("subsampling") = "420", py::arg("restart_interval") = 0,
      "Encode an (H, W, 3) uint8 array as a baseline JFIF stream.");

  m.def(
      "parse_jpeg",
      [](const py::bytes& data) {
        std::string holder;
        const auto image = jpeg::ParseJpeg(Bytes(data, holder));
        py::list comps;
        for (const auto& c : image.frame.components) {
          comps.append(py::dict(py::arg("id") = c.id, py::arg("h_samp") = c.h_samp,
                                py::arg("v_samp") = c.v_samp,
                                py::arg("quant_table_id") = c.quant_table_id));
        }
        py::list tables;
        for (size_t c = 0; c < image.frame.components.size(); ++c) {
          const auto& t = image.QuantTableFor(c);
          tables.append(std::vector<int>(t.steps.begin(), t.steps.end()));
        }
        return py::dict(py::arg("width") = image.frame.width, py::arg("height") = image.frame.height,
                        py::arg("components") = comps, py::arg("quant_tables") = tables,
                        py::arg("restart_interval") = image.restart_interval);
      },
      py::arg("data"), "Frame geometry and per-component quantizer steps (zigzag order).");

  m.def(
      "decode_coefficients",
      [](const py::bytes& data) {
        std::string holder;
        const auto grids = jpeg::DecodeCoefficients(jpeg::ParseJpeg(Bytes(data, holder)));
        py::list out;
        for (const auto& g : grids) {
          py::array_t<int16_t> a({g.blocks_high, g.blocks_wide, 8, 8});
          auto* dst = a.mutable_data();
          for (const auto& block : g.blocks) dst = std::copy(block.begin(), block.end(), dst);
          out.append(a);
        }
        return out;
      },
      py::arg("data"),
      "Quantized coefficients per component as (blocks_high, blocks_wide, 8, 8) int16 arrays.");

  m.def(
      "full_decode",
      [](const py::bytes& data) {
        std::string holder;
        return FromRgb(dct::FullDecode(jpeg::ParseJpeg(Bytes(data, holder))));
      },
      py::arg("data"), "Conventional decode to an (H, W, 3) uint8 array.");

  m.def(
      "build_input_tensor",
      [](const py::bytes& data, const std::string& resample, bool dequantize,
         bool dequantize_after_resample) {
        std::string holder;
        const auto image = jpeg::ParseJpeg(Bytes(data, holder));
        dct::TensorOptions opt;
        opt.resample = dct::ParseResample(resample);
        opt.dequantize = dequantize;
        opt.dequantize_after_resample = dequantize_after_resample;
        bool unit = true;
        for (size_t c = 0; c < image.frame.components.size(); ++c) {
          unit = unit && image.QuantTableFor(c).IsUnit();
        }
        opt.variant = unit ? dct::Variant::kUnquantized : dct::Variant::kQuantized;
        const auto t = dct::BuildInputTensor(image, opt);
        py::array_t<float> out({t.height, t.width, 3});
        std::memcpy(out.mutable_data(), t.values.data(), t.values.size() * sizeof(float));
        return out;
      },
      py::arg("data"), py::arg("resample") = "upsample", py::arg("dequantize") = true,
      py::arg("dequantize_after_resample") = false,
      "Network input (H, W, 3) float32 built from DCT coefficients without pixel decoding.");

  m.def("fdct_block", [](const F64Array& x) { return FromBlock(dct::FdctBlock(ToBlock(x))); },
        py::arg("samples"), "Orthonormal 8x8 forward DCT.");
  m.def("idct_block", [](const F64Array& x) { return FromBlock(dct::IdctBlock(ToBlock(x))); },
        py::arg("coefficients"), "Orthonormal 8x8 inverse DCT.");

  m.def(
      "lr_for_epoch",
      [](int epoch, double base_lr, double decay, int decay_every) {
        nn::Hyperparams h;
        h.base_lr = base_lr;
        h.decay = decay;
        h.decay_every = decay_every;
        h.Validate();
        return nn::LrForEpoch(h, epoch);
      },
      py::arg("epoch"), py::arg("base_lr") = 0.01, py::arg("decay") = 0.9,
      py::arg("decay_every") = 10);

  m.def(
      "make_synthetic_images",
      [](int num_classes, int per_class, int side, uint64_t seed) {
        const auto set = data::MakeSyntheticImages(num_classes, per_class, side, seed);
        const auto n = static_cast<py::ssize_t>(set.images.size());
        U8Array images({n, static_cast<py::ssize_t>(side), static_cast<py::ssize_t>(side),
                        py::ssize_t{3}});
        py::array_t<int32_t> labels(n);
        uint8_t* dst = images.mutable_data();
        for (py::ssize_t i = 0; i < n; ++i) {
          const auto& px = set.images[i].pixels.pixels;
          dst = std::copy(px.begin(), px.end(), dst);
          labels.mutable_at(i) = set.images[i].label;
        }
        return py::make_tuple(images, labels);
      },
      py::arg("num_classes"), py::arg("per_class"), py::arg("side"), py::arg("seed") = 7,
      "Procedural labelled images as (N, side, side, 3) uint8 plus int32 labels.");

  m.def("default_config", [] { return harness::FormatConfig({}); },
        "The default experiment config as key = value text.");

  m.def(
      "run_experiment",
      [](const std::string& config_text, std::function<void(const std::string&)> log) {
        const auto cfg = harness::ParseConfig(config_text);
        const auto report = harness::RunExperiment(cfg, log ? harness::Logger(log) : harness::Logger());
        return JsonLoads(harness::ReportToJson(report));
      },
      py::arg("config"), py::arg("log") = nullptr,
      "Run the configured cells and return the report as a dict.");

  m.def(
      "benchmark_decode",
      [](const std::string& corpus_dir, int repetitions) {
        harness::RunReport r;
        r.bench = harness::BenchmarkDecode(data::LoadCorpus(corpus_dir), repetitions);
        return JsonLoads(harness::ReportToJson(r))["decode_benchmark"];
      },
      py::arg("corpus_dir"), py::arg("repetitions") = 5,
      "Partial against full decode timing for a generated corpus.");
}
