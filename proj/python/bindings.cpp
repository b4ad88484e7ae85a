// Copyright 2026 The QCIVET Authors
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

// qcivet._core: thin bindings. Stage specs cross the boundary as JSON text;
// the Python package converts dicts with the json module.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcivet/error.hpp"
#include "qcivet/experiments.hpp"

namespace py = pybind11;
using namespace qcivet;

namespace {

ComplexMatrix to_matrix(const std::vector<std::vector<Complex>>& rows) {
  if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) {
    throw InvalidArgument("expected a 2x2 matrix");
  }
  return ComplexMatrix(2, {rows[0][0], rows[0][1], rows[1][0], rows[1][1]});
}

py::dict record_dict(const ChainRecord& r) {
  py::dict d;
  d["name"] = r.stage_name;
  d["spec"] = canonicalize(r.spec);
  d["prev_hash"] = r.prev_hash;
  d["hash"] = r.hash;
  return d;
}

py::dict verification_dict(const ChainVerification& v) {
  py::dict d;
  d["ok"] = v.ok;
  d["index"] = v.ok ? py::object(py::none()) : py::object(py::int_(v.index));
  d["reason"] = to_string(v.reason);
  return d;
}

py::dict stats_dict(const LatencyStats& s) {
  py::dict d;
  d["samples"] = s.samples;
  d["median_us"] = s.median_us;
  d["p99_us"] = s.p99_us;
  d["mean_us"] = s.mean_us;
  d["max_us"] = s.max_us;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Contract checks, hash-chain audit log and anchored verifier";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);
  py::register_exception<AnchorUnavailable>(m, "AnchorUnavailable", PyExc_RuntimeError);
  static py::exception<IntegrityViolation> violation(m, "IntegrityViolation",
                                                     PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const IntegrityViolation& e) {
      // args = (kind, stage_index, message)
      py::tuple args = py::make_tuple(to_string(e.kind()), e.stage_index(), e.message());
      PyErr_SetObject(violation.ptr(), args.ptr());
    }
  });

  // Canonical form and hashing.
  m.def("canonicalize", [](const std::string& text) { return canonicalize(StageSpec::parse(text)); },
        py::arg("spec_json"));
  m.def("sha256_hex", [](const py::bytes& b) { return sha256_hex(std::string(b)); });
  m.def("chain_hash", [](const std::string& prev, const std::string& spec) {
    return chain_hash(prev, StageSpec::parse(spec));
  });
  m.attr("GENESIS_HASH") = kGenesisHash;

  // Audit log.
  py::class_<AuditLog>(m, "AuditLog")
      .def(py::init<>())
      .def("append",
           [](AuditLog& log, const std::string& name, const std::string& spec) {
             return record_dict(log.append(name, StageSpec::parse(spec)));
           })
      .def_property_readonly("head", &AuditLog::head)
      .def("__len__", &AuditLog::size)
      .def("records",
           [](const AuditLog& log) {
             py::list out;
             for (const auto& r : log.records()) out.append(record_dict(r));
             return out;
           })
      .def("set_spec",
           [](AuditLog& log, std::size_t k, const std::string& spec) {
             log.mutable_records().at(k).spec = StageSpec::parse(spec);
           },
           "Overwrite a stored spec without re-hashing (attack simulation).")
      .def("verify", [](const AuditLog& log) { return verification_dict(verify_full_chain(log)); })
      .def("export_jsonl",
           [](const AuditLog& log) {
             std::ostringstream os;
             export_log(os, log);
             return os.str();
           })
      .def_static("import_jsonl", [](const std::string& text) {
        std::istringstream is(text);
        return import_log(is).log;
      });

  m.def("build_scenario", [](const std::string& kind) {
    return build_scenario(chain_scenario_from_string(kind), default_chain_stages());
  });

  // Anchors.
  py::class_<Anchor, std::shared_ptr<Anchor>>(m, "Anchor")
      .def("submit", &Anchor::submit)
      .def("entries", [](const Anchor& a) {
        py::list out;
        for (const auto& e : a.entries()) out.append(py::make_tuple(e.seq, e.head, e.timestamp_ms));
        return out;
      });
  py::class_<MemoryAnchor, Anchor, std::shared_ptr<MemoryAnchor>>(m, "MemoryAnchor")
      .def(py::init([] { return std::make_shared<MemoryAnchor>(); }));
  py::class_<FileAnchor, Anchor, std::shared_ptr<FileAnchor>>(m, "FileAnchor")
      .def(py::init([](const std::string& path) { return std::make_shared<FileAnchor>(path); }))
      .def_property_readonly("path", &FileAnchor::path);
  m.def("verify_against_anchor", [](const Anchor& a, const AuditLog& log) {
    return to_string(verify_against_anchor(a, log));
  });

  // Engine.
  py::class_<IntegrityVerifier>(m, "IntegrityVerifier")
      .def(py::init<std::shared_ptr<Anchor>>(), py::arg("anchor"))
      .def(
          "commit_stage",
          [](IntegrityVerifier& v, const std::string& name, const std::string& spec,
             const std::vector<std::tuple<std::string, double, double, double>>& obs) {
            StageResult r{name, StageSpec::parse(spec), {}};
            for (const auto& [label, measured, reference, tol] : obs) {
              r.observables.push_back({label, measured, reference, tol});
            }
            return record_dict(v.commit_stage(r));
          },
          py::arg("name"), py::arg("spec_json"),
          py::arg("observables") = std::vector<std::tuple<std::string, double, double, double>>{})
      .def_property_readonly("head", &IntegrityVerifier::head)
      .def_property_readonly("head_anchored", &IntegrityVerifier::head_anchored)
      .def_property_readonly("log", [](const IntegrityVerifier& v) { return v.log(); })
      .def("replace_log", [](IntegrityVerifier& v, const AuditLog& log) { v.mutable_log() = log; })
      .def("verify_full_chain",
           [](const IntegrityVerifier& v) { return verification_dict(v.verify_full_chain()); })
      .def("verify_against_anchor",
           [](const IntegrityVerifier& v) { return to_string(v.verify_against_anchor()); });

  m.def("bench_commit", [](std::size_t n, std::size_t reps) {
    const BenchResult b = bench_commit(n, reps);
    py::dict d;
    d["per_commit"] = stats_dict(b.per_commit);
    d["pipeline"] = stats_dict(b.pipeline);
    return d;
  });

  // Demos.
  m.def(
      "run_demo",
      [](const std::string& domain, const std::string& scenario, std::uint64_t seed) {
        const ScenarioOutcome o = run_demo(domain_from_string(domain),
                                           scenario_from_string(scenario),
                                           std::make_shared<MemoryAnchor>(), seed);
        py::dict d;
        d["caught_by"] = to_string(o.caught_by);
        d["committed"] = o.committed;
        d["chain"] = verification_dict(o.chain);
        d["anchor_status"] = to_string(o.anchor_status);
        d["report"] = scenario_report_json(o);
        return d;
      },
      py::arg("domain"), py::arg("scenario"), py::arg("seed") = kDefaultSeed);

  // Numerics and experiments.
  m.def("diamond_distance_unitary",
        [](const std::vector<std::vector<Complex>>& u, const std::vector<std::vector<Complex>>& v) {
          return diamond_distance_unitary(to_matrix(u), to_matrix(v));
        });
  m.def("ry_diamond", [](double a, double b) { return diamond_distance_unitary(ry(a), ry(b)); });
  m.def("run_exp1", [](double theta, double delta) {
    py::list out;
    for (const auto& r : run_exp1(theta, delta).rows) {
      out.append(py::make_tuple(r.candidate, r.full_dev, r.z_dev));
    }
    return out;
  }, py::arg("theta") = kDefaultTheta, py::arg("delta") = kDefaultDelta);
  m.def("delta_sweep", [](double theta, const std::vector<double>& deltas) {
    py::list out;
    for (const auto& r : delta_sweep(theta, deltas)) {
      out.append(py::make_tuple(r.delta, r.full_dev, r.z_dev));
    }
    return out;
  });
  m.def("noise_sweep",
        [](const std::vector<double>& p, std::size_t shots, std::size_t trials,
           std::uint64_t seed, double theta) {
          py::list out;
          for (const auto& r : run_exp3(p, {shots, trials, seed}, theta)) {
            out.append(py::make_tuple(r.p, r.stats.mean, r.stats.std, r.stats.p95));
          }
          return out;
        },
        py::arg("p_values"), py::arg("shots") = 4096, py::arg("trials") = 20,
        py::arg("seed") = kDefaultSeed, py::arg("theta") = kDefaultTheta);
  m.def("constant_probe", [](double theta, double delta) {
    const ConstantProbe p = constant_probe(theta, delta);
    return py::make_tuple(p.diamond, p.observable, p.ratio);
  }, py::arg("theta") = kDefaultTheta, py::arg("delta") = kDefaultDelta);
  m.attr("DEFAULT_SEED") = kDefaultSeed;
}
