#include <pybind11/gil_safe_call_once.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "comogphog/comogphog.hpp"

namespace py = pybind11;
using namespace comogphog;

namespace {

py::array_t<double> to_array(const Grid<double>& g) {
  py::array_t<double> out({g.rows(), g.cols()});
  std::copy(g.values().begin(), g.values().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1)
    throw Error(ErrorCode::InvalidArgument, "expected a 1-d array");
  return {a.data(), a.data() + a.size()};
}

Polarity polarity_arg(const py::object& p) {
  if (py::isinstance<py::str>(p))
    return parse_polarity(p.cast<std::string>());
  return p.cast<Polarity>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance-matrix image descriptors for protein structure comparison";

  // comogphog.Error carries the error category in its `code` attribute.
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&]() -> py::object { return py::exception<Error>(m, "Error", PyExc_RuntimeError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& cls = error_type.get_stored();
      py::object inst = cls(e.what());
      inst.attr("code") = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(cls.ptr(), inst.ptr());
    }
  });

  m.attr("FEATURE_LENGTH") = kFeatureLength;
  m.attr("COMOGRAD_LENGTH") = kComogradLength;
  m.attr("PHOG_VALUES") = kPhogValues;

  py::class_<Config>(m, "Config")
      .def(py::init<>())
      .def_readwrite("bins_comograd", &Config::bins_comograd)
      .def_readwrite("bins_phog", &Config::bins_phog)
      .def_readwrite("phog_levels", &Config::phog_levels)
      .def_readwrite("image_size", &Config::image_size)
      .def_readwrite("eval_bins", &Config::eval_bins)
      .def("validate", &Config::validate)
      .def("descriptor_length", &Config::descriptor_length)
      .def("feature_length", &Config::feature_length)
      .def("__repr__", [](const Config& c) { return "Config(" + c.describe() + ")"; });

  // Structures -------------------------------------------------------------
  py::class_<CaTrace>(m, "CaTrace")
      .def_readwrite("id", &CaTrace::id)
      .def_property_readonly("coords",
                             [](const CaTrace& t) {
                               py::array_t<double> out({t.coords.size(), std::size_t{3}});
                               auto* dst = out.mutable_data();
                               for (const auto& p : t.coords)
                                 dst = std::copy(p.begin(), p.end(), dst);
                               return out;
                             })
      .def("__len__", [](const CaTrace& t) { return t.coords.size(); })
      .def("__repr__", [](const CaTrace& t) {
        return "CaTrace('" + t.id + "', " + std::to_string(t.coords.size()) + " residues)";
      });

  m.def("trace_from_coords",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> xyz, std::string id) {
          if (xyz.ndim() != 2 || xyz.shape(1) != 3)
            throw Error(ErrorCode::InvalidArgument, "expected an (n, 3) array");
          CaTrace t{std::move(id), {}};
          const double* p = xyz.data();
          for (py::ssize_t i = 0; i < xyz.shape(0); ++i, p += 3)
            t.coords.push_back({p[0], p[1], p[2]});
          if (t.coords.empty())
            throw Error(ErrorCode::NoCaAtoms, "no coordinates");
          return t;
        },
        py::arg("xyz"), py::arg("id") = "");
  m.def("parse_structure", [](std::string_view text, std::string id) { return parse_structure(text, std::move(id)); },
        py::arg("text"), py::arg("id") = "");
  m.def("read_structure", &read_structure_file, py::arg("path"));

  py::class_<ScopLabel>(m, "ScopLabel")
      .def_readonly("sid", &ScopLabel::sid)
      .def_property_readonly("sccs", &ScopLabel::sccs)
      .def("__repr__", [](const ScopLabel& l) { return "ScopLabel('" + l.sid + "', '" + l.sccs() + "')"; });
  m.def("parse_scop_label", [](std::string sid, std::string_view sccs) { return parse_scop_label(std::move(sid), sccs); });
  m.def("read_label_table", &read_label_table, py::arg("path"));
  m.def("parse_label_table", &parse_label_table, py::arg("text"));

  // Image pipeline ---------------------------------------------------------
  m.def("distance_matrix", [](const CaTrace& t) { return to_array(distance_matrix(t).values); });
  m.def(
      "pipeline_stages",
      [](const CaTrace& t, const Config& c) {
        const PipelineStages s = run_image_pipeline(t, c);
        py::dict d;
        d["gray"] = to_array(s.gray.pixels);
        d["resized"] = to_array(s.resized.pixels);
        d["magnitude"] = to_array(s.gradient.magnitude);
        d["orientation"] = to_array(s.gradient.orientation);
        return d;
      },
      py::arg("trace"), py::arg("config") = Config{});

  // Features and scoring ---------------------------------------------------
  py::class_<FeatureVector>(m, "FeatureVector")
      .def(py::init([](std::string id, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
             return FeatureVector{std::move(id), to_vector(values)};
           }),
           py::arg("id"), py::arg("values"))
      .def_readwrite("id", &FeatureVector::id)
      .def_property_readonly("values", [](const FeatureVector& f) { return to_array(f.values); })
      .def("__len__", [](const FeatureVector& f) { return f.values.size(); });

  m.def("extract_features", &extract_features, py::arg("trace"), py::arg("config") = Config{});
  m.def("score", py::overload_cast<const FeatureVector&, const FeatureVector&>(&score));
  m.def("score_arrays", [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
                           py::array_t<double, py::array::c_style | py::array::forcecast> b) {
    return score(to_vector(a), to_vector(b));
  });

  py::class_<ScoreResult>(m, "ScoreResult")
      .def_readonly("query_id", &ScoreResult::query_id)
      .def_readonly("target_id", &ScoreResult::target_id)
      .def_readonly("distance", &ScoreResult::distance)
      .def("__repr__", [](const ScoreResult& r) {
        return "ScoreResult('" + r.target_id + "', " + std::to_string(r.distance) + ")";
      });

  // Store ------------------------------------------------------------------
  py::class_<FeatureStore>(m, "FeatureStore")
      .def(py::init<>())
      .def("add", &FeatureStore::add)
      .def("find", [](const FeatureStore& s, std::string_view id) -> std::optional<FeatureVector> {
        const FeatureVector* f = s.find(id);
        return f ? std::optional<FeatureVector>(*f) : std::nullopt;
      })
      .def_property_readonly("entries", &FeatureStore::entries)
      .def_property_readonly("ids",
                             [](const FeatureStore& s) {
                               std::vector<std::string> ids;
                               for (const auto& e : s.entries())
                                 ids.push_back(e.id);
                               return ids;
                             })
      .def("__len__", &FeatureStore::size)
      .def("__eq__", [](const FeatureStore& a, const FeatureStore& b) { return a == b; })
      .def("to_bytes", [](const FeatureStore& s) { return py::bytes(encode_store(s)); })
      .def_static("from_bytes", [](const py::bytes& b) { return decode_store(std::string_view(b)); })
      .def("save", [](const FeatureStore& s, const std::filesystem::path& p) { save_store(s, p); })
      .def_static("load", &load_store)
      .def("to_csv", &export_csv)
      .def(
          "search",
          [](const FeatureStore& s, const FeatureVector& q, std::size_t k, unsigned jobs) {
            return search(s.entries(), q, k, jobs);
          },
          py::arg("query"), py::arg("k") = 10, py::arg("jobs") = 1);

  m.def(
      "ingest_dir",
      [](const std::filesystem::path& dir, std::optional<std::filesystem::path> labels, unsigned jobs,
         const Config& config) {
        LabelTable table;
        IngestOptions opts;
        opts.config = config;
        opts.jobs = jobs;
        if (labels) {
          table = read_label_table(*labels);
          opts.labels = &table;
        }
        IngestResult r;
        {
          py::gil_scoped_release release;
          r = ingest_dir(dir, opts);
        }
        std::vector<std::pair<std::string, std::string>> skipped;
        for (const auto& s : r.skipped)
          skipped.emplace_back(s.path.string(), s.reason);
        return py::make_tuple(std::move(r.store), skipped);
      },
      py::arg("dir"), py::arg("labels") = py::none(), py::arg("jobs") = 1, py::arg("config") = Config{});

  // Evaluation -------------------------------------------------------------
  py::enum_<Polarity>(m, "Polarity")
      .value("LowerIsSimilar", Polarity::LowerIsSimilar)
      .value("HigherIsSimilar", Polarity::HigherIsSimilar);
  py::enum_<MatchLevel>(m, "MatchLevel").value("Family", MatchLevel::Family).value("Superfamily", MatchLevel::Superfamily);

  py::class_<ScoredPair>(m, "ScoredPair")
      .def(py::init([](std::string a, std::string b, double s, bool match) {
             return ScoredPair{std::move(a), std::move(b), s, match};
           }),
           py::arg("id_a"), py::arg("id_b"), py::arg("score"), py::arg("is_match"))
      .def_readonly("id_a", &ScoredPair::id_a)
      .def_readonly("id_b", &ScoredPair::id_b)
      .def_readonly("score", &ScoredPair::score)
      .def_readonly("is_match", &ScoredPair::is_match);

  py::class_<ConfusionCounts>(m, "ConfusionCounts")
      .def(py::init([](std::uint64_t tp, std::uint64_t tn, std::uint64_t fp, std::uint64_t fn) {
             return ConfusionCounts{tp, tn, fp, fn};
           }),
           py::arg("tp"), py::arg("tn"), py::arg("fp"), py::arg("fn"))
      .def_readonly("tp", &ConfusionCounts::tp)
      .def_readonly("tn", &ConfusionCounts::tn)
      .def_readonly("fp", &ConfusionCounts::fp)
      .def_readonly("fn", &ConfusionCounts::fn);

  m.def("mcc", &mcc);
  m.def("confusion_at_threshold", [](const std::vector<ScoredPair>& pairs, double t, const py::object& pol) {
    return confusion_at_threshold(pairs, t, polarity_arg(pol));
  });
  m.def(
      "peak_mcc",
      [](const std::vector<ScoredPair>& pairs, const py::object& pol) {
        const PeakMcc p = peak_mcc(pairs, polarity_arg(pol));
        return py::make_tuple(p.threshold, p.mcc);
      },
      py::arg("pairs"), py::arg("polarity") = "lower");
  m.def(
      "roc_curve",
      [](const std::vector<ScoredPair>& pairs, const py::object& pol) {
        const auto roc = roc_curve(pairs, polarity_arg(pol));
        std::vector<double> fpr, tpr, thr;
        for (const auto& p : roc) {
          fpr.push_back(p.fpr);
          tpr.push_back(p.tpr);
          thr.push_back(p.threshold);
        }
        return py::make_tuple(to_array(fpr), to_array(tpr), to_array(thr));
      },
      py::arg("pairs"), py::arg("polarity") = "lower");
  m.def(
      "auc",
      [](const std::vector<ScoredPair>& pairs, const py::object& pol) {
        return auc(roc_curve(pairs, polarity_arg(pol)));
      },
      py::arg("pairs"), py::arg("polarity") = "lower");
  m.def(
      "pvalue_curve",
      [](const std::vector<ScoredPair>& pairs, const py::object& pol, std::size_t bins) {
        py::list out;
        for (const auto& b : pvalue_curve(pairs, polarity_arg(pol), bins))
          out.append(py::make_tuple(b.center, b.count, b.matches, b.posterior));
        return out;
      },
      py::arg("pairs"), py::arg("polarity") = "lower", py::arg("bins") = 200);
  m.def(
      "score_all_pairs",
      [](const FeatureStore& s, const LabelTable& labels, MatchLevel level, unsigned jobs) {
        py::gil_scoped_release release;
        return score_all_pairs(s, labels, level, jobs);
      },
      py::arg("store"), py::arg("labels"), py::arg("level") = MatchLevel::Family, py::arg("jobs") = 1);
}
