#include "qcausal/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcausal/errors.hpp"

namespace qcausal {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void require_schema(const json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema)
    throw IoError(std::string("expected a document with schema '") + schema + "'");
}

}  // namespace

json density_to_json(const DensityMatrix& rho) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < rho.dim(); ++i) {
    json rr = json::array(), ri = json::array();
    for (int k = 0; k < rho.dim(); ++k) {
      rr.push_back(rho.mat()(i, k).real());
      ri.push_back(rho.mat()(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"schema", kDensitySchema},
          {"dims", rho.layout().dims()},
          {"labels", rho.layout().labels()},
          {"re", re},
          {"im", im}};
}

DensityMatrix density_from_json(const json& j) {
  require_schema(j, kDensitySchema);
  try {
    auto dims = j.at("dims").get<std::vector<int>>();
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (dims.size() != labels.size()) throw std::invalid_argument("dims and labels differ in length");
    std::vector<Factor> f;
    for (std::size_t i = 0; i < dims.size(); ++i) f.push_back({labels[i], dims[i]});
    SystemLayout layout(f);
    const int n = layout.total_dim();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != static_cast<std::size_t>(n) || im.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("matrix rows do not match dims");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      if (re[r].size() != static_cast<std::size_t>(n) || im[r].size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("matrix columns do not match dims");
      for (int c = 0; c < n; ++c) m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
    }
    return DensityMatrix(m, layout);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed density matrix document: ") + e.what());
  }
}

json pmf_to_json(const JointPMF& p) {
  return {{"schema", kPmfSchema}, {"supports", p.supports()}, {"probs", p.probs()}};
}

JointPMF pmf_from_json(const json& j) {
  require_schema(j, kPmfSchema);
  try {
    return JointPMF(j.at("supports").get<std::vector<int>>(), j.at("probs").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed PMF document: ") + e.what());
  }
}

json verdict_to_json(const Verdict& v) {
  json runs = json::array();
  for (const auto& r : v.per_beta)
    runs.push_back({{"beta", r.beta}, {"cmi", r.cmi}, {"entropy_z", r.entropy_z}});
  json qual = json::array();
  for (int i : v.qualifying) qual.push_back(v.per_beta[i].beta);
  return {{"schema", kVerdictSchema},
          {"verdict", to_string(v.kind)},
          {"min_entropy_z", finite_or_null(v.min_entropy_z)},
          {"theta", v.theta},
          {"threshold", v.threshold},
          {"alpha", v.alpha},
          {"qualifying_betas", qual},
          {"per_beta", runs}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_density(const std::string& path, const DensityMatrix& rho) {
  write_text_file(path, dump_json(density_to_json(rho)));
}

DensityMatrix read_density(const std::string& path) { return density_from_json(read_json_file(path)); }

void write_pmf(const std::string& path, const JointPMF& p) { write_text_file(path, dump_json(pmf_to_json(p))); }

JointPMF read_pmf(const std::string& path) { return pmf_from_json(read_json_file(path)); }

}  // namespace qcausal
