#pragma once

#include <string>

#include <json.hpp>

#include "qcausal/pmf.hpp"
#include "qcausal/states.hpp"
#include "qcausal/verdict.hpp"

namespace qcausal {

constexpr const char* kDensitySchema = "qcausal.density/1";
constexpr const char* kPmfSchema = "qcausal.pmf/1";
constexpr const char* kVerdictSchema = "qcausal.verdict/1";
constexpr const char* kGridSchema = "qcausal.grid/1";

nlohmann::json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);
nlohmann::json pmf_to_json(const JointPMF& p);
JointPMF pmf_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const Verdict& v);

// Doubles are written with 17 significant digits, so reading back is exact.
std::string dump_json(const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

void write_density(const std::string& path, const DensityMatrix& rho);
DensityMatrix read_density(const std::string& path);
void write_pmf(const std::string& path, const JointPMF& p);
JointPMF read_pmf(const std::string& path);

}  // namespace qcausal
