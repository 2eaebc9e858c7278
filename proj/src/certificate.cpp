#include "padiclie/certificate.hpp"

namespace padiclie {

std::string to_string(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Failed: return "failed";
    case Status::HypothesisViolated: return "hypothesis-violated";
    case Status::PrecisionInsufficient: return "precision-insufficient";
  }
  return "unknown";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Verified: return 0;
    case Status::Failed: return 1;
    case Status::HypothesisViolated: return 2;
    case Status::PrecisionInsufficient: return 3;
  }
  return 3;
}

void Certificate::fail(nlohmann::json witness) {
  status = Status::Failed;
  witnesses.push_back(std::move(witness));
}

namespace {

nlohmann::json stringify_integers(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.dump();
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : j) out.push_back(stringify_integers(v));
    return out;
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : j.items()) out[k] = stringify_integers(v);
    return out;
  }
  return j;
}

}  // namespace

nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json j = nlohmann::json::object();
  j["theorem"] = cert.theorem;
  j["params"] = cert.params;
  j["prec"] = cert.prec;
  j["checked"] = cert.checked;
  j["status"] = to_string(cert.status);
  j["witnesses"] = cert.witnesses;
  j["notes"] = cert.notes;
  j["elapsed_ms"] = cert.elapsed_ms;
  return stringify_integers(j);
}

std::string render_certificate(const Certificate& cert) { return certificate_json(cert).dump(2) + "\n"; }

}  // namespace padiclie
