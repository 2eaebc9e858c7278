#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "padiclie/padic_int.hpp"

namespace padiclie {

enum class Status { Verified, Failed, HypothesisViolated, PrecisionInsufficient };

std::string to_string(Status s);
// 0 verified, 1 failed, 2 hypothesis violated, 3 precision or cap.
int exit_code(Status s);

struct Certificate {
  std::string theorem;
  nlohmann::json params = nlohmann::json::object();
  int prec = kDefaultPrecision;
  std::uint64_t checked = 0;
  Status status = Status::Verified;
  nlohmann::json witnesses = nlohmann::json::array();
  std::vector<std::string> notes;
  std::int64_t elapsed_ms = 0;

  // Records a failure; the status becomes Failed.
  void fail(nlohmann::json witness);
};

/// Sorted keys, every integer written as a decimal string, two-space indent,
/// trailing newline. Identical certificates give identical bytes.
std::string render_certificate(const Certificate& cert);
nlohmann::json certificate_json(const Certificate& cert);

}  // namespace padiclie
