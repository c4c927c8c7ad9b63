#pragma once

#include <json.hpp>

#include "algfun/gamma.hpp"
#include "algfun/homotopy.hpp"
#include "algfun/winding.hpp"

namespace algfun {

/// Exit codes: 0 all checks pass, 1 a verification failed, 2 parse/schema
/// error, 3 precondition violation.
struct JobResult {
    int exit_code = 0;
    nlohmann::json output;
    std::string summary;
};

RingPtr ring_from_json(const nlohmann::json& j);
nlohmann::json ring_to_json(const RingPtr& r);

/// A polynomial is either an expression string or, over a localization,
/// {"num": expr over the base (outer variables allowed), "den_power": k}.
MultiPoly poly_from_json(const nlohmann::json& j, const RingPtr& ring,
                         const std::string& outer_var = "X");
nlohmann::json poly_to_json(const MultiPoly& p);

Mat2 mat_from_json(const nlohmann::json& j, const RingPtr& ring,
                   const std::string& outer_var = "X");
nlohmann::json mat_to_json(const Mat2& m);

UnimodRow row_from_json(const nlohmann::json& j, const RingPtr& ring);
nlohmann::json row_to_json(const UnimodRow& r);

/// Dispatch on job["command"]; never throws — failures map to exit codes.
JobResult run_job(const nlohmann::json& job);

/// Built-in suite of anchor computations with frozen expected values.
JobResult example_suite();

} // namespace algfun
