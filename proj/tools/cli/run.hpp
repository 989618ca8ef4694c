#pragma once

#include "cli/config.hpp"
#include "cli/table.hpp"

namespace ifsc::cli {

// Dispatches a resolved config to the library and packages the result.
ResultTable run(const ExperimentConfig& cfg);

}  // namespace ifsc::cli
