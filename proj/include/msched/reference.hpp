#pragma once

#include "msched/domain.hpp"

namespace msched {

/// Six-job retail store used by the benchmarks: manager, clerk, guard,
/// salesclerk, tallyclerk, cleaner over one week with at most 60 staff.
/// Emergencies draw two staff from the salesclerk and tallyclerk pools.
ProblemInstance reference_instance();

// Same store with every employee available for all four shifts of a day.
ProblemInstance reference_multishift_instance();

}  // namespace msched
