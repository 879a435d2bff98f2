#pragma once

namespace dta::metrics::detail {

// Frozen two-sided Student-t critical values for df = 1..100.
extern const double kCrit05[100];
extern const double kCrit01[100];
extern const double kCrit001[100];
extern const double kCrit0001[100];

}  // namespace dta::metrics::detail
