#pragma once

#include "dta/kernels.hpp"

namespace dta::kernels::scalar {
extern const Kernels kTable;
}

#if defined(DTA_HAVE_AVX2_TU)
namespace dta::kernels::avx2 {
extern const Kernels kTable;
}
#endif
