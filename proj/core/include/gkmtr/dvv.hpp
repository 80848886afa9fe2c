#pragma once

#include <gmpxx.h>
#include <vector>

namespace gkmtr {

// psi-class intersection numbers <tau_{k_1}...tau_{k_n}>_g from the
// Virasoro/DVV recursion, with <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.
// Deliberately shares no code with the matrix-model pipelines: it is the
// independent oracle for the r=2 extraction.
mpq_class dvv_intersection(int g, std::vector<int> ks);

}  // namespace gkmtr
