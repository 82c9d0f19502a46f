// Deterministic text output: 17-significant-digit reals (round-trip exact),
// CSV and JSON report writers, the butterfly SVG, and the thread budget
// helper for the sweep.
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "amo/spectrum.hpp"

namespace amo {

struct ButterflyRow {
  std::int64_t p0 = 0;
  std::int64_t q0 = 0;
  std::int64_t band_index = 0;
  double e_lo = 0.0;
  double e_hi = 0.0;
};

std::string fmt17(double v);  // shortest 17-significant-digit form, %.17g

// Rows sorted by (q0, p0, band_index); header `p0,q0,band_index,e_lo,e_hi`.
void write_butterfly_csv(std::ostream& os, std::span<const ButterflyRow> rows);
// Energy in [-4,4] maps to x in [0,width); alpha = p0/q0 maps to y with 1 at
// the top; stroke width max(0.5, height/(2 qmax^2)).
void write_butterfly_svg(std::ostream& os, std::span<const ButterflyRow> rows,
                         std::int64_t qmax, int width, int height);

// Single-frequency report: JSON object with keys p0, q0, bands, measure,
// lower_bound, upper_bound, thouless_ratio, flags; bands from the given set
// (merged view of whichever representation the caller chose).
void write_report_json(std::ostream& os, const SpectrumReport& report,
                       const BandSet& bands);
void write_report_csv(std::ostream& os, const SpectrumReport& report,
                      const BandSet& bands);

// min(AMO_THREADS, hardware_concurrency), at least 1; unset or invalid
// AMO_THREADS falls back to the hardware count.
int thread_budget();

// All coprime pairs up to qmax with their merged standard-representation
// bands, computed cell-parallel under thread_budget() workers; output order
// and bytes are independent of the worker count.
std::vector<ButterflyRow> butterfly_rows(std::int64_t qmax);

}  // namespace amo
