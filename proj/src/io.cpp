#include "amo/io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace amo {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_butterfly_csv(std::ostream& os, std::span<const ButterflyRow> rows) {
  os << "p0,q0,band_index,e_lo,e_hi\n";
  for (const ButterflyRow& r : rows) {
    os << r.p0 << ',' << r.q0 << ',' << r.band_index << ',' << fmt17(r.e_lo)
       << ',' << fmt17(r.e_hi) << '\n';
  }
}

void write_butterfly_svg(std::ostream& os, std::span<const ButterflyRow> rows,
                         std::int64_t qmax, int width, int height) {
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
     << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  const double stroke =
      std::max(0.5, (double)height / (2.0 * (double)qmax * (double)qmax));
  std::snprintf(buf, sizeof buf,
                "<g stroke=\"black\" stroke-width=\"%.3f\" stroke-linecap=\"butt\">\n",
                stroke);
  os << buf;
  for (const ButterflyRow& r : rows) {
    const double alpha = (double)r.p0 / (double)r.q0;
    const double y = (1.0 - alpha) * (double)height;
    const double x1 = (r.e_lo + 4.0) / 8.0 * (double)width;
    const double x2 = (r.e_hi + 4.0) / 8.0 * (double)width;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n", x1, y,
                  x2, y);
    os << buf;
  }
  os << "</g>\n</svg>\n";
}

namespace {

void write_bands_json(std::ostream& os, const BandSet& bands) {
  os << '[';
  for (size_t i = 0; i < bands.bands.size(); ++i) {
    if (i) os << ',';
    os << '[' << fmt17(bands.bands[i].lo) << ',' << fmt17(bands.bands[i].hi) << ']';
  }
  os << ']';
}

}  // namespace

void write_report_json(std::ostream& os, const SpectrumReport& report,
                       const BandSet& bands) {
  os << "{\"p0\":" << report.freq.p0 << ",\"q0\":" << report.freq.q0
     << ",\"bands\":";
  write_bands_json(os, bands);
  os << ",\"measure\":" << fmt17(report.measure)
     << ",\"lower_bound\":" << fmt17(report.lower_bound)
     << ",\"upper_bound\":" << fmt17(report.upper_bound)
     << ",\"thouless_ratio\":" << fmt17(report.thouless_ratio) << ",\"flags\":{";
  for (size_t i = 0; i < report.flags.size(); ++i) {
    if (i) os << ',';
    os << '"' << report.flags[i].first << "\":"
       << (report.flags[i].second ? "true" : "false");
  }
  os << "}}\n";
}

void write_report_csv(std::ostream& os, const SpectrumReport& report,
                      const BandSet& bands) {
  os << "p0,q0,band_index,e_lo,e_hi\n";
  for (size_t i = 0; i < bands.bands.size(); ++i) {
    os << report.freq.p0 << ',' << report.freq.q0 << ',' << i << ','
       << fmt17(bands.bands[i].lo) << ',' << fmt17(bands.bands[i].hi) << '\n';
  }
}

int thread_budget() {
  int hw = (int)std::thread::hardware_concurrency();
  if (hw < 1) hw = 1;
  const char* env = std::getenv("AMO_THREADS");
  if (env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return (int)std::min<long>(v, hw);
  }
  return hw;
}

std::vector<ButterflyRow> butterfly_rows(std::int64_t qmax) {
  struct Cell {
    std::int64_t p0, q0;
  };
  std::vector<Cell> cells;
  for (std::int64_t q0 = 1; q0 <= qmax; ++q0) {
    for (std::int64_t p0 = 1; p0 <= q0; ++p0) {
      if (gcd64(p0, q0) == 1) cells.push_back({p0, q0});
    }
  }
  // Each worker fills its own cell slots; the deterministic cell order (q0,
  // then p0) makes the concatenated result independent of scheduling.
  std::vector<std::vector<ButterflyRow>> per_cell(cells.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Frequency f = Frequency::reduce(cells[i].p0, cells[i].q0);
      const BandSet bands = band_edges_standard(f).merged();
      std::vector<ButterflyRow>& rows = per_cell[i];
      rows.reserve(bands.bands.size());
      for (size_t b = 0; b < bands.bands.size(); ++b) {
        rows.push_back({cells[i].p0, cells[i].q0, (std::int64_t)b,
                        bands.bands[b].lo, bands.bands[b].hi});
      }
    }
  };
  const int workers = (int)std::min<size_t>((size_t)thread_budget(), cells.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve((size_t)workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  std::vector<ButterflyRow> rows;
  for (const std::vector<ButterflyRow>& c : per_cell) {
    rows.insert(rows.end(), c.begin(), c.end());
  }
  return rows;
}

}  // namespace amo
