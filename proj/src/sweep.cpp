#include "latbound/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "latbound/error.hpp"
#include "latbound/exponent.hpp"
#include "latbound/format.hpp"

namespace latbound {

std::vector<SweepPoint> sweep(const DistanceSpectrum& spec,
                              const std::vector<BoundMethod>& methods,
                              const std::vector<double>& sigmas,
                              const BoundOptions& options, int threads) {
  std::vector<SweepPoint> rows;
  for (double s : sigmas) {
    for (BoundMethod m : methods) {
      SweepPoint p;
      p.sigma = s;
      p.method = m;
      rows.push_back(p);
    }
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepPoint& p = rows[i];
      try {
        const NoiseModel model = make_awgn(spec.n, p.sigma);
        p.vnr_db = vnr_db(model, spec.log_density);
        p.result = evaluate_bound(p.method, spec, model, options);
      } catch (const std::exception& e) {
        p.error = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(rows.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::vector<double> parse_grid(const std::string& text) {
  auto fail = [&] {
    throw Error(ErrorCode::InvalidArgument,
                "grid must look like start:stop:count, got '" + text + "'");
  };
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) fail();
  char* end = nullptr;
  const std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1),
                    s2 = text.substr(b + 1);
  const double start = std::strtod(s0.c_str(), &end);
  if (s0.empty() || *end) fail();
  const double stop = std::strtod(s1.c_str(), &end);
  if (s1.empty() || *end) fail();
  const long count = std::strtol(s2.c_str(), &end, 10);
  if (s2.empty() || *end || count < 1) fail();
  if (count == 1 && start != stop) fail();
  std::vector<double> grid;
  for (long i = 0; i < count; ++i) {
    grid.push_back(count == 1 ? start
                              : start + (stop - start) * static_cast<double>(i) /
                                            static_cast<double>(count - 1));
  }
  return grid;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& rows) {
  std::ostringstream out;
  out << "sigma,vnr_db,method,r_opt,ubt,sbt,total,M_used,alpha_used,iterations,"
         "status\n";
  for (const auto& p : rows) {
    out << format_double(p.sigma) << ',' << format_double(p.vnr_db) << ','
        << to_string(p.method) << ',';
    if (p.result) {
      const auto& r = *p.result;
      out << format_double(r.r_opt) << ',' << format_double(r.ubt) << ','
          << format_double(r.sbt) << ',' << format_double(r.total) << ','
          << r.diagnostics.shells_used << ','
          << (r.diagnostics.alpha_used ? format_double(*r.diagnostics.alpha_used)
                                       : std::string())
          << ',' << r.diagnostics.iterations << ",ok\n";
    } else {
      out << ",,,,,,,error\n";
    }
  }
  return out.str();
}

std::string sweep_to_json(const std::vector<SweepPoint>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& p : rows) {
    nlohmann::ordered_json j;
    j["sigma"] = p.sigma;
    j["vnr_db"] = p.vnr_db;
    j["method"] = to_string(p.method);
    if (p.result) {
      const auto& r = *p.result;
      const auto& d = r.diagnostics;
      j["r_opt"] = r.r_opt;
      j["ubt"] = r.ubt;
      j["sbt"] = r.sbt;
      j["total"] = r.total;
      j["M_used"] = d.shells_used;
      j["alpha_used"] = d.alpha_used ? nlohmann::ordered_json(*d.alpha_used)
                                     : nlohmann::ordered_json(nullptr);
      j["iterations"] = d.iterations;
      j["raw_total"] = d.raw_total;
      j["quadrature_error"] = d.quadrature_error;
      j["flagged"] = d.flagged;
      j["truncated"] = d.truncated;
      j["horizon_limited"] = d.horizon_limited;
      j["status"] = "ok";
    } else {
      j["status"] = "error";
      j["error"] = p.error;
    }
    out.push_back(j);
  }
  return out.dump(2) + "\n";
}

}  // namespace latbound
