#pragma once

// Exact growth exponents and thresholds, one row per polynomial degree d:
//
//   eta_2 = theta_2 = 1/69,
//   eta_d   = eta_{d-1} / (5 + eta_{d-1}),
//   theta_d = theta_{d-1} + eta_d - theta_{d-1} * eta_d,
//   kappa_d = eta_d / (1 + eta_d),
//   rho_d   = eta_d + theta_d - eta_d * theta_d,
//   log c_d = (log c_{d-1} - 3 log d) / (5 + eta_{d-1}),  c_2 configurable.
//
// Everything but log c_d is an exact rational.  The hit-frequency threshold
// 2*log(4d)*N/log N + 1 is base-invariant (the base cancels between the two
// logs), so it always uses natural logs; a base choice only matters for the
// standalone c(d) coefficient column in reports.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "ffdyn/errors.hpp"
#include "ffdyn/rational.hpp"

namespace ffdyn {

struct ExponentRow {
  std::uint32_t d = 0;
  BigRat eta, theta, kappa, rho;
  double log_c = 0.0;
};

class ExponentTable {
 public:
  explicit ExponentTable(std::uint32_t d_max, double c2 = 1.0) {
    require(d_max >= 2, "exponent table starts at d = 2");
    require(c2 > 0, "c2 must be positive");
    rows_.reserve(d_max - 1);
    BigRat eta(1, 69), theta(1, 69);
    double log_c = std::log(c2);
    for (std::uint32_t d = 2; d <= d_max; ++d) {
      if (d > 2) {
        BigRat prev_eta = eta;
        eta = prev_eta / (BigRat(5) + prev_eta);
        eta.canonicalize();
        theta = theta + eta - theta * eta;
        theta.canonicalize();
        log_c = (log_c - 3.0 * std::log(static_cast<double>(d))) /
                (5.0 + mpq_get_d(prev_eta.get_mpq_t()));
      }
      ExponentRow row;
      row.d = d;
      row.eta = eta;
      row.theta = theta;
      row.kappa = eta / (BigRat(1) + eta);
      row.kappa.canonicalize();
      row.rho = eta + theta - eta * theta;
      row.rho.canonicalize();
      row.log_c = log_c;
      rows_.push_back(std::move(row));
    }
  }

  const std::vector<ExponentRow>& rows() const { return rows_; }

  const ExponentRow& at(std::uint32_t d) const {
    require(d >= 2 && d - 2 < rows_.size(), "degree outside the table");
    return rows_[d - 2];
  }

 private:
  std::vector<ExponentRow> rows_;
};

enum class LogBase { Natural, Two };

/// The coefficient c(d) = 2 log(4d) in the chosen base (report column only).
inline double freq_coefficient(std::uint32_t d, LogBase base = LogBase::Natural) {
  require(d >= 1, "degree must be >= 1");
  double ln = 2.0 * std::log(4.0 * d);
  return base == LogBase::Natural ? ln : ln / std::log(2.0);
}

/// c(d) * N / log N + 1; hit counts at or above this force an iterate over
/// the subfield.
inline double freq_threshold(std::uint32_t d, std::uint64_t N) {
  require(d >= 1, "degree must be >= 1");
  require(N >= 2, "threshold needs N >= 2");
  double n = static_cast<double>(N);
  return 2.0 * std::log(4.0 * d) * n / std::log(n) + 1.0;
}

/// Diagnostic sequence (d, log eta_d / d), which tends to -log 5.
inline std::vector<std::pair<std::uint32_t, double>> eta_limit_report(
    std::uint32_t d_max) {
  require(d_max >= 2, "limit report starts at d = 2");
  ExponentTable table(d_max);
  std::vector<std::pair<std::uint32_t, double>> out;
  out.reserve(d_max - 1);
  for (const auto& row : table.rows())
    out.emplace_back(row.d, log_rational(row.eta) / row.d);
  return out;
}

}  // namespace ffdyn
