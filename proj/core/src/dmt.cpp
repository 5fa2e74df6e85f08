// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcrelay {

void DmtConfig::validate() const {
  const auto in_unit = [](double x) { return x >= 0.0 && x < 1.0; };
  if (!in_unit(r1) || !in_unit(r2)) {
    throw std::invalid_argument("DmtConfig: multiplexing gains must lie in [0, 1)");
  }
  if (!(alpha_exp > 0.0 && alpha_exp < 1.0) || !(beta_exp > 0.0 && beta_exp < 1.0)) {
    throw std::invalid_argument("DmtConfig: power exponents must lie in (0, 1)");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("DmtConfig: power ratio must be positive");
  }
  if (snr_db.size() < 4 || !std::is_sorted(snr_db.begin(), snr_db.end()) ||
      std::adjacent_find(snr_db.begin(), snr_db.end()) != snr_db.end()) {
    throw std::invalid_argument("DmtConfig: need >= 4 strictly increasing SNR points");
  }
}

double gamma2_cdf(double x) noexcept {
  if (!(x > 0.0)) {
    return 0.0;
  }
  if (x < 1e-3) {
    // x^2/2 - x^3/3 + x^4/8 - x^5/30
    return x * x * (0.5 - x * (1.0 / 3.0 - x * (1.0 / 8.0 - x / 30.0)));
  }
  return -std::expm1(-x) - x * std::exp(-x);
}

DmtOutage dmt_outage(const DmtConfig& config, double p_s) {
  const double a = p_s * (1.0 + config.c);
  const double b = std::pow(p_s, config.alpha_exp) + std::pow(config.c * p_s, config.beta_exp);
  DmtOutage out;
  const double a_r1 = std::pow(a, config.r1);
  const double denom = a - a_r1 * b;
  out.layer1 = denom > 0.0 ? gamma2_cdf(a_r1 / denom) : 1.0;
  out.layer2 = gamma2_cdf(std::pow(a, config.r2) / b);
  return out;
}

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

bool all_ones(const std::vector<double>& p) {
  return std::all_of(p.begin(), p.end(), [](double v) { return v >= 1.0 - 1e-12; });
}

} // namespace

DmtExponents dmt_outage_exponents(const DmtConfig& config) {
  config.validate();
  DmtExponents e;
  std::vector<double> log_p, y1, y2;
  for (double db : config.snr_db) {
    const double p_s = std::pow(10.0, db / 10.0);
    const auto o = dmt_outage(config, p_s);
    e.p_out1.push_back(o.layer1);
    e.p_out2.push_back(o.layer2);
    log_p.push_back(std::log(p_s));
    y1.push_back(std::log(o.layer1));
    y2.push_back(std::log(o.layer2));
  }
  // B grows as P_s^lead, so layer 1 saturates when r1 + lead >= 1 and
  // layer 2 when lead <= r2, even where finite-SNR outage is still below 1.
  const double lead = std::max(config.alpha_exp, config.beta_exp);
  e.layer1_degenerate = all_ones(e.p_out1) || config.r1 + lead >= 1.0;
  e.layer2_degenerate = all_ones(e.p_out2) || lead <= config.r2;
  e.d1 = e.layer1_degenerate ? 0.0 : -slope(log_p, y1);
  e.d2 = e.layer2_degenerate ? 0.0 : -slope(log_p, y2);
  return e;
}

double dmt_average_rate(const DmtConfig& config, double p_s, DmtRow row) {
  const double c = config.c;
  const double r1 = config.r1;
  const double r2 = config.r2;
  const double lead = row == DmtRow::beta_dominant ? config.beta_exp : config.alpha_exp;
  if (1.0 - r1 - lead < 0.0) {
    return 0.0;
  }
  const auto clip = [](double p) { return std::clamp(p, 0.0, 1.0); };
  const double out1 = clip(std::pow(1.0 + c, -2.0 * (1.0 - r1)) * std::pow(p_s, -2.0 * (1.0 - r1)));
  double rate = (1.0 - out1) * r1;
  if (lead > r2) {
    double scale = std::pow(1.0 + c, 2.0 * r2);
    if (row == DmtRow::equal) {
      scale /= std::pow(1.0 + std::pow(c, lead), 2.0);
    } else if (row == DmtRow::beta_dominant) {
      scale /= std::pow(c, 2.0 * lead);
    }
    const double out2 = clip(scale * std::pow(p_s, -2.0 * (lead - r2)));
    rate += (1.0 - out2) * r2;
  }
  return rate;
}

double dmt_average_rate(const DmtConfig& config, double p_s) {
  config.validate();
  DmtRow row = DmtRow::equal;
  if (config.alpha_exp > config.beta_exp) {
    row = DmtRow::alpha_dominant;
  } else if (config.alpha_exp < config.beta_exp) {
    row = DmtRow::beta_dominant;
  }
  return dmt_average_rate(config, p_s, row);
}

} // namespace bcrelay
