#include <qdc/analytic.hpp>

#include <qdc/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qdc::analytic {

namespace {

void require_stable(MmkParameters const& p) {
  double const r = rho(p);
  if (!(r < 1.0)) {
    throw unstable_system_error("no equilibrium: rho = " + std::to_string(r) +
                                " is not below 1");
  }
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

// log of (K rho)^K / (K! (1 - rho)^m), the term shared by P(0), E(N), E(w).
double log_tail_term(MmkParameters const& p, int m) {
  double const k = p.k;
  double const r = rho(p);
  return k * std::log(k * r) - log_factorial(k) - m * std::log1p(-r);
}

double log_p0(MmkParameters const& p) {
  double const load = p.k * rho(p);
  std::vector<double> logs;
  logs.reserve(p.k + 1);
  logs.push_back(log_tail_term(p, 1));
  for (std::uint32_t i = 0; i < p.k; ++i) {
    logs.push_back(i * std::log(load) - log_factorial(i));
  }
  double const top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) {
    sum += std::exp(l - top);
  }
  return -(top + std::log(sum));
}

} // namespace

MmkParameters::MmkParameters(double lambda_, double mu_, std::uint32_t k_)
    : lambda(lambda_), mu(mu_), k(k_) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw invalid_input_error("arrival rate must be positive and finite");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw invalid_input_error("service rate must be positive and finite");
  }
  if (k < 1) {
    throw invalid_input_error("server count must be at least 1");
  }
}

double rho(MmkParameters const& p) noexcept {
  return p.lambda / (p.k * p.mu);
}

double mmk_p(MmkParameters const& p, std::uint64_t n) {
  require_stable(p);
  double const k = p.k;
  double const nn = static_cast<double>(n);
  double const log_load = std::log(k * rho(p));
  double log_pn = log_p0(p) + nn * log_load;
  if (n <= p.k) {
    log_pn -= log_factorial(nn);
  } else {
    log_pn -= log_factorial(k) + (nn - k) * std::log(k);
  }
  return std::exp(log_pn);
}

double mmk_expected_n(MmkParameters const& p) {
  require_stable(p);
  double const r = rho(p);
  return p.k * r + r * std::exp(log_tail_term(p, 2) + log_p0(p));
}

double mmk_expected_wait(MmkParameters const& p) {
  require_stable(p);
  return std::exp(log_tail_term(p, 2) + log_p0(p)) / (p.k * p.mu);
}

} // namespace qdc::analytic
