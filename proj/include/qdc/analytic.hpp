#ifndef qdc_analytic_hpp
#define qdc_analytic_hpp

#include <cstdint>

/// Equilibrium results for the M/M/K queue. Factorials are evaluated in
/// log space, so K in the hundreds is fine.
namespace qdc::analytic {

struct MmkParameters {
  double lambda = 1.0;
  double mu = 1.0;
  std::uint32_t k = 1;

  /// Throws invalid_input_error unless lambda > 0, mu > 0 and k >= 1.
  MmkParameters(double lambda, double mu, std::uint32_t k);
};

/// Traffic intensity lambda / (K mu).
double rho(MmkParameters const& p) noexcept;

/// Limiting probability of n customers in the system. The remaining
/// functions also throw unstable_system_error when rho >= 1.
double mmk_p(MmkParameters const& p, std::uint64_t n);

/// Expected number of customers in the system.
double mmk_expected_n(MmkParameters const& p);

/// Expected time spent waiting for a server.
double mmk_expected_wait(MmkParameters const& p);

} // namespace qdc::analytic

#endif // qdc_analytic_hpp
