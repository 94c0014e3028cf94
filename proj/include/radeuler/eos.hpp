#pragma once

namespace radeuler {

/// Thermodynamic constants of an ideal polytropic gas.
///
/// The gas constant R and the radiation coefficients a1, b1 are fixed to 1
/// and are not stored.
struct GasParams {
    double cv = 1.5;  ///< specific heat at constant volume
    double A = 1.0;   ///< entropy scale in P = A rho^{(cv+1)/cv} exp(s/cv)

    /// Throws DomainError unless cv > 0 and A > 0.
    void validate() const;

    /// (cv + 1) / cv, the coefficient of P div u in the pressure equation.
    double pressure_factor() const { return (cv + 1.0) / cv; }

    bool operator==(const GasParams&) const = default;
};

struct Equilibrium {
    double rho;
    double theta;
};

double rho_from_P_s(double P, double s, const GasParams& gas);
double theta_from_P_s(double P, double s, const GasParams& gas);

/// Entropy of the state (rho, theta); inverse of the two relations above.
double s_from_rho_theta(double rho, double theta, const GasParams& gas);

/// Density and temperature at the reference state (P, s) = (1, 1).
Equilibrium equilibrium_constants(const GasParams& gas);

}  // namespace radeuler
