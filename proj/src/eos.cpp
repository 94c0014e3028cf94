#include "radeuler/eos.hpp"

#include <cmath>
#include <string>

#include "radeuler/errors.hpp"

namespace radeuler {

void GasParams::validate() const {
    if (!(cv > 0.0) || !std::isfinite(cv)) {
        throw DomainError("gas: cv must be positive, got " + std::to_string(cv));
    }
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw DomainError("gas: A must be positive, got " + std::to_string(A));
    }
}

double rho_from_P_s(double P, double s, const GasParams& gas) {
    if (!(P > 0.0)) {
        throw DomainError("rho_from_P_s: pressure must be positive, got " + std::to_string(P));
    }
    const double k = gas.cv / (gas.cv + 1.0);
    return std::pow(P / gas.A, k) * std::exp(-s / (gas.cv + 1.0));
}

double theta_from_P_s(double P, double s, const GasParams& gas) {
    const double rho = rho_from_P_s(P, s, gas);
    return gas.A * std::pow(rho, 1.0 / gas.cv) * std::exp(s / gas.cv);
}

double s_from_rho_theta(double rho, double theta, const GasParams& gas) {
    if (!(rho > 0.0) || !(theta > 0.0)) {
        throw DomainError("s_from_rho_theta: density and temperature must be positive");
    }
    return gas.cv * std::log(theta / (gas.A * std::pow(rho, 1.0 / gas.cv)));
}

Equilibrium equilibrium_constants(const GasParams& gas) {
    gas.validate();
    return {rho_from_P_s(1.0, 1.0, gas), theta_from_P_s(1.0, 1.0, gas)};
}

}  // namespace radeuler
