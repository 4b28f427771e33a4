#include "qcc/scattering.hpp"

#include <cmath>
#include <string>

#include "qcc/errors.hpp"

namespace qcc {
namespace {

void require_finite_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double CrystalChain::length() const {
  double total = 0.0;
  for (const auto& e : elements) {
    if (const auto* s = std::get_if<Segment>(&e)) total += s->length;
  }
  return total;
}

std::size_t CrystalChain::junction_count() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += std::holds_alternative<JunctionSpec>(e) ? 1 : 0;
  return n;
}

void CrystalChain::validate() const {
  for (const auto& e : elements) {
    if (const auto* j = std::get_if<JunctionSpec>(&e)) {
      require_finite_positive(j->omega_p, "omega_p");
      require_finite_positive(j->z_ratio, "z_ratio");
    } else {
      const double d = std::get<Segment>(e).length;
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw InvalidArgument("segment length must be non-negative and finite");
      }
    }
  }
}

RT junction_rt(const JunctionSpec& j, double omega, const LineSpec& line) {
  require_finite_positive(omega, "omega");
  require_finite_positive(j.omega_p, "omega_p");
  require_finite_positive(j.z_ratio, "z_ratio");
  require_finite_positive(line.v, "v");
  const double wb = omega / j.omega_p;
  const Complex r = 1.0 / Complex(1.0, 2.0 * j.z_ratio * (wb * wb - 1.0) / wb);
  return {r, 1.0 - r};
}

TransferMatrix2 junction_T(Complex r, Complex t) {
  if (std::abs(t) < kResonanceThreshold) {
    throw SingularAtResonance("junction transfer matrix diverges: |t| = " +
                              std::to_string(std::abs(t)));
  }
  const Complex tc = std::conj(t);
  return CMat(2, {1.0 / tc, -std::conj(r) / tc, -r / t, 1.0 / t});
}

TransferMatrix2 propagator(double d, double omega, const LineSpec& line) {
  if (!(d >= 0.0)) throw InvalidArgument("propagator: d must be non-negative");
  const double phase = omega * d / line.v;
  const Complex e{std::cos(phase), std::sin(phase)};
  return CMat(2, {e, 0.0, 0.0, std::conj(e)});
}

TransferMatrix2 chain_T(const CrystalChain& chain, double omega, const LineSpec& line) {
  TransferMatrix2 m = CMat::identity(2);
  for (const auto& e : chain.elements) {
    if (const auto* j = std::get_if<JunctionSpec>(&e)) {
      const RT rt = junction_rt(*j, omega, line);
      m = junction_T(std::conj(rt.r), std::conj(rt.t)) * m;
    } else {
      m = propagator(std::get<Segment>(e).length, omega, line) * m;
    }
  }
  return m;
}

ScatteringSummary chain_scattering(const CrystalChain& chain, double omega,
                                   const LineSpec& line) {
  const TransferMatrix2 m = chain_T(chain, omega, line);
  const Complex m22 = m(1, 1);
  if (std::abs(m22) < kResonanceThreshold || !std::isfinite(std::abs(m22))) {
    throw SingularAtResonance("chain_scattering: M22 is singular");
  }
  ScatteringSummary s;
  s.t_total = std::conj(1.0 / m22);
  s.r_total = std::conj(-m(1, 0) / m22);
  s.r_right = std::conj(m(0, 1) / m22);
  s.length = chain.length();
  s.omega = omega;
  return s;
}

}  // namespace qcc
