#include <doctest.h>

#include <numbers>

#include "qcc/crystal1d.hpp"
#include "qcc/errors.hpp"

using namespace qcc;

namespace {

constexpr double kPi = std::numbers::pi;

CrystalChain single_cell(double d_wavelengths, double omega_p = 1.0, double z = 10.0) {
  CrystalChain cell;
  cell.elements = {JunctionSpec{omega_p, z}, Segment{wavelengths(d_wavelengths)}};
  return cell;
}

CrystalChain two_junction_cell() {
  const double d = wavelengths(0.1);
  CrystalChain cell;
  cell.elements = {JunctionSpec{1.0, 10.0}, Segment{0.01 * d}, JunctionSpec{0.6, 10.0},
                   Segment{0.99 * d}};
  return cell;
}

CrystalChain free_cell(double d) {
  CrystalChain cell;
  cell.elements = {Segment{d}};
  return cell;
}

}  // namespace

TEST_CASE("bloch_phase of a pure segment is the free phase") {
  const double d = 0.7;
  for (double w : linspace(0.05, 4.4, 40)) {
    const BlochPoint p = bloch_phase(free_cell(d), w);
    CHECK(p.propagating());
    CHECK(p.p.real() == doctest::Approx(w * d).epsilon(1e-10));
  }
}

TEST_CASE("bloch_phase is 2 pi periodic in omega d / v for a free cell") {
  const double d = 1.0;
  for (double w : {0.3, 1.1, 2.5}) {
    const Complex a = bloch_phase(free_cell(d), w).p;
    const Complex b = bloch_phase(free_cell(d), w + 2.0 * kPi).p;
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("single junction cell is in a gap near the plasma frequency") {
  const CrystalChain cell = single_cell(0.1);
  for (double eps : {1e-3, -1e-3, 1e-6}) {
    const BlochPoint p = bloch_phase(cell, 1.0 + eps);
    CHECK(std::abs(p.trace) > 2.0);
    CHECK(p.p.imag() > 0.0);
  }
}

TEST_CASE("Im p at gap centre is the log of the largest eigenvalue modulus") {
  const CrystalChain cell = single_cell(0.1);
  const double w = 1.03;
  const BlochPoint p = bloch_phase(cell, w);
  const auto ev = eigvals(chain_T(cell, w));
  const double largest = std::max(std::abs(ev[0]), std::abs(ev[1]));
  CHECK(p.p.imag() == doctest::Approx(std::log(largest)).epsilon(1e-10));
}

TEST_CASE("gap criterion: Im p > 0 iff |Tr| > 2") {
  const auto points = band_structure(two_junction_cell(), linspace(0.01, 3.0, 3001));
  for (const auto& p : points) {
    CHECK((p.p.imag() > 0.0) == (std::abs(p.trace) > 2.0 * (1.0 + kEdgeTolerance)));
    CHECK(p.p.real() >= 0.0);
    CHECK(p.p.real() <= kPi);
    CHECK(p.p.imag() >= 0.0);
  }
}

TEST_CASE("band_structure matches its serial reference") {
  const auto grid = linspace(0.01, 3.0, 777);
  const auto a = band_structure(single_cell(0.1), grid);
  const auto b = band_structure_serial(single_cell(0.1), grid);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].p == b[i].p);
    CHECK(a[i].omega == b[i].omega);
  }
}

TEST_CASE("free line: linear dispersion and no gaps") {
  const double d = 0.5;
  const auto points = band_structure(free_cell(d), linspace(0.01, 6.0, 100));
  CHECK(find_gaps(points).empty());
  CHECK(find_gaps(points, free_cell(d)).empty());
  CHECK(group_velocity(free_cell(d), 2.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("single-junction cell: exactly one gap around the plasma frequency") {
  const CrystalChain cell = single_cell(0.1);
  const auto points = band_structure(cell, linspace(0.01, 3.0, 3000));
  const auto coarse = find_gaps(points);
  const auto gaps = find_gaps(points, cell);
  REQUIRE(gaps.size() == 1);
  REQUIRE(coarse.size() == 1);
  CHECK(gaps[0].omega_lo < 1.0);
  CHECK(gaps[0].omega_hi > 1.0);
  // Oracle: Brent root of |Tr| - 2 on an independent numpy implementation.
  CHECK(gaps[0].omega_lo == doctest::Approx(0.9919790262).epsilon(1e-7));
  CHECK(gaps[0].omega_hi == doctest::Approx(1.0738115145).epsilon(1e-7));
  // Refined edges sit inside the grid bracket.
  CHECK(gaps[0].omega_lo <= coarse[0].omega_lo);
  CHECK(gaps[0].omega_hi >= coarse[0].omega_hi);
  // Edges are bisected in omega to 1e-8 relative; the trace slope there is O(100).
  CHECK(std::abs(std::abs(cell_trace(cell, gaps[0].omega_lo)) - 2.0) < 1e-5);
  CHECK(std::abs(std::abs(cell_trace(cell, gaps[0].omega_hi)) - 2.0) < 1e-5);
}

TEST_CASE("two-junction cell: two gaps, one per plasma frequency") {
  const CrystalChain cell = two_junction_cell();
  const auto gaps = find_gaps(band_structure(cell, linspace(0.01, 3.0, 3000)), cell);
  REQUIRE(gaps.size() == 2);
  CHECK(gaps[0].omega_lo < 0.6);
  CHECK(gaps[0].omega_hi > 0.6);
  CHECK(gaps[1].omega_lo < 1.0);
  CHECK(gaps[1].omega_hi > 1.0);
  CHECK(gaps[0].omega_lo == doctest::Approx(0.5971351449).epsilon(1e-7));
  CHECK(gaps[0].omega_hi == doctest::Approx(0.6585389293).epsilon(1e-7));
  CHECK(gaps[1].omega_lo == doctest::Approx(0.9920942729).epsilon(1e-7));
  CHECK(gaps[1].omega_hi == doctest::Approx(1.0828385810).epsilon(1e-7));
}

TEST_CASE("grid refinement moves gap edges by less than the grid spacing") {
  const CrystalChain cell = two_junction_cell();
  const auto coarse = find_gaps(band_structure(cell, linspace(0.01, 3.0, 500)), cell);
  const auto fine = find_gaps(band_structure(cell, linspace(0.01, 3.0, 999)), cell);
  REQUIRE(coarse.size() == fine.size());
  const double spacing = (3.0 - 0.01) / 499.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(std::abs(coarse[i].omega_lo - fine[i].omega_lo) < spacing);
    CHECK(std::abs(coarse[i].omega_hi - fine[i].omega_hi) < spacing);
  }
}

TEST_CASE("shrinking d widens the first gap") {
  double previous = 0.0;
  for (double d : {0.2, 0.1, 0.05}) {
    const CrystalChain cell = single_cell(d);
    const auto gaps = find_gaps(band_structure(cell, linspace(0.01, 2.0, 2000)), cell);
    REQUIRE(!gaps.empty());
    const double width = gaps[0].omega_hi - gaps[0].omega_lo;
    CHECK(width > previous);
    previous = width;
  }
}

TEST_CASE("group velocity") {
  const CrystalChain cell = single_cell(0.1);
  CHECK_THROWS_AS(group_velocity(cell, 1.03), InsideGap);

  // Mid-band agreement with the secant slope of band_structure.
  const double w = 0.5;
  const double dw = 1e-3;
  const auto pts = band_structure(cell, std::vector<double>{w - dw, w + dw});
  const double secant = 2.0 * dw / (pts[1].p.real() - pts[0].p.real()) * cell.length();
  CHECK(group_velocity(cell, w) == doctest::Approx(std::abs(secant)).epsilon(1e-4));

  // Flattening approaching the lower band edge.
  const auto gaps = find_gaps(band_structure(cell, linspace(0.01, 3.0, 3000)), cell);
  const double edge = gaps.at(0).omega_lo;
  const auto approach = linspace(edge - 0.05, edge - 1e-4, 10);
  double previous = group_velocity(cell, approach[0]);
  for (std::size_t i = 1; i < approach.size(); ++i) {
    const double v = group_velocity(cell, approach[i]);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(previous < 0.1 * group_velocity(cell, 0.3));
}

TEST_CASE("bloch_phase propagates resonance singularities") {
  CHECK_THROWS_AS(bloch_phase(single_cell(0.1), 1.0), SingularAtResonance);
}

TEST_CASE("linspace") {
  const auto g = linspace(0.0, 1.0, 5);
  CHECK(g.size() == 5);
  CHECK(g[1] == doctest::Approx(0.25));
  CHECK(g.back() == 1.0);
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
}
