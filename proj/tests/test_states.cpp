#include "optwit/certify.hpp"
#include "optwit/states.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace optwit;

TEST(RhoT, MatchesTwoQubitFixture) {
  const AffineOp rho = rho_affine(QubitCount(2));
  const auto display = oracle::parse_display(oracle::kRhoDisplay);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) {
      ASSERT_EQ(Dyadic(8) * rho.constant(i, j), Dyadic(display.constant[i][j])) << i << "," << j;
      ASSERT_EQ(Dyadic(8) * rho.slope(i, j), Dyadic(display.slope[i][j])) << i << "," << j;
    }
}

TEST(RhoT, ZeroBlockAtTZero) {
  const DyadicOp rho = rho_t(QubitCount(2), Dyadic(0));
  // block (1,3), 1-based
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l) EXPECT_TRUE(rho(k, 8 + l).is_zero());
}

TEST(RhoT, TraceIsHalfDimensionPlusOne) {
  for (int n = 2; n <= 5; ++n) {
    const DyadicOp rho = rho_t(QubitCount(n), Dyadic::from_parts(3, 2));
    EXPECT_EQ(rho.trace(), Dyadic((std::int64_t{1} << (n - 1)) + 1)) << "N=" << n;
  }
  EXPECT_EQ(rho_t(QubitCount(3), Dyadic(0)).trace(), Dyadic(5));
}

TEST(RhoT, RequiresTwoQubits) {
  EXPECT_THROW(rho_affine(QubitCount(1)), std::invalid_argument);
  EXPECT_THROW(rho_t(QubitCount(0), 0.5), std::invalid_argument);
}

TEST(RhoT, SymmetricAndAffine) {
  for (int n = 2; n <= 4; ++n) {
    const QubitCount q(n);
    const DyadicOp r0 = rho_t(q, Dyadic(0)), r1 = rho_t(q, Dyadic(1));
    for (const Dyadic t : {Dyadic::from_parts(-3, 2), Dyadic::from_parts(5, 3), Dyadic(2)}) {
      const DyadicOp rt = rho_t(q, t);
      EXPECT_TRUE(rt.is_hermitian());
      EXPECT_EQ(rt, r0 + t * (r1 - r0));
    }
  }
}

TEST(PptMinEigs, Examples) {
  EXPECT_GE(ppt_min_eigs(QubitCount(2), 0.5).min_eig_rho_gamma, -1e-10);
  EXPECT_LT(ppt_min_eigs(QubitCount(2), 1.2).min_eig_rho_gamma, -1e-6);
  EXPECT_LT(ppt_min_eigs(QubitCount(3), -1.2).min_eig_rho_gamma, -1e-6);
}

TEST(PptMinEigs, BoundaryAndPositivity) {
  for (int n = 2; n <= 4; ++n) {
    const QubitCount q(n);
    const AffineOp rho = rho_affine(q);
    for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const PptEigs e = ppt_min_eigs(rho, q.dim(), t);
      EXPECT_GE(e.min_eig_rho_gamma, -1e-10) << "N=" << n << " t=" << t;
      EXPECT_GE(e.min_eig_rho, -1e-10) << "N=" << n << " t=" << t;
    }
    for (double t : {-1.05, 1.05}) EXPECT_LT(ppt_min_eigs(rho, q.dim(), t).min_eig_rho_gamma, -1e-6);
  }
}

TEST(WitnessClosedForm, KnownValues) {
  EXPECT_EQ(witness_closed_form(QubitCount(2), Dyadic(1)), -Dyadic::inv_pow2(4));
  EXPECT_EQ(witness_closed_form(QubitCount(3), Dyadic(1)), -Dyadic::inv_pow2(8));
  EXPECT_EQ(witness_closed_form(QubitCount(4), Dyadic(1)), -Dyadic::inv_pow2(12));
  EXPECT_EQ(witness_closed_form(QubitCount(2), Dyadic(1)).to_rational(),
            oracle::witness_trace_formula(2, optwit::Rational(1)));
  EXPECT_DOUBLE_EQ(witness_closed_form(QubitCount(2), 1.0), -0.0625);
}

TEST(Sweep, GridAndRows) {
  const auto rows = sweep(QubitCount(2), 0.0, 1.0, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].t, 0.5);
  EXPECT_EQ(rows[2].t, 1.0);
  EXPECT_EQ(rows[2].witness_value, -1.0 / 16);
  EXPECT_EQ(rows[1].witness_value, 0.0);
  for (const auto& r : rows) EXPECT_LE(std::abs(r.witness_value - r.witness_formula), 1e-12);
}

TEST(Sweep, DefaultFigureGrid) {
  const auto rows = sweep(QubitCount(2), -1.5, 1.5, 61, 3);
  ASSERT_EQ(rows.size(), 61u);
  EXPECT_EQ(rows.front().t, -1.5);
  EXPECT_EQ(rows.back().t, 1.5);
  EXPECT_LT(rows.back().min_eig_rho_gamma, 0.0);
  EXPECT_EQ(rows[50].t, 1.0);
  EXPECT_EQ(rows[50].witness_value, -0.0625);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LT(rows[k - 1].t, rows[k].t);
  EXPECT_EQ(rows[10].min_eig_rho_gamma, sweep(QubitCount(2), -1.5, 1.5, 61, 1)[10].min_eig_rho_gamma);
}

TEST(Sweep, RejectsInvalidGrid) {
  EXPECT_THROW(sweep(QubitCount(4), 0.0, 0.0, 2), std::invalid_argument);
  EXPECT_THROW(sweep(QubitCount(2), 0.0, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(sweep(QubitCount(2), 1.0, 0.0, 5), std::invalid_argument);
  EXPECT_THROW(sweep(QubitCount(1), 0.0, 1.0, 5), std::invalid_argument);
}

TEST(Sweep, CsvSchema) {
  std::ostringstream os;
  write_sweep_csv(os, sweep(QubitCount(2), 0.0, 1.0, 3));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,min_eig_rho,min_eig_rho_gamma,witness_value,witness_formula");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_NE(os.str().find("\n1,"), std::string::npos);
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");  // 17 significant digits
}
