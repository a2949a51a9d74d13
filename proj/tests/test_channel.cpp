#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "subdom/channel.hpp"
#include "subdom/io.hpp"

using namespace subdom;

namespace {

CVector random_vector(std::size_t n, std::uint64_t seed) { return GaussianEnsemble(n, 0.5, seed).sample(); }

std::vector<cplx> to_std(const CVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST(Sampling, Deterministic) {
  EXPECT_EQ(sample_input(16, 1.0, 9), sample_input(16, 1.0, 9));
  EXPECT_NE(sample_input(16, 1.0, 9), sample_input(16, 1.0, 10));
}

TEST(Sampling, SecondMoment) {
  const CVector z = sample_input(100000, 1.0, 42);
  const double m2 = z.squaredNorm() / static_cast<double>(z.size());
  EXPECT_NEAR(m2, 2.0, 0.06);
}

TEST(Sampling, ShrinksWithVariance) {
  EXPECT_LT(sample_input(32, 1e-20, 1).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_THROW(sample_input(4, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(sample_input(0, 1.0, 1), std::invalid_argument);
  EXPECT_EQ(GaussianEnsemble(3, 0.0, 1).sample(), CVector::Zero(3));
}

TEST(Sampling, DeriveSeedSpreads) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 7), derive_seed(5, 7));
}

TEST(Subcarriers, UnitImpulse) {
  for (std::size_t l : {1u, 4u, 9u}) {
    CVector z = CVector::Zero(static_cast<Eigen::Index>(l));
    z(0) = 1.0;
    const CVector d = subcarrier_encode(z);
    for (Eigen::Index j = 0; j < d.size(); ++j) EXPECT_LT(std::abs(d(j) - 1.0 / std::sqrt(double(l))), 1e-15);
  }
}

TEST(Subcarriers, MatchesOracleAndRoundTrips) {
  const CVector z = random_vector(64, 3);
  const auto ref = oracle::dft(to_std(z), +1);
  const CVector d = subcarrier_encode(z);
  for (Eigen::Index j = 0; j < 64; ++j) EXPECT_LT(std::abs(d(j) - ref[static_cast<std::size_t>(j)]), 1e-12);
  EXPECT_LT((subcarrier_decode(d) - z).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(d.norm(), z.norm(), 1e-10);
}

TEST(Transmittance, StrictValidation) {
  EXPECT_NO_THROW(FlatTransmittance({cplx(0.3, 0.3), cplx(0.0, 0.0)}, true));
  EXPECT_NO_THROW(FlatTransmittance({cplx(1 / std::sqrt(2.0), 1 / std::sqrt(2.0))}, true));
  EXPECT_THROW(FlatTransmittance({cplx(0.3, 0.2)}, true), std::invalid_argument);
  EXPECT_THROW(FlatTransmittance({cplx(0.8, 0.8)}, true), std::invalid_argument);
  EXPECT_THROW(FlatTransmittance({cplx(-0.1, -0.1)}, true), std::invalid_argument);
  EXPECT_NO_THROW(FlatTransmittance({cplx(2.0, -1.0)}));
  EXPECT_THROW(FlatTransmittance({}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(FlatTransmittance({cplx(0.5, 0.5)}).squared_magnitude(0), 0.5);
}

TEST(Transmittance, FourierHandValues) {
  const cplx a(0.2, 0.2), b(0.5, 0.5);
  const CVector f = fourier_transmittance(FlatTransmittance({a, b}));
  EXPECT_LT(std::abs(f(0) - (a + b)), 1e-15);
  EXPECT_LT(std::abs(f(1) - (a - b)), 1e-15);

  const cplx c(0.1, 0.1);
  const CVector g = fourier_transmittance(FlatTransmittance(std::vector<cplx>(6, c)));
  EXPECT_LT(std::abs(g(0) - 6.0 * c), 1e-15);
  for (Eigen::Index i = 1; i < 6; ++i) EXPECT_LT(std::abs(g(i)), 1e-15);

  EXPECT_EQ(fourier_transmittance(FlatTransmittance(std::vector<cplx>(5))), CVector::Zero(5));
}

TEST(Transmittance, FourierMatchesOracle) {
  const CVector t = random_vector(13, 21);
  const auto ref = oracle::plain_dft(to_std(t));
  const CVector f = fourier_transmittance(FlatTransmittance(to_std(t)));
  for (Eigen::Index i = 0; i < 13; ++i) EXPECT_LT(std::abs(f(i) - ref[static_cast<std::size_t>(i)]), 1e-12);
}

TEST(Transmit, DeadChannel) {
  const auto rec = transmit(random_vector(8, 1), FlatTransmittance(std::vector<cplx>(8)), 5, 0.0);
  EXPECT_EQ(rec.output, CVector::Zero(8));
}

TEST(Transmit, NoiselessTwoPoint) {
  const cplx a(0.2, 0.2), b(0.6, 0.6);
  const CVector d = random_vector(2, 4);
  const auto rec = transmit(d, FlatTransmittance({a, b}, true), 0, 0.0);
  EXPECT_LT(std::abs(rec.output(0) - (a + b) * rec.input(0)), 1e-15);
  EXPECT_LT(std::abs(rec.output(1) - (a - b) * rec.input(1)), 1e-15);
  EXPECT_LT((rec.input - subcarrier_decode(d)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Transmit, NoiseVariance) {
  // 10^5 noise-only transmissions over 4 sub-channels.
  const double sigma_n_sq = 0.3;
  const FlatTransmittance zero(std::vector<cplx>(4));
  const CVector d = CVector::Zero(4);
  std::vector<double> sum(4, 0.0);
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const auto rec = transmit(d, zero, derive_seed(77, static_cast<std::uint64_t>(t)), sigma_n_sq);
    for (Eigen::Index i = 0; i < 4; ++i) sum[static_cast<std::size_t>(i)] += rec.output(i).real() * rec.output(i).real();
  }
  for (double s : sum) EXPECT_NEAR(s / n, sigma_n_sq, 0.05 * sigma_n_sq);
}

TEST(Transmit, EnergyBoundAndChangeOfBasis) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> q(0.0, 1.0 / std::sqrt(2.0));
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t l = 1 + static_cast<std::size_t>(trial % 12);
    std::vector<cplx> gains(l);
    for (auto& g : gains) {
      const double v = q(rng);
      g = cplx(v, v);
    }
    const CVector d = random_vector(l, derive_seed(9, static_cast<std::uint64_t>(trial)));
    const auto rec = transmit(d, FlatTransmittance(gains, true), static_cast<std::uint64_t>(trial), 0.2);
    const double bound = rec.fourier_transmittance.cwiseAbs().maxCoeff() * d.norm();
    EXPECT_LE((rec.output - rec.noise).norm(), bound * (1 + 1e-12) + 1e-15);

    const CVector back = build_cvqft(l).apply(rec.domain_output - rec.noise);
    EXPECT_LT((back - (rec.output - rec.noise)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Transmit, RejectsMismatch) {
  EXPECT_THROW(transmit(CVector::Zero(3), FlatTransmittance(std::vector<cplx>(4)), 0, 0.0), std::invalid_argument);
  EXPECT_THROW(transmit(CVector::Zero(4), FlatTransmittance(std::vector<cplx>(4)), 0, -1.0), std::invalid_argument);
}

TEST(PathMatrix, EmptyAndLinear) {
  EXPECT_EQ(path_matrix({}, 5), CMatrix::Zero(5, 5));
  const AnglePair p(0.4, 2.1), q(1.0, 5.0);
  const CMatrix one = path_matrix({{0.7, p}, {0.2, q}}, 6);
  const CMatrix two = path_matrix({{1.4, p}, {0.4, q}}, 6);
  EXPECT_LT((two - 2.0 * one).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(path_matrix({{-1.0, p}}, 4), std::invalid_argument);
}

TEST(PathMatrix, AlignedAtZero) {
  const CMatrix t = path_matrix({{1.0, AnglePair(0.0, 0.0)}}, 2);
  const CVector b1 = basis_vector(1.0, 2, 2).entries();
  EXPECT_LT((t - b1 * b1.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(std::abs(t.trace() - 1.0), 0.0, 1e-15);
  Eigen::JacobiSVD<CMatrix> svd(t);
  EXPECT_LT(svd.singularValues()(1), 1e-12);
}

TEST(Domain, IdentityAndNorm) {
  EXPECT_LT((subcarrier_domain(CMatrix::Identity(7, 7), 7).entries - CMatrix::Identity(7, 7)).cwiseAbs().maxCoeff(),
            1e-12);
  CMatrix t(8, 8);
  for (Eigen::Index j = 0; j < 8; ++j) t.col(j) = random_vector(8, 50 + static_cast<std::uint64_t>(j));
  const auto r = subcarrier_domain(t, 8);
  EXPECT_NEAR(r.entries.norm(), t.norm(), 1e-12);
  EXPECT_DOUBLE_EQ(r.source_norm, t.norm());
  EXPECT_THROW(subcarrier_domain(CMatrix::Zero(3, 4), 3), std::invalid_argument);
  EXPECT_THROW(subcarrier_domain(CMatrix::Zero(4, 4), 3), std::invalid_argument);
}

TEST(Domain, ElementFormula) {
  CMatrix t(5, 5);
  for (Eigen::Index j = 0; j < 5; ++j) t.col(j) = random_vector(5, 90 + static_cast<std::uint64_t>(j));
  const auto r = subcarrier_domain(t, 5);
  for (int k = 0; k < 5; ++k) {
    for (int i = 0; i < 5; ++i) {
      const CVector bk = basis_vector(k / 5.0, 5, 5).entries();
      const CVector bi = basis_vector(i / 5.0, 5, 5).entries();
      EXPECT_LT(std::abs(r(k, i) - bk.dot(t * bi)), 1e-12);
    }
  }
}

TEST(Domain, HandExampleSparsity) {
  const PathComponent p{1.0, AnglePair(std::acos(0.5), std::acos(0.25))};
  const auto r = subcarrier_domain(path_matrix({p}, 4), 4);
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      if (k == 1 && i == 2) {
        EXPECT_NEAR(std::abs(r(k, i)), 1.0, 1e-10);
      } else {
        EXPECT_LT(std::abs(r(k, i)), 1e-10);
      }
    }
  }
}

TEST(Domain, OnGridSparsityRandom) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> g(0.05, 2.0);
  for (std::size_t l : {4u, 8u, 16u}) {
    std::uniform_int_distribution<int> idx(0, static_cast<int>(l) - 1);
    for (int trial = 0; trial < 50; ++trial) {
      const int k0 = idx(rng), i0 = idx(rng);
      const double gain = g(rng);
      const double n = static_cast<double>(l);
      const auto r = subcarrier_domain(path_matrix({{gain, AnglePair(std::acos(i0 / n), std::acos(k0 / n))}}, l), l);
      int live = 0;
      for (Eigen::Index k = 0; k < r.rows(); ++k) {
        for (Eigen::Index i = 0; i < r.cols(); ++i) live += std::abs(r(k, i)) > 1e-10 ? 1 : 0;
      }
      EXPECT_EQ(live, 1);
      EXPECT_NEAR(std::abs(r(k0, i0)), gain, 1e-10);
    }
  }
}

TEST(Domain, OffGridRowMaximumInBin) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> frac(-0.3, 0.3);
  for (std::size_t l : {4u, 8u, 16u}) {
    const double n = static_cast<double>(l);
    for (int k0 = 1; k0 < static_cast<int>(l); ++k0) {
      const double c = (k0 + frac(rng)) / n;
      const double theta = std::acos(c);
      ASSERT_TRUE(in_domain_bin(theta, k0, l));
      const auto r = subcarrier_domain(path_matrix({{1.0, AnglePair(pi / 2, theta)}}, l), l);
      Eigen::Index best = 0;
      r.entries.col(0).cwiseAbs().maxCoeff(&best);
      EXPECT_EQ(best, k0) << "l=" << l << " c=" << c;
    }
  }
}

TEST(Domain, TransmitIdentity) {
  const CVector d = random_vector(6, 8);
  const SubcarrierDomainMatrix id{CMatrix::Identity(6, 6), 0.0};
  EXPECT_EQ(domain_transmit(d, id, CVector::Zero(6)), d);
  EXPECT_EQ(domain_transmit(CVector::Zero(6), subcarrier_domain(CMatrix::Ones(6, 6), 6), CVector::Zero(6)),
            CVector::Zero(6));
  EXPECT_THROW(domain_transmit(CVector::Zero(5), id, CVector::Zero(6)), std::invalid_argument);
}

TEST(StatisticalModel, EntryVariance) {
  const double v = 1.7;
  const CMatrix s = sample_statistical_model(100, 1000, v, 4);
  EXPECT_NEAR(s.cwiseAbs2().mean(), v, 0.03 * v);
  EXPECT_NEAR(std::abs(s.mean()), 0.0, 0.02);
  EXPECT_THROW(sample_statistical_model(0, 2, 1.0, 1), std::invalid_argument);
}

TEST(Io, RecordRoundTripsThroughJson) {
  const auto rec = transmit(random_vector(4, 2), FlatTransmittance(std::vector<cplx>(4, cplx(0.3, 0.3))), 3, 0.1);
  const auto back = transmission_from_json(nlohmann::ordered_json::parse(to_json(rec).dump()));
  EXPECT_EQ(back.input, rec.input);
  EXPECT_EQ(back.output, rec.output);
  EXPECT_EQ(back.domain_output, rec.domain_output);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
}
