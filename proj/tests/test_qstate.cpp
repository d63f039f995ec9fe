#include <catch2/catch_amalgamated.hpp>

#include <qet/qstate.hpp>

#include <cmath>
#include <limits>

using namespace qet;

namespace {
const QubitAmplitudes kBasis0{1.0, 0.0};
const QubitAmplitudes kBasis1{0.0, 1.0};
const QubitAmplitudes kPlus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
}  // namespace

TEST_CASE("pure_density of basis and superposition states", "[qstate]") {
    const DensityMatrix2 d0 = pure_density(kBasis0);
    CHECK(d0.r00 == cplx(1.0, 0.0));
    CHECK(d0.r01 == cplx(0.0, 0.0));
    CHECK(d0.r10 == cplx(0.0, 0.0));
    CHECK(d0.r11 == cplx(0.0, 0.0));

    const DensityMatrix2 dp = pure_density(kPlus);
    for (cplx v : {dp.r00, dp.r01, dp.r10, dp.r11}) {
        CHECK(std::abs(v - cplx(0.5, 0.0)) < 1e-15);
    }
}

TEST_CASE("pure_density is rank one with eigenvalues {1, 0}", "[qstate]") {
    auto eng = make_engine(11);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix2 rho = pure_density(sample_state(eng));
        CHECK(std::abs(min_eigenvalue(rho)) < 1e-12);
        CHECK(std::abs(max_eigenvalue(rho) - 1.0) < 1e-12);
        validate_density(rho);
    }
}

TEST_CASE("non-normalized and non-finite amplitudes are rejected", "[qstate]") {
    CHECK_THROWS_AS(QubitAmplitudes(1.0, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(QubitAmplitudes(0.0, 0.0), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(QubitAmplitudes(cplx(nan, 0.0), 1.0), std::invalid_argument);
    // drift within the input tolerance is accepted
    CHECK_NOTHROW(QubitAmplitudes(std::sqrt(1.0 + 5e-10), 0.0));
}

TEST_CASE("overlap special values", "[qstate]") {
    const DensityMatrix2 d0 = pure_density(kBasis0);
    const DensityMatrix2 d1 = pure_density(kBasis1);
    CHECK(overlap(d0, d0) == 1.0);
    CHECK(overlap(d0, d1) == 0.0);

    const DensityMatrix2 mixed{0.5, 0.0, 0.0, 0.5};
    CHECK(overlap(mixed, pure_density(kPlus)) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("overlap is symmetric and 1 on matching pure states", "[qstate]") {
    auto eng = make_engine(12);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix2 a = pure_density(sample_state(eng));
        const DensityMatrix2 b = pure_density(sample_state(eng));
        CHECK(std::abs(overlap(a, b) - overlap(b, a)) < 1e-14);
        CHECK(std::abs(overlap(a, a) - 1.0) < 1e-12);
    }
}

TEST_CASE("overlap reports corrupted input", "[qstate]") {
    // r10 is not the conjugate of r01, so the trace picks up an imaginary part
    const DensityMatrix2 corrupt{0.5, cplx(0.0, 0.3), cplx(0.0, 0.3), 0.5};
    const DensityMatrix2 honest{0.5, 0.2, 0.2, 0.5};
    CHECK_THROWS_AS(overlap(corrupt, honest), std::invalid_argument);
}

TEST_CASE("bloch angles map to amplitudes", "[qstate]") {
    CHECK_THROWS_AS(BlochAngles(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BlochAngles(0.1, 7.0), std::invalid_argument);

    const QubitAmplitudes psi = to_amplitudes(BlochAngles(1.2, 2.5));
    CHECK(psi.c0.real() == Catch::Approx(std::cos(0.6)));
    CHECK(psi.c0.imag() == 0.0);
    CHECK(std::abs(psi.c1 - std::polar(std::sin(0.6), 2.5)) < 1e-15);
}

TEST_CASE("sampling is deterministic per seed and stream", "[qstate]") {
    auto a = make_engine(42, 0);
    auto b = make_engine(42, 0);
    auto c = make_engine(42, 1);
    bool streams_differ = false;
    for (int i = 0; i < 32; ++i) {
        const QubitAmplitudes pa = sample_state(a);
        const QubitAmplitudes pb = sample_state(b);
        const QubitAmplitudes pc = sample_state(c);
        REQUIRE(pa.c0 == pb.c0);
        REQUIRE(pa.c1 == pb.c1);
        streams_differ = streams_differ || pa.c0 != pc.c0;
    }
    CHECK(streams_differ);
}

TEST_CASE("sampled-state moments match the averaging measure", "[qstate][montecarlo]") {
    // E[|c0|^4 + |c1|^4] = 3/4 and E[2|c0|^2|c1|^2] = 1/4 under the
    // uniform-(theta, phi) measure; checked to 3 empirical standard errors.
    auto eng = make_engine(2718);
    const long n = 1'000'000;
    double sum4 = 0.0, sq4 = 0.0, sum_cross = 0.0, sq_cross = 0.0;
    for (long i = 0; i < n; ++i) {
        const QubitAmplitudes psi = sample_state(eng);
        const double a = std::norm(psi.c0), b = std::norm(psi.c1);
        const double quartic = a * a + b * b;
        const double cross = 2.0 * a * b;
        sum4 += quartic;
        sq4 += quartic * quartic;
        sum_cross += cross;
        sq_cross += cross * cross;
    }
    const auto three_se = [n](double sum, double sq) {
        const double mean = sum / n;
        const double var = std::max(0.0, (sq / n - mean * mean) * n / (n - 1.0));
        return 3.0 * std::sqrt(var / n);
    };
    CHECK(std::abs(sum4 / n - 0.75) <= three_se(sum4, sq4));
    CHECK(std::abs(sum_cross / n - 0.25) <= three_se(sum_cross, sq_cross));
}

TEST_CASE("density validation flags each broken invariant", "[qstate]") {
    CHECK_THROWS_AS(validate_density(DensityMatrix2{0.5, 0.1, 0.3, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_density(DensityMatrix2{0.7, 0.0, 0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_density(DensityMatrix2{1.2, 0.0, 0.0, -0.2}), std::invalid_argument);
    CHECK_NOTHROW(validate_density(DensityMatrix2{0.5, 0.0, 0.0, 0.5}));
}
