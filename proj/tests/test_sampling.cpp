#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

#include <framefit/sampling.hpp>

#include "support.hpp"

using namespace framefit;

namespace
{

const Domain unit_disk_09 =
    Domain::disk(0.0, 0.0, 0.9, make_point(-1.0, -1.0), make_point(1.0, 1.0));

} // namespace

TEST_CASE("oversampling rule")
{
    CHECK(OversamplingRule(2.0).samples(10) == 20);
    CHECK(OversamplingRule(1.5).samples(7) == 11);
    CHECK(OversamplingRule(1.01).samples(5) == 6);
    for (Index n = 1; n < 300; ++n)
    {
        for (double gamma : {1.001, 1.3, 2.0, 3.7})
        {
            const Index m = OversamplingRule(gamma).samples(n);
            CHECK(m >= n + 1);
            CHECK(m >= Index(std::ceil(gamma * double(n))));
        }
    }
    CHECK_THROWS_AS(OversamplingRule(1.0), InvalidArgument);
    CHECK_THROWS_AS(OversamplingRule(2.0).samples(0), InvalidArgument);
}

TEST_CASE("equispaced interval scheme uses midpoints and Riemann weights")
{
    const SamplingScheme s = generate_scheme(Domain::interval(-1.0, 1.0), 100);
    REQUIRE(s.size() == 100);
    for (Index m = 0; m < 100; ++m)
    {
        CHECK(s.weights(m) == doctest::Approx(std::sqrt(2.0 / 100.0)));
        CHECK(s.point(m)(0) == doctest::Approx(-1.0 + (double(m) + 0.5) * 0.02));
    }
    CHECK(s.weights(0) == doctest::Approx(0.14142).epsilon(1e-4));

    const SamplingScheme one = generate_scheme(Domain::interval(0.0, 1.0), 1);
    REQUIRE(one.size() == 1);
    CHECK(one.weights(0) == 1.0);
    CHECK(one.point(0)(0) == 0.5);
}

TEST_CASE("disk scheme stays inside and its weights integrate the area")
{
    for (auto kind : {SamplingKind::equispaced, SamplingKind::random_uniform})
    {
        const SamplingScheme s = generate_scheme(unit_disk_09, 200, kind, 4);
        CHECK(s.size() >= 200);
        for (Index m = 0; m < s.size(); ++m)
        {
            const Point p = s.point(m);
            CHECK(p.squaredNorm() <= 0.81);
        }
        CHECK(s.weights.squaredNorm() == doctest::Approx(0.81 * std::numbers::pi).epsilon(0.05));
    }
}

TEST_CASE("box scheme")
{
    const Domain box = Domain::box(make_point(0.0, 0.0), make_point(2.0, 1.0));
    const SamplingScheme s = generate_scheme(box, 50);
    CHECK(s.size() >= 50);
    CHECK(s.weights.squaredNorm() == doctest::Approx(2.0));
    for (Index m = 0; m < s.size(); ++m)
    {
        CHECK(box.contains(s.point(m)));
    }
}

TEST_CASE("schemes are deterministic")
{
    const Domain d = Domain::interval(-1.0, 1.0);
    const SamplingScheme a = generate_scheme(d, 37);
    const SamplingScheme b = generate_scheme(d, 37);
    CHECK(a.points == b.points);
    CHECK(a.weights == b.weights);

    const SamplingScheme r1 = generate_scheme(unit_disk_09, 40, SamplingKind::random_uniform, 9);
    const SamplingScheme r2 = generate_scheme(unit_disk_09, 40, SamplingKind::random_uniform, 9);
    const SamplingScheme r3 = generate_scheme(unit_disk_09, 40, SamplingKind::random_uniform, 10);
    CHECK(r1.points == r2.points);
    CHECK(r1.points != r3.points);

    const Eigen::MatrixXd t1 = random_points(unit_disk_09, 5, 3);
    const Eigen::MatrixXd t2 = random_points(unit_disk_09, 5, 3);
    CHECK(t1 == t2);
    for (Index i = 0; i < 5; ++i)
    {
        CHECK(unit_disk_09.contains(t1.col(i)));
    }
}

TEST_CASE("sampled norms")
{
    SUBCASE("constant")
    {
        const SamplingScheme s = generate_scheme(Domain::interval(-1.0, 1.0), 400);
        const auto b = sample_function<double>(functions::constant(1.0), s);
        CHECK(b.squaredNorm() == doctest::Approx(2.0).epsilon(1e-2));
    }
    SUBCASE("identity on [0,1]")
    {
        const SamplingScheme s = generate_scheme(Domain::interval(0.0, 1.0), 1000);
        const auto b = sample_function<double>(functions::identity(), s);
        CHECK(std::abs(b.squaredNorm() - 1.0 / 3.0) < 1e-2);
    }
    SUBCASE("zero")
    {
        const SamplingScheme s = generate_scheme(Domain::interval(0.0, 1.0), 10);
        CHECK(sample_function<Complex>(Function(), s).isZero(0.0));
    }
    SUBCASE("discrete norm converges to the L2 norm")
    {
        const double exact = (std::exp(2.0) - std::exp(-2.0)) / 2.0;
        double previous    = INFINITY;
        for (Index m : {100, 1000, 10000})
        {
            const SamplingScheme s = generate_scheme(Domain::interval(-1.0, 1.0), m);
            const double err =
                std::abs(sample_function<double>(functions::exponential(), s).squaredNorm() - exact);
            CHECK(err < previous);
            previous = err;
        }
        CHECK(previous < 1e-6);
    }
}

TEST_CASE("sampling is linear in the function")
{
    const SamplingScheme s = generate_scheme(Domain::interval(-1.0, 1.0), 64);
    const auto b = sample_function<double>(functions::exp_cos(3.0), s);
    for (double alpha : {4.0, 0.5, 1024.0})
    {
        CHECK(sample_function<double>(functions::exp_cos(3.0).scaled(alpha), s) == alpha * b);
    }
    const auto b3 = sample_function<double>(functions::exp_cos(3.0).scaled(3.7), s);
    CHECK((b3 - 3.7 * b).norm() <= 1e-15 * b3.norm());
}

TEST_CASE("sampling errors")
{
    const SamplingScheme s = generate_scheme(Domain::interval(-1.0, 1.0), 8);
    const Function c = Function::complex([](const Point& x) { return Complex(x(0), 1.0); });
    CHECK_THROWS_AS(sample_function<double>(c, s), InvalidArgument);
    const Function bad = Function::real([](const Point& x) { return 1.0 / (x(0) - x(0)); });
    CHECK_THROWS_AS(sample_function<double>(bad, s), NumericalError);
    CHECK_THROWS_AS(generate_scheme(Domain::interval(0.0, 1.0), 0), InvalidArgument);
    CHECK_THROWS_AS(collocation_matrix<double>(Dictionary::fourier(-2.0, 2.0),
                                               TruncationDescriptor::flat(3), s),
                    InvalidArgument);
}

TEST_CASE("single constant Fourier mode on a matching interval")
{
    AssemblyOptions opts;
    opts.rule = OversamplingRule(2.0);
    const auto sys = assemble_system<Complex>(Dictionary::fourier(-2.0, 2.0),
                                              TruncationDescriptor::flat(1),
                                              functions::constant(1.0),
                                              Domain::interval(-2.0, 2.0), opts);
    REQUIRE(sys.rows() == 2);
    REQUIRE(sys.cols() == 1);
    const double w = std::sqrt(4.0 / 2.0);
    for (Index m = 0; m < 2; ++m)
    {
        CHECK(std::abs(sys.matrix(m, 0) - Complex(w * 0.5, 0.0)) < 1e-15);
    }
}

TEST_CASE("Fourier extension system has decaying singular values below one")
{
    const auto sys = assemble_system<Complex>(Dictionary::fourier(-2.0, 2.0),
                                              TruncationDescriptor::flat(11),
                                              functions::exponential(),
                                              Domain::interval(-1.0, 1.0));
    REQUIRE(sys.rows() == 22);
    REQUIRE(sys.cols() == 11);
    Eigen::JacobiSVD<Matrix<Complex>> svd(sys.matrix);
    const Eigen::VectorXd s = svd.singularValues();
    CHECK(s(0) < 1.0);
    CHECK(s(10) < 1e-3 * s(0));
    for (Index i = 1; i < 11; ++i)
    {
        CHECK(s(i) <= s(i - 1));
    }
}

TEST_CASE("collocation entries are weighted element values")
{
    const Dictionary d = Dictionary::chebyshev(-2.0, 2.0);
    const auto desc    = TruncationDescriptor::flat(6);
    const SamplingScheme s = generate_scheme(Domain::interval(-1.0, 1.0), 13);
    const auto a = collocation_matrix<double>(d, desc, s);
    for (Index m = 0; m < 13; ++m)
    {
        for (Index n = 0; n < 6; ++n)
        {
            CHECK(a(m, n) == doctest::Approx(s.weights(m) *
                                             testing::chebyshev_oracle(-2.0, 2.0, n, s.point(m)(0))));
        }
    }
}

TEST_CASE("scheme csv")
{
    std::ostringstream os;
    write_scheme_csv(os, generate_scheme(Domain::interval(0.0, 1.0), 2));
    const std::string text = os.str();
    CHECK(text.rfind("x0,weight\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
