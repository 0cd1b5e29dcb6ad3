///
/// \file sampling.hpp
///
/// Weighted point-evaluation functionals on a domain and assembly of the
/// discrete least-squares system
///
/// \f[
///   A_{mn} = w_m \phi_n(x_m), \qquad b_m = w_m f(x_m).
/// \f]
///
/// The weights form a Riemann sum, so that \f$\|b\|^2 \approx
/// \|f\|^2_{L^2(\Omega)}\f$ and \f$\|Az - b\|\f$ is the discrete norm of
/// \f$f - \sum_n z_n \phi_n\f$ for any coefficient vector \f$z\f$.
///
#ifndef FRAMEFIT_SAMPLING_HPP
#define FRAMEFIT_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <framefit/dictionary.hpp>
#include <framefit/domain.hpp>
#include <framefit/function.hpp>
#include <framefit/types.hpp>

namespace framefit
{

enum class SamplingKind
{
    equispaced,
    random_uniform
};

/// Points \f$x_m \in \Omega\f$ (one per column) and positive weights.
struct SamplingScheme
{
    Domain domain;
    Eigen::MatrixXd points;
    Eigen::VectorXd weights;

    Index size() const noexcept
    {
        return weights.size();
    }

    Point point(Index m) const
    {
        return points.col(m);
    }
};

/// Linear oversampling \f$M = \lceil \gamma N \rceil\f$.
class OversamplingRule
{
public:
    explicit OversamplingRule(double gamma = 2.0);

    double gamma() const noexcept
    {
        return gamma_;
    }

    /// Number of samples for N degrees of freedom, never below N + 1.
    Index samples(Index n) const;

private:
    double gamma_;
};

/// Equispaced schemes place points at the midpoints of a uniform grid on the
/// bounding box (midpoints of M subintervals in one dimension). For boxes and
/// masked domains the grid is refined until at least `m` points lie inside
/// the domain; the actual count then defines the weights
/// \f$w = \sqrt{|\Omega|/M}\f$.
SamplingScheme generate_scheme(const Domain& domain, Index m,
                               SamplingKind kind = SamplingKind::equispaced,
                               std::uint64_t seed = 0);

/// `count` points drawn uniformly on the domain by rejection from the
/// bounding box.
Eigen::MatrixXd random_points(const Domain& domain, Index count,
                              std::uint64_t seed);

/// Write the scheme as CSV with columns x0[,x1[,x2]],weight.
void write_scheme_csv(std::ostream& os, const SamplingScheme& scheme);

/// \f$b_m = w_m f(x_m)\f$. Throws NumericalError on non-finite values and
/// InvalidArgument when a complex-valued function is sampled into a real
/// vector.
template <typename Scalar>
Vector<Scalar> sample_function(const Function& f, const SamplingScheme& scheme)
{
    if constexpr (!is_complex_v<Scalar>)
    {
        if (!f.is_real())
        {
            throw InvalidArgument("sample_function: complex function " + f.name() +
                                  " sampled into a real vector");
        }
    }
    Vector<Scalar> b(scheme.size());
    for (Index m = 0; m < scheme.size(); ++m)
    {
        const Complex v = f(scheme.point(m));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        {
            throw NumericalError("sample_function: non-finite value of " + f.name());
        }
        b(m) = scalar_cast<Scalar>(scheme.weights(m) * v);
    }
    return b;
}

/// \f$A_{mn} = w_m \phi_n(x_m)\f$ for the truncation `desc`.
template <typename Scalar>
Matrix<Scalar> collocation_matrix(const Dictionary& dict,
                                  const TruncationDescriptor& desc,
                                  const SamplingScheme& scheme)
{
    dict.check(desc);
    if constexpr (!is_complex_v<Scalar>)
    {
        if (!dict.is_real())
        {
            throw InvalidArgument("collocation_matrix: complex dictionary " +
                                  dict.describe() + " in a real system");
        }
    }
    if (scheme.points.rows() != dict.dim())
    {
        throw InvalidArgument("collocation_matrix: point dimension mismatch");
    }
    const Index rows = scheme.size();
    const Index cols = desc.total();
    Matrix<Scalar> a(rows, cols);
    Vector<Complex> phi(cols);
    for (Index m = 0; m < rows; ++m)
    {
        dict.evaluate_all(desc, scheme.point(m), phi);
        const double w = scheme.weights(m);
        for (Index n = 0; n < cols; ++n)
        {
            a(m, n) = scalar_cast<Scalar>(w * phi(n));
        }
    }
    return a;
}

template <typename Scalar>
struct LeastSquaresSystem
{
    Matrix<Scalar> matrix;
    Vector<Scalar> rhs;
    SamplingScheme scheme;
    TruncationDescriptor descriptor;

    Index rows() const noexcept
    {
        return matrix.rows();
    }

    Index cols() const noexcept
    {
        return matrix.cols();
    }
};

/// Options for assembling a least-squares system.
struct AssemblyOptions
{
    OversamplingRule rule{2.0};
    SamplingKind kind  = SamplingKind::equispaced;
    std::uint64_t seed = 0;
};

template <typename Scalar>
LeastSquaresSystem<Scalar> assemble_system(const Dictionary& dict,
                                           const TruncationDescriptor& desc,
                                           const Function& f, const Domain& domain,
                                           const AssemblyOptions& options = {})
{
    if (desc.total() < 1)
    {
        throw InvalidArgument("assemble_system: empty truncation");
    }
    LeastSquaresSystem<Scalar> sys;
    sys.scheme     = generate_scheme(domain, options.rule.samples(desc.total()),
                                     options.kind, options.seed);
    sys.matrix     = collocation_matrix<Scalar>(dict, desc, sys.scheme);
    sys.rhs        = sample_function<Scalar>(f, sys.scheme);
    sys.descriptor = desc;
    return sys;
}

} // namespace framefit

#endif /* FRAMEFIT_SAMPLING_HPP */
