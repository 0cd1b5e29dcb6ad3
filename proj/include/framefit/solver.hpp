///
/// \file solver.hpp
///
/// Truncated-SVD regularized least squares, plain, diagonally weighted and
/// incrementally weighted.
///
#ifndef FRAMEFIT_SOLVER_HPP
#define FRAMEFIT_SOLVER_HPP

#include <cmath>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <framefit/sampling.hpp>
#include <framefit/types.hpp>

namespace framefit
{

enum class ThresholdMode
{
    absolute, ///< drop singular values below epsilon
    relative  ///< drop singular values below epsilon * sigma_max
};

template <typename Scalar>
struct RegularizedSolution
{
    Vector<Scalar> coefficients;
    double residual_norm    = 0.0; ///< \f$\|Ac - b\|\f$
    double epsilon          = 0.0;
    Eigen::VectorXd singular_values; ///< all of them, descending
    Index retained_rank     = 0;     ///< number of sigma_k >= epsilon
    double coefficient_norm = 0.0;
};

namespace detail
{

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m)
{
    for (Index j = 0; j < m.cols(); ++j)
    {
        for (Index i = 0; i < m.rows(); ++i)
        {
            const auto v = m(i, j);
            if constexpr (is_complex_v<std::decay_t<decltype(v)>>)
            {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                {
                    return false;
                }
            }
            else
            {
                if (!std::isfinite(v))
                {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Thin SVD \f$A = U \Sigma V^H\f$ by LAPACK divide and conquer, retried
/// with the QR-iteration driver. False when both fail.
bool lapack_svd(const Matrix<double>& a, Eigen::VectorXd& sigma, Matrix<double>& u,
                Matrix<double>& v);
bool lapack_svd(const Matrix<Complex>& a, Eigen::VectorXd& sigma, Matrix<Complex>& u,
                Matrix<Complex>& v);

} // namespace detail

/// Least-squares system reduced to its singular value decomposition.
///
/// Keeps \f$A\f$, \f$b\f$, the singular values, the right singular vectors
/// and \f$U^H b\f$, so that solves for several thresholds reuse one SVD.
template <typename Scalar>
class PreparedSystem
{
public:
    PreparedSystem(Matrix<Scalar> a, Vector<Scalar> b)
        : a_(std::move(a)), b_(std::move(b))
    {
        if (a_.rows() != b_.size())
        {
            throw InvalidArgument("tsvd: right-hand side length does not match rows");
        }
        if (a_.rows() < a_.cols())
        {
            throw InvalidArgument("tsvd: system must have at least as many rows as columns");
        }
        if (!detail::all_finite(a_) || !detail::all_finite(b_))
        {
            throw NumericalError("tsvd: non-finite entries in the system");
        }
        if (a_.cols() == 0)
        {
            return;
        }
        if (!decompose_lapack() && !decompose_jacobi())
        {
            throw NumericalError("tsvd: SVD did not produce finite singular values");
        }
    }

    const Matrix<Scalar>& matrix() const noexcept
    {
        return a_;
    }

    const Vector<Scalar>& rhs() const noexcept
    {
        return b_;
    }

    const Eigen::VectorXd& singular_values() const noexcept
    {
        return sigma_;
    }

    /// Number of retained singular values. A value equal to the threshold is
    /// retained; zero singular values never are.
    Index rank(double epsilon, ThresholdMode mode = ThresholdMode::absolute) const
    {
        if (!(epsilon >= 0.0))
        {
            throw InvalidArgument("tsvd: epsilon must be non-negative");
        }
        const double cut =
            mode == ThresholdMode::relative && sigma_.size() > 0 ? epsilon * sigma_(0) : epsilon;
        Index r = 0;
        while (r < sigma_.size() && sigma_(r) >= cut && sigma_(r) > 0.0)
        {
            ++r;
        }
        return r;
    }

    RegularizedSolution<Scalar> solve(double epsilon,
                                      ThresholdMode mode = ThresholdMode::absolute) const
    {
        RegularizedSolution<Scalar> sol;
        sol.epsilon         = epsilon;
        sol.singular_values = sigma_;
        sol.retained_rank   = rank(epsilon, mode);
        const Index r       = sol.retained_rank;
        if (r > 0)
        {
            const Vector<Scalar> scaled =
                (uhb_.head(r).array() / sigma_.head(r).array().template cast<Scalar>())
                    .matrix();
            sol.coefficients = v_.leftCols(r) * scaled;
        }
        else
        {
            sol.coefficients = Vector<Scalar>::Zero(a_.cols());
        }
        sol.residual_norm    = (a_ * sol.coefficients - b_).norm();
        sol.coefficient_norm = sol.coefficients.norm();
        return sol;
    }

private:
    bool accept(const Eigen::VectorXd& sigma)
    {
        return sigma.size() == a_.cols() && detail::all_finite(sigma);
    }

    // A = QR, then the SVD of the square factor R.
    bool decompose_lapack()
    {
        const Index n = a_.cols();
        Eigen::HouseholderQR<Matrix<Scalar>> qr(a_);
        const Matrix<Scalar> r = qr.matrixQR().topRows(n).template triangularView<Eigen::Upper>();
        Eigen::VectorXd sigma;
        Matrix<Scalar> u, v;
        if (!detail::lapack_svd(r, sigma, u, v) || !accept(sigma))
        {
            return false;
        }
        const Vector<Scalar> qhb = qr.householderQ().adjoint() * b_;
        sigma_ = std::move(sigma);
        v_     = std::move(v);
        uhb_   = u.adjoint() * qhb.head(n);
        return true;
    }

    bool decompose_jacobi()
    {
        Eigen::JacobiSVD<Matrix<Scalar>> svd(a_, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success || !accept(svd.singularValues()))
        {
            return false;
        }
        sigma_ = svd.singularValues();
        v_     = svd.matrixV();
        uhb_   = svd.matrixU().adjoint() * b_;
        return true;
    }

    Matrix<Scalar> a_;
    Vector<Scalar> b_;
    Eigen::VectorXd sigma_;
    Matrix<Scalar> v_;
    Vector<Scalar> uhb_;
};

/// Minimal-norm solution of \f$Ac \approx b\f$ on the span of the right
/// singular vectors whose singular values are at least \f$\epsilon\f$.
template <typename Scalar>
RegularizedSolution<Scalar> tsvd_solve(const Matrix<Scalar>& a, const Vector<Scalar>& b,
                                       double epsilon,
                                       ThresholdMode mode = ThresholdMode::absolute)
{
    return PreparedSystem<Scalar>(a, b).solve(epsilon, mode);
}

template <typename Scalar>
RegularizedSolution<Scalar> tsvd_solve(const LeastSquaresSystem<Scalar>& system,
                                       double epsilon,
                                       ThresholdMode mode = ThresholdMode::absolute)
{
    return tsvd_solve<Scalar>(system.matrix, system.rhs, epsilon, mode);
}

/// Positive diagonal column scaling \f$D\f$.
class DiagonalWeight
{
public:
    explicit DiagonalWeight(Eigen::VectorXd diagonal);

    const Eigen::VectorXd& diagonal() const noexcept
    {
        return d_;
    }

    Index size() const noexcept
    {
        return d_.size();
    }

private:
    Eigen::VectorXd d_;
};

/// \f$d_n = n^{-\alpha}\f$ for n = 1, ..., N.
DiagonalWeight algebraic_weight(Index n, double alpha);

/// \f$d_k = (10^{-4} + k + k^2 + k^3)^{-1}\f$ for the degrees k = 0, ..., N-1.
DiagonalWeight cubic_floor_weight(Index n);

/// Solve \f$A D y = b\f$ by TSVD and return \f$c = D y\f$. The residual and
/// singular values are those of the scaled system.
template <typename Scalar>
RegularizedSolution<Scalar> weighted_solve(const Matrix<Scalar>& a, const Vector<Scalar>& b,
                                           const DiagonalWeight& d, double epsilon,
                                           ThresholdMode mode = ThresholdMode::absolute)
{
    if (d.size() != a.cols())
    {
        throw InvalidArgument("weighted_solve: weight length does not match columns");
    }
    const Matrix<Scalar> ad = a * d.diagonal().template cast<Scalar>().asDiagonal();
    RegularizedSolution<Scalar> sol = tsvd_solve<Scalar>(ad, b, epsilon, mode);
    sol.coefficients = (d.diagonal().template cast<Scalar>().array() *
                        sol.coefficients.array())
                           .matrix();
    sol.coefficient_norm = sol.coefficients.norm();
    return sol;
}

template <typename Scalar>
RegularizedSolution<Scalar> weighted_solve(const LeastSquaresSystem<Scalar>& system,
                                           const DiagonalWeight& d, double epsilon,
                                           ThresholdMode mode = ThresholdMode::absolute)
{
    return weighted_solve<Scalar>(system.matrix, system.rhs, d, epsilon, mode);
}

template <typename Scalar>
struct IncrementalSolution
{
    RegularizedSolution<Scalar> solution;
    /// Residuals e_1, ..., e_N of the successive weighted solves.
    std::vector<double> step_residuals;
    /// Final weights diag(||b||, e_1, ..., e_{N-1}).
    Eigen::VectorXd weights;
};

/// Incrementally weighted least squares.
///
/// The first system is solved unweighted; system i >= 2 is solved with the
/// column scaling diag(||b||, e_1, ..., e_{i-1}), where e_j is the residual
/// of step j and b the last right-hand side. The coefficients of the last
/// step are returned unscaled, c = D_N y_N.
template <typename Scalar>
IncrementalSolution<Scalar> incremental_weighted_solve(std::span<const Matrix<Scalar>> as,
                                                       std::span<const Vector<Scalar>> bs,
                                                       double epsilon)
{
    if (as.empty() || as.size() != bs.size())
    {
        throw InvalidArgument("incremental_weighted_solve: need N >= 1 matching systems");
    }
    for (std::size_t i = 0; i < as.size(); ++i)
    {
        if (as[i].cols() != Index(i + 1))
        {
            throw InvalidArgument("incremental_weighted_solve: system i must have i columns");
        }
    }
    IncrementalSolution<Scalar> out;
    const double bnorm = bs.back().norm();

    out.solution = tsvd_solve<Scalar>(as[0], bs[0], epsilon);
    out.step_residuals.push_back(out.solution.residual_norm);
    Eigen::VectorXd d = Eigen::VectorXd::Ones(1);

    for (std::size_t i = 1; i < as.size(); ++i)
    {
        // D_{i+1} = diag(||b||, e_1, ..., e_i)
        d.resize(Index(i + 1));
        d(0) = bnorm;
        for (std::size_t j = 0; j < i; ++j)
        {
            d(Index(j + 1)) = out.step_residuals[j];
        }
        const Matrix<Scalar> ad = as[i] * d.cast<Scalar>().asDiagonal();
        out.solution            = tsvd_solve<Scalar>(ad, bs[i], epsilon);
        out.step_residuals.push_back(out.solution.residual_norm);
        out.solution.coefficients =
            (d.cast<Scalar>().array() * out.solution.coefficients.array()).matrix();
        out.solution.coefficient_norm = out.solution.coefficients.norm();
    }
    out.weights = d;
    return out;
}

/// Incrementally weighted least squares on the leading column blocks of one
/// system: step i uses the first i columns of `a` and all of `b`.
template <typename Scalar>
IncrementalSolution<Scalar> incremental_weighted_solve(const Matrix<Scalar>& a,
                                                       const Vector<Scalar>& b,
                                                       double epsilon)
{
    std::vector<Matrix<Scalar>> as;
    std::vector<Vector<Scalar>> bs;
    for (Index i = 1; i <= a.cols(); ++i)
    {
        as.push_back(a.leftCols(i));
        bs.push_back(b);
    }
    return incremental_weighted_solve<Scalar>(std::span<const Matrix<Scalar>>(as),
                                              std::span<const Vector<Scalar>>(bs), epsilon);
}

/// CSV with columns index,real,imag,abs.
template <typename Derived>
void write_coefficients_csv(std::ostream& os, const Eigen::MatrixBase<Derived>& c)
{
    os << "index,real,imag,abs\n";
    os.precision(17);
    for (Index k = 0; k < c.size(); ++k)
    {
        const Complex z(c(k));
        os << k << "," << z.real() << "," << z.imag() << "," << std::abs(z) << "\n";
    }
}

} // namespace framefit

#endif /* FRAMEFIT_SOLVER_HPP */
