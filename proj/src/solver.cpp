#include <algorithm>
#include <complex>
#include <limits>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <framefit/solver.hpp>

namespace framefit
{

namespace detail
{

namespace
{

lapack_int checked_int(Index n)
{
    if (n > Index(std::numeric_limits<lapack_int>::max()))
    {
        throw InvalidArgument("tsvd: system too large for LAPACK");
    }
    return lapack_int(n);
}

template <typename Scalar, typename Gesdd, typename Gesvd>
bool svd_impl(const Matrix<Scalar>& a, Eigen::VectorXd& sigma, Matrix<Scalar>& u,
              Matrix<Scalar>& v, Gesdd gesdd, Gesvd gesvd)
{
    const lapack_int m = checked_int(a.rows());
    const lapack_int n = checked_int(a.cols());
    const lapack_int k = std::min(m, n);
    Matrix<Scalar> work = a;
    Matrix<Scalar> vt(k, n);
    sigma.resize(k);
    u.resize(m, k);
    if (gesdd(m, n, work.data(), sigma.data(), u.data(), vt.data()) != 0)
    {
        work = a;
        Eigen::VectorXd superb(std::max<lapack_int>(k - 1, 1));
        if (gesvd(m, n, work.data(), sigma.data(), u.data(), vt.data(), superb.data()) != 0)
        {
            return false;
        }
    }
    v = vt.adjoint();
    return true;
}

} // namespace

bool lapack_svd(const Matrix<double>& a, Eigen::VectorXd& sigma, Matrix<double>& u,
                Matrix<double>& v)
{
    return svd_impl<double>(
        a, sigma, u, v,
        [](lapack_int m, lapack_int n, double* w, double* s, double* uu, double* vt) {
            return LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, w, m, s, uu, m, vt,
                                  std::min(m, n));
        },
        [](lapack_int m, lapack_int n, double* w, double* s, double* uu, double* vt,
           double* superb) {
            return LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, w, m, s, uu, m, vt,
                                  std::min(m, n), superb);
        });
}

bool lapack_svd(const Matrix<Complex>& a, Eigen::VectorXd& sigma, Matrix<Complex>& u,
                Matrix<Complex>& v)
{
    return svd_impl<Complex>(
        a, sigma, u, v,
        [](lapack_int m, lapack_int n, Complex* w, double* s, Complex* uu, Complex* vt) {
            return LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, w, m, s, uu, m, vt,
                                  std::min(m, n));
        },
        [](lapack_int m, lapack_int n, Complex* w, double* s, Complex* uu, Complex* vt,
           double* superb) {
            return LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, w, m, s, uu, m, vt,
                                  std::min(m, n), superb);
        });
}

} // namespace detail

DiagonalWeight::DiagonalWeight(Eigen::VectorXd diagonal) : d_(std::move(diagonal))
{
    for (Index i = 0; i < d_.size(); ++i)
    {
        if (!(d_(i) > 0.0) || !std::isfinite(d_(i)))
        {
            throw InvalidArgument("DiagonalWeight: entries must be positive and finite");
        }
    }
}

DiagonalWeight algebraic_weight(Index n, double alpha)
{
    if (n < 1 || !(alpha >= 0.0))
    {
        throw InvalidArgument("algebraic_weight: need N >= 1 and alpha >= 0");
    }
    Eigen::VectorXd d(n);
    for (Index k = 0; k < n; ++k)
    {
        d(k) = std::pow(double(k + 1), -alpha);
    }
    return DiagonalWeight(std::move(d));
}

DiagonalWeight cubic_floor_weight(Index n)
{
    if (n < 1)
    {
        throw InvalidArgument("cubic_floor_weight: need N >= 1");
    }
    Eigen::VectorXd d(n);
    for (Index k = 0; k < n; ++k)
    {
        const double x = double(k);
        d(k)           = 1.0 / (1e-4 + x + x * x + x * x * x);
    }
    return DiagonalWeight(std::move(d));
}

} // namespace framefit
