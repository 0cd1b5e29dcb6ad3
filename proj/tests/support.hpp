// Generators and independent oracles shared by the test binaries.
#ifndef FRAMEFIT_TESTS_SUPPORT_HPP
#define FRAMEFIT_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <framefit/types.hpp>

namespace testing
{

using framefit::Complex;
using framefit::Index;
using framefit::Matrix;
using framefit::Vector;

class Gen
{
public:
    explicit Gen(std::uint64_t seed) : rng_(seed)
    {
    }

    double uniform(double a, double b)
    {
        return std::uniform_real_distribution<double>(a, b)(rng_);
    }

    Index integer(Index lo, Index hi)
    {
        return std::uniform_int_distribution<Index>(lo, hi)(rng_);
    }

    template <typename Scalar>
    Scalar scalar()
    {
        if constexpr (framefit::is_complex_v<Scalar>)
        {
            return Complex(uniform(-1, 1), uniform(-1, 1));
        }
        else
        {
            return uniform(-1, 1);
        }
    }

    template <typename Scalar>
    Vector<Scalar> vector(Index n)
    {
        Vector<Scalar> v(n);
        for (Index i = 0; i < n; ++i)
        {
            v(i) = scalar<Scalar>();
        }
        return v;
    }

    template <typename Scalar>
    Matrix<Scalar> matrix(Index m, Index n)
    {
        Matrix<Scalar> a(m, n);
        for (Index j = 0; j < n; ++j)
        {
            for (Index i = 0; i < m; ++i)
            {
                a(i, j) = scalar<Scalar>();
            }
        }
        return a;
    }

    /// Random matrix plus a multiple of the identity on its top block, which
    /// keeps the condition number moderate.
    template <typename Scalar>
    Matrix<Scalar> well_conditioned(Index m, Index n)
    {
        Matrix<Scalar> a = matrix<Scalar>(m, n);
        for (Index i = 0; i < n; ++i)
        {
            a(i, i) += Scalar(double(n) + 2.0);
        }
        return a;
    }

private:
    std::mt19937_64 rng_;
};

/// Solve A^H A x = A^H b by Gaussian elimination with partial pivoting.
template <typename Scalar>
Vector<Scalar> normal_equations_oracle(const Matrix<Scalar>& a, const Vector<Scalar>& b)
{
    const Index n = a.cols();
    std::vector<std::vector<Scalar>> g(std::size_t(n), std::vector<Scalar>(std::size_t(n + 1)));
    for (Index i = 0; i < n; ++i)
    {
        for (Index j = 0; j < n; ++j)
        {
            Scalar s(0);
            for (Index m = 0; m < a.rows(); ++m)
            {
                if constexpr (framefit::is_complex_v<Scalar>)
                {
                    s += std::conj(a(m, i)) * a(m, j);
                }
                else
                {
                    s += a(m, i) * a(m, j);
                }
            }
            g[i][j] = s;
        }
        Scalar s(0);
        for (Index m = 0; m < a.rows(); ++m)
        {
            if constexpr (framefit::is_complex_v<Scalar>)
            {
                s += std::conj(a(m, i)) * b(m);
            }
            else
            {
                s += a(m, i) * b(m);
            }
        }
        g[i][n] = s;
    }
    for (Index col = 0; col < n; ++col)
    {
        Index piv = col;
        for (Index r = col + 1; r < n; ++r)
        {
            if (std::abs(g[r][col]) > std::abs(g[piv][col]))
            {
                piv = r;
            }
        }
        std::swap(g[col], g[piv]);
        for (Index r = col + 1; r < n; ++r)
        {
            const Scalar f = g[r][col] / g[col][col];
            for (Index c = col; c <= n; ++c)
            {
                g[r][c] -= f * g[col][c];
            }
        }
    }
    Vector<Scalar> x(n);
    for (Index i = n - 1; i >= 0; --i)
    {
        Scalar s = g[i][n];
        for (Index j = i + 1; j < n; ++j)
        {
            s -= g[i][j] * x(j);
        }
        x(i) = s / g[i][i];
    }
    return x;
}

/// Fourier frequencies in the order 0, 1, -1, 2, -2, ...
inline std::vector<Index> fourier_order(Index n)
{
    std::vector<Index> k{0};
    for (Index f = 1; Index(k.size()) < n; ++f)
    {
        k.push_back(f);
        if (Index(k.size()) < n)
        {
            k.push_back(-f);
        }
    }
    k.resize(std::size_t(n));
    return k;
}

inline Complex fourier_oracle(double a, double b, Index j, double x)
{
    const double len = b - a;
    const Index k    = fourier_order(j + 1).back();
    return std::polar(1.0 / std::sqrt(len), 2.0 * std::numbers::pi * double(k) * (x - a) / len);
}

/// Chebyshev element j, orthonormal under the Chebyshev weight on [a, b].
inline double chebyshev_oracle(double a, double b, Index j, double x)
{
    const double len = b - a;
    const double t   = std::clamp((2.0 * x - a - b) / len, -1.0, 1.0);
    const double tj  = std::cos(double(j) * std::acos(t));
    const double nrm = j == 0 ? len * std::numbers::pi / 2.0 : len * std::numbers::pi / 4.0;
    return tj / std::sqrt(nrm);
}

} // namespace testing

#endif
