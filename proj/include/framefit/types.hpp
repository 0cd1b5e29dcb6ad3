///
/// \file types.hpp
///
/// Dense types and error classes shared by every framefit module.
///
#ifndef FRAMEFIT_TYPES_HPP
#define FRAMEFIT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

namespace framefit
{

using Index   = Eigen::Index;
using Complex = std::complex<double>;

/// A point of a domain in at most three dimensions, stored without heap
/// allocation.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename T>
struct is_complex : std::false_type
{
};

template <typename T>
struct is_complex<std::complex<T>> : std::true_type
{
};

template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Convert a complex value into `Scalar`. Narrowing to a real scalar keeps the
/// real part; callers check that the imaginary part vanishes beforehand.
template <typename Scalar>
Scalar scalar_cast(const Complex& z)
{
    if constexpr (is_complex_v<Scalar>)
    {
        return z;
    }
    else
    {
        return z.real();
    }
}

inline Point make_point(double x)
{
    Point p(1);
    p(0) = x;
    return p;
}

inline Point make_point(double x, double y)
{
    Point p(2);
    p << x, y;
    return p;
}

/// Raised for violated preconditions on user-supplied arguments.
class InvalidArgument : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical kernel cannot produce a finite result.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace framefit

#endif /* FRAMEFIT_TYPES_HPP */
