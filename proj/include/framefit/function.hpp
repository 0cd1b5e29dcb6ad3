///
/// \file function.hpp
///
/// Pointwise target functions and the builtin test functions used by the
/// experiments.
///
#ifndef FRAMEFIT_FUNCTION_HPP
#define FRAMEFIT_FUNCTION_HPP

#include <functional>
#include <memory>
#include <string>

#include <framefit/types.hpp>

namespace framefit
{

/// A pointwise callable \f$f : \Omega \to \mathbb{C}\f$ tagged with whether
/// its values are real. Real functions can be fitted with real dictionaries
/// without promoting the least-squares system to complex arithmetic.
class Function
{
public:
    using RealFn    = std::function<double(const Point&)>;
    using ComplexFn = std::function<Complex(const Point&)>;

    /// The zero function.
    Function() : eval_([](const Point&) { return Complex(0.0, 0.0); }), name_("0")
    {
    }

    static Function real(RealFn fn, std::string name = "f");
    static Function complex(ComplexFn fn, std::string name = "f");

    Complex operator()(const Point& x) const
    {
        return eval_(x);
    }

    bool is_real() const noexcept
    {
        return real_;
    }

    const std::string& name() const noexcept
    {
        return name_;
    }

    /// \f$\alpha f\f$
    Function scaled(double alpha) const;
    /// \f$f + g\f$
    Function plus(const Function& g) const;

private:
    ComplexFn eval_;
    bool real_ = true;
    std::string name_;
};

namespace functions
{

Function constant(double value);
Function identity();                   ///< f(x) = x
Function exponential();                ///< f(x) = e^x
Function cosine(double p);             ///< f(x) = cos(p x)
Function exp_cos(double omega);        ///< f(x) = exp(cos(omega x))
Function noisy_exponential(double sigma); ///< e^x + sigma cos(2000 pi x)
/// cos(p pi (x+y)) + sqrt(x^2+y^2) sin(1 + p pi (x+y))
Function singular_2d(double p);

} // namespace functions

} // namespace framefit

#endif /* FRAMEFIT_FUNCTION_HPP */
