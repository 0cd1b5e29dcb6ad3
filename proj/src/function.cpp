#include <framefit/function.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace framefit
{

Function Function::real(RealFn fn, std::string name)
{
    Function f;
    f.eval_ = [fn = std::move(fn)](const Point& x) { return Complex(fn(x), 0.0); };
    f.real_ = true;
    f.name_ = std::move(name);
    return f;
}

Function Function::complex(ComplexFn fn, std::string name)
{
    Function f;
    f.eval_ = std::move(fn);
    f.real_ = false;
    f.name_ = std::move(name);
    return f;
}

Function Function::scaled(double alpha) const
{
    Function f;
    f.eval_ = [inner = eval_, alpha](const Point& x) { return alpha * inner(x); };
    f.real_ = real_;
    std::ostringstream os;
    os << alpha << "*" << name_;
    f.name_ = os.str();
    return f;
}

Function Function::plus(const Function& g) const
{
    Function f;
    f.eval_ = [a = eval_, b = g.eval_](const Point& x) { return a(x) + b(x); };
    f.real_ = real_ && g.real_;
    f.name_ = name_ + "+" + g.name_;
    return f;
}

namespace functions
{

using std::numbers::pi;

Function constant(double value)
{
    std::ostringstream os;
    os << value;
    return Function::real([value](const Point&) { return value; }, os.str());
}

Function identity()
{
    return Function::real([](const Point& x) { return x(0); }, "x");
}

Function exponential()
{
    return Function::real([](const Point& x) { return std::exp(x(0)); }, "exp(x)");
}

Function cosine(double p)
{
    std::ostringstream os;
    os << "cos(" << p << "x)";
    return Function::real([p](const Point& x) { return std::cos(p * x(0)); },
                          os.str());
}

Function exp_cos(double omega)
{
    std::ostringstream os;
    os << "exp(cos(" << omega << "x))";
    return Function::real(
        [omega](const Point& x) { return std::exp(std::cos(omega * x(0))); },
        os.str());
}

Function noisy_exponential(double sigma)
{
    std::ostringstream os;
    os << "exp(x)+" << sigma << "cos(2000pi x)";
    return Function::real(
        [sigma](const Point& x) {
            return std::exp(x(0)) + sigma * std::cos(2000.0 * pi * x(0));
        },
        os.str());
}

Function singular_2d(double p)
{
    std::ostringstream os;
    os << "singular2d(p=" << p << ")";
    return Function::real(
        [p](const Point& x) {
            const double s = p * pi * (x(0) + x(1));
            return std::cos(s) +
                   std::sqrt(x(0) * x(0) + x(1) * x(1)) * std::sin(1.0 + s);
        },
        os.str());
}

} // namespace functions

} // namespace framefit
