///
/// \file dictionary.hpp
///
/// Function dictionaries: orthonormal Fourier and Chebyshev families on a
/// bounding box and their weighted, concatenated and tensor-product
/// compositions.
///
#ifndef FRAMEFIT_DICTIONARY_HPP
#define FRAMEFIT_DICTIONARY_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <framefit/truncation.hpp>
#include <framefit/types.hpp>

namespace framefit
{

/// An indexed family of functions \f$\{\phi_k\}\f$, immutable and cheap to
/// copy.
///
/// Base families are orthonormal on their own interval \f$[a,b]\f$:
///  - Fourier: \f$\phi(x) = e^{2\pi i k (x-a)/L}/\sqrt{L}\f$ with the
///    frequencies ordered 0, 1, -1, 2, -2, ...
///  - Chebyshev: \f$T_j(t)\f$ with \f$t = (2x-a-b)/L\f$, normalized in
///    \f$L^2\f$ with respect to the Chebyshev weight \f$1/\sqrt{1-t^2}\f$,
///    since the polynomials are orthogonal only under that weight.
class Dictionary
{
public:
    enum class Variant
    {
        fourier,
        chebyshev,
        weighted,
        concatenation,
        tensor_product
    };

    using WeightFn = std::function<double(const Point&)>;

    /// Fourier family on [0, 1].
    Dictionary();

    static Dictionary fourier(double a, double b);
    /// Tensor product of one-dimensional Fourier families on a box.
    static Dictionary fourier(const Point& lower, const Point& upper);
    static Dictionary chebyshev(double a, double b);
    static Dictionary weighted(WeightFn weight, Dictionary inner,
                               std::string weight_name = "w");
    static Dictionary concatenation(std::vector<Dictionary> parts);
    static Dictionary tensor_product(std::vector<Dictionary> factors);

    Variant variant() const noexcept;
    /// Dimension of the points the elements are evaluated at.
    Index dim() const noexcept;
    /// Real-valued elements (Chebyshev-only compositions).
    bool is_real() const noexcept;
    /// Bounding box \f$\Xi\f$ on which the elements are defined.
    const Point& lower() const noexcept;
    const Point& upper() const noexcept;
    const std::vector<Dictionary>& children() const noexcept;
    std::string describe() const;

    /// Throws InvalidArgument unless `desc` matches the dictionary shape.
    void check(const TruncationDescriptor& desc) const;

    /// Evaluate all `desc.total()` elements at `x` into `out`.
    void evaluate_all(const TruncationDescriptor& desc, const Point& x,
                      Eigen::Ref<Vector<Complex>> out) const;
    Vector<Complex> evaluate_all(const TruncationDescriptor& desc,
                                 const Point& x) const;

    /// \f$\phi_k(x)\f$ for the flat index `0 <= k < desc.total()`.
    Complex evaluate_element(const TruncationDescriptor& desc, Index k,
                             const Point& x) const;

    /// \f$\sum_k c_k \phi_k(x)\f$
    template <typename Derived>
    Complex evaluate_expansion(const TruncationDescriptor& desc,
                               const Eigen::MatrixBase<Derived>& c,
                               const Point& x) const
    {
        if (c.size() != desc.total())
        {
            throw InvalidArgument("evaluate_expansion: coefficient length " +
                                  std::to_string(c.size()) +
                                  " does not match truncation " +
                                  std::to_string(desc.total()));
        }
        const Vector<Complex> phi = evaluate_all(desc, x);
        Complex sum(0.0, 0.0);
        for (Index k = 0; k < phi.size(); ++k)
        {
            sum += Complex(c(k)) * phi(k);
        }
        return sum;
    }

    struct Node;

private:
    explicit Dictionary(std::shared_ptr<const Node> node) : node_(std::move(node))
    {
    }

    std::shared_ptr<const Node> node_;
};

/// Frequency of the Fourier element at flat position j (0, 1, -1, 2, ...).
constexpr Index fourier_frequency(Index j) noexcept
{
    return j % 2 == 1 ? (j + 1) / 2 : -(j / 2);
}

/// Weighted frame \f$\Psi \cup w\Psi\f$ on the box, with \f$\Psi\f$ the
/// tensor-product Fourier family and \f$w(x) = \|x\|_2\f$.
Dictionary radial_singular_frame(const Point& lower, const Point& upper);

} // namespace framefit

#endif /* FRAMEFIT_DICTIONARY_HPP */
