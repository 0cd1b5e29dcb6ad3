#include <framefit/dictionary.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace framefit
{

struct Dictionary::Node
{
    Variant variant = Variant::fourier;
    Index dim       = 1;
    bool real       = false;
    Point lower;
    Point upper;
    std::vector<Dictionary> children;
    WeightFn weight;
    std::string name;
};

namespace
{

using std::numbers::pi;

const Dictionary::Node& node_of(const std::shared_ptr<const Dictionary::Node>& n)
{
    return *n;
}

void check_interval(double a, double b)
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    {
        throw InvalidArgument("dictionary: interval must satisfy a < b");
    }
}

void fourier_values(double a, double b, Index n, double x,
                    Eigen::Ref<Vector<Complex>> out)
{
    const double len   = b - a;
    const double scale = 1.0 / std::sqrt(len);
    const double theta = 2.0 * pi * (x - a) / len;
    for (Index j = 0; j < n; ++j)
    {
        out(j) = std::polar(scale, double(fourier_frequency(j)) * theta);
    }
}

void chebyshev_values(double a, double b, Index n, double x,
                      Eigen::Ref<Vector<Complex>> out)
{
    if (n == 0)
    {
        return;
    }
    const double len = b - a;
    const double t   = (2.0 * x - a - b) / len;
    const double c0  = 1.0 / std::sqrt(len * pi / 2.0);
    const double ck  = 1.0 / std::sqrt(len * pi / 4.0);
    double tkm1      = 1.0;
    double tk        = t;
    out(0)           = c0;
    if (n > 1)
    {
        out(1) = ck * t;
    }
    for (Index k = 2; k < n; ++k)
    {
        const double next = 2.0 * t * tk - tkm1;
        tkm1              = tk;
        tk                = next;
        out(k)            = ck * tk;
    }
}

} // namespace

Dictionary::Dictionary() : Dictionary(fourier(0.0, 1.0))
{
}

Dictionary Dictionary::fourier(double a, double b)
{
    check_interval(a, b);
    auto n     = std::make_shared<Node>();
    n->variant = Variant::fourier;
    n->dim     = 1;
    n->real    = false;
    n->lower   = make_point(a);
    n->upper   = make_point(b);
    std::ostringstream os;
    os << "fourier[" << a << "," << b << "]";
    n->name = os.str();
    return Dictionary(std::move(n));
}

Dictionary Dictionary::fourier(const Point& lower, const Point& upper)
{
    if (lower.size() != upper.size() || lower.size() == 0)
    {
        throw InvalidArgument("dictionary: box bounds must have equal dimension");
    }
    if (lower.size() == 1)
    {
        return fourier(lower(0), upper(0));
    }
    std::vector<Dictionary> factors;
    for (Index i = 0; i < lower.size(); ++i)
    {
        factors.push_back(fourier(lower(i), upper(i)));
    }
    return tensor_product(std::move(factors));
}

Dictionary Dictionary::chebyshev(double a, double b)
{
    check_interval(a, b);
    auto n     = std::make_shared<Node>();
    n->variant = Variant::chebyshev;
    n->dim     = 1;
    n->real    = true;
    n->lower   = make_point(a);
    n->upper   = make_point(b);
    std::ostringstream os;
    os << "chebyshev[" << a << "," << b << "]";
    n->name = os.str();
    return Dictionary(std::move(n));
}

Dictionary Dictionary::weighted(WeightFn weight, Dictionary inner,
                                std::string weight_name)
{
    if (!weight)
    {
        throw InvalidArgument("dictionary: weighted dictionary needs a weight");
    }
    const Node& in = node_of(inner.node_);
    auto n         = std::make_shared<Node>();
    n->variant     = Variant::weighted;
    n->dim         = in.dim;
    n->real        = in.real;
    n->lower       = in.lower;
    n->upper       = in.upper;
    n->weight      = std::move(weight);
    n->name        = weight_name + "*" + in.name;
    n->children.push_back(std::move(inner));
    return Dictionary(std::move(n));
}

Dictionary Dictionary::concatenation(std::vector<Dictionary> parts)
{
    if (parts.empty())
    {
        throw InvalidArgument("dictionary: concatenation needs at least one part");
    }
    auto n     = std::make_shared<Node>();
    n->variant = Variant::concatenation;
    n->dim     = parts.front().dim();
    n->real    = true;
    n->lower   = parts.front().lower();
    n->upper   = parts.front().upper();
    n->name    = "(";
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        const Node& p = node_of(parts[i].node_);
        if (p.dim != n->dim)
        {
            throw InvalidArgument("dictionary: concatenated parts differ in dimension");
        }
        n->real = n->real && p.real;
        for (Index d = 0; d < n->dim; ++d)
        {
            n->lower(d) = std::min(n->lower(d), p.lower(d));
            n->upper(d) = std::max(n->upper(d), p.upper(d));
        }
        n->name += (i ? " u " : "") + p.name;
    }
    n->name += ")";
    n->children = std::move(parts);
    return Dictionary(std::move(n));
}

Dictionary Dictionary::tensor_product(std::vector<Dictionary> factors)
{
    if (factors.empty())
    {
        throw InvalidArgument("dictionary: tensor product needs at least one factor");
    }
    auto n     = std::make_shared<Node>();
    n->variant = Variant::tensor_product;
    n->real    = true;
    Index dim  = 0;
    for (const auto& f : factors)
    {
        dim += f.dim();
    }
    if (dim > 3)
    {
        throw InvalidArgument("dictionary: at most three dimensions are supported");
    }
    n->dim = dim;
    n->lower.resize(dim);
    n->upper.resize(dim);
    Index offset = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
    {
        const Node& p = node_of(factors[i].node_);
        n->real       = n->real && p.real;
        n->lower.segment(offset, p.dim) = p.lower;
        n->upper.segment(offset, p.dim) = p.upper;
        offset += p.dim;
        n->name += (i ? " x " : "") + p.name;
    }
    n->children = std::move(factors);
    return Dictionary(std::move(n));
}

Dictionary::Variant Dictionary::variant() const noexcept
{
    return node_->variant;
}

Index Dictionary::dim() const noexcept
{
    return node_->dim;
}

bool Dictionary::is_real() const noexcept
{
    return node_->real;
}

const Point& Dictionary::lower() const noexcept
{
    return node_->lower;
}

const Point& Dictionary::upper() const noexcept
{
    return node_->upper;
}

const std::vector<Dictionary>& Dictionary::children() const noexcept
{
    return node_->children;
}

std::string Dictionary::describe() const
{
    return node_->name;
}

void Dictionary::check(const TruncationDescriptor& desc) const
{
    using S       = TruncationDescriptor::Structure;
    const Node& n = *node_;
    switch (n.variant)
    {
    case Variant::fourier:
    case Variant::chebyshev:
        if (desc.structure() != S::flat)
        {
            throw InvalidArgument("truncation " + desc.to_string() +
                                  " does not match flat family " + n.name);
        }
        return;
    case Variant::weighted:
        n.children.front().check(desc);
        return;
    case Variant::concatenation:
    case Variant::tensor_product:
    {
        const S expected =
            n.variant == Variant::concatenation ? S::split : S::grid;
        if (desc.structure() != expected ||
            desc.children().size() != n.children.size())
        {
            throw InvalidArgument("truncation " + desc.to_string() +
                                  " does not match dictionary " + n.name);
        }
        for (std::size_t i = 0; i < n.children.size(); ++i)
        {
            n.children[i].check(desc.children()[i]);
        }
        return;
    }
    }
}

void Dictionary::evaluate_all(const TruncationDescriptor& desc, const Point& x,
                              Eigen::Ref<Vector<Complex>> out) const
{
    const Node& n = *node_;
    switch (n.variant)
    {
    case Variant::fourier:
        fourier_values(n.lower(0), n.upper(0), desc.total(), x(0), out);
        return;
    case Variant::chebyshev:
        chebyshev_values(n.lower(0), n.upper(0), desc.total(), x(0), out);
        return;
    case Variant::weighted:
        n.children.front().evaluate_all(desc, x, out);
        out *= n.weight(x);
        return;
    case Variant::concatenation:
    {
        Index offset = 0;
        for (std::size_t i = 0; i < n.children.size(); ++i)
        {
            const auto& sub = desc.children()[i];
            n.children[i].evaluate_all(sub, x, out.segment(offset, sub.total()));
            offset += sub.total();
        }
        return;
    }
    case Variant::tensor_product:
    {
        // Row-major product with the last factor varying fastest.
        if (desc.total() == 0)
        {
            return;
        }
        Index filled = 1;
        out(0)       = Complex(1.0, 0.0);
        Index offset = 0;
        Vector<Complex> factor_values;
        Vector<Complex> previous;
        for (std::size_t i = 0; i < n.children.size(); ++i)
        {
            const auto& sub      = desc.children()[i];
            const Dictionary& fd = n.children[i];
            factor_values.resize(sub.total());
            Point xi = x.segment(offset, fd.dim());
            fd.evaluate_all(sub, xi, factor_values);
            offset += fd.dim();
            previous = out.head(filled);
            for (Index p = 0; p < filled; ++p)
            {
                out.segment(p * sub.total(), sub.total()) =
                    previous(p) * factor_values;
            }
            filled *= sub.total();
        }
        return;
    }
    }
}

Vector<Complex> Dictionary::evaluate_all(const TruncationDescriptor& desc,
                                         const Point& x) const
{
    check(desc);
    if (x.size() != dim())
    {
        throw InvalidArgument("dictionary: point dimension mismatch");
    }
    const double tol = 1e-12;
    for (Index i = 0; i < x.size(); ++i)
    {
        const double slack = tol * (1.0 + upper()(i) - lower()(i));
        if (!(x(i) >= lower()(i) - slack && x(i) <= upper()(i) + slack))
        {
            throw InvalidArgument("dictionary: point outside the bounding box");
        }
    }
    Vector<Complex> out(desc.total());
    evaluate_all(desc, x, out);
    return out;
}

Complex Dictionary::evaluate_element(const TruncationDescriptor& desc, Index k,
                                     const Point& x) const
{
    if (k < 0 || k >= desc.total())
    {
        throw InvalidArgument("dictionary: element index " + std::to_string(k) +
                              " out of range [0, " + std::to_string(desc.total()) +
                              ")");
    }
    return evaluate_all(desc, x)(k);
}

Dictionary radial_singular_frame(const Point& lower, const Point& upper)
{
    const Dictionary psi = Dictionary::fourier(lower, upper);
    return Dictionary::concatenation(
        {psi, Dictionary::weighted([](const Point& x) { return x.norm(); }, psi,
                                   "|x|")});
}

} // namespace framefit
