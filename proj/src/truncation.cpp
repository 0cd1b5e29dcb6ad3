#include <framefit/truncation.hpp>

#include <cmath>
#include <sstream>

#include <framefit/dictionary.hpp>

namespace framefit
{

TruncationDescriptor TruncationDescriptor::flat(Index n)
{
    if (n < 0)
    {
        throw InvalidArgument("truncation: size must be non-negative");
    }
    TruncationDescriptor d;
    d.structure_ = Structure::flat;
    d.total_     = n;
    return d;
}

TruncationDescriptor TruncationDescriptor::split(std::vector<TruncationDescriptor> parts)
{
    if (parts.empty())
    {
        throw InvalidArgument("truncation: split needs at least one part");
    }
    TruncationDescriptor d;
    d.structure_ = Structure::split;
    d.total_     = 0;
    for (const auto& p : parts)
    {
        d.total_ += p.total();
    }
    d.children_ = std::move(parts);
    return d;
}

TruncationDescriptor TruncationDescriptor::split(std::initializer_list<Index> sizes)
{
    std::vector<TruncationDescriptor> parts;
    for (Index n : sizes)
    {
        parts.push_back(flat(n));
    }
    return split(std::move(parts));
}

TruncationDescriptor TruncationDescriptor::grid(std::vector<TruncationDescriptor> factors)
{
    if (factors.empty())
    {
        throw InvalidArgument("truncation: grid needs at least one factor");
    }
    TruncationDescriptor d;
    d.structure_ = Structure::grid;
    d.total_     = 1;
    for (const auto& f : factors)
    {
        d.total_ *= f.total();
    }
    d.children_ = std::move(factors);
    return d;
}

TruncationDescriptor TruncationDescriptor::grid(std::initializer_list<Index> sizes)
{
    std::vector<TruncationDescriptor> factors;
    for (Index n : sizes)
    {
        factors.push_back(flat(n));
    }
    return grid(std::move(factors));
}

Index TruncationDescriptor::depth() const noexcept
{
    switch (structure_)
    {
    case Structure::flat:
        return 1;
    case Structure::split:
    {
        Index m = 0;
        for (const auto& c : children_)
        {
            m = std::max(m, c.depth());
        }
        return 1 + m;
    }
    case Structure::grid:
    {
        Index s = 0;
        for (const auto& c : children_)
        {
            s += c.depth();
        }
        return s;
    }
    }
    return 1;
}

std::vector<Index> TruncationDescriptor::unflatten(Index k) const
{
    if (k < 0 || k >= total_)
    {
        throw InvalidArgument("truncation: flat index " + std::to_string(k) +
                              " out of range [0, " + std::to_string(total_) + ")");
    }
    switch (structure_)
    {
    case Structure::flat:
        return {k};
    case Structure::split:
    {
        for (std::size_t p = 0; p < children_.size(); ++p)
        {
            if (k < children_[p].total())
            {
                std::vector<Index> idx{Index(p)};
                auto rest = children_[p].unflatten(k);
                idx.insert(idx.end(), rest.begin(), rest.end());
                // Pad so that every index of a split has the same length.
                idx.resize(std::size_t(depth()), 0);
                return idx;
            }
            k -= children_[p].total();
        }
        break;
    }
    case Structure::grid:
    {
        std::vector<Index> local(children_.size());
        for (std::size_t i = children_.size(); i-- > 0;)
        {
            local[i] = k % children_[i].total();
            k /= children_[i].total();
        }
        std::vector<Index> idx;
        for (std::size_t i = 0; i < children_.size(); ++i)
        {
            auto sub = children_[i].unflatten(local[i]);
            idx.insert(idx.end(), sub.begin(), sub.end());
        }
        return idx;
    }
    }
    throw InvalidArgument("truncation: inconsistent descriptor");
}

Index TruncationDescriptor::flatten(std::span<const Index> multi_index) const
{
    if (Index(multi_index.size()) != depth())
    {
        throw InvalidArgument("truncation: multi-index has wrong length");
    }
    std::span<const Index> rest = multi_index;
    return flatten_impl(rest);
}

Index TruncationDescriptor::flatten_impl(std::span<const Index>& rest) const
{
    switch (structure_)
    {
    case Structure::flat:
    {
        const Index k = rest.front();
        rest          = rest.subspan(1);
        if (k < 0 || k >= total_)
        {
            throw InvalidArgument("truncation: multi-index out of range");
        }
        return k;
    }
    case Structure::split:
    {
        const Index p = rest.front();
        if (p < 0 || p >= Index(children_.size()))
        {
            throw InvalidArgument("truncation: part index out of range");
        }
        const auto all   = rest;
        rest             = rest.subspan(1);
        Index offset     = 0;
        for (Index i = 0; i < p; ++i)
        {
            offset += children_[std::size_t(i)].total();
        }
        const Index k = offset + children_[std::size_t(p)].flatten_impl(rest);
        rest          = all.subspan(std::size_t(depth()));
        return k;
    }
    case Structure::grid:
    {
        Index k = 0;
        for (const auto& c : children_)
        {
            k = k * c.total() + c.flatten_impl(rest);
        }
        return k;
    }
    }
    throw InvalidArgument("truncation: inconsistent descriptor");
}

std::string TruncationDescriptor::to_string() const
{
    std::ostringstream os;
    switch (structure_)
    {
    case Structure::flat:
        os << total_;
        break;
    case Structure::split:
        os << "(";
        for (std::size_t i = 0; i < children_.size(); ++i)
        {
            os << (i ? "," : "") << children_[i].to_string();
        }
        os << ")";
        break;
    case Structure::grid:
        os << "[";
        for (std::size_t i = 0; i < children_.size(); ++i)
        {
            os << (i ? "x" : "") << children_[i].to_string();
        }
        os << "]";
        break;
    }
    return os.str();
}

TruncationDescriptor balanced_scaling(const TruncationDescriptor& grid, double factor)
{
    using S = TruncationDescriptor::Structure;
    if (grid.structure() != S::grid || !(factor > 1.0))
    {
        throw InvalidArgument("balanced_scaling: needs a grid and a factor > 1");
    }
    const auto& factors = grid.children();
    const double per_dim = std::pow(factor, 1.0 / double(factors.size()));
    std::vector<TruncationDescriptor> scaled;
    bool grew = false;
    for (const auto& f : factors)
    {
        if (f.structure() != S::flat)
        {
            throw InvalidArgument("balanced_scaling: grid factors must be flat");
        }
        const Index n = std::max<Index>(1, std::llround(double(f.total()) * per_dim));
        grew          = grew || n > f.total();
        scaled.push_back(TruncationDescriptor::flat(n));
    }
    if (!grew)
    {
        scaled.front() = TruncationDescriptor::flat(factors.front().total() + 1);
    }
    return TruncationDescriptor::grid(std::move(scaled));
}

// Schedules

TruncationSchedule::TruncationSchedule(const Dictionary& dict, GrowthPolicy policy,
                                       Index max_total)
    : root_(build(dict)), policy_(policy), max_total_(max_total)
{
    if (max_total < 1)
    {
        throw InvalidArgument("schedule: maximum total must be positive");
    }
    const bool ok = (policy == GrowthPolicy::flat_unit_step &&
                     root_.kind == Node::Kind::leaf) ||
                    (policy == GrowthPolicy::alternate_split &&
                     root_.kind == Node::Kind::concat) ||
                    (policy == GrowthPolicy::tensor_balanced &&
                     root_.kind == Node::Kind::tensor);
    if (!ok)
    {
        throw InvalidArgument("schedule: growth policy incompatible with dictionary " +
                              dict.describe());
    }
}

TruncationSchedule::Node TruncationSchedule::build(const Dictionary& dict)
{
    using V = Dictionary::Variant;
    switch (dict.variant())
    {
    case V::fourier:
    case V::chebyshev:
        return Node{};
    case V::weighted:
        return build(dict.children().front());
    case V::concatenation:
    case V::tensor_product:
    {
        Node n;
        n.kind = dict.variant() == V::concatenation ? Node::Kind::concat
                                                    : Node::Kind::tensor;
        for (const auto& c : dict.children())
        {
            n.children.push_back(build(c));
        }
        return n;
    }
    }
    return Node{};
}

namespace
{

// Steps received by child i of p when the parent has taken `step` steps.
Index concat_child_step(Index step, Index i, Index p)
{
    return (step + p - 1 - i) / p;
}

Index tensor_child_step(Index step, Index i, Index d)
{
    return step == 0 ? 0 : 1 + (step - 1 + d - 1 - i) / d;
}

} // namespace

TruncationDescriptor TruncationSchedule::descriptor_at(const Node& node, Index step)
{
    const Index p = Index(node.children.size());
    switch (node.kind)
    {
    case Node::Kind::leaf:
        return TruncationDescriptor::flat(step);
    case Node::Kind::concat:
    {
        std::vector<TruncationDescriptor> parts;
        for (Index i = 0; i < p; ++i)
        {
            parts.push_back(descriptor_at(node.children[std::size_t(i)],
                                          concat_child_step(step, i, p)));
        }
        return TruncationDescriptor::split(std::move(parts));
    }
    case Node::Kind::tensor:
    {
        std::vector<TruncationDescriptor> factors;
        for (Index i = 0; i < p; ++i)
        {
            factors.push_back(descriptor_at(node.children[std::size_t(i)],
                                            tensor_child_step(step, i, p)));
        }
        return TruncationDescriptor::grid(std::move(factors));
    }
    }
    return TruncationDescriptor::flat(step);
}

Index TruncationSchedule::total_at(const Node& node, Index step)
{
    const Index p = Index(node.children.size());
    switch (node.kind)
    {
    case Node::Kind::leaf:
        return step;
    case Node::Kind::concat:
    {
        Index s = 0;
        for (Index i = 0; i < p; ++i)
        {
            s += total_at(node.children[std::size_t(i)], concat_child_step(step, i, p));
        }
        return s;
    }
    case Node::Kind::tensor:
    {
        Index s = 1;
        for (Index i = 0; i < p; ++i)
        {
            s *= total_at(node.children[std::size_t(i)], tensor_child_step(step, i, p));
        }
        return s;
    }
    }
    return step;
}

TruncationDescriptor TruncationSchedule::at(Index step) const
{
    if (step < 1)
    {
        throw InvalidArgument("schedule: steps start at 1");
    }
    return descriptor_at(root_, step);
}

Index TruncationSchedule::total_at(Index step) const
{
    if (step < 1)
    {
        throw InvalidArgument("schedule: steps start at 1");
    }
    return total_at(root_, step);
}

Index TruncationSchedule::last_step() const
{
    if (total_at(1) > max_total_)
    {
        return 0;
    }
    // Totals grow by at least one per step: bracket by doubling, then bisect.
    Index lo = 1;
    Index hi = 2;
    while (hi <= max_total_ && total_at(hi) <= max_total_)
    {
        lo = hi;
        hi *= 2;
    }
    hi = std::min(hi, max_total_ + 1);
    // total_at(lo) <= max_total_ < total_at(hi)
    while (hi - lo > 1)
    {
        const Index mid = lo + (hi - lo) / 2;
        if (total_at(mid) <= max_total_)
        {
            lo = mid;
        }
        else
        {
            hi = mid;
        }
    }
    return lo;
}

Index TruncationSchedule::nearest_step(Index target, Direction dir) const
{
    if (target < 1)
    {
        throw InvalidArgument("schedule: target total must be positive");
    }
    const Index last = last_step();
    if (last == 0)
    {
        throw InvalidArgument("schedule: no reachable truncation below the maximum");
    }
    // Smallest step with total >= target.
    Index lo = 1;
    Index hi = last;
    if (total_at(last) < target)
    {
        if (dir == Direction::up)
        {
            throw InvalidArgument("schedule: no reachable truncation with total >= " +
                                  std::to_string(target) + " below the maximum " +
                                  std::to_string(max_total_));
        }
        return last;
    }
    while (lo < hi)
    {
        const Index mid = lo + (hi - lo) / 2;
        if (total_at(mid) >= target)
        {
            hi = mid;
        }
        else
        {
            lo = mid + 1;
        }
    }
    if (dir == Direction::up || total_at(lo) == target)
    {
        return lo;
    }
    if (lo == 1)
    {
        throw InvalidArgument("schedule: no reachable truncation with total <= " +
                              std::to_string(target));
    }
    return lo - 1;
}

TruncationDescriptor TruncationSchedule::nearest_reachable(Index target,
                                                           Direction dir) const
{
    return at(nearest_step(target, dir));
}

} // namespace framefit
