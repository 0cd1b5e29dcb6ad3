///
/// \file truncation.hpp
///
/// Structured truncation sizes of a dictionary and the schedules that grow
/// them.
///
#ifndef FRAMEFIT_TRUNCATION_HPP
#define FRAMEFIT_TRUNCATION_HPP

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <framefit/types.hpp>

namespace framefit
{

/// Size of a truncated dictionary, structured like the dictionary itself.
///
///  - `flat(n)`: the first n elements of a one-dimensional family,
///  - `split(d1, ..., dp)`: one descriptor per part of a concatenation; the
///    total is the sum of the parts,
///  - `grid(d1, ..., dd)`: one descriptor per factor of a tensor product; the
///    total is the product of the factors.
///
/// Elements are numbered by a flat index `0 <= k < total()`. Parts of a split
/// are numbered consecutively; grid elements are numbered row-major with the
/// last factor varying fastest.
class TruncationDescriptor
{
public:
    enum class Structure
    {
        flat,
        split,
        grid
    };

    TruncationDescriptor() = default;

    static TruncationDescriptor flat(Index n);
    static TruncationDescriptor split(std::vector<TruncationDescriptor> parts);
    static TruncationDescriptor split(std::initializer_list<Index> sizes);
    static TruncationDescriptor grid(std::vector<TruncationDescriptor> factors);
    static TruncationDescriptor grid(std::initializer_list<Index> sizes);

    Structure structure() const noexcept
    {
        return structure_;
    }

    Index total() const noexcept
    {
        return total_;
    }

    /// Children of a split or grid descriptor (empty for flat).
    const std::vector<TruncationDescriptor>& children() const noexcept
    {
        return children_;
    }

    /// Length of the multi-index produced by unflatten().
    Index depth() const noexcept;

    /// Multi-index of flat element k: `[k]` for flat, `[part, child...]` for a
    /// split and the concatenated child indices for a grid.
    std::vector<Index> unflatten(Index k) const;
    Index flatten(std::span<const Index> multi_index) const;

    /// Compact text form, e.g. `7`, `(4,3)` or `[3x2]`.
    std::string to_string() const;

    friend bool operator==(const TruncationDescriptor&,
                           const TruncationDescriptor&) = default;

private:
    Index flatten_impl(std::span<const Index>& rest) const;

    Structure structure_ = Structure::flat;
    Index total_         = 0;
    std::vector<TruncationDescriptor> children_;
};

/// Scale every factor of a grid descriptor of flat factors by
/// `factor^(1/d)`, rounding to the nearest integer and growing by at least one
/// element in some dimension.
TruncationDescriptor balanced_scaling(const TruncationDescriptor& grid,
                                      double factor);

class Dictionary;

enum class GrowthPolicy
{
    flat_unit_step,  ///< N = 1, 2, 3, ... for a one-dimensional family
    alternate_split, ///< concatenation parts grow in turn
    tensor_balanced  ///< tensor factors grow in turn, one element at a time
};

enum class Direction
{
    down,
    up
};

/// Sequence of descriptors indexed by a step j >= 1 with strictly increasing
/// totals.
///
/// Nested dictionaries follow their natural rule: concatenations alternate
/// between their parts (part i receives its (j+p-1-i)/p-th step) and tensor
/// products alternate between their factors. A concatenation of two flat
/// families therefore reaches every total, with sizes (ceil(N/2), floor(N/2)).
class TruncationSchedule
{
public:
    static constexpr Index default_max_total = Index(1) << 24;

    TruncationSchedule(const Dictionary& dict, GrowthPolicy policy,
                       Index max_total = default_max_total);

    GrowthPolicy policy() const noexcept
    {
        return policy_;
    }

    Index max_total() const noexcept
    {
        return max_total_;
    }

    /// Descriptor reached after `step` growth steps; `step >= 1`.
    TruncationDescriptor at(Index step) const;
    Index total_at(Index step) const;

    /// Last step whose total does not exceed max_total().
    Index last_step() const;

    /// Largest reachable descriptor with total <= target (down) or the
    /// smallest with total >= target (up).
    TruncationDescriptor nearest_reachable(Index target, Direction dir) const;
    /// Step index of nearest_reachable(target, dir).
    Index nearest_step(Index target, Direction dir) const;

private:
    struct Node
    {
        enum class Kind
        {
            leaf,
            concat,
            tensor
        } kind = Kind::leaf;
        std::vector<Node> children;
    };

    static Node build(const Dictionary& dict);
    static TruncationDescriptor descriptor_at(const Node& node, Index step);
    static Index total_at(const Node& node, Index step);

    Node root_;
    GrowthPolicy policy_;
    Index max_total_;
};

} // namespace framefit

#endif /* FRAMEFIT_TRUNCATION_HPP */
